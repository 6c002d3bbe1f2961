#pragma once
// One residual measurement at one parameter point.

#include <map>
#include <string>

namespace ybe {

struct ResidualReport {
  std::string suite;
  std::map<std::string, double> params;      // sorted by key
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::map<std::string, double> truncation;  // e.g. N, max_terms, tail_tolerance
  double wall_ms = 0.0;
  std::string error;                         // set when evaluation threw

  void decide() { pass = error.empty() && residual <= tolerance; }
};

}  // namespace ybe
