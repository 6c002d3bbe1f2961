#pragma once
// NDJSON / CSV / text rendering of reports and tables.

#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "ybe/report.hpp"

namespace ybe {

inline nlohmann::ordered_json to_json(const ResidualReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["params"] = nlohmann::ordered_json(r.params);
  j["residual"] = std::isfinite(r.residual) ? nlohmann::ordered_json(r.residual) : nlohmann::ordered_json(nullptr);
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  nlohmann::ordered_json t(r.truncation);
  if (!r.error.empty()) t["error"] = r.error;
  j["truncation"] = t.is_null() ? nlohmann::ordered_json::object() : t;
  j["wall_ms"] = r.wall_ms;
  return j;
}

inline std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline std::string kv_string(const std::map<std::string, double>& m) {
  std::string s;
  for (auto& [k, v] : m) {
    if (!s.empty()) s += ';';
    s += k + "=" + fmt_double(v);
  }
  return s;
}

inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

inline const char* kCsvHeader = "suite,params,residual,tolerance,pass,truncation,wall_ms";

inline std::string to_csv(const ResidualReport& r) {
  std::string trunc = kv_string(r.truncation);
  if (!r.error.empty()) trunc += (trunc.empty() ? "" : ";") + std::string("error=") + r.error;
  return csv_quote(r.suite) + "," + csv_quote(kv_string(r.params)) + "," + fmt_double(r.residual) + "," +
         fmt_double(r.tolerance) + "," + (r.pass ? "true" : "false") + "," + csv_quote(trunc) + "," +
         fmt_double(r.wall_ms);
}

inline std::string to_text(const ResidualReport& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(34) << r.suite << " residual=" << std::setprecision(3)
     << std::scientific << r.residual << " tol=" << r.tolerance << "  " << kv_string(r.params);
  if (!r.error.empty()) os << "  error: " << r.error;
  return os.str();
}

inline void write_reports(std::ostream& os, const std::vector<ResidualReport>& reps, const std::string& format) {
  if (format == "csv") os << kCsvHeader << '\n';
  for (auto& r : reps) {
    if (format == "json") os << to_json(r).dump() << '\n';
    else if (format == "csv") os << to_csv(r) << '\n';
    else os << to_text(r) << '\n';
  }
  if (format == "text") {
    std::size_t bad = 0;
    for (auto& r : reps) bad += !r.pass;
    os << reps.size() - bad << "/" << reps.size() << " passed\n";
  }
}

}  // namespace ybe
