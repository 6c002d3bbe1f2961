#pragma once
// Error kinds raised by the library. All derive from ybe::Error so callers can
// catch broadly, and each carries a stable kind() string for reports.

#include <stdexcept>
#include <string>

namespace ybe {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
  virtual const char* kind() const noexcept { return "Error"; }
};

#define YBE_DEFINE_ERROR(Name)                                          \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
    const char* kind() const noexcept override { return #Name; }        \
  };

YBE_DEFINE_ERROR(DivergentBase)
YBE_DEFINE_ERROR(CapExceeded)
YBE_DEFINE_ERROR(ZeroArgument)
YBE_DEFINE_ERROR(PoleHit)
YBE_DEFINE_ERROR(BadLegs)
YBE_DEFINE_ERROR(NotCoprime)
YBE_DEFINE_ERROR(BadIndex)
YBE_DEFINE_ERROR(BadLabel)
YBE_DEFINE_ERROR(InadmissibleHeights)
YBE_DEFINE_ERROR(ConfigError)

#undef YBE_DEFINE_ERROR

}  // namespace ybe
