#ifndef FGK_COMMON_HPP
#define FGK_COMMON_HPP

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace fgk {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Parameter outside its mathematical domain (non-positive radius, q out of
/// range, ...). Maps to CLI exit code 3.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested evaluation needs transience and the model is recurrent.
class RecurrenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Endpoint singularity with exponent <= -1.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Cost/memory guard tripped (iteration depth, cell count). Exit code 4.
class ResourceGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-schema configuration. Exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Round-trip exact formatting for 64-bit floats (17 significant digits).
inline std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& s) {
  if (s == "inf") return kInf;
  if (s == "-inf") return -kInf;
  return std::stod(s);
}

}  // namespace fgk

#endif  // FGK_COMMON_HPP
