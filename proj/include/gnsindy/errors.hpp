#ifndef GNSINDY_ERRORS_HPP
#define GNSINDY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gnsindy {

/// Invalid configuration, preset or option values. CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// Malformed or inconsistent input data (files, grids, sample sets). CLI exit code 3.
/// Carries a 1-based line number (text formats) or byte offset (binary) when known.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what_arg, long location = 0)
      : std::runtime_error(location > 0
                               ? what_arg + " (at line/offset " + std::to_string(location) + ")"
                               : what_arg),
        location_(location) {}
  long location() const { return location_; }

 private:
  long location_ = 0;
};

/// Numerical failure: blow-up, rank deficiency, non-finite loss. CLI exit code 4.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

}  // namespace gnsindy

#endif  // GNSINDY_ERRORS_HPP
