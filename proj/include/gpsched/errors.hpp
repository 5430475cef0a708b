#ifndef GPSCHED_ERRORS_HPP
#define GPSCHED_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gpsched {

/// Malformed input data (GPS logs, CSV files, config). `line` is 1-based
/// when the source is line-oriented, 0 otherwise.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg, std::size_t line = 0)
      : std::runtime_error(line ? msg + ", line " + std::to_string(line) : msg),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Raised when a query needs a learned model that has no data yet.
class UntrainedModelError : public std::runtime_error {
 public:
  explicit UntrainedModelError(const std::string& msg)
      : std::runtime_error(msg) {}
};

}  // namespace gpsched

#endif  // GPSCHED_ERRORS_HPP
