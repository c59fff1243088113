#pragma once

#include <stdexcept>
#include <string>

namespace debias {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument: bad parameter value, shape mismatch, violated precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed (non-convergence, non-finite values).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A geometric configuration is degenerate (rank-deficient design matrix).
class DegenerateGeometryError : public Error {
 public:
  using Error::Error;
};

/// A brute-force enumeration would exceed its configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `line()` is 1-based; 0 when the error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& detail, std::size_t line, const std::string& source = {})
      : Error(compose(detail, line, source)), detail_(detail), line_(line) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  static std::string compose(const std::string& detail, std::size_t line,
                             const std::string& source) {
    std::string out = source.empty() ? std::string() : source + ":";
    if (line > 0) out += (source.empty() ? "line " : "") + std::to_string(line) + ": ";
    else if (!source.empty()) out += " ";
    return out + detail;
  }

  std::string detail_;
  std::size_t line_;
};

/// Well-formed input whose content violates a domain constraint.
class IngestionError : public Error {
 public:
  using Error::Error;
};

}  // namespace debias
