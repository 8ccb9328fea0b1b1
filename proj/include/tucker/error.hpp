#pragma once

#include <stdexcept>
#include <string>

namespace tucker {

enum class ErrorKind {
  Construction,
  Mode,
  Shape,
  Dimension,
  Factor,
  Rank,
  Order,
  Input,
  Convergence,
  Parameter,
  Size,
  Io,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Construction: return "construction error";
    case ErrorKind::Mode: return "mode error";
    case ErrorKind::Shape: return "shape error";
    case ErrorKind::Dimension: return "dimension error";
    case ErrorKind::Factor: return "factor error";
    case ErrorKind::Rank: return "rank error";
    case ErrorKind::Order: return "order error";
    case ErrorKind::Input: return "input error";
    case ErrorKind::Convergence: return "convergence error";
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Size: return "size error";
    case ErrorKind::Io: return "I/O error";
  }
  return "error";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tucker
