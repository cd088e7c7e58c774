#pragma once

#include <stdexcept>
#include <string>

namespace stratwave {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a right-hand side evaluation produces non-finite values.
class BlowUpError : public Error {
 public:
  explicit BlowUpError(double t)
      : Error("blow-up detected at t=" + std::to_string(t)), t_(t) {}

  double time() const { return t_; }

 private:
  double t_;
};

}  // namespace stratwave
