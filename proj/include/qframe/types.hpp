#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qframe {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

/// Raised for inputs that violate a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical kernel (eigensolver, stepper) cannot complete.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using WarningHandler = std::function<void(std::string_view)>;

// Warnings go to std::clog unless a handler is installed. Returns the previous
// handler so callers (tests mostly) can restore it.
WarningHandler set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

// Collects warnings raised on the constructing thread while alive. Messages
// still reach the installed handler. Nesting is allowed; the innermost
// capture receives them.
class WarningCapture {
 public:
  WarningCapture();
  ~WarningCapture();
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;
  const std::vector<std::string>& messages() const { return messages_; }

 private:
  friend void warn(std::string_view message);
  std::vector<std::string> messages_;
  WarningCapture* outer_;
};

}  // namespace qframe
