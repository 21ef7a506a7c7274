#pragma once

#include <stdexcept>
#include <string>

namespace holder {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// F(x, u, u') <= 0 (or not finite) at abscissa x.
class NonPositiveFeature : public Error {
 public:
  explicit NonPositiveFeature(double x)
      : Error("feature is not positive at x = " + std::to_string(x)), x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

class DomainMismatch : public Error {
 public:
  using Error::Error;
};

class AlphaZero : public Error {
 public:
  AlphaZero() : Error("alpha = 0 must use the logarithmic (geometric mean) route") {}
};

class FlagMismatch : public Error {
 public:
  using Error::Error;
};

class NotStationary : public Error {
 public:
  explicit NotStationary(double max_residual)
      : Error("curve is not stationary: max |residual| = " + std::to_string(max_residual)),
        max_residual_(max_residual) {}
  double max_residual() const noexcept { return max_residual_; }

 private:
  double max_residual_;
};

class SingularFeature : public Error {
 public:
  using Error::Error;
};

class SquareRootDomain : public Error {
 public:
  explicit SquareRootDomain(double x)
      : Error("1 - k^2 c^2(x) < 0 at x = " + std::to_string(x)), x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

class DegenerateRadius : public Error {
 public:
  explicit DegenerateRadius(double r)
      : Error("cycloid radius must be positive, got " + std::to_string(r)) {}
};

}  // namespace holder
