#pragma once

#include <functional>
#include <span>
#include <stdexcept>

namespace entrogeo {

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadratureResult {
  double value;
  long intervals;
};

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  long max_intervals = 1L << 20;
  long min_intervals = 16;
};

/// Composite Simpson on [a, b], doubling the interval count and applying one
/// Richardson step (S_2n + (S_2n - S_n)/15) until successive extrapolated values
/// agree to rel_tol. Throws QuadratureError if max_intervals is reached first.
[[nodiscard]] QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                                         const QuadratureOptions& options = {});

/// Composite Simpson over samples on a strictly increasing, possibly non-uniform
/// grid. An odd trailing interval is closed with the quadratic through the last
/// three samples. Needs at least three samples.
[[nodiscard]] double integrate_samples(std::span<const double> x, std::span<const double> y);

/// Second-order finite-difference derivative of samples on a non-uniform grid
/// (central in the interior, one-sided at the ends).
void differentiate_samples(std::span<const double> x, std::span<const double> y,
                           std::span<double> dy);

}  // namespace entrogeo
