#include "entrogeo/quadrature.hpp"

#include <cmath>
#include <string>

namespace entrogeo {

namespace {

void require_grid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("sample arrays differ in length");
  if (x.size() < 3) throw std::invalid_argument("at least three samples are required");
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) throw std::invalid_argument("sample grid must be strictly increasing");
  }
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
  if (a == b) return {0.0, 0};
  long n = options.min_intervals + options.min_intervals % 2;
  double h = (b - a) / static_cast<double>(n);

  // Simpson sums kept as endpoint, odd-node and even-node parts so that each
  // doubling only evaluates the new midpoints.
  const double ends = f(a) + f(b);
  double odd = 0.0;
  double even = 0.0;
  for (long i = 1; i < n; ++i) (i % 2 ? odd : even) += f(a + static_cast<double>(i) * h);
  double simpson = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
  double extrapolated = simpson;
  bool have_extrapolated = false;

  while (2 * n <= options.max_intervals) {
    even += odd;
    odd = 0.0;
    n *= 2;
    h *= 0.5;
    for (long i = 1; i < n; i += 2) odd += f(a + static_cast<double>(i) * h);
    const double refined = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
    const double next = refined + (refined - simpson) / 15.0;
    if (have_extrapolated) {
      const double delta = std::abs(next - extrapolated);
      if (delta <= options.rel_tol * std::abs(next) || delta <= options.abs_tol) return {next, n};
    }
    simpson = refined;
    extrapolated = next;
    have_extrapolated = true;
  }
  throw QuadratureError("Simpson refinement did not converge within " +
                        std::to_string(options.max_intervals) + " intervals");
}

double integrate_samples(std::span<const double> x, std::span<const double> y) {
  require_grid(x, y);
  const std::size_t intervals = x.size() - 1;
  double total = 0.0;
  std::size_t i = 0;
  for (; i + 2 <= intervals; i += 2) {
    const double h0 = x[i + 1] - x[i];
    const double h1 = x[i + 2] - x[i + 1];
    const double span = h0 + h1;
    total += span / 6.0 *
             ((2.0 - h1 / h0) * y[i] + span * span / (h0 * h1) * y[i + 1] + (2.0 - h0 / h1) * y[i + 2]);
  }
  if (i < intervals) {
    // Last interval [x_{n-1}, x_n] under the quadratic through x_{n-2..n}.
    const std::size_t k = x.size() - 3;
    const double h0 = x[k + 1] - x[k];
    const double h1 = x[k + 2] - x[k + 1];
    total += y[k + 2] * h1 * (2.0 * h1 + 3.0 * h0) / (6.0 * (h0 + h1)) +
             y[k + 1] * h1 * (h1 + 3.0 * h0) / (6.0 * h0) -
             y[k] * h1 * h1 * h1 / (6.0 * h0 * (h0 + h1));
  }
  return total;
}

void differentiate_samples(std::span<const double> x, std::span<const double> y,
                           std::span<double> dy) {
  require_grid(x, y);
  if (dy.size() != x.size()) throw std::invalid_argument("derivative buffer has the wrong length");
  const std::size_t n = x.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x[i] - x[i - 1];
    const double h1 = x[i + 1] - x[i];
    dy[i] = -h1 / (h0 * (h0 + h1)) * y[i - 1] + (h1 - h0) / (h0 * h1) * y[i] +
            h0 / (h1 * (h0 + h1)) * y[i + 1];
  }
  {
    const double h0 = x[1] - x[0];
    const double h1 = x[2] - x[1];
    dy[0] = -(2.0 * h0 + h1) / (h0 * (h0 + h1)) * y[0] + (h0 + h1) / (h0 * h1) * y[1] -
            h0 / (h1 * (h0 + h1)) * y[2];
  }
  {
    const double h0 = x[n - 2] - x[n - 3];
    const double h1 = x[n - 1] - x[n - 2];
    dy[n - 1] = h1 / (h0 * (h0 + h1)) * y[n - 3] - (h0 + h1) / (h0 * h1) * y[n - 2] +
                (2.0 * h1 + h0) / (h1 * (h0 + h1)) * y[n - 1];
  }
}

}  // namespace entrogeo
