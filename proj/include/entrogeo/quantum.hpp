#pragma once

// Two-level dynamics in the basis {|w>, |w_perp>} with sz|w> = +|w>.
//
// On resonance the success probability from |w_perp> is sin^2(u(t)) with
// u(t) = int_0^t w_H(t')/hbar dt', the phase integral. The closed forms are
// checked against direct propagation of i hbar dU/dt = H U.

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "entrogeo/scenario.hpp"

namespace entrogeo {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix.
struct Matrix2 {
  Complex a00{1.0}, a01{0.0}, a10{0.0}, a11{1.0};

  [[nodiscard]] static Matrix2 identity() noexcept { return {}; }
  [[nodiscard]] Matrix2 adjoint() const noexcept;
  friend Matrix2 operator*(const Matrix2& lhs, const Matrix2& rhs) noexcept;
};

/// max |(U^dagger U - I)_ij|.
[[nodiscard]] double unitarity_deviation(const Matrix2& u) noexcept;

/// exp(-i angle (n . sigma)) for a unit vector n, via cos(angle) I - i sin(angle) n.sigma.
[[nodiscard]] Matrix2 spin_rotation(double angle, double nx, double ny, double nz) noexcept;

struct TwoLevelAmplitudes {
  Complex alpha;
  Complex beta;
  [[nodiscard]] double norm_squared() const noexcept { return std::norm(alpha) + std::norm(beta); }
};

/// alpha = U(0,0), beta = U(0,1): the source (x, sqrt(1-x^2)) maps to
/// (alpha x + beta sqrt(1-x^2), -beta* x + alpha* sqrt(1-x^2)).
[[nodiscard]] TwoLevelAmplitudes amplitudes_of(const Matrix2& u) noexcept;

/// Overlap <w|s> of the source state with the target.
class SourceOverlap {
 public:
  explicit SourceOverlap(double x);
  [[nodiscard]] double value() const noexcept { return x_; }

 private:
  double x_;
};

struct PropagationResult {
  std::vector<double> time_grid;
  std::vector<Matrix2> unitaries;
  std::vector<double> success_probability;
  double max_unitarity_deviation = 0.0;
  /// Set when an oscillatory propagation ran past lambda t = pi/2, where the
  /// transverse intensity changes sign.
  bool beyond_physical_window = false;
};

/// u(theta) from the closed antiderivative of the scenario profile.
[[nodiscard]] double phase_integral(const ScenarioSpec& spec, double theta);

/// du/dtheta = w_H(theta)/hbar.
[[nodiscard]] double phase_rate(const ScenarioSpec& spec, double theta);

/// sin^2(u(theta)).
[[nodiscard]] double analytic_success_probability(const ScenarioSpec& spec, double theta);
/// cos^2(u(theta)), evaluated directly so that it keeps full relative precision near zero.
[[nodiscard]] double analytic_failure_probability(const ScenarioSpec& spec, double theta);

/// Fourth-order Magnus product of exact per-step exponentials, starting from the
/// identity (the state |w_perp> picks out column 1). Emits steps+1 samples.
/// Throws std::runtime_error if any sample drifts from unitarity by more than 1e-6.
[[nodiscard]] PropagationResult propagate_schrodinger(const ScenarioSpec& spec, double t_final,
                                                      int steps);

/// |<w|U|s>|^2. Throws std::invalid_argument if U is not unitary to 1e-9.
[[nodiscard]] double transition_probability_general(const Matrix2& u, SourceOverlap overlap);

/// Period of the success probability: pi hbar / Gamma (constant field), pi/lambda
/// (oscillatory field), none for the monotone scenarios.
[[nodiscard]] std::optional<double> period(const ScenarioSpec& spec);

}  // namespace entrogeo
