#include "entrogeo/quantum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace entrogeo {

namespace {

constexpr double kUnitarityTolerance = 1e-9;
constexpr double kDriftLimit = 1e-6;

void require_nonnegative(double theta) {
  if (!(theta >= 0.0)) throw std::domain_error("theta must be non-negative");
}

}  // namespace

Matrix2 Matrix2::adjoint() const noexcept {
  return {std::conj(a00), std::conj(a10), std::conj(a01), std::conj(a11)};
}

Matrix2 operator*(const Matrix2& l, const Matrix2& r) noexcept {
  return {l.a00 * r.a00 + l.a01 * r.a10, l.a00 * r.a01 + l.a01 * r.a11,
          l.a10 * r.a00 + l.a11 * r.a10, l.a10 * r.a01 + l.a11 * r.a11};
}

double unitarity_deviation(const Matrix2& u) noexcept {
  const Matrix2 p = u.adjoint() * u;
  return std::max({std::abs(p.a00 - 1.0), std::abs(p.a01), std::abs(p.a10),
                   std::abs(p.a11 - 1.0)});
}

Matrix2 spin_rotation(double angle, double nx, double ny, double nz) noexcept {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Complex i{0.0, 1.0};
  // n.sigma = [[nz, nx - i ny], [nx + i ny, -nz]]
  return {Complex{c, -s * nz}, -i * s * Complex{nx, -ny}, -i * s * Complex{nx, ny},
          Complex{c, s * nz}};
}

TwoLevelAmplitudes amplitudes_of(const Matrix2& u) noexcept { return {u.a00, u.a01}; }

SourceOverlap::SourceOverlap(double x) : x_(x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("overlap must lie in [0, 1]");
}

double phase_integral(const ScenarioSpec& spec, double theta) {
  require_nonnegative(theta);
  const double rate = spec.rate();
  const double x = spec.lambda * theta;
  switch (spec.kind) {
    case ScenarioKind::ConstantField: return rate * theta;
    case ScenarioKind::OscillatoryField: return rate / spec.lambda * std::sin(x);
    case ScenarioKind::PowerLawField: return rate / spec.lambda * (x / (1.0 + x));
    case ScenarioKind::ExponentialField: return rate / spec.lambda * (-std::expm1(-x));
  }
  return 0.0;
}

double phase_rate(const ScenarioSpec& spec, double theta) {
  require_nonnegative(theta);
  return profile_value(spec, theta) / spec.constants.hbar;
}

double analytic_success_probability(const ScenarioSpec& spec, double theta) {
  const double s = std::sin(phase_integral(spec, theta));
  return s * s;
}

double analytic_failure_probability(const ScenarioSpec& spec, double theta) {
  const double c = std::cos(phase_integral(spec, theta));
  return c * c;
}

PropagationResult propagate_schrodinger(const ScenarioSpec& spec, double t_final, int steps) {
  if (steps < 1) throw std::invalid_argument("steps must be at least 1");
  require_nonnegative(t_final);
  spec.validate();

  PropagationResult result;
  result.beyond_physical_window = t_final > physical_window_end(spec);
  result.time_grid.reserve(static_cast<std::size_t>(steps) + 1);
  result.unitaries.reserve(static_cast<std::size_t>(steps) + 1);
  result.success_probability.reserve(static_cast<std::size_t>(steps) + 1);

  const double dt = t_final / steps;
  // H/hbar = (w_x, w_y, Omega)/hbar; the resonant longitudinal rate is -omega0/2.
  const double longitudinal_rate = spec.longitudinal_override
                                       ? *spec.longitudinal_override / spec.constants.hbar
                                       : -0.5 * spec.omega0;

  Matrix2 u = Matrix2::identity();
  auto emit = [&](double t) {
    const double deviation = unitarity_deviation(u);
    if (deviation > kDriftLimit) {
      throw std::runtime_error("propagator drifted from unitarity by " +
                               std::to_string(deviation) + " at t=" + std::to_string(t));
    }
    result.max_unitarity_deviation = std::max(result.max_unitarity_deviation, deviation);
    result.time_grid.push_back(t);
    result.unitaries.push_back(u);
    result.success_probability.push_back(std::clamp(std::norm(u.a01), 0.0, 1.0));
  };

  emit(0.0);
  // Fourth-order Magnus step: the field at the two Gauss points plus their
  // commutator, which for su(2) reduces to a cross product.
  const double gauss = std::sqrt(3.0) / 6.0;
  auto field = [&](double t) {
    const double intensity = profile_value(spec, t) / spec.constants.hbar;
    const double phase = spec.omega0 * t + spec.phase_origin;
    return std::array<double, 3>{intensity * std::cos(phase), -intensity * std::sin(phase),
                                 longitudinal_rate};
  };
  for (int k = 0; k < steps; ++k) {
    const auto a = field((k + 0.5 - gauss) * dt);
    const auto b = field((k + 0.5 + gauss) * dt);
    const double c = gauss * dt;
    const double hx = 0.5 * (a[0] + b[0]) + c * (b[1] * a[2] - b[2] * a[1]);
    const double hy = 0.5 * (a[1] + b[1]) + c * (b[2] * a[0] - b[0] * a[2]);
    const double hz = 0.5 * (a[2] + b[2]) + c * (b[0] * a[1] - b[1] * a[0]);
    const double magnitude = std::sqrt(hx * hx + hy * hy + hz * hz);
    if (magnitude > 0.0) {
      u = spin_rotation(magnitude * dt, hx / magnitude, hy / magnitude, hz / magnitude) * u;
    }
    emit(k + 1 == steps ? t_final : (k + 1) * dt);
  }
  return result;
}

double transition_probability_general(const Matrix2& u, SourceOverlap overlap) {
  if (unitarity_deviation(u) > kUnitarityTolerance) {
    throw std::invalid_argument("evolution operator is not unitary");
  }
  const auto [alpha, beta] = amplitudes_of(u);
  const double x = overlap.value();
  const double y = std::sqrt(1.0 - x * x);
  const double cross = 2.0 * std::real(alpha * std::conj(beta));
  const double p = std::norm(alpha) * x * x + std::norm(beta) * y * y + cross * x * y;
  return std::clamp(p, 0.0, 1.0);
}

std::optional<double> period(const ScenarioSpec& spec) {
  switch (spec.kind) {
    case ScenarioKind::ConstantField: return std::numbers::pi / spec.rate();
    case ScenarioKind::OscillatoryField: return std::numbers::pi / spec.lambda;
    case ScenarioKind::PowerLawField:
    case ScenarioKind::ExponentialField: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace entrogeo
