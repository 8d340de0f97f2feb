#include "entrogeo/geodesic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace entrogeo {

namespace {

constexpr double kPi = std::numbers::pi;
// Integration halts once the margin to a singular boundary drops below this.
constexpr double kHaltMargin = 1e-8;
// Steps never exceed this fraction of the distance to the singular boundary.
constexpr double kSingularStepFraction = 0.02;

double unchecked_connection(const ScenarioSpec& spec, double theta) noexcept {
  const double l = spec.lambda;
  switch (spec.kind) {
    case ScenarioKind::ConstantField: return 0.0;
    case ScenarioKind::OscillatoryField: return -l * std::tan(l * theta);
    case ScenarioKind::PowerLawField: return -2.0 * l / (1.0 + l * theta);
    case ScenarioKind::ExponentialField: return -l;
  }
  return 0.0;
}

// Power-law pole position A = (1 + lambda theta0)/(lambda thetadot0), measured from xi0.
double power_law_pole(const ScenarioSpec& spec, const InitialConditions& ic) {
  return (1.0 + spec.lambda * ic.theta0) / (spec.lambda * ic.thetadot0);
}

double oscillatory_argument(const ScenarioSpec& spec, const InitialConditions& ic, double xi) {
  const double phase = spec.lambda * ic.theta0;
  return std::sin(phase) + spec.lambda * ic.thetadot0 * std::cos(phase) * (xi - ic.xi0);
}

// Affine-parameter distance to the singular boundary ahead of xi.
double singular_distance(const ScenarioSpec& spec, const InitialConditions& ic, double xi) {
  const double margin = singularity_margin(spec, ic, xi);
  switch (spec.kind) {
    case ScenarioKind::ConstantField: return std::numeric_limits<double>::infinity();
    case ScenarioKind::OscillatoryField:
      return margin / std::abs(spec.lambda * ic.thetadot0 * std::cos(spec.lambda * ic.theta0));
    case ScenarioKind::PowerLawField: return margin * power_law_pole(spec, ic);
    case ScenarioKind::ExponentialField: return margin / (spec.lambda * ic.thetadot0);
  }
  return std::numeric_limits<double>::infinity();
}

struct State {
  double theta;
  double rate;
};

State rk4_step(const ScenarioSpec& spec, State y, double h) {
  auto f = [&](State s) { return State{s.rate, -unchecked_connection(spec, s.theta) * s.rate * s.rate}; };
  const State k1 = f(y);
  const State k2 = f({y.theta + 0.5 * h * k1.theta, y.rate + 0.5 * h * k1.rate});
  const State k3 = f({y.theta + 0.5 * h * k2.theta, y.rate + 0.5 * h * k2.rate});
  const State k4 = f({y.theta + h * k3.theta, y.rate + h * k3.rate});
  return {y.theta + h / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta),
          y.rate + h / 6.0 * (k1.rate + 2.0 * k2.rate + 2.0 * k3.rate + k4.rate)};
}

NumericPath integrate_grid(const ScenarioSpec& spec, const InitialConditions& ic,
                           std::span<const double> grid, double max_step) {
  NumericPath path;
  path.xi.reserve(grid.size());
  path.theta.reserve(grid.size());
  path.thetadot.reserve(grid.size());

  State y{ic.theta0, ic.thetadot0};
  double xi = ic.xi0;
  for (const double target : grid) {
    if (singularity_margin(spec, ic, target) < kHaltMargin) {
      const double last = path.xi.empty() ? ic.xi0 : path.xi.back();
      throw SingularApproach("geodesic reaches a singular boundary before xi=" +
                                 std::to_string(target) + "; last valid xi=" + std::to_string(last),
                             last, std::move(path));
    }
    while (xi < target) {
      const double h = std::min({max_step, target - xi,
                                 kSingularStepFraction * singular_distance(spec, ic, xi)});
      y = rk4_step(spec, y, h);
      xi = (target - xi - h <= 0.0) ? target : xi + h;
      if (!std::isfinite(y.theta) || !std::isfinite(y.rate)) {
        const double last = path.xi.empty() ? ic.xi0 : path.xi.back();
        throw SingularApproach("geodesic integration diverged; last valid xi=" + std::to_string(last),
                               last, std::move(path));
      }
    }
    path.xi.push_back(target);
    path.theta.push_back(y.theta);
    path.thetadot.push_back(y.rate);
  }
  return path;
}

}  // namespace

void InitialConditions::validate() const {
  if (!(theta0 > 0.0) || !std::isfinite(theta0)) throw std::domain_error("theta0 must be positive");
  if (!(thetadot0 > 0.0) || !std::isfinite(thetadot0)) {
    throw std::domain_error("thetadot0 must be positive");
  }
  if (!(xi0 >= 0.0) || !std::isfinite(xi0)) throw std::domain_error("xi0 must be non-negative");
}

double connection_coefficient(const ScenarioSpec& spec, double theta) {
  if (!(theta >= 0.0)) throw std::domain_error("theta must be non-negative");
  if (spec.kind == ScenarioKind::OscillatoryField &&
      std::abs(std::cos(spec.lambda * theta)) < 1e-12) {
    throw std::domain_error("oscillatory Fisher information vanishes at lambda theta = pi/2 + k pi");
  }
  return unchecked_connection(spec, theta);
}

GeodesicSolution::GeodesicSolution(const ScenarioSpec& spec, const InitialConditions& ic,
                                   GeodesicForm form)
    : spec_(spec), ic_(ic), form_(form) {
  spec_.validate();
  ic_.validate();
  const double l = spec_.lambda;
  const double th0 = ic_.theta0;
  const double rate0 = ic_.thetadot0;
  const double xi0 = ic_.xi0;

  if (form_ == GeodesicForm::Uncorrected) {
    if (!(std::abs(l * xi0) < 1.0)) throw std::domain_error("uncorrected form needs |lambda xi0| < 1");
    validity_ = {-1.0 / l, 1.0 / l};
    return;
  }

  switch (spec_.kind) {
    case ScenarioKind::ConstantField:
      validity_ = {xi0 - th0 / rate0, std::numeric_limits<double>::infinity()};
      break;
    case ScenarioKind::OscillatoryField: {
      const double phase = l * th0;
      const double c = std::cos(phase);
      if (std::abs(c) < 1e-12) {
        throw std::domain_error("oscillatory geodesic cannot start where cos(lambda theta0) = 0");
      }
      branch_ = std::lround(phase / kPi);
      const double sign = (branch_ % 2 == 0) ? 1.0 : -1.0;
      const double slope = l * rate0 * c;
      const double s = std::sin(phase);
      const double upper = (sign - s) / slope;
      const double lower = (branch_ == 0) ? -s / slope : (-sign - s) / slope;
      validity_ = {xi0 + lower, xi0 + upper};
      break;
    }
    case ScenarioKind::PowerLawField: {
      const double pole = power_law_pole(spec_, ic_);
      validity_ = {xi0 - l * th0 * pole, xi0 + pole};
      break;
    }
    case ScenarioKind::ExponentialField:
      validity_ = {xi0 + std::expm1(l * th0) / (-l * rate0), xi0 + 1.0 / (l * rate0)};
      break;
  }
}

void GeodesicSolution::require_valid(double xi) const {
  if (!validity_.contains(xi)) {
    throw std::domain_error("xi=" + std::to_string(xi) + " is outside the geodesic validity interval [" +
                            std::to_string(validity_.lower) + ", " +
                            std::to_string(validity_.upper) + ")");
  }
}

double GeodesicSolution::theta(double xi) const {
  require_valid(xi);
  const double l = spec_.lambda;
  const double s = xi - ic_.xi0;
  if (form_ == GeodesicForm::Uncorrected) {
    return ic_.theta0 + std::sqrt(1.0 - l * l * ic_.xi0 * ic_.xi0) / l * ic_.thetadot0 *
                            (std::asin(l * xi) - std::asin(l * ic_.xi0));
  }
  switch (spec_.kind) {
    case ScenarioKind::ConstantField: return ic_.theta0 + ic_.thetadot0 * s;
    case ScenarioKind::OscillatoryField: {
      const double arg = std::clamp(oscillatory_argument(spec_, ic_, xi), -1.0, 1.0);
      const double sign = (branch_ % 2 == 0) ? 1.0 : -1.0;
      return (static_cast<double>(branch_) * kPi + sign * std::asin(arg)) / l;
    }
    case ScenarioKind::PowerLawField: {
      const double a = power_law_pole(spec_, ic_);
      const double lt0 = 1.0 + l * ic_.theta0;
      return (lt0 * lt0 + l * ic_.thetadot0 * (s - a)) / (l * l * ic_.thetadot0 * (a - s));
    }
    case ScenarioKind::ExponentialField:
      return ic_.theta0 - std::log1p(-l * ic_.thetadot0 * s) / l;
  }
  return 0.0;
}

double GeodesicSolution::rate(double xi) const {
  require_valid(xi);
  const double l = spec_.lambda;
  const double s = xi - ic_.xi0;
  if (form_ == GeodesicForm::Uncorrected) {
    return std::sqrt(1.0 - l * l * ic_.xi0 * ic_.xi0) * ic_.thetadot0 / std::sqrt(1.0 - l * l * xi * xi);
  }
  switch (spec_.kind) {
    case ScenarioKind::ConstantField: return ic_.thetadot0;
    case ScenarioKind::OscillatoryField: {
      const double arg = oscillatory_argument(spec_, ic_, xi);
      const double sign = (branch_ % 2 == 0) ? 1.0 : -1.0;
      return sign * ic_.thetadot0 * std::cos(l * ic_.theta0) / std::sqrt((1.0 - arg) * (1.0 + arg));
    }
    case ScenarioKind::PowerLawField: {
      const double a = power_law_pole(spec_, ic_);
      return (1.0 + l * ic_.theta0) * a / (l * (a - s) * (a - s));
    }
    case ScenarioKind::ExponentialField: return ic_.thetadot0 / (1.0 - l * ic_.thetadot0 * s);
  }
  return 0.0;
}

Curve GeodesicSolution::curve() const {
  return {[self = *this](double xi) { return self.theta(xi); },
          [self = *this](double xi) { return self.rate(xi); }};
}

GeodesicSolution geodesic_closed_form(const ScenarioSpec& spec, const InitialConditions& ic) {
  return GeodesicSolution(spec, ic, GeodesicForm::Exact);
}

GeodesicSolution uncorrected_oscillatory(const ScenarioSpec& spec, const InitialConditions& ic) {
  if (spec.kind != ScenarioKind::OscillatoryField) {
    throw std::invalid_argument("the uncorrected path exists only for the oscillatory field");
  }
  return GeodesicSolution(spec, ic, GeodesicForm::Uncorrected);
}

double singularity_margin(const ScenarioSpec& spec, const InitialConditions& ic, double xi) {
  const double s = xi - ic.xi0;
  switch (spec.kind) {
    case ScenarioKind::ConstantField: return 1.0;
    case ScenarioKind::OscillatoryField: return 1.0 - std::abs(oscillatory_argument(spec, ic, xi));
    case ScenarioKind::PowerLawField: return 1.0 - s / power_law_pole(spec, ic);
    case ScenarioKind::ExponentialField: return 1.0 - spec.lambda * ic.thetadot0 * s;
  }
  return 1.0;
}

NumericPath geodesic_numeric(const ScenarioSpec& spec, const InitialConditions& ic,
                             std::span<const double> xi_grid, double max_step) {
  spec.validate();
  ic.validate();
  if (!(max_step > 0.0)) throw std::invalid_argument("max_step must be positive");
  if (xi_grid.empty() || xi_grid.front() != ic.xi0) {
    throw std::invalid_argument("xi grid must start at xi0");
  }
  for (std::size_t i = 1; i < xi_grid.size(); ++i) {
    if (!(xi_grid[i] > xi_grid[i - 1])) throw std::invalid_argument("xi grid must be strictly increasing");
  }
  if (spec.kind == ScenarioKind::OscillatoryField) (void)connection_coefficient(spec, ic.theta0);

  NumericPath coarse = integrate_grid(spec, ic, xi_grid, max_step);
  const NumericPath fine = integrate_grid(spec, ic, xi_grid, 0.5 * max_step);
  for (std::size_t i = 0; i < coarse.theta.size(); ++i) {
    coarse.convergence_estimate =
        std::max(coarse.convergence_estimate, std::abs(coarse.theta[i] - fine.theta[i]));
  }
  return coarse;
}

double ode_residual(const ScenarioSpec& spec, const std::function<double(double)>& theta,
                    double xi, double h) {
  const double m2 = theta(xi - 2.0 * h);
  const double m1 = theta(xi - h);
  const double c0 = theta(xi);
  const double p1 = theta(xi + h);
  const double p2 = theta(xi + 2.0 * h);
  const double first = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
  const double second = (-m2 + 16.0 * m1 - 30.0 * c0 + 16.0 * p1 - p2) / (12.0 * h * h);
  return second + connection_coefficient(spec, c0) * first * first;
}

double ode_residual(const ScenarioSpec& spec, const GeodesicSolution& solution, double xi,
                    double h) {
  const auto& valid = solution.validity();
  if (!valid.contains(xi - 2.0 * h) || !valid.contains(xi + 2.0 * h)) {
    throw std::domain_error("residual stencil leaves the validity interval");
  }
  return ode_residual(spec, [&](double x) { return solution.theta(x); }, xi, h);
}

double ode_residual(const ScenarioSpec& spec, const NumericPath& path, std::size_t index) {
  const auto n = path.xi.size();
  if (index < 2 || index + 2 >= n) throw std::domain_error("residual stencil leaves the grid");
  const double h = path.xi[index + 1] - path.xi[index];
  for (std::size_t j = index - 2; j < index + 2; ++j) {
    if (std::abs((path.xi[j + 1] - path.xi[j]) - h) > 1e-9 * h) {
      throw std::invalid_argument("numeric residual needs a uniform grid around the index");
    }
  }
  const auto& v = path.thetadot;
  const double second =
      (v[index - 2] - 8.0 * v[index - 1] + 8.0 * v[index + 1] - v[index + 2]) / (12.0 * h);
  return second + connection_coefficient(spec, path.theta[index]) * v[index] * v[index];
}

PathFunctionals action_of_path(const ScenarioSpec& spec, MetricConvention convention,
                               const Curve& curve, double xi_begin, double tau) {
  return path_functionals(spec, convention, curve, xi_begin, tau);
}

PathFunctionals perturbed_action(const ScenarioSpec& spec, MetricConvention convention,
                                 const InitialConditions& ic, double tau, double amplitude,
                                 int mode) {
  if (mode < 1) throw std::invalid_argument("perturbation mode must be at least 1");
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  const GeodesicSolution geo = geodesic_closed_form(spec, ic);
  if (!geo.validity().contains(ic.xi0 + tau)) {
    throw std::domain_error("tau exceeds the geodesic validity interval");
  }
  const double wave = static_cast<double>(mode) * kPi / tau;
  Curve curve{[=](double xi) { return geo.theta(xi) + amplitude * std::sin(wave * (xi - ic.xi0)); },
              [=](double xi) { return geo.rate(xi) + amplitude * wave * std::cos(wave * (xi - ic.xi0)); }};

  constexpr int kChecks = 2000;
  const double cell = std::cos(spec.lambda * ic.theta0);
  for (int i = 0; i <= kChecks; ++i) {
    const double theta = curve.theta(ic.xi0 + tau * i / kChecks);
    const bool outside = theta < 0.0 || (spec.kind == ScenarioKind::OscillatoryField &&
                                         std::cos(spec.lambda * theta) * cell <= 0.0);
    if (outside) throw std::domain_error("perturbed path leaves the scenario domain");
  }
  return path_functionals(spec, convention, curve, ic.xi0, tau);
}

}  // namespace entrogeo
