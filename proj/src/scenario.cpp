#include "entrogeo/scenario.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace entrogeo {

namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

void require_time_in_domain(const ScenarioSpec& spec, double t) {
  if (!(t >= 0.0)) {
    throw std::domain_error("time must be non-negative, got " + std::to_string(t));
  }
  if (t > physical_window_end(spec)) {
    throw std::domain_error("oscillatory field is only positive for lambda*t <= pi/2, got t=" +
                            std::to_string(t));
  }
}

}  // namespace

double PhysicalConstants::bohr_magneton() const noexcept {
  return elementary_charge * hbar / (2.0 * electron_mass * light_speed);
}

PhysicalConstants PhysicalConstants::natural() noexcept {
  return {1.0, 2.0 * std::numbers::pi, 1.0, 1.0, 1.0};
}

PhysicalConstants PhysicalConstants::mksa() noexcept {
  constexpr double hbar = 1.054571817e-34;
  return {hbar, 2.0 * std::numbers::pi * hbar, 9.1093837015e-31, 1.602176634e-19, 299792458.0};
}

PhysicalConstants PhysicalConstants::make(double hbar, double electron_mass,
                                          double elementary_charge, double light_speed) {
  require_positive(hbar, "hbar");
  require_positive(electron_mass, "electron mass");
  require_positive(elementary_charge, "elementary charge");
  require_positive(light_speed, "light speed");
  return {hbar, 2.0 * std::numbers::pi * hbar, electron_mass, elementary_charge, light_speed};
}

std::string_view scenario_name(ScenarioKind kind) noexcept {
  switch (kind) {
    case ScenarioKind::ConstantField: return "constant";
    case ScenarioKind::OscillatoryField: return "oscillatory";
    case ScenarioKind::PowerLawField: return "powerlaw";
    case ScenarioKind::ExponentialField: return "exponential";
  }
  return "unknown";
}

std::optional<ScenarioKind> parse_scenario(std::string_view name) noexcept {
  for (auto kind : kAllScenarios) {
    if (scenario_name(kind) == name) return kind;
  }
  return std::nullopt;
}

ScenarioSpec ScenarioSpec::from_rates(ScenarioKind kind, double gamma_over_hbar, double lambda,
                                      PhysicalConstants constants) {
  ScenarioSpec spec;
  spec.kind = kind;
  spec.gamma = gamma_over_hbar * constants.hbar;
  spec.lambda = lambda;
  spec.constants = constants;
  spec.validate();
  return spec;
}

ScenarioSpec ScenarioSpec::with_unit_success(ScenarioKind kind, double lambda,
                                             PhysicalConstants constants) {
  ScenarioSpec spec;
  spec.kind = kind;
  spec.lambda = lambda;
  spec.gamma = gamma_of_lambda(lambda, constants);
  spec.constants = constants;
  spec.unit_success = true;
  spec.validate();
  return spec;
}

void ScenarioSpec::validate() const {
  require_positive(constants.hbar, "hbar");
  require_positive(constants.h, "h");
  require_positive(constants.electron_mass, "electron mass");
  require_positive(constants.elementary_charge, "elementary charge");
  require_positive(constants.light_speed, "light speed");
  require_positive(gamma, "gamma");
  if (kind != ScenarioKind::ConstantField || unit_success) require_positive(lambda, "lambda");
  if (!(omega0 < 0.0) || !std::isfinite(omega0)) {
    throw std::invalid_argument("omega0 must be negative and finite");
  }
  if (!std::isfinite(phase_origin)) throw std::invalid_argument("phase origin must be finite");
  if (unit_success) {
    const double target = constants.h * lambda / 4.0;
    if (std::abs(gamma - target) > 1e-12 * target) {
      throw std::invalid_argument("unit-success flag requires gamma = (h/4) lambda");
    }
  }
}

double profile_value(const ScenarioSpec& spec, double t) noexcept {
  const double x = spec.lambda * t;
  switch (spec.kind) {
    case ScenarioKind::ConstantField: return spec.gamma;
    case ScenarioKind::OscillatoryField: return spec.gamma * std::cos(x);
    case ScenarioKind::PowerLawField: return spec.gamma / ((1.0 + x) * (1.0 + x));
    case ScenarioKind::ExponentialField: return spec.gamma * std::exp(-x);
  }
  return 0.0;
}

double physical_window_end(const ScenarioSpec& spec) noexcept {
  if (spec.kind == ScenarioKind::OscillatoryField) return 0.5 * std::numbers::pi / spec.lambda;
  return std::numeric_limits<double>::infinity();
}

double transverse_intensity(const ScenarioSpec& spec, double t) {
  require_time_in_domain(spec, t);
  return profile_value(spec, t);
}

FieldComponents field_components(const ScenarioSpec& spec, double t) {
  const double intensity = transverse_intensity(spec, t);
  const double phase = spec.omega0 * t + spec.phase_origin;
  const double longitudinal =
      spec.longitudinal_override.value_or(-0.5 * spec.constants.hbar * spec.omega0);
  return {intensity * std::cos(phase), -intensity * std::sin(phase), longitudinal};
}

MagneticField magnetic_field(const ScenarioSpec& spec, double t) {
  const auto w = field_components(spec, t);
  // B = -(2mc / (e hbar)) w with e = -|e|.
  const double scale = 1.0 / spec.constants.bohr_magneton();
  MagneticField b{};
  b.bx = scale * w.wx;
  b.by = scale * w.wy;
  b.bz = scale * w.longitudinal;
  b.b_perp = scale * transverse_intensity(spec, t);
  b.b_par = std::abs(b.bz);
  return b;
}

double rabi_condition_residual(const ScenarioSpec& spec, double /*t*/) {
  // Omega / hbar; the resonant field is -omega0/2 in these units.
  const double longitudinal_rate = spec.longitudinal_override
                                       ? *spec.longitudinal_override / spec.constants.hbar
                                       : -0.5 * spec.omega0;
  return spec.omega0 + 2.0 * longitudinal_rate;
}

double lambda_of_gamma(double gamma, const PhysicalConstants& constants) {
  require_positive(gamma, "gamma");
  return 4.0 * gamma / constants.h;
}

double gamma_of_lambda(double lambda, const PhysicalConstants& constants) {
  require_positive(lambda, "lambda");
  return constants.h * lambda / 4.0;
}

double gamma_of_field(double b_perp, const PhysicalConstants& constants) {
  require_positive(b_perp, "field intensity");
  return constants.bohr_magneton() * b_perp;
}

}  // namespace entrogeo
