#pragma once

// Driving scenarios for a resonantly driven spin-1/2.
//
// The Hamiltonian is H(t) = w_x(t) sx + w_y(t) sy + Omega(t) sz with a complex
// transverse field w = w_x - i w_y = w_H(t) exp(i phi(t)) and a longitudinal
// field Omega. Every built-in scenario is locked on resonance:
//
//   dphi/dt = omega0,   Omega = -(hbar/2) omega0,   omega0 < 0,
//
// so only the transverse intensity w_H(t) distinguishes the four cases:
//
//   constant     w_H = Gamma
//   oscillatory  w_H = Gamma cos(lambda t)      (positive for lambda t <= pi/2)
//   power law    w_H = Gamma / (1 + lambda t)^2
//   exponential  w_H = Gamma exp(-lambda t)

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace entrogeo {

/// Unit system shared by every operation. All members are strictly positive.
struct PhysicalConstants {
  double hbar;
  double h;                  ///< 2 pi hbar
  double electron_mass;
  double elementary_charge;  ///< |e|
  double light_speed;

  /// e hbar / (2 m c).
  [[nodiscard]] double bohr_magneton() const noexcept;

  /// hbar = m = |e| = c = 1.
  [[nodiscard]] static PhysicalConstants natural() noexcept;
  /// CODATA 2018 values in SI units.
  [[nodiscard]] static PhysicalConstants mksa() noexcept;
  [[nodiscard]] static PhysicalConstants make(double hbar, double electron_mass,
                                              double elementary_charge,
                                              double light_speed);
};

enum class ScenarioKind { ConstantField, OscillatoryField, PowerLawField, ExponentialField };

inline constexpr std::array<ScenarioKind, 4> kAllScenarios{
    ScenarioKind::ConstantField, ScenarioKind::OscillatoryField,
    ScenarioKind::PowerLawField, ScenarioKind::ExponentialField};

/// Command-line spelling: constant | oscillatory | powerlaw | exponential.
[[nodiscard]] std::string_view scenario_name(ScenarioKind kind) noexcept;
[[nodiscard]] std::optional<ScenarioKind> parse_scenario(std::string_view name) noexcept;

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::ConstantField;
  double gamma = 1.0;    ///< field scale Gamma (energy)
  double lambda = 1.0;   ///< decay / oscillation rate (1/time); unused for ConstantField
  double omega0 = -1.0;  ///< carrier angular frequency, negative
  PhysicalConstants constants = PhysicalConstants::natural();
  double phase_origin = 0.0;  ///< phi(0)
  /// Requires Gamma = (h/4) lambda so that the success probability reaches one.
  bool unit_success = false;
  /// Replaces the resonant longitudinal field -(hbar/2) omega0. Off-resonance
  /// values exist only to exercise the resonance residual.
  std::optional<double> longitudinal_override;

  /// Spec with Gamma = hbar * gamma_over_hbar.
  [[nodiscard]] static ScenarioSpec from_rates(ScenarioKind kind, double gamma_over_hbar,
                                               double lambda,
                                               PhysicalConstants constants = PhysicalConstants::natural());
  /// Spec with Gamma = (h/4) lambda and the unit-success flag set.
  [[nodiscard]] static ScenarioSpec with_unit_success(ScenarioKind kind, double lambda,
                                                      PhysicalConstants constants = PhysicalConstants::natural());

  /// Gamma / hbar, the rate every probability formula depends on.
  [[nodiscard]] double rate() const noexcept { return gamma / constants.hbar; }

  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const;
};

struct FieldComponents {
  double wx;
  double wy;
  double longitudinal;  ///< Omega
};

struct MagneticField {
  double bx;
  double by;
  double bz;
  double b_perp;
  double b_par;
};

/// Profile value w_H(t) without any domain check. The oscillatory profile goes
/// negative past lambda t = pi/2; the propagator and Fisher formulas accept that.
[[nodiscard]] double profile_value(const ScenarioSpec& spec, double t) noexcept;

/// Upper end of the physical time window: (pi/2)/lambda for the oscillatory
/// field, +infinity otherwise.
[[nodiscard]] double physical_window_end(const ScenarioSpec& spec) noexcept;

/// w_H(t). Throws std::domain_error for t < 0 or past the oscillatory window.
[[nodiscard]] double transverse_intensity(const ScenarioSpec& spec, double t);

/// (w_x, w_y, Omega) with phi(t) = omega0 t + phi(0).
[[nodiscard]] FieldComponents field_components(const ScenarioSpec& spec, double t);

/// Laboratory field for an electron (charge -|e|): B = w / mu_Bohr componentwise.
[[nodiscard]] MagneticField magnetic_field(const ScenarioSpec& spec, double t);

/// dphi/dt + (2/hbar) Omega. Zero for every spec without a longitudinal override.
[[nodiscard]] double rabi_condition_residual(const ScenarioSpec& spec, double t);

/// lambda = 4 Gamma / h.
[[nodiscard]] double lambda_of_gamma(double gamma, const PhysicalConstants& constants);
/// Gamma = h lambda / 4.
[[nodiscard]] double gamma_of_lambda(double lambda, const PhysicalConstants& constants);

/// Transverse field scale Gamma = mu_Bohr * B_perp for an initial field intensity.
[[nodiscard]] double gamma_of_field(double b_perp, const PhysicalConstants& constants);

}  // namespace entrogeo
