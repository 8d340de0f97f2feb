#pragma once

// Entropic speed, entropy production rate and efficiency along optimum paths,
// and the comparison of the four driving scenarios.

#include <span>
#include <string>
#include <vector>

#include "entrogeo/geodesic.hpp"
#include "entrogeo/infogeo.hpp"
#include "entrogeo/scenario.hpp"

namespace entrogeo {

/// kappa sqrt(F(theta0)) thetadot0. Constant along the geodesic through ic.
[[nodiscard]] double entropic_speed(const ScenarioSpec& spec, MetricConvention convention,
                                    const InitialConditions& ic);

/// kappa sqrt(F(theta(xi))) theta'(xi) on a solved geodesic.
[[nodiscard]] double sampled_speed(const ScenarioSpec& spec, MetricConvention convention,
                                   const GeodesicSolution& solution, double xi);

/// r_E = v_E^2.
[[nodiscard]] double entropy_production_rate(const ScenarioSpec& spec, MetricConvention convention,
                                             const InitialConditions& ic);

/// dI/dtau of the divergence accumulated along the geodesic from xi0, by a central
/// difference in tau. Equals 2 tau v_E^2 on constant-speed paths.
[[nodiscard]] double entropy_production_rate_literal(const ScenarioSpec& spec,
                                                     MetricConvention convention,
                                                     const InitialConditions& ic, double tau);

struct Efficiency {
  int normalizer = 0;              ///< r = max ceil(r_E)
  std::vector<double> efficiency;  ///< 1 - r_E / r, in input order
};

/// Throws std::invalid_argument on an empty list or a non-positive rate.
[[nodiscard]] Efficiency efficiency(std::span<const double> rates);

/// Unit-scale speed factors at fixed Gamma/hbar and thetadot0:
/// 1, |cos(lambda theta0)|, (1 + lambda theta0)^-2, exp(-lambda theta0).
[[nodiscard]] double speed_factor(ScenarioKind kind, double lambda, double theta0);

struct SpeedOrdering {
  /// Slowest first; scenarios with equal speed (1e-12 relative) share a group.
  std::vector<std::vector<ScenarioKind>> groups;
  /// exponential <= power law <= oscillatory <= constant holds at (lambda, theta0).
  bool chain_holds = false;
};

[[nodiscard]] SpeedOrdering speed_ordering(double lambda, double theta0);

struct RegionSample {
  double lambda = 0.0;
  double theta0 = 0.0;
  double f_p = 0.0;  ///< exp(lambda theta0) / (1 + lambda theta0)^2
  bool exponential_faster = false;
};

/// Membership of (lambda, theta0) in the region where the exponential field yields
/// the faster geodesic. Computed from f_P < 1 and cross-checked against the speeds.
[[nodiscard]] RegionSample region_membership(double lambda, double theta0);

/// Non-zero root of exp(x) = (1 + x)^2, by bisection on [2, 3] to 1e-12.
[[nodiscard]] double region_boundary();

struct ReportParameters {
  double gamma_over_hbar = 0.5;
  double lambda = 0.3183098861837907;  // 1/pi
  double theta0 = 1.0;
  double thetadot0 = 1.0;
  double xi0 = 0.0;
  double omega0 = -31.41592653589793;  // -10 pi
  PhysicalConstants constants = PhysicalConstants::natural();
  /// lambda = 4 Gamma / h instead of the explicit value.
  bool coupled_lambda = false;
};

struct ScenarioEntry {
  ScenarioKind kind;
  double speed;
  double rate;
  double efficiency;
  std::string search_label;  ///< "Grover-like" or "fixed-point-like"
  std::string speed_label;   ///< "higher", "high", "low" or "lower"
};

struct EntropicReport {
  std::vector<ScenarioEntry> entries;  ///< in kAllScenarios order
  int normalizer = 0;
  MetricConvention convention;
  ReportParameters parameters;  ///< with the lambda actually used
};

[[nodiscard]] ScenarioSpec scenario_spec(ScenarioKind kind, const ReportParameters& parameters);

[[nodiscard]] EntropicReport scenario_report(const ReportParameters& parameters,
                                             MetricConvention convention);

}  // namespace entrogeo
