#pragma once

// Minimum-action paths on the one-parameter Fisher manifold. With a single
// coordinate the geodesic equation reduces to
//
//   theta'' + (1/(2F)) (dF/dtheta) theta'^2 = 0,
//
// whose first integral F(theta) theta'^2 is conserved along every solution.

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "entrogeo/infogeo.hpp"
#include "entrogeo/scenario.hpp"

namespace entrogeo {

struct InitialConditions {
  double theta0 = 1.0;
  double thetadot0 = 1.0;
  double xi0 = 0.0;

  /// theta0 > 0, thetadot0 > 0, xi0 >= 0. Throws std::domain_error.
  void validate() const;
};

/// Interval [lower, upper) of the affine parameter on which a solution is real,
/// finite and keeps theta >= 0.
struct ValidityInterval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  [[nodiscard]] bool contains(double xi) const noexcept { return xi >= lower && xi < upper; }
};

enum class GeodesicForm {
  Exact,
  /// The oscillatory path with theta linear in arcsin(lambda xi). It does not
  /// solve the geodesic equation for generic initial conditions and is kept only
  /// so the residual check can show that.
  Uncorrected,
};

class GeodesicSolution {
 public:
  [[nodiscard]] ScenarioKind kind() const noexcept { return spec_.kind; }
  [[nodiscard]] const InitialConditions& ic() const noexcept { return ic_; }
  [[nodiscard]] const ValidityInterval& validity() const noexcept { return validity_; }
  [[nodiscard]] GeodesicForm form() const noexcept { return form_; }

  /// theta(xi); std::domain_error outside the validity interval.
  [[nodiscard]] double theta(double xi) const;
  /// dtheta/dxi.
  [[nodiscard]] double rate(double xi) const;
  /// Evaluator pair with the exact derivative, for the path functionals.
  [[nodiscard]] Curve curve() const;

 private:
  friend GeodesicSolution geodesic_closed_form(const ScenarioSpec&, const InitialConditions&);
  friend GeodesicSolution uncorrected_oscillatory(const ScenarioSpec&, const InitialConditions&);

  GeodesicSolution(const ScenarioSpec& spec, const InitialConditions& ic, GeodesicForm form);
  void require_valid(double xi) const;

  ScenarioSpec spec_;
  InitialConditions ic_;
  GeodesicForm form_;
  ValidityInterval validity_;
  long branch_ = 0;  // oscillatory: index k of the cell |lambda theta - k pi| < pi/2
};

struct NumericPath {
  std::vector<double> xi;
  std::vector<double> theta;
  std::vector<double> thetadot;
  /// max |theta_h - theta_{h/2}| over the grid.
  double convergence_estimate = 0.0;
};

/// Raised when the integration grid runs into a singular boundary.
class SingularApproach : public std::domain_error {
 public:
  SingularApproach(const std::string& what, double last_valid_xi, NumericPath partial)
      : std::domain_error(what), last_valid_xi_(last_valid_xi), partial_(std::move(partial)) {}
  [[nodiscard]] double last_valid_xi() const noexcept { return last_valid_xi_; }
  [[nodiscard]] const NumericPath& partial() const noexcept { return partial_; }

 private:
  double last_valid_xi_;
  NumericPath partial_;
};

/// (1/(2F)) dF/dtheta: 0, -lambda tan(lambda theta), -2 lambda/(1 + lambda theta), -lambda.
/// Throws std::domain_error where the oscillatory Fisher information vanishes.
[[nodiscard]] double connection_coefficient(const ScenarioSpec& spec, double theta);

[[nodiscard]] GeodesicSolution geodesic_closed_form(const ScenarioSpec& spec,
                                                    const InitialConditions& ic);
[[nodiscard]] GeodesicSolution uncorrected_oscillatory(const ScenarioSpec& spec,
                                                     const InitialConditions& ic);

/// Fraction of the way left before the geodesic hits its singular boundary:
/// 1 - lambda thetadot0 (xi - xi0) for the exponential field, 1 - |arcsin argument|
/// for the oscillatory field, 1 - (xi - xi0)/A for the power law, 1 for the constant field.
[[nodiscard]] double singularity_margin(const ScenarioSpec& spec, const InitialConditions& ic,
                                        double xi);

/// Classical RK4 on (theta, theta') from xi0 through the grid, which must start at
/// xi0 and increase. Steps are at most max_step and shrink near singular
/// boundaries. The run is repeated at max_step/2 to fill convergence_estimate.
[[nodiscard]] NumericPath geodesic_numeric(const ScenarioSpec& spec, const InitialConditions& ic,
                                           std::span<const double> xi_grid,
                                           double max_step = 1e-4);

/// theta'' + (1/(2F)) dF/dtheta theta'^2 with five-point central differences of step h.
[[nodiscard]] double ode_residual(const ScenarioSpec& spec,
                                  const std::function<double(double)>& theta, double xi,
                                  double h = 1e-3);
/// As above; std::domain_error if the stencil leaves the validity interval.
[[nodiscard]] double ode_residual(const ScenarioSpec& spec, const GeodesicSolution& solution,
                                  double xi, double h = 1e-3);
/// Uses the integrated theta' and a five-point derivative of it on the grid;
/// index must leave two samples on either side.
[[nodiscard]] double ode_residual(const ScenarioSpec& spec, const NumericPath& path,
                                  std::size_t index);

/// Length and divergence of an arbitrary path over [xi_begin, xi_begin + tau].
[[nodiscard]] PathFunctionals action_of_path(const ScenarioSpec& spec, MetricConvention convention,
                                             const Curve& curve, double xi_begin, double tau);

/// Action of the geodesic perturbed by eps sin(k pi (xi - xi0)/tau), endpoints fixed.
/// Throws std::domain_error if the perturbed path leaves the scenario domain.
[[nodiscard]] PathFunctionals perturbed_action(const ScenarioSpec& spec,
                                               MetricConvention convention,
                                               const InitialConditions& ic, double tau,
                                               double amplitude, int mode);

}  // namespace entrogeo
