#pragma once

// Fisher information of the two-outcome family p(theta) = (p_w, p_perp) and the
// entropic length / divergence functionals of paths theta(xi) on it.
//
// The Riemannian metric is g = kappa^2 F. kappa = 1/2 reproduces the published
// entropic speeds (Gamma/hbar) theta_dot for the constant field; kappa = 1 is the
// literal Fisher metric, which doubles every speed.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "entrogeo/scenario.hpp"

namespace entrogeo {

class MetricConvention {
 public:
  /// kappa = 1/2 (default).
  MetricConvention() = default;
  [[nodiscard]] static MetricConvention half() noexcept { return MetricConvention{0.5}; }
  [[nodiscard]] static MetricConvention fisher() noexcept { return MetricConvention{1.0}; }
  /// Accepts only 1 and 1/2; throws std::invalid_argument otherwise.
  [[nodiscard]] static MetricConvention from_kappa(double kappa);
  /// No validation. Used to inject a wrong normalization when exercising the verifier.
  [[nodiscard]] static MetricConvention unchecked(double kappa) noexcept {
    return MetricConvention{kappa};
  }

  [[nodiscard]] double kappa() const noexcept { return kappa_; }
  friend bool operator==(const MetricConvention&, const MetricConvention&) = default;

 private:
  explicit MetricConvention(double kappa) noexcept : kappa_(kappa) {}
  double kappa_ = 0.5;
};

/// Sampled (theta, p_w, p_perp) triples.
class ProbabilityPath {
 public:
  /// Checks p_w + p_perp = 1 (1e-12), probabilities in [0, 1] and a strictly
  /// increasing theta grid of at least three samples.
  ProbabilityPath(std::vector<double> theta, std::vector<double> p_w, std::vector<double> p_perp,
                  std::optional<ScenarioSpec> source = std::nullopt);

  /// Closed-form probabilities of a scenario on the given grid.
  [[nodiscard]] static ProbabilityPath sample(const ScenarioSpec& spec, std::vector<double> theta);

  [[nodiscard]] std::span<const double> theta() const noexcept { return theta_; }
  [[nodiscard]] std::span<const double> p_w() const noexcept { return p_w_; }
  [[nodiscard]] std::span<const double> p_perp() const noexcept { return p_perp_; }
  [[nodiscard]] const std::optional<ScenarioSpec>& source() const noexcept { return source_; }

 private:
  std::vector<double> theta_;
  std::vector<double> p_w_;
  std::vector<double> p_perp_;
  std::optional<ScenarioSpec> source_;
};

/// Closed-form Fisher information of a scenario.
[[nodiscard]] double fisher_analytic(const ScenarioSpec& spec, double theta);

/// (dp_w/dtheta)^2 / (p_w p_perp) from a local polynomial fit through the five
/// nearest samples (three on a three-sample path). The derivative is taken on
/// whichever probability is smaller.
/// Where p_w p_perp < 1e-12 the analytic limit 4 (du/dtheta)^2 of the source
/// scenario is returned. Throws std::domain_error outside the open grid range.
[[nodiscard]] double fisher_numeric(const ProbabilityPath& path, double theta);

/// Variance of the score d log p_i / dtheta over the two outcomes.
[[nodiscard]] double fisher_score_variance(const ProbabilityPath& path, double theta);

/// g(theta) = kappa^2 F(theta).
[[nodiscard]] double metric(MetricConvention convention, const ScenarioSpec& spec, double theta);

/// A path theta(xi) with an optional exact derivative. Without one, the
/// derivative is a fourth-order central difference.
struct Curve {
  std::function<double(double)> theta;
  std::function<double(double)> rate;

  [[nodiscard]] double derivative(double xi) const;
};

struct PathFunctionals {
  double length = 0.0;      ///< L = int sqrt(g) |theta'| dxi
  double divergence = 0.0;  ///< I = tau int g theta'^2 dxi
  double tau = 0.0;
};

/// Functionals of a sampled path. Derivatives by central differences, integrals by
/// composite Simpson over the samples. tau is the span of the xi grid.
[[nodiscard]] double path_length(const ScenarioSpec& spec, MetricConvention convention,
                                 std::span<const double> xi, std::span<const double> theta);
[[nodiscard]] double path_divergence(const ScenarioSpec& spec, MetricConvention convention,
                                     std::span<const double> xi, std::span<const double> theta);

/// Functionals of a continuous path over [xi_begin, xi_begin + tau], integrated by
/// refined Simpson to 1e-10 relative.
[[nodiscard]] PathFunctionals path_functionals(const ScenarioSpec& spec,
                                               MetricConvention convention, const Curve& curve,
                                               double xi_begin, double tau);

}  // namespace entrogeo
