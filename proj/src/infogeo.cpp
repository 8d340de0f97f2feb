#include "entrogeo/infogeo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "entrogeo/quadrature.hpp"
#include "entrogeo/quantum.hpp"

namespace entrogeo {

namespace {

constexpr double kEndpointGuard = 1e-12;

struct LocalFit {
  double p_w;
  double p_perp;
  double dp_w;
  double dp_perp;
};

// Lagrange interpolation through the (up to) five nodes nearest theta.
LocalFit local_fit(const ProbabilityPath& path, double theta) {
  const auto grid = path.theta();
  const std::size_t n = grid.size();
  if (!(theta > grid.front() && theta < grid.back())) {
    throw std::domain_error("theta must lie strictly inside the sampled grid");
  }
  auto upper = std::upper_bound(grid.begin(), grid.end(), theta);
  auto nearest = static_cast<std::size_t>(upper - grid.begin());
  if (nearest > 0 && theta - grid[nearest - 1] < grid[nearest] - theta) --nearest;

  const std::size_t width = std::min<std::size_t>(5, n);
  const std::size_t half = width / 2;
  const std::size_t first = std::min(nearest > half ? nearest - half : 0, n - width);

  const auto pw = path.p_w();
  const auto pp = path.p_perp();
  LocalFit fit{0.0, 0.0, 0.0, 0.0};
  for (std::size_t j = first; j < first + width; ++j) {
    double denom = 1.0;
    double value = 1.0;
    double slope = 0.0;
    for (std::size_t k = first; k < first + width; ++k) {
      if (k == j) continue;
      denom *= grid[j] - grid[k];
      // d/dtheta of prod (theta - x_k), accumulated alongside the product.
      slope = slope * (theta - grid[k]) + value;
      value *= theta - grid[k];
    }
    fit.p_w += value / denom * pw[j];
    fit.p_perp += value / denom * pp[j];
    fit.dp_w += slope / denom * pw[j];
    fit.dp_perp += slope / denom * pp[j];
  }
  return fit;
}

double endpoint_limit(const ProbabilityPath& path, double theta) {
  if (!path.source()) {
    throw std::domain_error("Fisher information is singular at a probability endpoint and the "
                            "path has no source scenario");
  }
  const double rate = phase_rate(*path.source(), theta);
  return 4.0 * rate * rate;
}

void require_nonnegative(double theta) {
  if (!(theta >= 0.0)) throw std::domain_error("theta must be non-negative");
}

}  // namespace

MetricConvention MetricConvention::from_kappa(double kappa) {
  if (kappa == 1.0) return fisher();
  if (kappa == 0.5) return half();
  throw std::invalid_argument("kappa must be 1 or 0.5, got " + std::to_string(kappa));
}

ProbabilityPath::ProbabilityPath(std::vector<double> theta, std::vector<double> p_w,
                                 std::vector<double> p_perp, std::optional<ScenarioSpec> source)
    : theta_(std::move(theta)), p_w_(std::move(p_w)), p_perp_(std::move(p_perp)),
      source_(std::move(source)) {
  if (theta_.size() != p_w_.size() || theta_.size() != p_perp_.size()) {
    throw std::invalid_argument("probability path arrays differ in length");
  }
  if (theta_.size() < 3) throw std::invalid_argument("probability path needs three samples");
  for (std::size_t i = 0; i < theta_.size(); ++i) {
    if (i > 0 && !(theta_[i] > theta_[i - 1])) {
      throw std::invalid_argument("theta grid must be strictly increasing");
    }
    const bool in_range = p_w_[i] >= 0.0 && p_w_[i] <= 1.0 && p_perp_[i] >= 0.0 && p_perp_[i] <= 1.0;
    if (!in_range || std::abs(p_w_[i] + p_perp_[i] - 1.0) > 1e-12) {
      throw std::invalid_argument("invalid probability pair at sample " + std::to_string(i));
    }
  }
}

ProbabilityPath ProbabilityPath::sample(const ScenarioSpec& spec, std::vector<double> theta) {
  std::vector<double> p_w(theta.size());
  std::vector<double> p_perp(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    p_w[i] = analytic_success_probability(spec, theta[i]);
    p_perp[i] = analytic_failure_probability(spec, theta[i]);
  }
  return ProbabilityPath(std::move(theta), std::move(p_w), std::move(p_perp), spec);
}

double fisher_analytic(const ScenarioSpec& spec, double theta) {
  require_nonnegative(theta);
  const double base = 4.0 * spec.rate() * spec.rate();
  const double x = spec.lambda * theta;
  switch (spec.kind) {
    case ScenarioKind::ConstantField: return base;
    case ScenarioKind::OscillatoryField: return base * std::cos(x) * std::cos(x);
    case ScenarioKind::PowerLawField: return base / std::pow(1.0 + x, 4);
    case ScenarioKind::ExponentialField: return base * std::exp(-2.0 * x);
  }
  return 0.0;
}

double fisher_numeric(const ProbabilityPath& path, double theta) {
  const LocalFit fit = local_fit(path, theta);
  const double denominator = fit.p_w * fit.p_perp;
  if (denominator < kEndpointGuard) return endpoint_limit(path, theta);
  // Near p_w = 1 the failure probability carries the relative precision.
  const double slope = fit.p_w <= fit.p_perp ? fit.dp_w : fit.dp_perp;
  return slope * slope / denominator;
}

double fisher_score_variance(const ProbabilityPath& path, double theta) {
  const LocalFit fit = local_fit(path, theta);
  if (fit.p_w * fit.p_perp < kEndpointGuard) return endpoint_limit(path, theta);
  const double score_w = fit.dp_w / fit.p_w;
  const double score_perp = fit.dp_perp / fit.p_perp;
  const double mean = fit.p_w * score_w + fit.p_perp * score_perp;
  return fit.p_w * (score_w - mean) * (score_w - mean) +
         fit.p_perp * (score_perp - mean) * (score_perp - mean);
}

double metric(MetricConvention convention, const ScenarioSpec& spec, double theta) {
  const double k = convention.kappa();
  return k * k * fisher_analytic(spec, theta);
}

double Curve::derivative(double xi) const {
  if (rate) return rate(xi);
  const double h = 1e-3 * std::max(1.0, std::abs(xi));
  return (theta(xi - 2.0 * h) - 8.0 * theta(xi - h) + 8.0 * theta(xi + h) - theta(xi + 2.0 * h)) /
         (12.0 * h);
}

namespace {

std::vector<double> metric_speed_squared(const ScenarioSpec& spec, MetricConvention convention,
                                         std::span<const double> xi, std::span<const double> theta) {
  if (xi.size() != theta.size()) throw std::invalid_argument("xi and theta differ in length");
  if (xi.size() < 3) throw std::invalid_argument("a sampled path needs at least three samples");
  std::vector<double> rate(xi.size());
  differentiate_samples(xi, theta, rate);
  std::vector<double> integrand(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    integrand[i] = metric(convention, spec, theta[i]) * rate[i] * rate[i];
  }
  return integrand;
}

}  // namespace

double path_length(const ScenarioSpec& spec, MetricConvention convention,
                   std::span<const double> xi, std::span<const double> theta) {
  auto integrand = metric_speed_squared(spec, convention, xi, theta);
  for (double& v : integrand) v = std::sqrt(v);
  return integrate_samples(xi, integrand);
}

double path_divergence(const ScenarioSpec& spec, MetricConvention convention,
                       std::span<const double> xi, std::span<const double> theta) {
  const auto integrand = metric_speed_squared(spec, convention, xi, theta);
  const double tau = xi.back() - xi.front();
  return tau * integrate_samples(xi, integrand);
}

PathFunctionals path_functionals(const ScenarioSpec& spec, MetricConvention convention,
                                 const Curve& curve, double xi_begin, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  if (!curve.theta) throw std::invalid_argument("curve has no evaluator");
  auto speed_squared = [&](double xi) {
    const double rate = curve.derivative(xi);
    return metric(convention, spec, curve.theta(xi)) * rate * rate;
  };
  PathFunctionals out;
  out.tau = tau;
  out.length = integrate([&](double xi) { return std::sqrt(speed_squared(xi)); }, xi_begin,
                         xi_begin + tau)
                   .value;
  out.divergence = tau * integrate(speed_squared, xi_begin, xi_begin + tau).value;
  return out;
}

}  // namespace entrogeo
