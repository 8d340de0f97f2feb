#include "entrogeo/entropic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entrogeo {

double entropic_speed(const ScenarioSpec& spec, MetricConvention convention,
                      const InitialConditions& ic) {
  ic.validate();
  return convention.kappa() * std::sqrt(fisher_analytic(spec, ic.theta0)) * ic.thetadot0;
}

double sampled_speed(const ScenarioSpec& spec, MetricConvention convention,
                     const GeodesicSolution& solution, double xi) {
  return convention.kappa() * std::sqrt(fisher_analytic(spec, solution.theta(xi))) *
         solution.rate(xi);
}

double entropy_production_rate(const ScenarioSpec& spec, MetricConvention convention,
                               const InitialConditions& ic) {
  const double v = entropic_speed(spec, convention, ic);
  return v * v;
}

double entropy_production_rate_literal(const ScenarioSpec& spec, MetricConvention convention,
                                       const InitialConditions& ic, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  const GeodesicSolution geo = geodesic_closed_form(spec, ic);
  const double delta = 1e-4 * tau;
  if (!geo.validity().contains(ic.xi0 + tau + delta)) {
    throw std::domain_error("tau exceeds the geodesic validity interval");
  }
  const Curve curve = geo.curve();
  const auto divergence = [&](double span) {
    return path_functionals(spec, convention, curve, ic.xi0, span).divergence;
  };
  return (divergence(tau + delta) - divergence(tau - delta)) / (2.0 * delta);
}

Efficiency efficiency(std::span<const double> rates) {
  if (rates.empty()) throw std::invalid_argument("efficiency needs at least one rate");
  double top = 0.0;
  for (double r : rates) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("entropy production rates must be positive and finite");
    }
    top = std::max(top, std::ceil(r));
  }
  Efficiency out;
  out.normalizer = static_cast<int>(top);
  out.efficiency.reserve(rates.size());
  for (double r : rates) out.efficiency.push_back(1.0 - r / top);
  return out;
}

double speed_factor(ScenarioKind kind, double lambda, double theta0) {
  const double x = lambda * theta0;
  switch (kind) {
    case ScenarioKind::ConstantField: return 1.0;
    case ScenarioKind::OscillatoryField: return std::abs(std::cos(x));
    case ScenarioKind::PowerLawField: return 1.0 / ((1.0 + x) * (1.0 + x));
    case ScenarioKind::ExponentialField: return std::exp(-x);
  }
  return 0.0;
}

SpeedOrdering speed_ordering(double lambda, double theta0) {
  if (!(lambda > 0.0) || !(theta0 > 0.0)) {
    throw std::invalid_argument("lambda and theta0 must be positive");
  }
  std::vector<std::pair<double, ScenarioKind>> ranked;
  for (auto kind : kAllScenarios) ranked.emplace_back(speed_factor(kind, lambda, theta0), kind);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  SpeedOrdering out;
  double group_value = -1.0;
  for (const auto& [value, kind] : ranked) {
    const bool tie = !out.groups.empty() &&
                     std::abs(value - group_value) <= 1e-12 * std::max(value, group_value);
    if (!tie) {
      out.groups.emplace_back();
      group_value = value;
    }
    out.groups.back().push_back(kind);
  }

  const double e = speed_factor(ScenarioKind::ExponentialField, lambda, theta0);
  const double p = speed_factor(ScenarioKind::PowerLawField, lambda, theta0);
  const double o = speed_factor(ScenarioKind::OscillatoryField, lambda, theta0);
  out.chain_holds = e <= p && p <= o && o <= 1.0;
  return out;
}

RegionSample region_membership(double lambda, double theta0) {
  if (!(lambda > 0.0) || !(theta0 > 0.0)) {
    throw std::invalid_argument("lambda and theta0 must be positive");
  }
  const double x = lambda * theta0;
  RegionSample out{lambda, theta0, std::exp(x) / ((1.0 + x) * (1.0 + x)), false};
  const bool by_speed = speed_factor(ScenarioKind::ExponentialField, lambda, theta0) >
                        speed_factor(ScenarioKind::PowerLawField, lambda, theta0);
  const bool by_ratio = out.f_p < 1.0;
  // The two predicates can only differ by rounding right at the boundary.
  if (by_speed != by_ratio && std::abs(out.f_p - 1.0) > 1e-12) {
    throw std::logic_error("region predicate disagrees with the speed comparison");
  }
  out.exponential_faster = by_speed;
  return out;
}

double region_boundary() {
  auto f = [](double x) { return std::exp(x) - (1.0 + x) * (1.0 + x); };
  double lo = 2.0;
  double hi = 3.0;
  // f(2) < 0 < f(3)
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ScenarioSpec scenario_spec(ScenarioKind kind, const ReportParameters& parameters) {
  ScenarioSpec spec;
  spec.kind = kind;
  spec.constants = parameters.constants;
  spec.gamma = parameters.gamma_over_hbar * parameters.constants.hbar;
  spec.lambda = parameters.coupled_lambda ? lambda_of_gamma(spec.gamma, spec.constants)
                                          : parameters.lambda;
  spec.omega0 = parameters.omega0;
  spec.validate();
  return spec;
}

EntropicReport scenario_report(const ReportParameters& parameters, MetricConvention convention) {
  const InitialConditions ic{parameters.theta0, parameters.thetadot0, parameters.xi0};
  ic.validate();

  EntropicReport report;
  report.convention = convention;
  report.parameters = parameters;
  std::vector<double> rates;
  for (auto kind : kAllScenarios) {
    const ScenarioSpec spec = scenario_spec(kind, parameters);
    report.parameters.lambda = spec.lambda;
    ScenarioEntry entry{kind, entropic_speed(spec, convention, ic), 0.0, 0.0, {}, {}};
    entry.rate = entry.speed * entry.speed;
    const bool periodic = kind == ScenarioKind::ConstantField || kind == ScenarioKind::OscillatoryField;
    entry.search_label = periodic ? "Grover-like" : "fixed-point-like";
    switch (kind) {
      case ScenarioKind::ConstantField: entry.speed_label = "higher"; break;
      case ScenarioKind::OscillatoryField: entry.speed_label = "high"; break;
      case ScenarioKind::PowerLawField: entry.speed_label = "low"; break;
      case ScenarioKind::ExponentialField: entry.speed_label = "lower"; break;
    }
    rates.push_back(entry.rate);
    report.entries.push_back(std::move(entry));
  }
  const Efficiency eff = efficiency(rates);
  report.normalizer = eff.normalizer;
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    report.entries[i].efficiency = eff.efficiency[i];
  }
  return report;
}

}  // namespace entrogeo
