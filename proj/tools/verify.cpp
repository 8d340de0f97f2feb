#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "commands.hpp"
#include "entrogeo/entropic.hpp"
#include "entrogeo/geodesic.hpp"
#include "entrogeo/infogeo.hpp"
#include "entrogeo/quantum.hpp"

namespace entrogeo::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Check {
  std::string name;
  double value;
  std::string relation;  // "<", "<=" or ">"
  double limit;

  [[nodiscard]] bool passed() const {
    if (relation == "<") return value < limit;
    if (relation == "<=") return value <= limit;
    return value > limit;
  }
};

// Uniform doubles from the raw engine output, independent of the standard
// library's distribution implementation.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}
  double operator()(double lo, double hi) {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
  }

 private:
  std::mt19937_64 engine_;
};

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / (n - 1);
  return out;
}

double relative(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

Check schrodinger(const RunConfig& config) {
  const int steps = config.sampling.steps;
  double worst = 0.0;
  for (auto kind : kAllScenarios) {
    const ScenarioSpec spec = spec_of(kind, config);
    const auto run = propagate_schrodinger(spec, config.sampling.theta_max, steps);
    for (int i = 1; i <= 50; ++i) {
      const auto k = static_cast<std::size_t>(std::lround(steps * i / 50.0));
      const double exact = analytic_success_probability(spec, run.time_grid[k]);
      worst = std::max(worst, std::abs(run.success_probability[k] - exact));
    }
  }
  return {"schrodinger_vs_closed_form", worst, "<", 1e-6};
}

std::vector<Check> fisher_checks(const RunConfig& config) {
  const double top = config.sampling.theta_max;
  const double bottom = std::min(0.05, 0.5 * top);
  double numeric_worst = 0.0;
  double identity_worst = 0.0;
  for (auto kind : kAllScenarios) {
    const ScenarioSpec spec = spec_of(kind, config);
    const auto grid = linspace(0.0, top + 1e-3, static_cast<std::size_t>(std::ceil((top + 1e-3) / 1e-4)) + 1);
    const auto path = ProbabilityPath::sample(spec, grid);
    for (double theta : linspace(bottom, top, 200)) {
      const double exact = fisher_analytic(spec, theta);
      numeric_worst = std::max(numeric_worst, relative(fisher_numeric(path, theta), exact));
      const double rate = phase_rate(spec, theta);
      identity_worst = std::max(identity_worst, relative(4.0 * rate * rate, exact));
    }
  }
  return {{"fisher_numeric_vs_closed_form", numeric_worst, "<", 1e-6},
          {"fisher_identity", identity_worst, "<", 1e-12}};
}

std::vector<Check> geodesic_checks(const RunConfig& config, const InitialConditions& ic) {
  const MetricConvention convention = convention_of(config);
  const double tau = config.parameters.tau;
  double residual_worst = 0.0;
  double gap_worst = 0.0;
  double spread_worst = 0.0;
  for (auto kind : kAllScenarios) {
    const ScenarioSpec spec = spec_of(kind, config);
    const GeodesicSolution geo = geodesic_closed_form(spec, ic);
    const double room = geo.validity().upper - ic.xi0;

    const double interior = std::min(tau, 0.5 * room);
    for (int i = 1; i <= 50; ++i) {
      const double xi = ic.xi0 + interior * i / 51.0;
      residual_worst = std::max(residual_worst, std::abs(ode_residual(spec, geo, xi)));
    }

    const double span = std::min(tau, 0.9 * room);
    const auto grid = linspace(ic.xi0, ic.xi0 + span, 101);
    const NumericPath path = geodesic_numeric(spec, ic, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      gap_worst = std::max(gap_worst, std::abs(path.theta[i] - geo.theta(grid[i])));
    }

    std::vector<double> speeds;
    for (double xi : linspace(ic.xi0, ic.xi0 + span, 200)) {
      speeds.push_back(sampled_speed(spec, convention, geo, xi));
    }
    const double mean = std::accumulate(speeds.begin(), speeds.end(), 0.0) / speeds.size();
    double variance = 0.0;
    for (double v : speeds) variance += (v - mean) * (v - mean);
    spread_worst = std::max(spread_worst, std::sqrt(variance / speeds.size()) / mean);
  }
  return {{"geodesic_residual", residual_worst, "<", 1e-8},
          {"closed_form_vs_rk4", gap_worst, "<", 1e-7},
          {"constant_speed", spread_worst, "<", 1e-7}};
}

Check minimum_action(const RunConfig& config, const InitialConditions& ic) {
  const MetricConvention convention = convention_of(config);
  const double tau = config.parameters.tau;
  Uniform uniform(7);
  double worst = 0.0;
  for (auto kind : kAllScenarios) {
    const ScenarioSpec spec = spec_of(kind, config);
    const PathFunctionals base = perturbed_action(spec, convention, ic, tau, 0.0, 1);
    for (int n = 0; n < 20; ++n) {
      double eps = (n % 2 ? -1.0 : 1.0) * uniform(0.02, 0.1) * ic.theta0;
      const int mode = 1 + n % 3;
      for (;;) {
        try {
          const PathFunctionals p = perturbed_action(spec, convention, ic, tau, eps, mode);
          worst = std::max({worst, base.length - p.length, base.divergence - p.divergence});
          break;
        } catch (const std::domain_error&) {
          eps *= 0.5;
        }
      }
    }
  }
  return {"minimum_action", std::max(worst, 0.0), "<=", 1e-9};
}

std::vector<Check> cauchy_schwarz(const RunConfig& config, const InitialConditions& ic) {
  const MetricConvention convention = convention_of(config);
  const double tau = config.parameters.tau;
  Uniform uniform(11);
  double violation = 0.0;
  double equality = 0.0;
  for (auto kind : kAllScenarios) {
    const ScenarioSpec spec = spec_of(kind, config);
    for (int n = 0; n < 100; ++n) {
      // Monotone paths keep sqrt(g)|theta'| smooth, so the quadrature stays cheap;
      // each sine term moves the rate by at most a quarter of the slope.
      const double slope = uniform(0.5, 1.5) * ic.thetadot0;
      double c[3];
      for (int k = 0; k < 3; ++k) c[k] = uniform(-0.25, 0.25) * slope * tau / ((k + 1) * kPi);
      const auto theta = [=](double xi) {
        const double s = xi - ic.xi0;
        double v = ic.theta0 + slope * s;
        for (int k = 0; k < 3; ++k) v += c[k] * std::sin((k + 1) * kPi * s / tau);
        return v;
      };
      const auto rate = [=](double xi) {
        const double s = xi - ic.xi0;
        double v = slope;
        for (int k = 0; k < 3; ++k) v += c[k] * (k + 1) * kPi / tau * std::cos((k + 1) * kPi * s / tau);
        return v;
      };
      const auto f = path_functionals(spec, convention, Curve{theta, rate}, ic.xi0, tau);
      violation = std::max(violation, f.length * f.length - f.divergence);
    }
    const GeodesicSolution geo = geodesic_closed_form(spec, ic);
    const double unit = std::min(1.0, 0.9 * (geo.validity().upper - ic.xi0));
    const auto g = action_of_path(spec, convention, geo.curve(), ic.xi0, unit);
    // constant speed v: L = tau v and I = tau^2 v^2
    equality = std::max(equality, relative(g.divergence, g.length * g.length));
  }
  return {{"cauchy_schwarz", std::max(violation, 0.0), "<=", 1e-9},
          {"cauchy_schwarz_equality", equality, "<", 1e-8}};
}

std::vector<Check> speed_checks(const RunConfig& config, const InitialConditions& ic,
                                std::optional<double> fault_kappa) {
  const double kappa = config.parameters.kappa;
  const MetricConvention used =
      fault_kappa ? MetricConvention::unchecked(*fault_kappa) : convention_of(config);
  double speed_worst = 0.0;
  double rate_worst = 0.0;
  for (auto kind : kAllScenarios) {
    const ScenarioSpec spec = spec_of(kind, config);
    const double x = spec.lambda * ic.theta0;
    double factor = 1.0;
    switch (kind) {
      case ScenarioKind::ConstantField: factor = 1.0; break;
      case ScenarioKind::OscillatoryField: factor = std::fabs(std::cos(x)); break;
      case ScenarioKind::PowerLawField: factor = 1.0 / ((1.0 + x) * (1.0 + x)); break;
      case ScenarioKind::ExponentialField: factor = std::exp(-x); break;
    }
    const double expected = 2.0 * kappa * spec.rate() * factor * ic.thetadot0;
    const double v = entropic_speed(spec, used, ic);
    speed_worst = std::max(speed_worst, relative(v, expected));
    rate_worst = std::max(rate_worst, relative(entropy_production_rate(spec, used, ic), v * v));
  }

  const EntropicReport report = scenario_report(report_parameters_of(config), convention_of(config));
  double top = 0.0;
  for (const auto& e : report.entries) top = std::max(top, std::ceil(e.rate));
  double efficiency_worst = std::abs(report.normalizer - top);
  for (const auto& e : report.entries) {
    efficiency_worst = std::max(efficiency_worst, std::abs(e.efficiency - (1.0 - e.rate / top)));
  }
  return {{"speed_formula", speed_worst, "<", 1e-12},
          {"rate_is_speed_squared", rate_worst, "<", 1e-12},
          {"efficiency", efficiency_worst, "<", 1e-12}};
}

std::vector<Check> region_checks() {
  const double root = region_boundary();
  double disagreements = 0.0;
  for (int i = 1; i <= 100; ++i) {
    for (int j = 1; j <= 100; ++j) {
      const double lambda = 0.05 * i;
      const double theta0 = 0.01 * j;
      const RegionSample s = region_membership(lambda, theta0);
      const double x = lambda * theta0;
      const bool by_speed = std::exp(-x) > 1.0 / ((1.0 + x) * (1.0 + x));
      if (s.exponential_faster != by_speed || s.exponential_faster != (x < root)) disagreements += 1.0;
    }
  }
  const bool brackets = region_membership(root - 0.01, 1.0).f_p < 1.0 &&
                        region_membership(root + 0.01, 1.0).f_p > 1.0;
  const double root_residual = std::abs(root - 2.0 * std::log1p(root));
  return {{"region_equivalence", disagreements, "<=", 0.0},
          {"region_boundary", brackets ? root_residual : 1.0, "<", 1e-12}};
}

Check uncorrected_variant(const RunConfig& config, const InitialConditions& ic) {
  const ScenarioSpec spec = spec_of(ScenarioKind::OscillatoryField, config);
  const GeodesicSolution variant = uncorrected_oscillatory(spec, ic);
  const double span = 0.5 * (variant.validity().upper - ic.xi0);
  double worst = 0.0;
  for (int i = 1; i <= 50; ++i) {
    worst = std::max(worst, std::abs(ode_residual(spec, variant, ic.xi0 + span * i / 51.0)));
  }
  return {"uncorrected_oscillatory_residual", worst, ">", 1e-8};
}

}  // namespace

CommandResult cmd_verify(const RunConfig& config, std::optional<double> fault_kappa) {
  const InitialConditions ic = initial_conditions_of(config);
  std::vector<Check> checks;
  checks.push_back(schrodinger(config));
  for (auto& c : fisher_checks(config)) checks.push_back(std::move(c));
  for (auto& c : geodesic_checks(config, ic)) checks.push_back(std::move(c));
  checks.push_back(minimum_action(config, ic));
  for (auto& c : cauchy_schwarz(config, ic)) checks.push_back(std::move(c));
  for (auto& c : speed_checks(config, ic, fault_kappa)) checks.push_back(std::move(c));
  for (auto& c : region_checks()) checks.push_back(std::move(c));
  checks.push_back(uncorrected_variant(config, ic));

  CommandResult result{"verify", {{"check", "value", "relation", "limit", "passed"}, {}, {}}, true};
  long long failed = 0;
  for (const auto& c : checks) {
    const bool ok = c.passed();
    if (!ok) ++failed;
    result.table.rows.push_back({c.name, c.value, c.relation, c.limit, ok});
  }
  result.passed = failed == 0;
  result.table.metadata.emplace_back("failed_checks", failed);
  return result;
}

}  // namespace entrogeo::cli
