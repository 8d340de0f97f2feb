#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entrogeo/entropic.hpp"
#include "entrogeo/geodesic.hpp"
#include "entrogeo/infogeo.hpp"
#include "entrogeo/quantum.hpp"

namespace entrogeo::cli {

namespace {

// Row prefix and metadata key prefix when several scenarios share one table.
struct ScenarioColumn {
  bool present;
  std::vector<std::string> with(std::vector<std::string> columns) const {
    if (present) columns.insert(columns.begin(), "scenario");
    return columns;
  }
  std::vector<Cell> row(ScenarioKind kind, std::vector<Cell> cells) const {
    if (present) cells.insert(cells.begin(), std::string(scenario_name(kind)));
    return cells;
  }
  std::string key(ScenarioKind kind, const std::string& name) const {
    return present ? std::string(scenario_name(kind)) + "." + name : name;
  }
};

ScenarioColumn scenario_column(const RunConfig& config) { return {config.scenario == "all"}; }

double fisher_by_local_fit(const ScenarioSpec& spec, double theta) {
  const double h = std::min(1e-4 * std::max(1.0, theta), 0.25 * theta);
  std::vector<double> nodes;
  for (int k = -2; k <= 2; ++k) nodes.push_back(theta + k * h);
  return fisher_numeric(ProbabilityPath::sample(spec, std::move(nodes)), theta);
}

}  // namespace

CommandResult cmd_probabilities(const RunConfig& config) {
  const auto column = scenario_column(config);
  CommandResult result{"probabilities", {column.with({"theta", "p_w", "p_perp"}), {}, {}}, true};
  const int n = config.sampling.samples;
  for (auto kind : selected_scenarios(config)) {
    const ScenarioSpec spec = spec_of(kind, config);
    for (int i = 0; i < n; ++i) {
      const double theta = config.sampling.theta_max * i / (n - 1);
      result.table.rows.push_back(column.row(kind, {theta, analytic_success_probability(spec, theta),
                                                    analytic_failure_probability(spec, theta)}));
    }
    if (const auto t = period(spec)) result.table.metadata.emplace_back(column.key(kind, "period"), *t);
  }
  return result;
}

CommandResult cmd_fisher(const RunConfig& config) {
  const auto column = scenario_column(config);
  CommandResult result{
      "fisher", {column.with({"theta", "fisher_analytic", "fisher_numeric", "abs_deviation"}), {}, {}}, true};
  const int n = config.sampling.samples;
  for (auto kind : selected_scenarios(config)) {
    const ScenarioSpec spec = spec_of(kind, config);
    double worst = 0.0;
    double largest = 0.0;
    // theta = 0 is a probability endpoint; the grid starts one step in.
    for (int i = 1; i <= n; ++i) {
      const double theta = config.sampling.theta_max * i / n;
      const double exact = fisher_analytic(spec, theta);
      const double numeric = fisher_by_local_fit(spec, theta);
      worst = std::max(worst, std::abs(numeric - exact));
      largest = std::max(largest, exact);
      result.table.rows.push_back(column.row(kind, {theta, exact, numeric, std::abs(numeric - exact)}));
    }
    result.table.metadata.emplace_back(column.key(kind, "max_abs_deviation"), worst);
    result.table.metadata.emplace_back(column.key(kind, "max_fisher"), largest);
  }
  return result;
}

CommandResult cmd_geodesic(const RunConfig& config) {
  const auto column = scenario_column(config);
  CommandResult result{
      "geodesic",
      {column.with({"xi", "theta_closed", "theta_numeric", "speed", "ode_residual"}), {}, {}},
      true};
  const InitialConditions ic = initial_conditions_of(config);
  const MetricConvention convention = convention_of(config);
  const int n = config.sampling.samples;

  for (auto kind : selected_scenarios(config)) {
    const ScenarioSpec spec = spec_of(kind, config);
    const GeodesicSolution geo = geodesic_closed_form(spec, ic);
    const auto& valid = geo.validity();

    std::vector<double> grid;
    bool truncated = false;
    for (int i = 0; i < n; ++i) {
      const double xi = ic.xi0 + config.parameters.tau * i / (n - 1);
      if (!valid.contains(xi) || singularity_margin(spec, ic, xi) < kGeodesicCutoffMargin) {
        truncated = true;
        break;
      }
      grid.push_back(xi);
    }
    const NumericPath path = geodesic_numeric(spec, ic, grid);

    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double xi = grid[i];
      const double room = std::min(xi - valid.lower, valid.upper - xi);
      const double h = std::min(1e-3, 1e-2 * room);
      const double residual = ode_residual(spec, [&](double x) { return geo.theta(x); }, xi, h);
      const double speed =
          convention.kappa() * std::sqrt(fisher_analytic(spec, path.theta[i])) * path.thetadot[i];
      result.table.rows.push_back(column.row(kind, {xi, geo.theta(xi), path.theta[i], speed, residual}));
    }
    if (truncated) {
      result.table.metadata.emplace_back(column.key(kind, "truncated_at_xi"), grid.back());
      result.table.metadata.emplace_back(column.key(kind, "singular_boundary_xi"), valid.upper);
      result.table.metadata.emplace_back(
          column.key(kind, "note"),
          std::string("series stops before the singular boundary of the closed-form geodesic"));
    }
  }
  return result;
}

CommandResult cmd_compare(const RunConfig& config) {
  const EntropicReport report = scenario_report(report_parameters_of(config), convention_of(config));
  CommandResult result{"compare",
                       {{"scenario", "speed", "rate", "efficiency", "search_label", "speed_label"}, {}, {}},
                       true};
  for (const auto& e : report.entries) {
    result.table.rows.push_back({std::string(scenario_name(e.kind)), e.speed, e.rate, e.efficiency,
                                 e.search_label, e.speed_label});
  }
  result.table.metadata.emplace_back("normalizer", static_cast<long long>(report.normalizer));
  result.table.metadata.emplace_back("kappa", report.convention.kappa());
  result.table.metadata.emplace_back("gamma_over_hbar", report.parameters.gamma_over_hbar);
  result.table.metadata.emplace_back("lambda", report.parameters.lambda);
  return result;
}

CommandResult cmd_region(const RunConfig& config) {
  CommandResult result{"region", {{"lambda", "theta0", "f_P", "exponential_faster"}, {}, {}}, true};
  const int n = config.sampling.samples;
  for (int i = 1; i <= n; ++i) {
    const double lambda = config.sampling.lambda_max * i / n;
    for (int j = 1; j <= n; ++j) {
      const double theta0 = config.sampling.theta_max * j / n;
      const RegionSample s = region_membership(lambda, theta0);
      result.table.rows.push_back({lambda, theta0, s.f_p, s.exponential_faster});
    }
  }
  result.table.metadata.emplace_back("x_star", region_boundary());
  return result;
}

}  // namespace entrogeo::cli
