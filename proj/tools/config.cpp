#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace entrogeo::cli {

namespace {

using nlohmann::json;

template <typename T>
void read_field(const json& block, const std::string& prefix, const char* key, T& target) {
  const auto it = block.find(key);
  if (it == block.end()) return;
  const std::string name = prefix + key;
  if constexpr (std::is_same_v<T, bool>) {
    if (!it->is_boolean()) throw ConfigError(name, "expected true or false");
    target = it->get<bool>();
  } else if constexpr (std::is_same_v<T, int>) {
    if (!it->is_number_integer()) throw ConfigError(name, "expected an integer");
    const auto v = it->get<long long>();
    if (v < -2147483647LL || v > 2147483647LL) throw ConfigError(name, "integer out of range");
    target = static_cast<int>(v);
  } else if constexpr (std::is_same_v<T, double>) {
    if (!it->is_number()) throw ConfigError(name, "expected a number");
    target = it->get<double>();
  } else {
    if (!it->is_string()) throw ConfigError(name, "expected a string");
    target = it->get<std::string>();
  }
}

void reject_unknown(const json& block, const std::string& prefix, std::set<std::string> known) {
  for (const auto& [key, value] : block.items()) {
    if (!known.contains(key)) throw ConfigError(prefix + key, "unknown configuration key");
  }
}

const json& require_object(const json& document, const std::string& name) {
  if (!document.is_object()) throw ConfigError(name, "expected a JSON object");
  return document;
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) throw ConfigError(name, "must be positive and finite");
}

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) throw ConfigError(name, "must be finite");
}

}  // namespace

json to_json(const RunConfig& c) {
  const auto& p = c.parameters;
  const auto& s = c.sampling;
  const auto& o = c.output;
  return json{
      {"scenario", c.scenario},
      {"parameters",
       {{"gamma_over_hbar", p.gamma_over_hbar},
        {"lambda", p.lambda},
        {"omega0", p.omega0},
        {"theta0", p.theta0},
        {"thetadot0", p.thetadot0},
        {"xi0", p.xi0},
        {"tau", p.tau},
        {"kappa", p.kappa},
        {"units", p.units},
        {"unit_success", p.unit_success},
        {"coupled_lambda", p.coupled_lambda}}},
      {"sampling",
       {{"samples", s.samples},
        {"steps", s.steps},
        {"theta_max", s.theta_max},
        {"lambda_max", s.lambda_max}}},
      {"output", {{"format", o.format}, {"path", o.path}, {"precision", o.precision}}},
  };
}

RunConfig config_from_json(const json& document, const RunConfig& base) {
  RunConfig c = base;
  require_object(document, "config");
  reject_unknown(document, "", {"scenario", "parameters", "sampling", "output"});
  read_field(document, "", "scenario", c.scenario);

  if (const auto it = document.find("parameters"); it != document.end()) {
    const json& block = require_object(*it, "parameters");
    reject_unknown(block, "parameters.",
                   {"gamma_over_hbar", "lambda", "omega0", "theta0", "thetadot0", "xi0", "tau",
                    "kappa", "units", "unit_success", "coupled_lambda"});
    auto& p = c.parameters;
    const std::string pre = "parameters.";
    read_field(block, pre, "gamma_over_hbar", p.gamma_over_hbar);
    read_field(block, pre, "lambda", p.lambda);
    read_field(block, pre, "omega0", p.omega0);
    read_field(block, pre, "theta0", p.theta0);
    read_field(block, pre, "thetadot0", p.thetadot0);
    read_field(block, pre, "xi0", p.xi0);
    read_field(block, pre, "tau", p.tau);
    read_field(block, pre, "kappa", p.kappa);
    read_field(block, pre, "units", p.units);
    read_field(block, pre, "unit_success", p.unit_success);
    read_field(block, pre, "coupled_lambda", p.coupled_lambda);
  }
  if (const auto it = document.find("sampling"); it != document.end()) {
    const json& block = require_object(*it, "sampling");
    reject_unknown(block, "sampling.", {"samples", "steps", "theta_max", "lambda_max"});
    read_field(block, "sampling.", "samples", c.sampling.samples);
    read_field(block, "sampling.", "steps", c.sampling.steps);
    read_field(block, "sampling.", "theta_max", c.sampling.theta_max);
    read_field(block, "sampling.", "lambda_max", c.sampling.lambda_max);
  }
  if (const auto it = document.find("output"); it != document.end()) {
    const json& block = require_object(*it, "output");
    reject_unknown(block, "output.", {"format", "path", "precision"});
    read_field(block, "output.", "format", c.output.format);
    read_field(block, "output.", "path", c.output.path);
    read_field(block, "output.", "precision", c.output.precision);
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path);
  json document;
  try {
    document = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("malformed JSON: ") + e.what());
  }
  return config_from_json(document);
}

void validate(const RunConfig& c) {
  if (c.scenario != "all" && !parse_scenario(c.scenario)) {
    throw ConfigError("scenario", "expected all, constant, oscillatory, powerlaw or exponential");
  }
  const auto& p = c.parameters;
  require_positive(p.gamma_over_hbar, "gamma_over_hbar");
  require_positive(p.lambda, "lambda");
  if (!(p.omega0 < 0.0) || !std::isfinite(p.omega0)) {
    throw ConfigError("omega0", "must be negative and finite");
  }
  require_finite(p.theta0, "theta0");
  require_finite(p.thetadot0, "thetadot0");
  require_finite(p.xi0, "xi0");
  require_positive(p.tau, "tau");
  if (p.kappa != 1.0 && p.kappa != 0.5) throw ConfigError("kappa", "must be 1 or 0.5");
  if (p.units != "natural" && p.units != "mksa") throw ConfigError("units", "expected natural or mksa");
  if (p.unit_success && p.coupled_lambda) {
    throw ConfigError("unit_success", "cannot be combined with coupled_lambda");
  }
  if (c.sampling.samples < 3) throw ConfigError("samples", "must be at least 3");
  if (c.sampling.steps < 1) throw ConfigError("steps", "must be at least 1");
  require_positive(c.sampling.theta_max, "theta_max");
  require_positive(c.sampling.lambda_max, "lambda_max");
  if (c.output.format != "csv" && c.output.format != "json") {
    throw ConfigError("format", "expected csv or json");
  }
  if (c.output.precision < 6 || c.output.precision > 17) {
    throw ConfigError("precision", "must lie in [6, 17]");
  }
}

std::vector<ScenarioKind> selected_scenarios(const RunConfig& config) {
  if (config.scenario == "all") return {kAllScenarios.begin(), kAllScenarios.end()};
  const auto kind = parse_scenario(config.scenario);
  if (!kind) throw ConfigError("scenario", "unknown scenario " + config.scenario);
  return {*kind};
}

PhysicalConstants constants_of(const RunConfig& config) {
  return config.parameters.units == "mksa" ? PhysicalConstants::mksa()
                                           : PhysicalConstants::natural();
}

MetricConvention convention_of(const RunConfig& config) {
  return MetricConvention::from_kappa(config.parameters.kappa);
}

InitialConditions initial_conditions_of(const RunConfig& config) {
  const auto& p = config.parameters;
  InitialConditions ic{p.theta0, p.thetadot0, p.xi0};
  ic.validate();
  return ic;
}

ScenarioSpec spec_of(ScenarioKind kind, const RunConfig& config) {
  const auto& p = config.parameters;
  const PhysicalConstants constants = constants_of(config);
  ScenarioSpec spec = p.unit_success
                          ? ScenarioSpec::with_unit_success(kind, p.lambda, constants)
                          : ScenarioSpec::from_rates(kind, p.gamma_over_hbar, p.lambda, constants);
  if (p.coupled_lambda) spec.lambda = lambda_of_gamma(spec.gamma, constants);
  spec.omega0 = p.omega0;
  spec.validate();
  return spec;
}

ReportParameters report_parameters_of(const RunConfig& config) {
  const auto& p = config.parameters;
  const ScenarioSpec reference = spec_of(ScenarioKind::ConstantField, config);
  ReportParameters out;
  out.gamma_over_hbar = reference.rate();
  out.lambda = reference.lambda;
  out.theta0 = p.theta0;
  out.thetadot0 = p.thetadot0;
  out.xi0 = p.xi0;
  out.omega0 = p.omega0;
  out.constants = reference.constants;
  out.coupled_lambda = false;
  return out;
}

}  // namespace entrogeo::cli
