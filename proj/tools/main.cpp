#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace entrogeo::cli;

namespace {

struct Overrides {
  std::optional<std::string> scenario;
  std::optional<double> gamma_over_hbar, lambda, omega0, theta0, thetadot0, xi0, tau, kappa;
  std::optional<std::string> units;
  bool unit_success = false;
  bool coupled_lambda = false;
  std::optional<int> samples, steps;
  std::optional<double> theta_max, lambda_max;
  std::optional<std::string> format, output;
  std::optional<int> precision;
  std::string config_path;
  std::optional<double> fault_kappa;
};

template <typename T>
void take(T& target, const std::optional<T>& value) {
  if (value) target = *value;
}

RunConfig resolve(const Overrides& o) {
  RunConfig c = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
  take(c.scenario, o.scenario);
  auto& p = c.parameters;
  take(p.gamma_over_hbar, o.gamma_over_hbar);
  take(p.lambda, o.lambda);
  take(p.omega0, o.omega0);
  take(p.theta0, o.theta0);
  take(p.thetadot0, o.thetadot0);
  take(p.xi0, o.xi0);
  take(p.tau, o.tau);
  take(p.kappa, o.kappa);
  take(p.units, o.units);
  if (o.unit_success) p.unit_success = true;
  if (o.coupled_lambda) p.coupled_lambda = true;
  take(c.sampling.samples, o.samples);
  take(c.sampling.steps, o.steps);
  take(c.sampling.theta_max, o.theta_max);
  take(c.sampling.lambda_max, o.lambda_max);
  take(c.output.format, o.format);
  take(c.output.path, o.output);
  take(c.output.precision, o.precision);
  validate(c);
  return c;
}

CommandResult run(const std::string& command, const RunConfig& c, std::optional<double> fault_kappa) {
  if (command == "probabilities") return cmd_probabilities(c);
  if (command == "fisher") return cmd_fisher(c);
  if (command == "geodesic") return cmd_geodesic(c);
  if (command == "compare") return cmd_compare(c);
  if (command == "region") return cmd_region(c);
  return cmd_verify(c, fault_kappa);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropic speed and information geometry of two-level search schedules"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  app.add_option("--scenario", o.scenario, "all, constant, oscillatory, powerlaw or exponential");
  app.add_option("--gamma-over-hbar", o.gamma_over_hbar, "field rate Gamma/hbar");
  app.add_option("--lambda", o.lambda, "decay or oscillation rate");
  app.add_option("--omega0", o.omega0, "carrier angular frequency, negative");
  app.add_option("--theta0", o.theta0, "initial parameter value");
  app.add_option("--thetadot0", o.thetadot0, "initial parameter rate");
  app.add_option("--xi0", o.xi0, "initial affine parameter");
  app.add_option("--tau", o.tau, "affine duration");
  app.add_option("--kappa", o.kappa, "metric normalization, 1 or 0.5");
  app.add_option("--units", o.units, "natural or mksa");
  app.add_flag("--unit-success", o.unit_success, "choose Gamma so that p_w reaches 1");
  app.add_flag("--coupled-lambda", o.coupled_lambda, "set lambda = 4 Gamma / h");
  app.add_option("--samples", o.samples, "rows per series");
  app.add_option("--steps", o.steps, "Schroedinger propagation steps");
  app.add_option("--theta-max", o.theta_max, "upper end of the theta axis");
  app.add_option("--lambda-max", o.lambda_max, "upper end of the lambda axis (region)");
  app.add_option("--format", o.format, "csv or json");
  app.add_option("--output", o.output, "output file, standard output if omitted");
  app.add_option("--precision", o.precision, "significant digits, 6 to 17");
  app.add_option("--config", o.config_path, "JSON configuration file");
  app.add_option("--fault-kappa", o.fault_kappa)->group("");  // test hook for verify

  for (const char* name : {"probabilities", "fisher", "geodesic", "compare", "region", "verify"}) {
    app.add_subcommand(name);
  }
  app.get_subcommand("probabilities")->description("success and failure probabilities over theta");
  app.get_subcommand("fisher")->description("closed-form and sampled Fisher information");
  app.get_subcommand("geodesic")->description("closed-form and integrated geodesics with speed and residual");
  app.get_subcommand("compare")->description("entropic speeds, rates and efficiencies of all scenarios");
  app.get_subcommand("region")->description("grid of the exponential-versus-power-law criterion");
  app.get_subcommand("verify")->description("run every numerical check; exit 1 on failure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const RunConfig config = resolve(o);
    const std::string command = app.get_subcommands().front()->get_name();
    const CommandResult result = run(command, config, o.fault_kappa);

    if (config.output.path.empty()) {
      write_result(std::cout, result, config);
    } else {
      std::ofstream out(config.output.path, std::ios::binary);
      if (!out) throw ConfigError("output", "cannot open " + config.output.path);
      write_result(out, result, config);
    }
    if (!result.passed) {
      for (const auto& row : result.table.rows) {
        if (!std::get<bool>(row.back())) std::cerr << "check failed: " << std::get<std::string>(row.front()) << '\n';
      }
      return 1;
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain violation: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
