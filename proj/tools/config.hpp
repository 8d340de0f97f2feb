#pragma once

// Run configuration shared by every subcommand, its JSON form and the mapping
// from configuration to scenario specifications.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "entrogeo/entropic.hpp"
#include "entrogeo/geodesic.hpp"
#include "entrogeo/infogeo.hpp"
#include "entrogeo/scenario.hpp"

namespace entrogeo::cli {

/// Invalid configuration. The message names the offending field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& field, const std::string& problem)
      : std::invalid_argument(field + ": " + problem), field_(field) {}
  [[nodiscard]] const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct RunConfig {
  struct Parameters {
    double gamma_over_hbar = 0.5;
    double lambda = 0.3183098861837907;  // 1/pi
    double omega0 = -31.41592653589793;  // -10 pi
    double theta0 = 1.0;
    double thetadot0 = 1.0;
    double xi0 = 0.0;
    double tau = 1.0;
    double kappa = 0.5;
    std::string units = "natural";
    bool unit_success = false;
    bool coupled_lambda = false;
    friend bool operator==(const Parameters&, const Parameters&) = default;
  };
  struct Sampling {
    int samples = 101;
    int steps = 4000;
    double theta_max = 5.0;
    double lambda_max = 5.0;  ///< extent of the lambda axis of the region grid
    friend bool operator==(const Sampling&, const Sampling&) = default;
  };
  struct Output {
    std::string format = "csv";
    std::string path;  ///< empty: standard output
    int precision = 12;
    friend bool operator==(const Output&, const Output&) = default;
  };

  std::string scenario = "all";
  Parameters parameters;
  Sampling sampling;
  Output output;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

[[nodiscard]] nlohmann::json to_json(const RunConfig& config);

/// Missing keys keep their defaults; unknown keys and wrong types raise ConfigError.
[[nodiscard]] RunConfig config_from_json(const nlohmann::json& document,
                                         const RunConfig& base = RunConfig{});

[[nodiscard]] RunConfig load_config(const std::string& path);

/// Checks everything except the initial-condition signs, which are domain
/// violations reported by the geodesic module.
void validate(const RunConfig& config);

[[nodiscard]] std::vector<ScenarioKind> selected_scenarios(const RunConfig& config);
[[nodiscard]] PhysicalConstants constants_of(const RunConfig& config);
[[nodiscard]] MetricConvention convention_of(const RunConfig& config);
[[nodiscard]] InitialConditions initial_conditions_of(const RunConfig& config);
[[nodiscard]] ScenarioSpec spec_of(ScenarioKind kind, const RunConfig& config);
[[nodiscard]] ReportParameters report_parameters_of(const RunConfig& config);

}  // namespace entrogeo::cli
