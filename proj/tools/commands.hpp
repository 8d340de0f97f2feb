#pragma once

#include <optional>

#include "config.hpp"
#include "output.hpp"

namespace entrogeo::cli {

[[nodiscard]] CommandResult cmd_probabilities(const RunConfig& config);
[[nodiscard]] CommandResult cmd_fisher(const RunConfig& config);
[[nodiscard]] CommandResult cmd_geodesic(const RunConfig& config);
[[nodiscard]] CommandResult cmd_compare(const RunConfig& config);
[[nodiscard]] CommandResult cmd_region(const RunConfig& config);

/// Runs every numerical check at the configured parameters. fault_kappa replaces
/// the metric normalization inside the speed check only, to exercise a failure.
[[nodiscard]] CommandResult cmd_verify(const RunConfig& config,
                                       std::optional<double> fault_kappa = std::nullopt);

/// Geodesic output stops once the distance to a singular boundary, as a fraction,
/// drops below this.
inline constexpr double kGeodesicCutoffMargin = 1e-2;

}  // namespace entrogeo::cli
