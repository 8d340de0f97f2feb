// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "entrogeo/entropic.hpp"
#include "entrogeo/geodesic.hpp"
#include "entrogeo/infogeo.hpp"
#include "entrogeo/quantum.hpp"
#include "oracles.hpp"

using namespace entrogeo;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      passed = false;
      detail << " [failed: " << what << "]";
    }
  }
};

// Gamma/(hbar lambda) = pi/2 with lambda = 1/pi, so Gamma/hbar = 1/2 everywhere.
ScenarioSpec reference(ScenarioKind kind) { return ScenarioSpec::from_rates(kind, 0.5, 1.0 / kPi); }

double profile(ScenarioKind kind, double lambda, double t) {
  switch (kind) {
    case ScenarioKind::ConstantField: return 1.0;
    case ScenarioKind::OscillatoryField: return std::cos(lambda * t);
    case ScenarioKind::PowerLawField: return 1.0 / ((1.0 + lambda * t) * (1.0 + lambda * t));
    case ScenarioKind::ExponentialField: return std::exp(-lambda * t);
  }
  return 0.0;
}

double fisher_formula(ScenarioKind kind, double rate, double lambda, double theta) {
  const double f = profile(kind, lambda, theta);
  return 4.0 * rate * rate * f * f;
}

Outcome schrodinger_oracle() {
  Outcome out;
  double worst = 0.0;
  for (auto kind : kAllScenarios) {
    auto spec = reference(kind);
    spec.omega0 = -10.0 * kPi;  // fast carrier, the hard case for the stepper
    const auto run = propagate_schrodinger(spec, 5.0, 4000);
    for (int i = 1; i <= 50; ++i) {
      const std::size_t k = static_cast<std::size_t>(80 * i);
      const double t = run.time_grid[k];
      const double u = oracle::adaptive_simpson(
          [&](double s) { return spec.rate() * profile(kind, spec.lambda, s); }, 0.0, t);
      worst = std::max(worst, std::abs(run.success_probability[k] - std::sin(u) * std::sin(u)));
    }
  }
  out.detail << "max |dp| = " << worst;
  out.require(worst < 1e-6, "max |dp| < 1e-6");
  return out;
}

Outcome fisher_reproduction() {
  Outcome out;
  double numeric = 0.0;
  double identity = 0.0;
  for (auto kind : kAllScenarios) {
    const auto spec = reference(kind);
    for (double spacing : {1e-3, 1e-4}) {
      std::vector<double> grid;
      for (double x = 0.0; x <= 5.0 + 2e-3; x += spacing) grid.push_back(x);
      const auto path = ProbabilityPath::sample(spec, grid);
      for (int i = 0; i <= 400; ++i) {
        const double theta = 0.05 + (5.0 - 0.05) * i / 400.0;
        const double exact = fisher_formula(kind, 0.5, spec.lambda, theta);
        numeric = std::max(numeric, std::abs(fisher_numeric(path, theta) - exact) / exact);
        const double rate = phase_rate(spec, theta);
        identity = std::max(identity, std::abs(fisher_analytic(spec, theta) - 4.0 * rate * rate) / exact);
        identity = std::max(identity, std::abs(fisher_analytic(spec, theta) - exact) / exact);
      }
    }
  }
  out.detail << "numeric rel = " << numeric << ", identity rel = " << identity;
  out.require(numeric < 1e-6, "relative 1e-6");
  out.require(identity < 1e-12, "F = 4 u'^2 to 1e-12");
  return out;
}

const std::array<InitialConditions, 3> kInitialConditions{
    InitialConditions{1.0, 1.0, 0.0}, InitialConditions{0.5, 2.0, 0.3}, InitialConditions{2.0, 0.4, 0.0}};

Outcome geodesic_correctness() {
  Outcome out;
  double residual = 0.0;
  double gap = 0.0;
  for (auto kind : kAllScenarios) {
    const auto spec = reference(kind);
    for (const auto& ic : kInitialConditions) {
      const auto geo = geodesic_closed_form(spec, ic);
      const double room = geo.validity().upper - ic.xi0;
      // the finite-difference stencil loses accuracy close to a pole
      const double interior = std::min(1.0, 0.5 * room);
      for (int i = 1; i <= 50; ++i) {
        residual = std::max(residual, std::abs(ode_residual(spec, geo, ic.xi0 + interior * i / 51.0)));
      }
      std::vector<double> grid;
      const double span = std::min(1.0, 0.9 * room);
      for (int i = 0; i <= 100; ++i) grid.push_back(ic.xi0 + span * i / 100.0);
      const auto path = geodesic_numeric(spec, ic, grid, 1e-4);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        gap = std::max(gap, std::abs(path.theta[i] - geo.theta(grid[i])));
      }
    }
  }
  const auto osc = reference(ScenarioKind::OscillatoryField);
  const InitialConditions generic{1.0, 1.0, 0.0};
  const auto variant = uncorrected_oscillatory(osc, generic);
  double variant_residual = 0.0;
  for (int i = 1; i <= 20; ++i) {
    variant_residual = std::max(variant_residual, std::abs(ode_residual(osc, variant, 0.05 * i)));
  }
  out.detail << "residual = " << residual << ", rk4 gap = " << gap
             << ", variant residual = " << variant_residual << " (expected above 1e-8)";
  out.require(residual < 1e-8, "residual < 1e-8");
  out.require(gap < 1e-7, "gap < 1e-7");
  out.require(variant_residual > 1e-8, "variant violates the residual bound");
  return out;
}

Outcome speed_and_action() {
  Outcome out;
  double spread = 0.0;
  double shortfall = 0.0;
  const auto half = MetricConvention::half();
  for (auto kind : kAllScenarios) {
    const auto spec = reference(kind);
    for (const auto& ic : kInitialConditions) {
      const auto geo = geodesic_closed_form(spec, ic);
      const double span = std::min(1.0, 0.9 * (geo.validity().upper - ic.xi0));
      double lo = INFINITY;
      double hi = -INFINITY;
      for (int i = 0; i <= 200; ++i) {
        const double v = sampled_speed(spec, half, geo, ic.xi0 + span * i / 200.0);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      spread = std::max(spread, (hi - lo) / hi);
    }
    const InitialConditions ic{1.0, 1.0, 0.0};
    const auto base = perturbed_action(spec, half, ic, 1.0, 0.0, 1);
    for (int n = 0; n < 20; ++n) {
      const double eps = (n % 2 ? -1.0 : 1.0) * oracle::uniform(0.01, 0.1);
      const auto p = perturbed_action(spec, half, ic, 1.0, eps, 1 + n % 3);
      shortfall = std::max({shortfall, base.length - p.length, base.divergence - p.divergence});
    }
  }
  out.detail << "speed spread = " << spread << ", max shortfall = " << shortfall;
  out.require(spread < 1e-7, "spread < 1e-7");
  out.require(shortfall <= 1e-9, "no perturbation below the geodesic by 1e-9");
  return out;
}

Outcome cauchy_schwarz() {
  Outcome out;
  double violation = 0.0;
  double equality = 0.0;
  const auto half = MetricConvention::half();
  for (auto kind : kAllScenarios) {
    const auto spec = reference(kind);
    for (int n = 0; n < 100; ++n) {
      const double a = oracle::uniform(0.5, 1.5);
      const double b = oracle::uniform(0.3, 1.5);
      const double tau = oracle::uniform(0.5, 1.5);
      std::array<double, 3> c{};
      for (int k = 0; k < 3; ++k) c[k] = oracle::uniform(-0.25, 0.25) * b * tau / ((k + 1) * kPi);
      const Curve curve{
          [=](double xi) {
            double v = a + b * xi;
            for (int k = 0; k < 3; ++k) v += c[k] * std::sin((k + 1) * kPi * xi / tau);
            return v;
          },
          [=](double xi) {
            double v = b;
            for (int k = 0; k < 3; ++k) v += c[k] * (k + 1) * kPi / tau * std::cos((k + 1) * kPi * xi / tau);
            return v;
          }};
      const auto f = path_functionals(spec, half, curve, 0.0, tau);
      violation = std::max(violation, f.length * f.length - f.divergence);
    }
    const auto geo = geodesic_closed_form(spec, InitialConditions{1.0, 1.0, 0.0});
    const auto g = action_of_path(spec, half, geo.curve(), 0.0, 1.0);
    equality = std::max(equality, std::abs(g.divergence - g.length * g.length));
  }
  out.detail << "max L^2 - I = " << violation << ", geodesic |I - L^2| = " << equality;
  out.require(violation <= 1e-9, "I >= L^2 within 1e-9");
  out.require(equality < 1e-8, "equality within 1e-8");
  return out;
}

Outcome speed_formulas() {
  Outcome out;
  const double x = 1.0 / kPi;
  const double expected[] = {0.5, 0.5 * std::cos(x), 0.5 / ((1.0 + x) * (1.0 + x)), 0.5 * std::exp(-x)};
  const InitialConditions ic{1.0, 1.0, 0.0};
  double speed = 0.0;
  double rate = 0.0;
  std::vector<double> rates;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto spec = reference(kAllScenarios[i]);
    const double v = entropic_speed(spec, MetricConvention::half(), ic);
    const double r = entropy_production_rate(spec, MetricConvention::half(), ic);
    speed = std::max(speed, std::abs(v - expected[i]));
    rate = std::max(rate, std::abs(r - expected[i] * expected[i]));
    rates.push_back(r);
  }
  const auto eff = efficiency(rates);
  double eta = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    eta = std::max(eta, std::abs(eff.efficiency[i] - (1.0 - expected[i] * expected[i])));
  }
  out.detail << "speed = " << speed << ", rate = " << rate << ", r = " << eff.normalizer
             << ", efficiency = " << eta;
  out.require(speed < 1e-12 && rate < 1e-12, "speeds and rates to 1e-12");
  out.require(eff.normalizer == 1, "r = 1");
  out.require(eta < 1e-12, "efficiency to 1e-12");
  return out;
}

Outcome region() {
  Outcome out;
  int disagreements = 0;
  for (int i = 1; i <= 100; ++i) {
    for (int j = 1; j <= 100; ++j) {
      const double lambda = 0.05 * i;
      const double theta0 = 0.05 * j;
      const auto sample = region_membership(lambda, theta0);
      const auto power = reference(ScenarioKind::PowerLawField);
      auto p = power;
      p.lambda = lambda;
      auto e = reference(ScenarioKind::ExponentialField);
      e.lambda = lambda;
      const InitialConditions ic{theta0, 1.0, 0.0};
      const bool by_speed = entropic_speed(e, MetricConvention::half(), ic) >
                            entropic_speed(p, MetricConvention::half(), ic);
      if (sample.exponential_faster != by_speed || (sample.f_p < 1.0) != by_speed) ++disagreements;
    }
  }
  // Newton on exp(x) - (1 + x)^2 in long double
  long double root = 2.5L;
  for (int k = 0; k < 60; ++k) {
    const long double g = std::exp(root) - (1 + root) * (1 + root);
    const long double dg = std::exp(root) - 2 * (1 + root);
    root -= g / dg;
  }
  const double boundary = region_boundary();
  const bool brackets = region_membership(1.0, boundary - 1e-6).f_p < 1.0 &&
                        region_membership(1.0, boundary + 1e-6).f_p > 1.0 &&
                        region_membership(2.0, 1.0).f_p < 1.0 && region_membership(3.0, 1.0).f_p > 1.0;
  const auto ordering = speed_ordering(5.0, 1.0);
  const std::vector<std::vector<ScenarioKind>> expected{
      {ScenarioKind::ExponentialField}, {ScenarioKind::PowerLawField},
      {ScenarioKind::OscillatoryField}, {ScenarioKind::ConstantField}};
  const double root_error = std::abs(boundary - static_cast<double>(root));
  out.detail << "disagreements = " << disagreements << ", |x* - oracle| = " << root_error
             << ", x* = " << boundary;
  out.require(disagreements == 0, "zero disagreements");
  out.require(root_error < 1e-12, "x* to 1e-12");
  out.require(brackets, "bracketing");
  out.require(ordering.groups == expected && ordering.chain_holds, "ordering at lambda = 5");
  return out;
}

struct Run {
  int status;
  std::string output;
};

Run run(const std::string& arguments) {
  const std::string command = std::string(ENTROGEO_BINARY) + " " + arguments + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string output;
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) output.append(buffer.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, output};
}

Outcome determinism() {
  Outcome out;
  const auto verify = run("verify");
  out.require(verify.status == 0, "verify exits 0");

  bool identical = true;
  for (const char* args : {"geodesic --format csv", "geodesic --format json", "compare --format json",
                           "fisher --scenario oscillatory", "region --samples 30 --format json",
                           "verify --format json"}) {
    const auto first = run(args);
    const auto second = run(args);
    identical = identical && first.status == 0 && first.output == second.output && !first.output.empty();
  }
  out.require(identical, "byte-identical repeats");

  const std::string config_path = "acceptance_config.json";
  const auto original = run("compare --format json --precision 17 --lambda 0.7 --theta0 0.9 --kappa 1");
  bool round_trip = original.status == 0;
  if (round_trip) {
    const auto document = nlohmann::json::parse(original.output);
    std::ofstream(config_path) << document.at("config").dump(2);
    const auto replay = run("compare --config " + config_path);
    round_trip = replay.status == 0 && replay.output == original.output;
    std::remove(config_path.c_str());
  }
  out.require(round_trip, "config round trip");
  out.detail << "verify exit = " << verify.status;
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Schroedinger propagation matches sin^2 of the phase integral", schrodinger_oracle},
      {"Fisher information reproduction", fisher_reproduction},
      {"geodesic closed forms, integrator and variant discrepancy", geodesic_correctness},
      {"constant speed and minimum action", speed_and_action},
      {"Cauchy-Schwarz bound I >= L^2", cauchy_schwarz},
      {"speed, rate and efficiency formulas", speed_formulas},
      {"exponential-versus-power-law region", region},
      {"determinism and interface", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome.passed = false;
      outcome.detail << "threw: " << e.what();
    }
    if (!outcome.passed) ++failures;
    std::cout << (outcome.passed ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": " << criteria[i].first
              << " | " << outcome.detail.str() << '\n';
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
