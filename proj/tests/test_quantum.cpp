#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "entrogeo/quantum.hpp"
#include "oracles.hpp"

using namespace entrogeo;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Gamma/(hbar lambda) = pi/2 with lambda = 1/pi; the constant field uses Gamma/hbar = 1/2.
ScenarioSpec reference_spec(ScenarioKind kind) {
  if (kind == ScenarioKind::ConstantField) return ScenarioSpec::from_rates(kind, 0.5, 1.0 / kPi);
  return ScenarioSpec::with_unit_success(kind, 1.0 / kPi);
}

}  // namespace

TEST_CASE("closed-form success probabilities") {
  auto constant = ScenarioSpec::from_rates(ScenarioKind::ConstantField, 0.5, 1.0);
  CHECK(analytic_success_probability(constant, kPi) == Approx(1.0).epsilon(1e-15));

  auto oscillatory = ScenarioSpec::with_unit_success(ScenarioKind::OscillatoryField, 0.7);
  CHECK(analytic_success_probability(oscillatory, kPi / (2.0 * 0.7)) == Approx(1.0).epsilon(1e-15));

  auto exponential = reference_spec(ScenarioKind::ExponentialField);
  CHECK(analytic_success_probability(exponential, 1.0) == Approx(0.17244545091492968).epsilon(1e-12));
  CHECK(analytic_success_probability(exponential, 1.0) + analytic_failure_probability(exponential, 1.0) ==
        Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS((void)analytic_success_probability(exponential, -0.1), std::domain_error);
}

TEST_CASE("phase integral") {
  auto constant = ScenarioSpec::from_rates(ScenarioKind::ConstantField, 0.5, 1.0);
  CHECK(phase_integral(constant, kPi) == Approx(kPi / 2.0));

  auto power = ScenarioSpec::from_rates(ScenarioKind::PowerLawField, 0.9, 1.3);
  CHECK(phase_integral(power, 1e12) == Approx(0.9 / 1.3).epsilon(1e-11));

  for (auto kind : kAllScenarios) {
    auto spec = ScenarioSpec::from_rates(kind, 0.8, 0.6);
    for (int i = 0; i < 20; ++i) {
      const double theta = oracle::uniform(0.0, 6.0);
      const double quadrature = oracle::adaptive_simpson(
          [&](double t) { return profile_value(spec, t) / spec.constants.hbar; }, 0.0, theta);
      CHECK(std::abs(phase_integral(spec, theta) - quadrature) < 1e-10);
      const double s = std::sin(phase_integral(spec, theta));
      CHECK(std::abs(s * s - analytic_success_probability(spec, theta)) < 1e-14);
    }
  }
}

TEST_CASE("propagation examples") {
  auto constant = ScenarioSpec::from_rates(ScenarioKind::ConstantField, 0.5, 1.0);
  auto run = propagate_schrodinger(constant, kPi, 2000);
  CHECK(std::abs(run.success_probability.back() - 1.0) < 1e-6);
  CHECK(run.time_grid.size() == 2001);
  CHECK(run.time_grid.back() == kPi);

  for (auto kind : kAllScenarios) {
    auto at_zero = propagate_schrodinger(reference_spec(kind), 0.0, 5);
    CHECK(unitarity_deviation(at_zero.unitaries.back()) == 0.0);
    CHECK(at_zero.unitaries.back().a00 == Complex{1.0});
    CHECK(at_zero.success_probability.back() == 0.0);
  }

  auto exponential = reference_spec(ScenarioKind::ExponentialField);
  auto exp_run = propagate_schrodinger(exponential, 1.0, 4000);
  CHECK(std::abs(exp_run.success_probability.back() - 0.17244545091492968) < 1e-6);

  CHECK_THROWS_AS((void)propagate_schrodinger(constant, 1.0, 0), std::invalid_argument);
}

TEST_CASE("propagation matches the closed form at 50 sample times") {
  for (auto kind : kAllScenarios) {
    const auto spec = reference_spec(kind);
    const auto run = propagate_schrodinger(spec, 5.0, 4000);
    CHECK(run.max_unitarity_deviation < 1e-9);
    double worst = 0.0;
    for (std::size_t k = 80; k < run.time_grid.size(); k += 80) {
      worst = std::max(worst, std::abs(run.success_probability[k] -
                                       analytic_success_probability(spec, run.time_grid[k])));
    }
    CHECK(worst < 1e-6);
    CHECK(run.beyond_physical_window == (kind == ScenarioKind::OscillatoryField));
  }
}

TEST_CASE("success probability does not depend on the phase origin") {
  for (auto kind : kAllScenarios) {
    auto spec = reference_spec(kind);
    spec.omega0 = -10.0 * kPi;
    std::vector<double> reference;
    for (double origin : {0.0, 1.1, -2.7}) {
      spec.phase_origin = origin;
      const auto run = propagate_schrodinger(spec, 2.0, 2000);
      if (reference.empty()) {
        reference = run.success_probability;
        continue;
      }
      for (std::size_t i = 0; i < reference.size(); ++i) {
        CHECK(std::abs(run.success_probability[i] - reference[i]) < 1e-9);
      }
    }
  }
}

TEST_CASE("propagation converges at fourth order") {
  for (auto kind : kAllScenarios) {
    const auto spec = reference_spec(kind);
    const double exact = analytic_success_probability(spec, 3.0);
    const double coarse = std::abs(propagate_schrodinger(spec, 3.0, 50).success_probability.back() - exact);
    const double fine = std::abs(propagate_schrodinger(spec, 3.0, 100).success_probability.back() - exact);
    CHECK(coarse / fine >= 14.0);
  }
}

TEST_CASE("general transition probability") {
  const Matrix2 id = Matrix2::identity();
  for (double x : {0.0, 0.3, 0.8, 1.0}) {
    CHECK(transition_probability_general(id, SourceOverlap{x}) == Approx(x * x));
  }

  const auto run = propagate_schrodinger(reference_spec(ScenarioKind::PowerLawField), 2.5, 500);
  const Matrix2& u = run.unitaries.back();
  const auto amps = amplitudes_of(u);
  CHECK(transition_probability_general(u, SourceOverlap{0.0}) == Approx(std::norm(amps.beta)));
  CHECK(transition_probability_general(u, SourceOverlap{1.0}) == Approx(std::norm(amps.alpha)));
  CHECK(amps.norm_squared() == Approx(1.0).epsilon(1e-9));

  // Direct amplitude <w|U|s> for a mixed source.
  const double x = 0.6;
  const Complex direct = u.a00 * x + u.a01 * std::sqrt(1.0 - x * x);
  CHECK(transition_probability_general(u, SourceOverlap{x}) == Approx(std::norm(direct)).epsilon(1e-12));

  Matrix2 bad = id;
  bad.a00 = 1.1;
  CHECK_THROWS_AS((void)transition_probability_general(bad, SourceOverlap{0.5}), std::invalid_argument);
  CHECK_THROWS_AS(SourceOverlap{1.5}, std::invalid_argument);
}

TEST_CASE("amplitude convention reproduces the Rabi formula") {
  auto spec = ScenarioSpec::from_rates(ScenarioKind::ConstantField, 0.5, 1.0);
  spec.omega0 = -4.0;
  const auto run = propagate_schrodinger(spec, 2.0, 4000);
  const auto amps = amplitudes_of(run.unitaries.back());
  CHECK(std::norm(amps.beta) == Approx(std::pow(std::sin(0.5 * 2.0), 2)).epsilon(1e-6));
}

TEST_CASE("periods") {
  CHECK(*period(ScenarioSpec::from_rates(ScenarioKind::ConstantField, 0.5, 1.0)) == Approx(2.0 * kPi));
  CHECK(*period(ScenarioSpec::from_rates(ScenarioKind::OscillatoryField, 0.5, 1.0 / kPi)) ==
        Approx(kPi * kPi));
  CHECK_FALSE(period(reference_spec(ScenarioKind::ExponentialField)).has_value());
  CHECK_FALSE(period(reference_spec(ScenarioKind::PowerLawField)).has_value());

  auto constant = ScenarioSpec::from_rates(ScenarioKind::ConstantField, 0.5, 1.0);
  const double t = *period(constant);
  for (double theta : {0.1, 0.9, 2.2}) {
    CHECK(analytic_success_probability(constant, theta + t) ==
          Approx(analytic_success_probability(constant, theta)).epsilon(1e-12));
  }
}

TEST_CASE("spin rotation is unitary") {
  for (int i = 0; i < 100; ++i) {
    double nx = oracle::uniform(-1, 1), ny = oracle::uniform(-1, 1), nz = oracle::uniform(-1, 1);
    const double n = std::sqrt(nx * nx + ny * ny + nz * nz);
    const Matrix2 r = spin_rotation(oracle::uniform(-10, 10), nx / n, ny / n, nz / n);
    CHECK(unitarity_deviation(r) < 1e-14);
  }
}
