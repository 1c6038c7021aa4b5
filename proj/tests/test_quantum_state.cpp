#include <doctest.h>

#include "approx.hpp"

#include <precollapse/constants.hpp>
#include <precollapse/error.hpp>
#include <precollapse/quantum_state.hpp>

#include <cmath>
#include <random>

using namespace precollapse;
using namespace precollapse::quantum;
using constants::c;
using constants::pi;

namespace {

ExperimentConfig config_with_separation(double d) {
  ExperimentConfig cfg;
  cfg.separation = d;
  return cfg;
}

DensityMatrix2 random_state(std::mt19937_64 &gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double p = u(gen);
  const double mag = std::sqrt(p * (1.0 - p)) * u(gen);
  return DensityMatrix2::make(p, 1.0 - p, std::polar(mag, 2.0 * pi * u(gen)));
}

} // namespace

TEST_CASE("density matrix invariants are enforced") {
  CHECK_THROWS_AS(DensityMatrix2::make(0.6, 0.6, 0.0), Error);
  CHECK_THROWS_AS(DensityMatrix2::make(-0.1, 1.1, 0.0), Error);
  CHECK_THROWS_AS(DensityMatrix2::make(0.5, 0.5, 0.6), Error);
  CHECK_NOTHROW(DensityMatrix2::make(0.3, 0.7, 0.2));
}

TEST_CASE("coherent_twin") {
  const auto rho = coherent_twin(0.0);
  CHECK(rho.p_ll() == 0.5);
  CHECK(rho.p_rr() == 0.5);
  CHECK(rho.rho_lr() == std::complex<double>(0.5, 0.0));
  CHECK(coherent_twin(pi).rho_lr().real() == approx(-0.5).epsilon(1e-15));
  for (double phase : {0.0, 0.3, 1.0, pi, 5.0}) {
    CHECK(coherent_twin(phase).purity() == approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("selective_collapse") {
  CHECK(selective_collapse(coherent_twin(0.0), Side::Left) == DensityMatrix2::make(1.0, 0.0, 0.0));
  CHECK(selective_collapse(DensityMatrix2::make(0.3, 0.7, 0.2), Side::Right) == DensityMatrix2::make(0.0, 1.0, 0.0));
  try {
    selective_collapse(DensityMatrix2::make(1.0, 0.0, 0.0), Side::Right);
    FAIL("expected invalid-collapse error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::InvalidCollapse);
  }
}

TEST_CASE("nonselective_collapse") {
  CHECK(nonselective_collapse(coherent_twin(0.0)) == DensityMatrix2::make(0.5, 0.5, 0.0));
  const auto diag = DensityMatrix2::make(0.25, 0.75, 0.0);
  CHECK(nonselective_collapse(diag) == diag);

  // Oracle: probability-weighted average of the two selective outcomes.
  std::mt19937_64 gen(5);
  for (int i = 0; i < 200; ++i) {
    const auto rho = random_state(gen);
    const auto l = selective_collapse(rho, Side::Left);
    const auto r = selective_collapse(rho, Side::Right);
    const auto mixed = nonselective_collapse(rho);
    CHECK(mixed.p_ll() == approx(rho.p_ll() * l.p_ll() + rho.p_rr() * r.p_ll()));
    CHECK(mixed.p_rr() == approx(rho.p_ll() * l.p_rr() + rho.p_rr() * r.p_rr()));
    CHECK(mixed.rho_lr() == std::complex<double>(0.0, 0.0));
    // Idempotence.
    CHECK(nonselective_collapse(mixed) == mixed);
    CHECK(selective_collapse(l, Side::Left) == l);
  }
}

TEST_CASE("state_at follows the scenario geometry") {
  const auto cfg = config_with_separation(3.0);
  CHECK(state_at(ScenarioKind::conventional(), 1e-9, cfg, Side::Left).rho_lr() == std::complex<double>(0.5, 0.0));
  CHECK(state_at(ScenarioKind::hellwig_kraus(), 1e-9, cfg, Side::Left) == DensityMatrix2::make(1.0, 0.0, 0.0));
  CHECK(state_at(ScenarioKind::hellwig_kraus(), 1e-9, cfg, Side::Right) == DensityMatrix2::make(0.0, 1.0, 0.0));
  // 20 ns > D/c = 10.007 ns.
  CHECK(state_at(ScenarioKind::hellwig_kraus(), 20e-9, cfg, Side::Left).is_coherent());

  for (const auto &scenario : {ScenarioKind::conventional(), ScenarioKind::hellwig_kraus(),
                               ScenarioKind::finite_speed(2.0 * c)}) {
    CHECK_FALSE(state_at(scenario, 0.0, cfg, Side::Left).is_coherent());
  }
  CHECK_THROWS_AS(state_at(ScenarioKind::hellwig_kraus(), -1e-9, cfg, Side::Left), Error);
}

TEST_CASE("state_at window boundary agrees with precollapse_duration") {
  const auto cfg = config_with_separation(3.0);
  const auto [a, b] = detector_events(cfg);
  for (double s_over_c : {1.0, 1.25, 2.0, 10.0}) {
    const auto scenario = s_over_c == 1.0 ? ScenarioKind::hellwig_kraus() : ScenarioKind::finite_speed(s_over_c * c);
    const double window =
        spacetime::precollapse_duration(beam_worldline(cfg, Side::Left), a, b, scenario.collapse_speed()).duration;
    CHECK(std::abs(precollapse_window(scenario, cfg, Side::Left) - window) < 1e-12);
    CHECK_FALSE(state_at(scenario, window - 1e-12, cfg, Side::Left).is_coherent());
    CHECK(state_at(scenario, window + 1e-12, cfg, Side::Left).is_coherent());
  }
}

TEST_CASE("property: the collapsed lead-time set shrinks as the collapse speed grows") {
  const auto cfg = config_with_separation(3.0);
  const std::vector<ScenarioKind> ordered{ScenarioKind::hellwig_kraus(), ScenarioKind::finite_speed(1.5 * c),
                                          ScenarioKind::finite_speed(4.0 * c), ScenarioKind::conventional()};
  for (double dt = 0.25e-9; dt < 25e-9; dt += 0.25e-9) {
    for (std::size_t k = 0; k + 1 < ordered.size(); ++k) {
      const bool faster_collapsed = !state_at(ordered[k + 1], dt, cfg, Side::Left).is_coherent();
      const bool slower_collapsed = !state_at(ordered[k], dt, cfg, Side::Left).is_coherent();
      if (faster_collapsed) {
        CHECK(slower_collapsed);
      }
    }
    CHECK(state_at(ScenarioKind::conventional(), dt, cfg, Side::Right).is_coherent());
  }
}

TEST_CASE("scenario parsing") {
  CHECK(ScenarioKind::parse("conventional") == ScenarioKind::conventional());
  CHECK(ScenarioKind::parse("hk") == ScenarioKind::hellwig_kraus());
  CHECK(ScenarioKind::parse("speed:6e8") == ScenarioKind::finite_speed(6e8));
  CHECK(ScenarioKind::parse(ScenarioKind::finite_speed(4.5e8).to_string()) == ScenarioKind::finite_speed(4.5e8));
  CHECK_THROWS_AS(ScenarioKind::parse("speed:1e8"), Error);
  CHECK_THROWS_AS(ScenarioKind::parse("instant"), Error);
  CHECK(ScenarioKind::conventional().collapse_speed().is_infinite());
}
