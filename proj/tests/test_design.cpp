#include <doctest.h>

#include "approx.hpp"

#include <precollapse/constants.hpp>
#include <precollapse/design.hpp>
#include <precollapse/error.hpp>
#include <precollapse/spacetime.hpp>

#include <cmath>

using namespace precollapse;
using namespace precollapse::design;
using constants::c;

TEST_CASE("de_broglie") {
  CHECK(de_broglie(constants::sodium_mass, 3000.0) == approx(5.785635435880283e-12).epsilon(1e-12));
  CHECK(de_broglie(3.818e-26, 3000.0) == approx(5.785e-12).epsilon(1e-3));
  CHECK(de_broglie(constants::sodium_mass, 6000.0) ==
        approx(de_broglie(constants::sodium_mass, 3000.0) / 2.0).epsilon(1e-15));
  const double ratio = de_broglie(constants::hydrogen_mass, 3000.0) / de_broglie(constants::sodium_mass, 3000.0);
  CHECK(ratio == approx(22.811270357892056).epsilon(1e-12));
  for (double m : {1e-27, constants::sodium_mass, 1e-24}) {
    for (double v : {1.0, 3000.0, 1e5}) {
      CHECK(de_broglie(m, v) * m * v == approx(constants::h).epsilon(1e-15));
    }
  }
  CHECK_THROWS_AS(de_broglie(0.0, 1.0), Error);
}

TEST_CASE("diffraction_angle") {
  CHECK(diffraction_angle(5.785e-12, 20e-9, 1) == approx(2.893e-4).epsilon(1e-3));
  CHECK(diffraction_angle(5.784939889994762e-12, 20e-9, 1) ==
        approx(2.8924699853298986e-4).epsilon(1e-12));
  CHECK(diffraction_angle(5.785e-12, 20e-9, 0) == 0.0);
  CHECK(diffraction_angle(5.785e-12, 20e-9, 1) / diffraction_angle(5.785e-12, 200e-9, 1) ==
        approx(10.0).epsilon(1e-6));
  try {
    diffraction_angle(30e-9, 20e-9, 1);
    FAIL("expected evanescent error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::Evanescent);
  }
  double prev = -1.0;
  for (int n = 0; n < 100; ++n) {
    const double a = diffraction_angle(1e-10, 20e-9, n);
    CHECK(a > prev);
    prev = a;
  }
  prev = -1.0;
  for (double lambda = 1e-12; lambda < 1e-8; lambda *= 1.5) {
    const double a = diffraction_angle(lambda, 20e-9, 1);
    CHECK(a > prev);
    prev = a;
  }
  prev = 10.0;
  for (double period = 1e-9; period < 1e-6; period *= 1.5) {
    const double a = diffraction_angle(1e-10, period, 1);
    CHECK(a < prev);
    prev = a;
  }
}

TEST_CASE("timing_budget") {
  ExperimentConfig cfg;
  cfg.separation = 3.0;
  const auto t = timing_budget(cfg);
  CHECK(t.crossing_time == approx(5e-9).epsilon(1e-12));
  CHECK(t.precollapse_window == approx(10.00692285594456e-9).epsilon(1e-9));
  CHECK(t.decay_time_available == approx(7.506922856445601e-9).epsilon(1e-12));
  CHECK(t.decay_efficiency == approx(0.3744866951311502).epsilon(1e-12));
  CHECK(t.shortfall);

  for (double d : {0.5, 3.0, 12.0}) {
    cfg.separation = d;
    const auto [a, b] = detector_events(cfg);
    const double window = spacetime::precollapse_duration(beam_worldline(cfg, Side::Left), a, b,
                                                          spacetime::ExtendedSpeed::finite(c))
                              .duration;
    CHECK(std::abs(timing_budget(cfg).precollapse_window - window) < 1e-12);
    CHECK(timing_budget(cfg).decay_time_available >= 0.0);
    CHECK(timing_budget(cfg).decay_efficiency <= 1.0);
  }
}

TEST_CASE("beam_current_limit and parallelism_tolerance") {
  CHECK(beam_current_limit(1e-12) == approx(1e12));
  CHECK(beam_current_limit(1.0) == 1.0);
  CHECK(beam_current_limit(kNominalDetectionTime) / 1e8 >= 1e4);
  CHECK_THROWS_AS(beam_current_limit(0.0), Error);
  CHECK(parallelism_tolerance(15e-6, 589e-9) == approx(3.92666e-3).epsilon(1e-5));
  CHECK(parallelism_tolerance(30e-6, 589e-9) == approx(parallelism_tolerance(15e-6, 589e-9) / 2.0));
  CHECK(parallelism_tolerance(15e-6, 0.0) == 0.0);
}

TEST_CASE("feasibility_report") {
  ExperimentConfig cfg;
  cfg.separation = 3.0;
  BeamSpec spec;
  const auto r = feasibility_report(spec, cfg);
  CHECK(r.timing.crossing_time == approx(5e-9).epsilon(1e-9));
  CHECK(r.timing.precollapse_window == approx(10e-9).epsilon(1e-3));
  CHECK(cfg.lifetime == 16e-9);
  CHECK(r.timing.shortfall);
  CHECK(r.flux_margin >= 1e4);
  CHECK(r == feasibility_report(spec, cfg));

  auto hydrogen = spec;
  hydrogen.mass = constants::hydrogen_mass;
  CHECK(achievable_separation(hydrogen) / achievable_separation(spec) == approx(22.8).epsilon(1e-3));

  auto zero = spec;
  zero.diffraction_order = 0;
  const auto z = feasibility_report(zero, cfg);
  CHECK(z.achievable_separation == 0.0);
  CHECK_FALSE(z.feasible);
  CHECK(z.verdict.rfind("infeasible", 0) == 0);

  auto wide = spec;
  wide.arm_length = 10000.0;
  wide.grating_pairs = 2;
  const auto w = feasibility_report(wide, cfg);
  CHECK(w.feasible);
  CHECK(w.verdict.rfind("feasible with reduced decay efficiency", 0) == 0);

  spec.grating_pairs = 0;
  CHECK_THROWS_AS(feasibility_report(spec, cfg), Error);
}
