#include <doctest.h>

#include "approx.hpp"

#include <precollapse/constants.hpp>
#include <precollapse/error.hpp>
#include <precollapse/spacetime.hpp>

#include <cmath>
#include <random>

using namespace precollapse;
using namespace precollapse::spacetime;
using constants::c;

namespace {

const Event kA{0.0, -1.5, 0.0, 0.0};
const Event kB{0.0, 1.5, 0.0, 0.0};

double interval(const Event &a, const Event &b) {
  const double dt = b.t - a.t, dx = b.x - a.x, dy = b.y - a.y, dz = b.z - a.z;
  return c * c * dt * dt - (dx * dx + dy * dy + dz * dz);
}

// Oracle: scan the worldline backwards in 1e6 steps for the first point
// inside the coherent region, then bisect on the membership predicate.
double bisection_window(const Worldline &w, const Event &a, const Event &b, ExtendedSpeed s, double horizon) {
  const auto inside = [&](double t) { return coherent_region_contains(Event::at(t, w.position_at(t)), a, b, s); };
  const int steps = 1'000'000;
  double hi = a.t;
  double lo = a.t;
  for (int i = 1; i <= steps; ++i) {
    const double t = a.t - horizon * i / steps;
    if (inside(t)) {
      lo = t;
      break;
    }
    hi = t;
  }
  REQUIRE(lo < hi);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? lo : hi) = mid;
  }
  return a.t - 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("boost_event") {
  CHECK(boost_event(Event{}, 0.7 * c) == Event{});
  const Event e{1.0, 0.0, 0.0, 0.0};
  CHECK(boost_event(e, 0.0) == e);

  // Hand evaluation: gamma = 1.25, t' = -gamma * 0.6 / c, x' = 1.25.
  const Event b = boost_event(Event{0.0, 1.0, 0.0, 0.0}, 0.6 * c);
  CHECK(b.t == approx(-2.5017307139861402e-09).epsilon(1e-12));
  CHECK(b.x == approx(1.25).epsilon(1e-12));

  CHECK_THROWS_AS(boost_event(e, c), Error);
  CHECK_THROWS_AS(boost_event(e, -1.5 * c), Error);
}

TEST_CASE("transform_velocity") {
  const auto v = transform_velocity(ExtendedSpeed::infinite(), 0.5 * c);
  REQUIRE(!v.is_infinite());
  CHECK(v.value() == approx(-2.0 * c).epsilon(1e-12));
  CHECK(v.value() == approx(-5.9958e8).epsilon(1e-4));
  CHECK(transform_velocity(ExtendedSpeed::infinite(), 0.0).is_infinite());
  CHECK(transform_velocity(ExtendedSpeed::finite(c), 0.9 * c).value() == approx(c).epsilon(1e-12));
  CHECK(transform_velocity(ExtendedSpeed::finite(0.5 * c), 0.5 * c).value() == 0.0);
  // v V = c^2 blows up to an infinite signal speed.
  CHECK(transform_velocity(ExtendedSpeed::finite(2.0 * c), 0.5 * c).is_infinite());
}

TEST_CASE("classify_interval") {
  CHECK(classify_interval(kA, kA) == IntervalKind::Lightlike);
  CHECK(classify_interval(kA, kB) == IntervalKind::Spacelike);
  CHECK(classify_interval(Event{}, Event{10e-9, 0, 0, 0}) == IntervalKind::Timelike);
  CHECK(classify_interval(Event{}, Event{1e-8, 1e-8 * c, 0, 0}) == IntervalKind::Lightlike);
}

TEST_CASE("in_collapsed_region") {
  const CollapseFront cone(Event{}, ExtendedSpeed::finite(c));
  CHECK(in_collapsed_region(Event{}, cone));
  CHECK_FALSE(in_collapsed_region(Event{-10e-9, 1.0, 0, 0}, cone));
  CHECK(in_collapsed_region(Event{-1e-9, 1.0, 0, 0}, cone));

  const CollapseFront flat(Event{}, ExtendedSpeed::infinite());
  CHECK_FALSE(in_collapsed_region(Event{-1e-9, 1e6, -3.0, 7.0}, flat));
  CHECK(in_collapsed_region(Event{1e-9, -1e6, 0, 0}, flat));

  CHECK_THROWS_AS(CollapseFront(Event{}, ExtendedSpeed::finite(0.5 * c)), Error);
}

TEST_CASE("coherent_region_contains") {
  const auto s = ExtendedSpeed::finite(c);
  CHECK_FALSE(coherent_region_contains(Event{0, 0, 0, 0}, kA, kB, s));
  CHECK(coherent_region_contains(Event{-20e-9, 0, 0, 0}, kA, kB, s));
  // 3 m from B needs more than 10.007 ns.
  CHECK_FALSE(coherent_region_contains(Event{-7e-9, -1.5, 0, 0}, kA, kB, s));
  CHECK_THROWS_AS(coherent_region_contains(Event{}, Event{}, Event{1e-6, 0, 0, 0}, s), Error);
}

TEST_CASE("precollapse_apex") {
  const Event w = precollapse_apex(kA, kB);
  CHECK(w.t * 1e9 == approx(-5.0035).epsilon(1e-5));
  CHECK(w.t == approx(-3.0 / (2.0 * c)).epsilon(1e-14));
  CHECK(w.x == 0.0);

  const Event near = precollapse_apex(Event{0, 0, 0, 0}, Event{0, 1e-12, 0, 0});
  CHECK(std::abs(near.t) < 1e-20);

  const Event far = precollapse_apex(Event{0, -3, 0, 0}, Event{0, 3, 0, 0});
  CHECK(far.t * 1e9 == approx(-10.007).epsilon(1e-4));

  try {
    precollapse_apex(kA, Event{1e-9, 1.5, 0, 0});
    FAIL("expected unsupported-configuration error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::UnsupportedGeometry);
  }
}

TEST_CASE("precollapse_duration") {
  const auto s = ExtendedSpeed::finite(c);
  const Worldline edge{kA, Vec3{}};
  const auto window = precollapse_duration(edge, kA, kB, s);
  CHECK(window.duration * 1e9 == approx(10.007).epsilon(1e-4));
  CHECK(window.duration == approx(3.0 / c).epsilon(1e-14));
  CHECK_FALSE(window.degenerate);

  const Worldline mid{Event{}, Vec3{}};
  CHECK(precollapse_duration(mid, kA, kB, s).duration * 1e9 == approx(5.0035).epsilon(1e-4));

  const auto conventional = precollapse_duration(edge, kA, kB, ExtendedSpeed::infinite());
  CHECK(conventional.duration == 0.0);
  CHECK(conventional.degenerate);
}

TEST_CASE("precollapse_duration matches the bisection oracle") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> vel(-0.6 * c, 0.6 * c);
  for (double s_over_c : {1.0, 1.7, 4.0}) {
    const auto s = ExtendedSpeed::finite(s_over_c * c);
    for (int trial = 0; trial < 4; ++trial) {
      const Worldline w{kA, Vec3{vel(gen) * 0.5, vel(gen) * 0.5, vel(gen) * 0.5}};
      const double exact = precollapse_duration(w, kA, kB, s).duration;
      const double oracle = bisection_window(w, kA, kB, s, 4.0 * 3.0 / c);
      CHECK(std::abs(exact - oracle) < 1e-12);
    }
  }
  // Slow longitudinal beam motion shifts the window by ~D v^2 / 2c^3.
  const Worldline beam{kA, Vec3{0.0, 0.0, 3000.0}};
  const double exact = precollapse_duration(beam, kA, kB, ExtendedSpeed::finite(c)).duration;
  CHECK(std::abs(exact - bisection_window(beam, kA, kB, ExtendedSpeed::finite(c), 30e-9)) < 1e-12);
  CHECK(std::abs(exact - 3.0 / c) < 1e-12);
}

TEST_CASE("collapse_speed_bound") {
  CHECK(collapse_speed_bound(3.0, 10e-9) == 3e8);
  CHECK(collapse_speed_bound(3.0, 10e-9) / c == approx(1.0).epsilon(1e-3));
  CHECK(collapse_speed_bound(3.0, 5e-9) == 6e8);
  CHECK(collapse_speed_bound(3.0, 5e-9) / c == approx(2.0).epsilon(1e-3));
  CHECK(collapse_speed_bound(3.0, 1e300) < 1e-290);
  CHECK_THROWS_AS(collapse_speed_bound(0.0, 1e-9), Error);
}

TEST_CASE("property: interval and light-cone membership are boost invariant") {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> t(-50e-9, 50e-9), x(-10.0, 10.0), beta(-0.99, 0.99);
  const auto s = ExtendedSpeed::finite(c);
  int tested = 0;
  for (int i = 0; i < 2000; ++i) {
    const Event a{t(gen), x(gen), x(gen), x(gen)};
    const Event b{t(gen), x(gen), x(gen), x(gen)};
    const double V = beta(gen) * c;
    const Event a2 = boost_event(a, V), b2 = boost_event(b, V);
    const double before = interval(a, b), after = interval(a2, b2);
    const double scale = c * c * (b.t - a.t) * (b.t - a.t) + 300.0;
    CHECK(std::abs(before - after) <= 1e-9 * scale);

    // Skip points within rounding distance of the cone.
    if (std::abs(before) < 1e-6 * scale) {
      continue;
    }
    ++tested;
    CHECK(in_collapsed_region(a, CollapseFront(b, s)) == in_collapsed_region(a2, CollapseFront(b2, s)));
  }
  CHECK(tested > 1900);
}

TEST_CASE("property: velocity transform round trip and light-speed fixed point") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-0.99, 0.99);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(gen) * c;
    const double V = u(gen) * c;
    const auto there = transform_velocity(ExtendedSpeed::finite(v), V);
    const auto back = transform_velocity(there, -V);
    CHECK(std::abs(back.value() - v) <= 1e-9 * std::max(std::abs(v), 1.0));
    for (double sign : {1.0, -1.0}) {
      const auto light = transform_velocity(ExtendedSpeed::finite(sign * c), V);
      CHECK(std::abs(std::abs(light.value()) - c) <= 1e-12 * c);
    }
  }
}

TEST_CASE("property: coherent region grows with collapse speed") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> t(-40e-9, 0.0), x(-4.0, 4.0);
  const std::vector<ExtendedSpeed> speeds{ExtendedSpeed::finite(c), ExtendedSpeed::finite(1.5 * c),
                                          ExtendedSpeed::finite(3.0 * c), ExtendedSpeed::infinite()};
  for (int i = 0; i < 5000; ++i) {
    const Event p{t(gen), x(gen), x(gen), x(gen)};
    for (std::size_t k = 0; k + 1 < speeds.size(); ++k) {
      if (coherent_region_contains(p, kA, kB, speeds[k])) {
        CHECK(coherent_region_contains(p, kA, kB, speeds[k + 1]));
        // Intersection subset.
        CHECK(CollapseFront(kA, speeds[k]).strictly_in_past(p));
        CHECK(CollapseFront(kB, speeds[k]).strictly_in_past(p));
      }
    }
    // Every point strictly before detection is coherent for s = inf.
    CHECK(coherent_region_contains(p, kA, kB, ExtendedSpeed::infinite()) == (p.t < 0.0));
  }
}

TEST_CASE("frame dependence: the constant-time front is not Lorentz invariant") {
  const CollapseFront flat(Event{}, ExtendedSpeed::infinite());
  const CollapseFront cone(Event{}, ExtendedSpeed::finite(c));
  const Event p{-1e-9, 3.0, 0.0, 0.0}; // spacelike to the apex
  const double V = -0.5 * c;
  const Event p2 = boost_event(p, V);
  const CollapseFront flat2(boost_event(Event{}, V), ExtendedSpeed::infinite());
  const CollapseFront cone2(boost_event(Event{}, V), ExtendedSpeed::finite(c));
  CHECK(in_collapsed_region(p, flat) != in_collapsed_region(p2, flat2));
  CHECK(in_collapsed_region(p, cone) == in_collapsed_region(p2, cone2));
}
