#pragma once

#include <precollapse/vec3.hpp>

#include <limits>

namespace precollapse::spacetime {

/// A spacetime point in SI units (s, m).
struct Event {
  double t{0.0};
  double x{0.0}, y{0.0}, z{0.0};

  Vec3 position() const { return {x, y, z}; }
  static Event at(double t, const Vec3 &p) { return {t, p.x, p.y, p.z}; }
  bool operator==(const Event &) const = default;
};

/// Signed 1-D speed that can also be infinite.
class ExtendedSpeed {
public:
  static ExtendedSpeed finite(double v) { return ExtendedSpeed{v, false}; }
  static ExtendedSpeed infinite() { return ExtendedSpeed{std::numeric_limits<double>::infinity(), true}; }

  bool is_infinite() const { return infinite_; }
  /// +inf for the infinite case.
  double value() const { return value_; }

  bool operator==(const ExtendedSpeed &) const = default;

private:
  ExtendedSpeed(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

/// Apex event plus collapse speed s in [c, inf]. s = c is the past light
/// cone; s = inf is the constant-time hypersurface through the apex.
class CollapseFront {
public:
  CollapseFront(const Event &apex, ExtendedSpeed speed);

  const Event &apex() const { return apex_; }
  ExtendedSpeed speed() const { return speed_; }

  /// Strictly inside the past region: t_apex - t_p > dist(p, apex) / s.
  bool strictly_in_past(const Event &p) const;

private:
  Event apex_;
  ExtendedSpeed speed_;
};

struct Worldline {
  Event anchor;
  Vec3 velocity;

  Vec3 position_at(double t) const { return anchor.position() + velocity * (t - anchor.t); }
};

enum class IntervalKind { Timelike, Spacelike, Lightlike };

/// Result of the pre-collapse window computation.
struct PrecollapseWindow {
  double duration{0.0}; ///< seconds between leaving the coherent region and detection
  bool degenerate{false}; ///< worldline never strictly inside the coherent region
};

/// Lorentz boost along x. Throws InvalidBoost for |V| >= c.
Event boost_event(const Event &e, double boost_speed);

/// Relativistic velocity addition along x; v = inf maps to -c^2/V.
ExtendedSpeed transform_velocity(ExtendedSpeed v, double boost_speed);

/// Sign of c^2 dt^2 - |dx|^2; lightlike within 1e-9 relative.
IntervalKind classify_interval(const Event &a, const Event &b);

/// Boundary of the front counts as collapsed.
bool in_collapsed_region(const Event &p, const CollapseFront &front);

/// True iff p is strictly inside both fronts' past regions.
/// Throws InvalidGeometry unless a and b are spacelike separated.
bool coherent_region_contains(const Event &p, const Event &a, const Event &b, ExtendedSpeed speed);

/// Apex of the intersection of the two past light cones for simultaneous
/// detections: (t_A - D/2c, midpoint).
Event precollapse_apex(const Event &a, const Event &b);

/// Time between the worldline leaving the coherent region and the common
/// detection time of a and b. Exact root of the cone quadratic per front;
/// zero (degenerate) for s = inf.
PrecollapseWindow precollapse_duration(const Worldline &w, const Event &a, const Event &b,
                                       ExtendedSpeed speed);

/// Largest collapse speed a probe placed lead_time before detection can
/// see: the probe point is pre-collapsed iff s <= separation / lead_time.
double collapse_speed_bound(double separation, double lead_time);

/// Latest time before `apex.t` at which a point on `w` is still strictly
/// inside the front's past region, as apex.t - t. Requires |w.velocity| < s.
double time_inside_front(const Worldline &w, const CollapseFront &front);

} // namespace precollapse::spacetime
