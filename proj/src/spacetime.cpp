#include <precollapse/spacetime.hpp>

#include <precollapse/constants.hpp>
#include <precollapse/error.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace precollapse::spacetime {

using constants::c;

namespace {

void require_valid_boost(double boost_speed) {
  if (!(std::abs(boost_speed) < c)) {
    throw Error(ErrorKind::InvalidBoost,
                "boost speed must satisfy |V| < c, got " + std::to_string(boost_speed) + " m/s");
  }
}

bool simultaneous(const Event &a, const Event &b) {
  const double scale = std::max({std::abs(a.t), std::abs(b.t), 1e-9});
  return std::abs(a.t - b.t) <= 1e-12 * scale;
}

} // namespace

CollapseFront::CollapseFront(const Event &apex, ExtendedSpeed speed) : apex_(apex), speed_(speed) {
  if (!speed.is_infinite() && !(speed.value() >= c)) {
    throw Error(ErrorKind::InvalidArgument,
                "collapse speed must be >= c or infinite, got " + std::to_string(speed.value()));
  }
}

bool CollapseFront::strictly_in_past(const Event &p) const {
  const double lead = apex_.t - p.t;
  if (speed_.is_infinite()) {
    return lead > 0.0;
  }
  return speed_.value() * lead > norm(p.position() - apex_.position());
}

Event boost_event(const Event &e, double boost_speed) {
  require_valid_boost(boost_speed);
  const double beta = boost_speed / c;
  const double gamma = 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
  return {gamma * (e.t - boost_speed * e.x / (c * c)), gamma * (e.x - boost_speed * e.t), e.y, e.z};
}

ExtendedSpeed transform_velocity(ExtendedSpeed v, double boost_speed) {
  require_valid_boost(boost_speed);
  if (v.is_infinite()) {
    if (boost_speed == 0.0) {
      return ExtendedSpeed::infinite();
    }
    return ExtendedSpeed::finite(-c * c / boost_speed);
  }
  const double denom = 1.0 - v.value() * boost_speed / (c * c);
  if (denom == 0.0) {
    return ExtendedSpeed::infinite();
  }
  return ExtendedSpeed::finite((v.value() - boost_speed) / denom);
}

IntervalKind classify_interval(const Event &a, const Event &b) {
  const double ct = c * (b.t - a.t);
  const double time_part = ct * ct;
  const double space_part = dot(b.position() - a.position(), b.position() - a.position());
  const double interval = time_part - space_part;
  if (std::abs(interval) <= 1e-9 * std::max(time_part, space_part)) {
    return IntervalKind::Lightlike;
  }
  return interval > 0.0 ? IntervalKind::Timelike : IntervalKind::Spacelike;
}

bool in_collapsed_region(const Event &p, const CollapseFront &front) {
  return !front.strictly_in_past(p);
}

bool coherent_region_contains(const Event &p, const Event &a, const Event &b, ExtendedSpeed speed) {
  if (classify_interval(a, b) != IntervalKind::Spacelike) {
    throw Error(ErrorKind::InvalidGeometry,
                "detection events must be spacelike separated for the two-detector collapse");
  }
  const CollapseFront front_a(a, speed);
  const CollapseFront front_b(b, speed);
  return !(in_collapsed_region(p, front_a) || in_collapsed_region(p, front_b));
}

Event precollapse_apex(const Event &a, const Event &b) {
  if (!simultaneous(a, b)) {
    throw Error(ErrorKind::UnsupportedGeometry,
                "pre-collapse apex is only defined for simultaneous detections");
  }
  if (classify_interval(a, b) != IntervalKind::Spacelike) {
    throw Error(ErrorKind::InvalidGeometry, "detection events must be spacelike separated");
  }
  const double separation = norm(b.position() - a.position());
  const Vec3 mid = (a.position() + b.position()) * 0.5;
  return Event::at(a.t - separation / (2.0 * c), mid);
}

double time_inside_front(const Worldline &w, const CollapseFront &front) {
  if (front.speed().is_infinite()) {
    return 0.0;
  }
  const double s = front.speed().value();
  const double v2 = dot(w.velocity, w.velocity);
  if (!(v2 < s * s)) {
    throw Error(ErrorKind::InvalidArgument, "worldline speed must be below the collapse speed");
  }
  // With tau = t_apex - t and r the offset from the apex at t_apex:
  // (s^2 - v^2) tau^2 + 2 (r.v) tau - |r|^2 = 0, positive root.
  const Vec3 r = w.position_at(front.apex().t) - front.apex().position();
  const double r2 = dot(r, r);
  if (r2 == 0.0) {
    return 0.0;
  }
  const double a = s * s - v2;
  const double b = dot(r, w.velocity);
  const double disc = std::sqrt(b * b + a * r2);
  return b >= 0.0 ? r2 / (b + disc) : (disc - b) / a;
}

PrecollapseWindow precollapse_duration(const Worldline &w, const Event &a, const Event &b,
                                       ExtendedSpeed speed) {
  if (!simultaneous(a, b)) {
    throw Error(ErrorKind::UnsupportedGeometry,
                "pre-collapse duration is only defined for simultaneous detections");
  }
  if (classify_interval(a, b) != IntervalKind::Spacelike) {
    throw Error(ErrorKind::InvalidGeometry, "detection events must be spacelike separated");
  }
  if (speed.is_infinite()) {
    return {0.0, true};
  }
  const double tau_a = time_inside_front(w, CollapseFront(a, speed));
  const double tau_b = time_inside_front(w, CollapseFront(b, speed));
  const double duration = std::max(tau_a, tau_b);
  return {duration, duration <= 0.0};
}

double collapse_speed_bound(double separation, double lead_time) {
  if (!(separation > 0.0) || !(lead_time > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "separation and lead time must be positive");
  }
  return separation / lead_time;
}

} // namespace precollapse::spacetime
