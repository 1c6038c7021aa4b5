#pragma once

#include <precollapse/spacetime.hpp>

#include <string>

namespace precollapse {

/// Which collapse kinematics the simulation assumes.
class ScenarioKind {
public:
  enum class Kind { Conventional, HellwigKraus, FiniteSpeed };

  static ScenarioKind conventional() { return ScenarioKind{Kind::Conventional, 0.0}; }
  static ScenarioKind hellwig_kraus() { return ScenarioKind{Kind::HellwigKraus, 0.0}; }
  /// Throws InvalidArgument unless speed > c.
  static ScenarioKind finite_speed(double speed);

  /// Parses "conventional", "hk" or "speed:<m/s>".
  static ScenarioKind parse(const std::string &text);

  Kind kind() const { return kind_; }
  /// inf for Conventional, c for HellwigKraus.
  spacetime::ExtendedSpeed collapse_speed() const;
  /// Inverse of parse(); speeds are written with 17 significant digits.
  std::string to_string() const;

  bool operator==(const ScenarioKind &) const = default;

private:
  ScenarioKind(Kind k, double s) : kind_(k), speed_(s) {}
  Kind kind_;
  double speed_;
};

} // namespace precollapse
