#include <precollapse/scenario.hpp>

#include <precollapse/constants.hpp>
#include <precollapse/error.hpp>
#include <precollapse/format.hpp>

#include <cmath>
#include <cstdlib>
#include <string_view>

namespace precollapse {

ScenarioKind ScenarioKind::finite_speed(double speed) {
  if (!(speed > constants::c) || !std::isfinite(speed)) {
    throw Error(ErrorKind::InvalidArgument,
                "finite collapse speed must be a finite value > c, got " + format_double(speed));
  }
  return ScenarioKind{Kind::FiniteSpeed, speed};
}

ScenarioKind ScenarioKind::parse(const std::string &text) {
  if (text == "conventional") {
    return conventional();
  }
  if (text == "hk") {
    return hellwig_kraus();
  }
  constexpr std::string_view prefix = "speed:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string number = text.substr(prefix.size());
    char *end = nullptr;
    const double s = std::strtod(number.c_str(), &end);
    if (number.empty() || end != number.c_str() + number.size()) {
      throw Error(ErrorKind::Config, "scenario: cannot parse speed '" + number + "'");
    }
    if (s == constants::c) {
      return hellwig_kraus();
    }
    return finite_speed(s);
  }
  throw Error(ErrorKind::Config,
              "scenario: expected conventional | hk | speed:<m/s>, got '" + text + "'");
}

spacetime::ExtendedSpeed ScenarioKind::collapse_speed() const {
  switch (kind_) {
  case Kind::Conventional:
    return spacetime::ExtendedSpeed::infinite();
  case Kind::HellwigKraus:
    return spacetime::ExtendedSpeed::finite(constants::c);
  case Kind::FiniteSpeed:
    break;
  }
  return spacetime::ExtendedSpeed::finite(speed_);
}

std::string ScenarioKind::to_string() const {
  switch (kind_) {
  case Kind::Conventional:
    return "conventional";
  case Kind::HellwigKraus:
    return "hk";
  case Kind::FiniteSpeed:
    break;
  }
  return "speed:" + format_double(speed_);
}

} // namespace precollapse
