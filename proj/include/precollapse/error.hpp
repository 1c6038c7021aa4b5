#pragma once

#include <stdexcept>
#include <string>

namespace precollapse {

enum class ErrorKind {
  InvalidArgument,      ///< value outside the documented range
  InvalidBoost,         ///< |V| >= c
  InvalidGeometry,      ///< detector events not spacelike separated
  UnsupportedGeometry,  ///< configuration the model deliberately does not cover
  InvalidCollapse,      ///< collapse onto a zero-probability branch
  Saturation,           ///< excitation probability above one
  NeverCollapses,       ///< zero phase kick per collision
  Evanescent,           ///< diffraction order does not propagate
  Config,               ///< config file / field validation
};

/// Single exception type for the library; callers switch on kind().
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace precollapse
