#pragma once

#include <doctest.h>

// doctest::Approx adds `epsilon` as an absolute floor; physical values here
// are often ~1e-9, so compare relatively.
inline doctest::Approx approx(double value) { return doctest::Approx(value).scale(0.0); }
