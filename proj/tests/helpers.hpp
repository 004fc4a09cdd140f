#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "korteweg/types.hpp"

namespace testing_util {

inline double rel(korteweg::cplx a, korteweg::cplx b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

template <class F>
korteweg::ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const korteweg::Error& e) {
    return e.kind();
  }
  return korteweg::ErrorKind::InvalidArgument;  // sentinel: nothing thrown
}

}  // namespace testing_util
