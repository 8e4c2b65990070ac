#pragma once

#include "doctest.h"
#include "wildfire/errors.hpp"
#include "wildfire/geometry.hpp"
#include "wildfire/physics.hpp"

namespace test {

/// Runs fn and returns the code of the wildfire::Error it throws.
template <class Fn>
wildfire::Errc code_of(Fn&& fn) {
  try {
    fn();
  } catch (const wildfire::Error& e) {
    return e.code();
  }
  FAIL("expected wildfire::Error");
  return wildfire::Errc::IoError;
}

inline wildfire::DomainGeometry square50() { return {50.0, 50.0, 2.0 / 3.0}; }

inline wildfire::PhysicalParameters reference_params() {
  wildfire::PhysicalParameters p;
  p.epsilon = 0.2136;
  p.A = 187.93;
  p.C = 7.2558e-4;
  p.C_S = 0.0;
  p.gamma = 558.49;
  p.T_a = 300.0;
  return p;
}

}  // namespace test
