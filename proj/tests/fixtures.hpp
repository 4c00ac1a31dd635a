#pragma once

#include "edsring/construction.hpp"

namespace fixtures {

inline const edsring::Curve& ref() {
  static edsring::Curve c(edsring::CurveConfig::reference());
  return c;
}

// The k = 1 sequence is a few seconds of work, so it is built once per binary.
inline const edsring::LSequence& seq1() {
  static edsring::LSequence s = edsring::construct_sequence(ref(), 1, 300, edsring::ConstructionBudget{});
  return s;
}

}  // namespace fixtures
