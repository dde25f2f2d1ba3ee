#ifndef CUBECK_CONV_HPP
#define CUBECK_CONV_HPP

#include "eval.hpp"

// Definitional equality: type-directed with eta for functions, pairs, unit,
// paths and cofibration proofs. Under cofibration assumptions comparison is
// clause-wise: both sides are restricted by each partial endpoint
// assignment of the assumed formula's DNF, which also fires the pending
// hcomp/reduction branches.

namespace ctt {

struct ConvCtx {
  int lvl = 0;
  std::shared_ptr<const Globals> globals;
  Dnf assumptions = Dnf::top();
};

// type may be null: shape-directed comparison (used inside neutral spines)
bool conv(const ConvCtx& cc, const Val& a, const Val& b, const Val& type);

bool conv_cof(const ConvCtx& cc, const Dnf& a, const Dnf& b);

} // namespace ctt

#endif
