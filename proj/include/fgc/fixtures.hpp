#pragma once

#include "fgc/finposet.hpp"

namespace fgc::fixtures {

/// X = {a}, identity operators, family {{a}}.
FGCSpacePtr point();
/// X = {a,b}, identity operators, family {{a},{b},{a,b}}.
FGCSpacePtr flat();

FinPosetPtr chain(int n);
FinPosetPtr v();
FinPosetPtr diamond();
/// bot below a and b, both below top1 and top2.
FinPosetPtr m();
/// m() without its bottom.
FinPosetPtr two_top();

/// The space of the 2-chain.
FGCSpacePtr chain2();
/// chain2's space with tau({0,1}) replaced by {1}.
GCSpacePtr chain2_patched();
/// X = {a,b}, identity gamma, tau({a}) = {}, family {{a}}; fails refinement.
FGCSpacePtr refine_failure();

}  // namespace fgc::fixtures
