#pragma once

#include <optional>
#include <string>

#include "fgc/finposet.hpp"

namespace fgc {

/// All F-sups of M: members G with <M> <= <G> and G <= <F>, whose hull lies
/// below the hull of every member G1 with <M> <= <G1> <= <F>.
struct SigmaSet {
    FGCSpacePtr space;
    Mask f = 0;
    Mask m = 0;
    SubsetFamily members;

    bool empty() const noexcept { return members.empty(); }
    /// Least member in canonical order.
    std::optional<Subset> representative() const;
    /// The hull shared by every member.
    std::optional<Subset> hull() const;
};

/// Throws NotInFamily unless f is a member, MNotInHull unless m <= <f>.
SigmaSet f_sups(const FGCSpacePtr& x, const Subset& f, const Subset& m);

/// Sigma(F, M) is nonempty for every member F and every M <= <F>, the empty
/// M included. Rule id lc (witnesses F, M).
Report is_locally_consistent(const FGCSpace& x, const Limits& limits = {});
bool replay_local_consistency(const FGCSpacePtr& x, const Violation& v);

/// Every subset M of every hull <F> is a family member. Rule id bc
/// (witnesses F, M). The empty M is included.
Report is_consistent(const FGCSpace& x, const Limits& limits = {});
bool replay_consistency(const FGCSpace& x, const Violation& v);

enum class SpaceClass { General, LocallyConsistent, Consistent };
std::string to_string(SpaceClass c);

struct SubclassResult {
    Report report;
    SpaceClass space_class = SpaceClass::General;
    bool locally_consistent = false;
    bool consistent = false;
    std::size_t regular_count = 0;
    PosetFlags regular_flags;
    Report lc_report;
    Report bc_report;
};

/// Classifies the regular open sets under inclusion and checks that local
/// consistency yields an L-domain and consistency yields a locally
/// consistent space whose regular open sets are bounded complete. Rule ids
/// subclass.lc_ldomain, subclass.bc_lc, subclass.bc_bounded.
SubclassResult verify_subclass_theorems(const FGCSpacePtr& x, const Limits& limits = {});

}  // namespace fgc
