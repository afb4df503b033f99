#pragma once

#include <memory>
#include <vector>

#include "fgc/closurespace.hpp"

namespace fgc {

enum class Mode { Fast, Oracle };

/// Largest number of regular open sets for which the way-below oracle will
/// enumerate directed subfamilies.
struct OracleLimits {
    int max_family = 12;
};

/// Generalized closure space together with a family of finite subsets. The
/// refinement axiom (every finite M inside a hull <F> is covered by the hull
/// of some member lying inside <F>) is checked on construction.
class FGCSpace {
public:
    FGCSpace(GCSpacePtr space, SubsetFamily family, const Limits& limits = {});

    const GCSpace& space() const noexcept { return *space_; }
    const GCSpacePtr& space_ptr() const noexcept { return space_; }
    const UniversePtr& universe() const noexcept { return space_->universe(); }
    int size() const noexcept { return space_->size(); }
    const SubsetFamily& family() const noexcept { return family_; }
    /// Hulls of the family members, parallel to family().masks().
    const std::vector<Mask>& family_hulls() const noexcept { return hulls_; }
    Mask hull(Mask a) const { return space_->hull(a); }

    bool validated() const noexcept { return validation_.ok; }
    const Report& validation() const noexcept { return validation_; }

private:
    GCSpacePtr space_;
    SubsetFamily family_;
    std::vector<Mask> hulls_;
    Report validation_;
};

using FGCSpacePtr = std::shared_ptr<const FGCSpace>;

FGCSpacePtr make_fgcs(GCSpacePtr space, SubsetFamily family, const Limits& limits = {});

/// Rule ids: fgcs.nonempty (empty family), fgcs.refine (witnesses F, M).
Report validate_fgcs(const FGCSpace& x, const Limits& limits = {});
bool replay_fgcs(const FGCSpace& x, const Violation& v);

/// Checks that tau fixes every gamma-image and that members can be refined
/// without tau: M inside gamma(F) lies in some member F1 inside gamma(F).
Report is_classical_fa(const FGCSpace& x);

/// Fast: {<F> : F in family, F <= u} is directed and its union is u.
/// Oracle: every finite M <= u has a member F with M <= <F> <= u.
///
/// The empty set is regular exactly when it meets the same condition, which
/// happens iff the empty set is a family member with empty hull.
bool is_regular_open(const FGCSpace& x, const Subset& u, Mode mode = Mode::Fast,
                     const Limits& limits = {});

/// All regular open sets, ordered by inclusion.
struct RegularFamily {
    FGCSpacePtr space;
    SubsetFamily members;
    std::vector<std::string> notes;

    std::size_t size() const noexcept { return members.size(); }
    std::optional<std::size_t> index_of(Mask m) const;
};

RegularFamily enumerate_regulars(const FGCSpacePtr& x, const Limits& limits = {});

/// Fast: some member F <= u2 has u1 <= <F>. Oracle: every directed subfamily
/// of the regular open sets whose union contains u2 has a member containing
/// u1. Throws NotRegular if either argument is not regular open.
bool way_below(const FGCSpacePtr& x, const Subset& u1, const Subset& u2, Mode mode = Mode::Fast,
               const OracleLimits& oracle = {}, const Limits& limits = {});

/// Way-below relation on all pairs of regulars: result[i][j] is u_i << u_j.
std::vector<std::vector<bool>> way_below_matrix(const RegularFamily& r, Mode mode,
                                                const OracleLimits& oracle = {});

/// Hulls of the family members, deduplicated.
SubsetFamily basis_of(const FGCSpace& x);

/// Mode agreement for regular-open tests (every subset) and way-below (every
/// pair of regulars). The way-below oracle is skipped, with a note, when the
/// regular family exceeds the oracle limit.
Report check_mode_agreement(const FGCSpacePtr& x, const OracleLimits& oracle = {},
                            const Limits& limits = {});

/// Structural properties of the regular open sets: the basis members are
/// regular; each regular U is the directed union of the basis members way
/// below it; finite subsets of a regular U are refined inside U; directed
/// unions of regulars are regular; way-below is transitive, contained in
/// inclusion and interpolates through basis members.
Report verify_continuity(const FGCSpacePtr& x, const OracleLimits& oracle = {},
                         const Limits& limits = {});

/// Directedness of a finite family of sets: nonempty, and every pair has an
/// upper bound inside the family.
bool is_directed(const std::vector<Mask>& sets);

}  // namespace fgc
