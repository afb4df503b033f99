#pragma once

#include <random>
#include <utility>
#include <vector>

#include "fgc/finposet.hpp"

namespace fgc {

/// Relation between the family of one space and the points of another,
/// stored as the set of related points for each source member (parallel to
/// source->family().masks()). F relates to a finite M' when it relates to
/// every point of M', so every F relates to the empty set.
class AMRelation {
public:
    AMRelation(FGCSpacePtr source, FGCSpacePtr target, std::vector<Mask> image,
               const Limits& limits = {});

    /// Throws NotInFamily for a pair whose first component is not a member.
    static AMRelation from_pairs(FGCSpacePtr source, FGCSpacePtr target,
                                 const std::vector<std::pair<Mask, int>>& pairs,
                                 const Limits& limits = {});

    const FGCSpacePtr& source() const noexcept { return source_; }
    const FGCSpacePtr& target() const noexcept { return target_; }
    const std::vector<Mask>& images() const noexcept { return image_; }
    /// Points related to member f; throws NotInFamily.
    Mask image(Mask f) const;
    bool relates(Mask f, Mask m) const { return is_subset(m, image(f)); }
    /// Pairs (member, point) in canonical order.
    std::vector<std::pair<Mask, int>> pairs() const;

    bool validated() const noexcept { return validation_.ok; }
    const Report& validation() const noexcept { return validation_; }

    friend bool operator==(const AMRelation& a, const AMRelation& b)
    {
        return a.image_ == b.image_;
    }

private:
    FGCSpacePtr source_;
    FGCSpacePtr target_;
    std::vector<Mask> image_;
    Report validation_;
};

/// Rule ids:
///   am.1 (F, F'): F relates to F' but not to <F'>;
///   am.2 (F, F1, M'): F <= <F1>, F relates to M' and F1 does not;
///   am.3 (F, M'): F relates to M' but no members G <= <F> and G' with
///   M' <= <G'> and G relating to G' exist.
/// am.2 is checked on single points, which decides it for every M'.
Report validate_am(const AMRelation& t, const Limits& limits = {});
bool replay_am(const AMRelation& t, const Violation& v);

AMRelation am_identity(const FGCSpacePtr& x);

/// F (t2 o t1) x'' iff some member G of the middle space has F t1 G and
/// G t2 x''. Throws SpaceMismatch unless t1's target is t2's source.
AMRelation am_compose(const AMRelation& t1, const AMRelation& t2);

bool same_space(const FGCSpace& a, const FGCSpace& b);

struct AMImage {
    Subset image;
    bool regular = false;
};

/// Points related to some member contained in u. Throws NotRegular unless u
/// is regular open in the source.
AMImage am_apply(const AMRelation& t, const Subset& u, const Limits& limits = {});

/// A map between the regular open sets of two spaces, indexed by position
/// in each RegularFamily.
struct RegularMap {
    RegularFamily source;
    RegularFamily target;
    MonotoneMap map;

    Mask apply(Mask u) const;
    friend bool operator==(const RegularMap& a, const RegularMap& b) { return a.map == b.map; }
};

/// Wraps a table of target indices, building both inclusion posets.
RegularMap make_regular_map(RegularFamily source, RegularFamily target, std::vector<int> table);

/// Tabulates am_apply over the source regulars. Throws NotRegular when an
/// image falls outside the target regulars.
RegularMap am_to_scott(const AMRelation& t, const Limits& limits = {});

/// F relates to x' iff x' lies in phi(<F>). Throws NotScottContinuous unless
/// phi preserves directed sups, NotRegular if some <F> is not regular.
AMRelation scott_to_am(const RegularMap& phi, const Limits& limits = {});

/// F relates to x' iff x' is way below f(max F).
AMRelation poset_fn_to_am(const MonotoneMap& f, const PosetSpace& source, const PosetSpace& target,
                          const Limits& limits = {});

/// f(x) = sup of the points related to members inside the approximants of
/// x. Throws SupMissing if that sup does not exist.
MonotoneMap am_to_poset_fn(const AMRelation& t, const PosetSpace& source, const PosetSpace& target);

/// Property checks following from the axioms, on every member pair and every
/// finite M'. Rule ids am.prop1, am.prop2, am.prop3.
Report check_am_consequences(const AMRelation& t, const Limits& limits = {});

/// For each pair (t1, t2): the regular-map image of the identities is the
/// identity, composition is preserved pointwise, and both conversions
/// between relations and regular maps invert each other. Rule ids
/// functor.identity, functor.compose, functor.roundtrip_am,
/// functor.roundtrip_map.
Report check_functor_laws(const std::vector<std::pair<AMRelation, AMRelation>>& sample,
                          const Limits& limits = {});

/// Monotone map between the inclusion orders of two regular families, drawn
/// by assigning each source set (smallest first) a random target above the
/// images of its predecessors.
RegularMap random_regular_map(const RegularFamily& source, const RegularFamily& target,
                              std::mt19937_64& rng);

}  // namespace fgc
