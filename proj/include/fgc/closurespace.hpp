#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "fgc/setcore.hpp"

namespace fgc {

/// A closure operator given either by its closed sets (a Moore family) or
/// by its full table indexed by subset mask.
class ClosureSpec {
public:
    enum class Kind { ClosedSystem, FullTable };

    static ClosureSpec closed_system(SubsetFamily closed);
    static ClosureSpec full_table(UniversePtr universe, std::vector<Mask> table);
    static ClosureSpec identity(UniversePtr universe);

    Kind kind() const noexcept { return kind_; }
    const UniversePtr& universe() const noexcept { return universe_; }
    const SubsetFamily& closed_sets() const noexcept { return closed_; }
    const std::vector<Mask>& table() const noexcept { return table_; }

    /// Smallest closed superset (ClosedSystem) or table lookup (FullTable).
    /// An empty intersection of closed supersets yields the whole universe.
    Mask apply(Mask a) const;

private:
    Kind kind_ = Kind::ClosedSystem;
    UniversePtr universe_;
    SubsetFamily closed_;
    std::vector<Mask> table_;
};

/// The map tau of a generalized closure space.
///
/// InteriorSystem: tau(A) is the union of the open sets contained in A, so
/// tau is an interior operator and is total. PartialTable: tau is only known
/// where an entry exists; it must cover every gamma-image and every
/// tau-image of a gamma-image.
class TauSpec {
public:
    enum class Kind { InteriorSystem, PartialTable };

    static TauSpec interior_system(SubsetFamily opens);
    static TauSpec partial_table(UniversePtr universe, std::map<Mask, Mask> table);
    static TauSpec identity(UniversePtr universe);

    Kind kind() const noexcept { return kind_; }
    const UniversePtr& universe() const noexcept { return universe_; }
    const SubsetFamily& open_sets() const noexcept { return opens_; }
    const std::map<Mask, Mask>& table() const noexcept { return table_; }

    std::optional<Mask> apply(Mask a) const;

private:
    Kind kind_ = Kind::InteriorSystem;
    UniversePtr universe_;
    SubsetFamily opens_;
    std::map<Mask, Mask> table_;
};

/// Generalized closure space (X, tau o gamma). Tables for gamma and the hull
/// <A> = tau(gamma(A)) are computed for every subset on construction, and the
/// axioms are checked eagerly; `validated()` caches the verdict.
class GCSpace {
public:
    GCSpace(ClosureSpec gamma, TauSpec tau, const Limits& limits = {});

    const UniversePtr& universe() const noexcept { return universe_; }
    int size() const noexcept { return universe_->size(); }
    const ClosureSpec& gamma_spec() const noexcept { return gamma_; }
    const TauSpec& tau_spec() const noexcept { return tau_; }

    bool validated() const noexcept { return validation_.ok; }
    const Report& validation() const noexcept { return validation_; }

    Mask gamma(Mask a) const { return gamma_table_[a]; }
    std::optional<Mask> tau(Mask a) const { return tau_.apply(a); }
    /// Throws TauUndefined when tau has no entry at gamma(a).
    Mask hull(Mask a) const;
    std::optional<Mask> try_hull(Mask a) const;
    /// Sorted list of all gamma-closed sets.
    const std::vector<Mask>& closed_sets() const noexcept { return closed_; }

private:
    Report check_axioms() const;

    UniversePtr universe_;
    ClosureSpec gamma_;
    TauSpec tau_;
    std::vector<Mask> gamma_table_;
    std::vector<Mask> hull_table_;
    std::vector<Mask> closed_;
    Report validation_;
};

using GCSpacePtr = std::shared_ptr<const GCSpace>;

GCSpacePtr make_gcs(ClosureSpec gamma, TauSpec tau, const Limits& limits = {});

Subset gamma_apply(const GCSpace& g, const Subset& a);
/// <A> = tau(gamma(A)).
Subset hull(const GCSpace& g, const Subset& a);

/// Checks, for all A and B: tau(gamma(A)) is contained in gamma(A), tau is
/// idempotent on hulls, and A <= B implies <A> <= <B>. Also checks that gamma
/// is a closure operator and that tau is defined where it must be.
///
/// Rule ids: closed.top, closed.meet, gamma.extensive, gamma.idempotent,
/// gamma.monotone, tau.undefined, gcs.1, gcs.2, gcs.3.
Report validate_gcs(const GCSpace& g, const Limits& limits = {});

/// Replays a violation from validate_gcs; true iff the rule still fails for
/// the recorded witness.
bool replay_gcs(const GCSpace& g, const Violation& v);

/// gamma = topological closure, tau = topological interior. Throws
/// NotATopology unless `opens` contains the empty set and the universe and is
/// closed under binary union and intersection.
GCSpacePtr from_topology(const SubsetFamily& opens, const Limits& limits = {});

/// Checks gamma(A) = union of gamma(F) over the (finite) subsets F of A.
Report is_algebraic_closure(const ClosureSpec& gamma, const Limits& limits = {});

/// Searches for a closure operator gamma and a map tau meeting the axioms of
/// a generalized closure space with tau o gamma equal to `composite`.
/// Returns the closed sets of a suitable gamma, if one exists.
std::optional<SubsetFamily> gcs_decomposition(const UniversePtr& universe,
                                              const std::vector<Mask>& composite);

/// Result of the finite search for a topology whose closure-after-interior
/// composite c o i admits no generalized-closure-space decomposition.
struct CiWitness {
    SubsetFamily opens;
    std::vector<Mask> composite;
};

/// Enumerates finite topologies on 1..max_n points (max_n <= 4).
std::optional<CiWitness> find_ci_non_gcs(int max_n);

}  // namespace fgc
