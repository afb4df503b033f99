#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fgc/fgcs.hpp"

namespace fgc {

/// Finite partial order. up(i) holds every j with i <= j, down(i) every j
/// with j <= i.
class FinPoset {
public:
    /// Takes the reflexive-transitive closure of `leq` and rejects cycles
    /// (NotAPartialOrder). Throws EmptyPoset for an empty carrier.
    FinPoset(UniversePtr elements, const std::vector<std::pair<int, int>>& leq);

    static std::shared_ptr<const FinPoset> from_labels(
        std::vector<std::string> labels,
        const std::vector<std::pair<std::string, std::string>>& leq);

    const UniversePtr& elements() const noexcept { return elements_; }
    int size() const noexcept { return elements_->size(); }
    bool leq(int a, int b) const { return (up_[static_cast<std::size_t>(a)] >> b) & 1U; }
    Mask up(int a) const { return up_[static_cast<std::size_t>(a)]; }
    Mask down(int a) const { return down_[static_cast<std::size_t>(a)]; }
    Mask down_set(Mask a) const;
    Mask up_set(Mask a) const;
    /// Elements above every member of s (all elements when s is empty).
    Mask upper_bounds(Mask s) const;
    std::optional<int> greatest(Mask s) const;
    std::optional<int> least(Mask s) const;
    /// Least upper bound of s among the elements of `region`.
    std::optional<int> sup_within(Mask s, Mask region) const;
    std::optional<int> sup(Mask s) const { return sup_within(s, elements_->full_mask()); }
    /// Nonempty, with an upper bound inside s for every pair of members.
    bool is_directed(Mask s) const;
    std::vector<std::pair<int, int>> cover_pairs() const;

    friend bool operator==(const FinPoset& a, const FinPoset& b)
    {
        return a.elements_->labels() == b.elements_->labels() && a.up_ == b.up_;
    }

private:
    UniversePtr elements_;
    std::vector<Mask> up_;
    std::vector<Mask> down_;
};

using FinPosetPtr = std::shared_ptr<const FinPoset>;

/// Element-indexed map between finite posets. Construction does not check
/// order preservation; see is_order_preserving and is_scott_continuous.
struct MonotoneMap {
    FinPosetPtr source;
    FinPosetPtr target;
    std::vector<int> table;

    int operator()(int x) const { return table.at(static_cast<std::size_t>(x)); }
    bool is_order_preserving() const;
    friend bool operator==(const MonotoneMap& a, const MonotoneMap& b)
    {
        return a.table == b.table;
    }
};

struct PosetFlags {
    bool dcpo = false;
    bool continuous = false;
    bool algebraic = false;
    bool complete_lattice = false;
    bool l_domain = false;
    bool bounded_complete = false;
    std::vector<std::string> notes;
};

/// dcpo, continuity and algebraicity are decided by enumerating directed
/// subsets (up to limits.directed_cap elements; larger posets fall back to
/// the finite-poset shortcut, with a note). The lattice-type flags are
/// decided by enumerating all subsets; bounded completeness includes the
/// empty subset, so it requires a least element.
PosetFlags classify_poset(const FinPoset& p, const Limits& limits = {});

/// Oracle: quantifies all directed subsets. Fast: x <= y.
bool way_below_poset(const FinPoset& p, int x, int y, Mode mode = Mode::Fast,
                     const Limits& limits = {});

/// result[y] is the set of x with x << y.
std::vector<Mask> way_below_sets(const FinPoset& p, Mode mode = Mode::Fast,
                                 const Limits& limits = {});

/// Oracle: f preserves sups of all directed subsets. Fast: f preserves order.
bool is_scott_continuous(const MonotoneMap& f, Mode mode = Mode::Fast, const Limits& limits = {});

/// Every order-preserving map between two finite posets.
std::vector<MonotoneMap> monotone_maps(const FinPosetPtr& source, const FinPosetPtr& target);

/// A poset paired with the space built from it.
struct PosetSpace {
    FinPosetPtr poset;
    FGCSpacePtr space;
};

/// gamma(A) = down-closure of A, tau(A) = way-below-closure of A, and the
/// family of all nonempty subsets with a greatest element. The carrier is the
/// whole poset; a supplied basis is accepted only if every element is the sup
/// of a directed subset of its way-below approximants inside it (on a finite
/// poset only the full carrier qualifies), otherwise InvalidBasis.
PosetSpace poset_to_fgcs(const FinPosetPtr& p, std::optional<Mask> basis = std::nullopt,
                         const Limits& limits = {});

bool is_basis(const FinPoset& p, Mask basis, const Limits& limits = {});

enum class RegularMode { R1R2, Direct };

/// R1R2: u is closed downward under way-below and every finite M <= u is way
/// below a single member of u. Direct: regular-open test in poset_to_fgcs(p).
bool regular_characterization(const FinPosetPtr& p, const Subset& u, RegularMode mode,
                              const Limits& limits = {});

/// x -> way-below set of x, and U -> sup U, checked to be mutually inverse
/// order isomorphisms between p and its regular open sets.
struct RoundTrip {
    Report report;
    RegularFamily regulars;
    std::vector<Mask> f;
    std::vector<std::optional<int>> g;
};

RoundTrip roundtrip_iso(const FinPosetPtr& p, const Limits& limits = {});

/// The regular open sets as a poset under inclusion, labelled by rendering.
FinPosetPtr regular_poset(const RegularFamily& r);

/// Every labelled partial order on {0, ..., n-1}, built one element at a
/// time: the new element picks a down-set below it and an up-set above it.
std::vector<FinPosetPtr> labeled_posets(int n);

/// Transitive closure of random forward edges under a random relabelling.
FinPosetPtr random_poset(int n, std::mt19937_64& rng, double edge_probability = 0.4);

}  // namespace fgc
