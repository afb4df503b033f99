#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fgc {

/// Membership bits of a subset; element i of a universe is bit i.
using Mask = std::uint64_t;

inline constexpr int kMaxUniverse = 64;

enum class ErrorCode {
    CapExceeded,
    UniverseMismatch,
    TauUndefined,
    NotATopology,
    NotRegular,
    NotInFamily,
    MNotInHull,
    EmptyPoset,
    NotAPartialOrder,
    InvalidBasis,
    NotScottContinuous,
    NoGreatestElement,
    SupMissing,
    SpaceMismatch,
    NotValidated,
    EmptyF,
    MOutsideHull,
    ParseError,
    InvalidInput,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Enumeration budget. Operations that quantify over the powerset of a
/// universe refuse universes larger than `cap`.
struct Limits {
    int cap = 16;
    int warn_above = 12;
    /// Largest poset on which directed subsets are enumerated outright.
    int directed_cap = 10;
};

void check_cap(int n, const Limits& limits);

class Universe {
public:
    explicit Universe(std::vector<std::string> labels);

    static std::shared_ptr<const Universe> make(std::vector<std::string> labels);
    /// Universe labelled "0", "1", ..., "n-1".
    static std::shared_ptr<const Universe> numbered(int n);

    int size() const noexcept { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }
    std::optional<int> index_of(std::string_view label) const;
    Mask full_mask() const noexcept;

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
};

using UniversePtr = std::shared_ptr<const Universe>;

inline int popcount(Mask m) noexcept { return __builtin_popcountll(m); }
inline bool is_subset(Mask a, Mask b) noexcept { return (a & ~b) == 0; }

/// Calls `fn` for every submask of `m` in increasing numeric order.
template <typename Fn>
void for_each_submask(Mask m, Fn&& fn)
{
    Mask s = 0;
    while (true) {
        fn(s);
        if (s == m) break;
        s = ((s | ~m) + 1) & m;
    }
}

/// Subset of a fixed universe. Equality is extensional; ordering is the
/// canonical subset order (numeric order of the membership bits, so the
/// empty set comes first).
class Subset {
public:
    Subset() = default;
    Subset(UniversePtr universe, Mask bits);

    static Subset empty(UniversePtr universe) { return Subset(std::move(universe), 0); }
    static Subset full(const UniversePtr& universe);
    /// Builds from labels; throws InvalidInput on an unknown label.
    static Subset of(const UniversePtr& universe, const std::vector<std::string>& labels);
    /// Parses the rendering `{a,b}`.
    static Subset parse(const UniversePtr& universe, std::string_view text);

    const UniversePtr& universe() const noexcept { return universe_; }
    Mask bits() const noexcept { return bits_; }
    int size() const noexcept { return popcount(bits_); }
    bool is_empty() const noexcept { return bits_ == 0; }
    bool contains(int element) const noexcept { return (bits_ >> element) & 1U; }
    bool subset_of(const Subset& other) const;
    std::vector<int> elements() const;
    std::vector<std::string> labels() const;

    Subset operator|(const Subset& other) const;
    Subset operator&(const Subset& other) const;
    Subset operator-(const Subset& other) const;
    Subset complement() const;

    std::string str() const;

    friend bool operator==(const Subset& a, const Subset& b)
    {
        return a.universe_ == b.universe_ && a.bits_ == b.bits_;
    }
    friend bool operator<(const Subset& a, const Subset& b) { return a.bits_ < b.bits_; }

private:
    void require_same(const Subset& other) const;

    UniversePtr universe_;
    Mask bits_ = 0;
};

std::string render(const Universe& universe, Mask bits);

/// Duplicate-free, canonically sorted list of subsets of one universe.
class SubsetFamily {
public:
    SubsetFamily() = default;
    explicit SubsetFamily(UniversePtr universe) : universe_(std::move(universe)) {}
    SubsetFamily(UniversePtr universe, std::vector<Mask> masks);
    SubsetFamily(UniversePtr universe, const std::vector<Subset>& members);

    const UniversePtr& universe() const noexcept { return universe_; }
    const std::vector<Mask>& masks() const noexcept { return masks_; }
    std::vector<Subset> members() const;
    std::size_t size() const noexcept { return masks_.size(); }
    bool empty() const noexcept { return masks_.empty(); }
    bool contains(Mask m) const;
    bool contains(const Subset& s) const;
    Subset at(std::size_t i) const { return Subset(universe_, masks_.at(i)); }

    friend bool operator==(const SubsetFamily& a, const SubsetFamily& b)
    {
        return a.masks_ == b.masks_;
    }

private:
    UniversePtr universe_;
    std::vector<Mask> masks_;
};

/// Rank of `s` in the canonical order of the powerset of its universe.
std::uint64_t canonical_index(const Subset& s, const Limits& limits = {});

/// All subsets of `u` (optionally filtered) in canonical order.
std::vector<Subset> enumerate_subsets(const UniversePtr& u,
                                      const std::function<bool(const Subset&)>& filter = {},
                                      const Limits& limits = {});

/// One named witness of a violated rule.
struct Witness {
    std::string role;
    Subset value;
};

struct Violation {
    std::string rule;
    std::vector<Witness> witnesses;
    std::string message;

    const Subset* find(std::string_view role) const;
};

struct Report {
    bool ok = true;
    std::vector<Violation> violations;
    std::vector<std::string> notes;

    void add(Violation v)
    {
        ok = false;
        violations.push_back(std::move(v));
    }
    void note(std::string text) { notes.push_back(std::move(text)); }
    void merge(const Report& other);
};

}  // namespace fgc
