#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fgc/setcore.hpp"

namespace fgc {

using Rat = boost::multiprecision::cpp_rational;

/// Accepts integers and p/q. Throws ParseError.
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& r);

/// Upward-closed subsets of the rationals: (a,inf), [a,inf), the whole line,
/// and the empty set.
struct RayOpen {
    enum class Kind { Empty, Open, Closed, All };

    Kind kind = Kind::Empty;
    Rat a;

    static RayOpen empty() { return {Kind::Empty, 0}; }
    static RayOpen open(Rat a) { return {Kind::Open, std::move(a)}; }
    static RayOpen closed(Rat a) { return {Kind::Closed, std::move(a)}; }
    static RayOpen all() { return {Kind::All, 0}; }
    /// "(a,inf)", "[a,inf)", "all" or "{}". Throws ParseError.
    static RayOpen parse(std::string_view text);

    bool contains(const Rat& x) const;
    std::string str() const;

    friend bool operator==(const RayOpen& x, const RayOpen& y)
    {
        if (x.kind != y.kind) return false;
        return x.kind == Kind::Empty || x.kind == Kind::All || x.a == y.a;
    }
};

bool ray_subset(const RayOpen& u, const RayOpen& v);
/// Union of finitely many rays.
RayOpen ray_union(const std::vector<RayOpen>& rays);

/// gamma(A): points above some member of A, here [min A, inf).
RayOpen ray_gamma(const std::vector<Rat>& a);
/// tau(A): points strictly above some member of A.
RayOpen ray_tau(const RayOpen& a);
/// <F> = tau(gamma(F)) = (min F, inf). Throws EmptyF.
RayOpen ray_hull(const std::vector<Rat>& f);
/// The hull of an arbitrary finite set, the empty set included.
RayOpen ray_hull_any(const std::vector<Rat>& m);

/// A member F with m <= <F> <= u, if one exists.
std::optional<std::vector<Rat>> ray_regular_witness(const RayOpen& u, const std::vector<Rat>& m);
bool ray_is_regular(const RayOpen& u);

/// A member F <= u2 with u1 <= <F>, if one exists. Throws NotRegular.
std::optional<std::vector<Rat>> ray_way_below_witness(const RayOpen& u1, const RayOpen& u2);
bool ray_way_below(const RayOpen& u1, const RayOpen& u2);

/// Sigma(F, M) on the line: empty when M is empty, otherwise every finite G
/// with min G = min M.
struct RaySigma {
    std::optional<Rat> min;

    bool empty() const noexcept { return !min.has_value(); }
    bool contains(const std::vector<Rat>& g) const;
    std::string str() const;
};

/// Throws EmptyF, or MOutsideHull unless m <= <f>.
RaySigma ray_sigma(const std::vector<Rat>& f, const std::vector<Rat>& m);

/// Checks both F-sup conditions for g directly, quantifying over the hulls
/// (b, inf) of all members G1 by their endpoint b.
bool ray_is_f_sup(const std::vector<Rat>& f, const std::vector<Rat>& m, const std::vector<Rat>& g);

}  // namespace fgc
