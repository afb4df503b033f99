#include "fgc/fgcs.hpp"

#include <algorithm>
#include <map>

namespace fgc {

namespace {

constexpr std::size_t kMaxPerRule = 16;

void add_capped(Report& report, std::map<std::string, std::size_t>& counts, Violation v)
{
    auto& n = counts[v.rule];
    if (n++ < kMaxPerRule) {
        report.add(std::move(v));
    } else if (n == kMaxPerRule + 1) {
        report.note("further violations of " + v.rule + " omitted");
    }
}

/// Calls fn(selection, union) for every directed subfamily of `sets`.
template <typename Fn>
void for_each_directed_subfamily(const std::vector<Mask>& sets, Fn&& fn)
{
    const std::size_t k = sets.size();
    std::vector<std::uint64_t> above(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (is_subset(sets[i], sets[j])) above[i] |= std::uint64_t{1} << j;
        }
    }
    for (std::uint64_t sel = 1; sel < (std::uint64_t{1} << k); ++sel) {
        bool directed = true;
        Mask joined = 0;
        for (std::uint64_t a = sel; a && directed; a &= a - 1) {
            const int i = __builtin_ctzll(a);
            joined |= sets[static_cast<std::size_t>(i)];
            for (std::uint64_t b = a; b; b &= b - 1) {
                const int j = __builtin_ctzll(b);
                if ((above[static_cast<std::size_t>(i)] & above[static_cast<std::size_t>(j)] & sel) == 0) {
                    directed = false;
                    break;
                }
            }
        }
        if (directed) fn(sel, joined);
    }
}

bool regular_fast(const FGCSpace& x, Mask u)
{
    std::vector<Mask> hulls;
    const auto& fam = x.family().masks();
    for (std::size_t i = 0; i < fam.size(); ++i) {
        if (is_subset(fam[i], u)) hulls.push_back(x.family_hulls()[i]);
    }
    if (!is_directed(hulls)) return false;
    Mask joined = 0;
    for (Mask h : hulls) joined |= h;
    return joined == u;
}

bool regular_oracle(const FGCSpace& x, Mask u)
{
    bool ok = true;
    for_each_submask(u, [&](Mask m) {
        if (!ok) return;
        bool found = false;
        for (Mask h : x.family_hulls()) {
            if (is_subset(m, h) && is_subset(h, u)) {
                found = true;
                break;
            }
        }
        ok = found;
    });
    return ok;
}

bool way_below_fast(const FGCSpace& x, Mask u1, Mask u2)
{
    const auto& fam = x.family().masks();
    for (std::size_t i = 0; i < fam.size(); ++i) {
        if (is_subset(fam[i], u2) && is_subset(u1, x.family_hulls()[i])) return true;
    }
    return false;
}

std::vector<std::vector<bool>> way_below_oracle(const std::vector<Mask>& regs)
{
    const std::size_t k = regs.size();
    std::vector<std::uint64_t> containing(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (is_subset(regs[i], regs[j])) containing[i] |= std::uint64_t{1} << j;
        }
    }
    std::vector<std::vector<bool>> wb(k, std::vector<bool>(k, true));
    for_each_directed_subfamily(regs, [&](std::uint64_t sel, Mask joined) {
        for (std::size_t i = 0; i < k; ++i) {
            if (containing[i] & sel) continue;
            for (std::size_t j = 0; j < k; ++j) {
                if (is_subset(regs[j], joined)) wb[i][j] = false;
            }
        }
    });
    return wb;
}

}  // namespace

bool is_directed(const std::vector<Mask>& sets)
{
    if (sets.empty()) return false;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            const Mask need = sets[i] | sets[j];
            bool bounded = false;
            for (Mask s : sets) {
                if (is_subset(need, s)) {
                    bounded = true;
                    break;
                }
            }
            if (!bounded) return false;
        }
    }
    return true;
}

FGCSpace::FGCSpace(GCSpacePtr space, SubsetFamily family, const Limits& limits)
    : space_(std::move(space)), family_(std::move(family))
{
    if (!space_) throw Error(ErrorCode::InvalidInput, "missing space");
    if (family_.universe() != space_->universe()) {
        throw Error(ErrorCode::UniverseMismatch, "family is not over the space's universe");
    }
    if (!space_->validated()) {
        throw Error(ErrorCode::NotValidated,
                    "underlying generalized closure space fails its axioms");
    }
    check_cap(space_->size(), limits);
    hulls_.reserve(family_.size());
    for (Mask f : family_.masks()) hulls_.push_back(space_->hull(f));

    std::map<std::string, std::size_t> counts;
    auto w = [&](const char* role, Mask m) { return Witness{role, Subset(universe(), m)}; };
    if (family_.empty()) {
        validation_.add(Violation{"fgcs.nonempty", {}, "the family is empty"});
    }
    const auto& fam = family_.masks();
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const Mask h = hulls_[i];
        if (popcount(h) > limits.warn_above) {
            validation_.note("refinement check enumerates a hull of "
                             + std::to_string(popcount(h)) + " elements");
        }
        std::vector<Mask> inside;
        for (std::size_t j = 0; j < fam.size(); ++j) {
            if (is_subset(fam[j], h)) inside.push_back(hulls_[j]);
        }
        for_each_submask(h, [&](Mask m) {
            for (Mask h1 : inside) {
                if (is_subset(m, h1)) return;
            }
            add_capped(validation_, counts,
                       Violation{"fgcs.refine", {w("F", fam[i]), w("M", m)},
                                 "no member F1 <= <F> has M <= <F1>"});
        });
    }
}

FGCSpacePtr make_fgcs(GCSpacePtr space, SubsetFamily family, const Limits& limits)
{
    return std::make_shared<const FGCSpace>(std::move(space), std::move(family), limits);
}

Report validate_fgcs(const FGCSpace& x, const Limits& limits)
{
    check_cap(x.size(), limits);
    return x.validation();
}

bool replay_fgcs(const FGCSpace& x, const Violation& v)
{
    if (v.rule == "fgcs.nonempty") return x.family().empty();
    if (v.rule != "fgcs.refine") return false;
    const Subset* f = v.find("F");
    const Subset* m = v.find("M");
    if (!f || !m || !x.family().contains(*f)) return false;
    const Mask h = x.hull(f->bits());
    if (!is_subset(m->bits(), h)) return false;
    const auto& fam = x.family().masks();
    for (std::size_t j = 0; j < fam.size(); ++j) {
        if (is_subset(fam[j], h) && is_subset(m->bits(), x.family_hulls()[j])) return false;
    }
    return true;
}

Report is_classical_fa(const FGCSpace& x)
{
    Report report;
    std::map<std::string, std::size_t> counts;
    const auto& g = x.space();
    auto w = [&](const char* role, Mask m) { return Witness{role, Subset(x.universe(), m)}; };
    for (Mask c : g.closed_sets()) {
        auto t = g.tau(c);
        if (!t || *t != c) {
            add_capped(report, counts,
                       Violation{"classical.tau_identity", {w("C", c)},
                                 "tau does not fix the closed set C"});
        }
    }
    const auto& fam = x.family().masks();
    for (Mask f : fam) {
        const Mask closed = g.gamma(f);
        for_each_submask(closed, [&](Mask m) {
            for (Mask f1 : fam) {
                if (is_subset(m, f1) && is_subset(f1, closed)) return;
            }
            add_capped(report, counts,
                       Violation{"classical.refine", {w("F", f), w("M", m)},
                                 "no member F1 has M <= F1 <= gamma(F)"});
        });
    }
    return report;
}

bool is_regular_open(const FGCSpace& x, const Subset& u, Mode mode, const Limits& limits)
{
    if (u.universe() != x.universe()) {
        throw Error(ErrorCode::UniverseMismatch, "subset is not over the space's universe");
    }
    if (mode == Mode::Oracle) {
        check_cap(x.size(), limits);
        return regular_oracle(x, u.bits());
    }
    return regular_fast(x, u.bits());
}

std::optional<std::size_t> RegularFamily::index_of(Mask m) const
{
    const auto& ms = members.masks();
    auto it = std::lower_bound(ms.begin(), ms.end(), m);
    if (it == ms.end() || *it != m) return std::nullopt;
    return static_cast<std::size_t>(it - ms.begin());
}

RegularFamily enumerate_regulars(const FGCSpacePtr& x, const Limits& limits)
{
    if (!x->validated()) throw Error(ErrorCode::NotValidated, "space fails the refinement axiom");
    check_cap(x->size(), limits);
    std::vector<Mask> found;
    for_each_submask(x->universe()->full_mask(), [&](Mask u) {
        if (regular_fast(*x, u)) found.push_back(u);
    });
    RegularFamily r{x, SubsetFamily(x->universe(), std::move(found)), {}};
    if (r.members.contains(Mask{0})) {
        r.notes.push_back("the empty set is regular open (empty family member with empty hull)");
    }
    return r;
}

bool way_below(const FGCSpacePtr& x, const Subset& u1, const Subset& u2, Mode mode,
               const OracleLimits& oracle, const Limits& limits)
{
    if (!is_regular_open(*x, u1, Mode::Fast, limits)) {
        throw Error(ErrorCode::NotRegular, u1.str() + " is not regular open");
    }
    if (!is_regular_open(*x, u2, Mode::Fast, limits)) {
        throw Error(ErrorCode::NotRegular, u2.str() + " is not regular open");
    }
    if (mode == Mode::Fast) return way_below_fast(*x, u1.bits(), u2.bits());
    auto r = enumerate_regulars(x, limits);
    if (static_cast<int>(r.size()) > oracle.max_family) {
        throw Error(ErrorCode::CapExceeded, "way-below oracle limited to "
                                                + std::to_string(oracle.max_family)
                                                + " regular open sets");
    }
    auto wb = way_below_oracle(r.members.masks());
    return wb[*r.index_of(u1.bits())][*r.index_of(u2.bits())];
}

std::vector<std::vector<bool>> way_below_matrix(const RegularFamily& r, Mode mode,
                                                const OracleLimits& oracle)
{
    const auto& regs = r.members.masks();
    if (mode == Mode::Oracle) {
        if (static_cast<int>(regs.size()) > oracle.max_family || regs.size() >= 63) {
            throw Error(ErrorCode::CapExceeded, "way-below oracle limited to "
                                                    + std::to_string(oracle.max_family)
                                                    + " regular open sets");
        }
        return way_below_oracle(regs);
    }
    std::vector<std::vector<bool>> wb(regs.size(), std::vector<bool>(regs.size(), false));
    for (std::size_t i = 0; i < regs.size(); ++i) {
        for (std::size_t j = 0; j < regs.size(); ++j) {
            wb[i][j] = way_below_fast(*r.space, regs[i], regs[j]);
        }
    }
    return wb;
}

SubsetFamily basis_of(const FGCSpace& x) { return SubsetFamily(x.universe(), x.family_hulls()); }

Report check_mode_agreement(const FGCSpacePtr& x, const OracleLimits& oracle,
                            const Limits& limits)
{
    Report report;
    std::map<std::string, std::size_t> counts;
    check_cap(x->size(), limits);
    const auto& u = x->universe();
    for_each_submask(u->full_mask(), [&](Mask m) {
        if (regular_fast(*x, m) != regular_oracle(*x, m)) {
            add_capped(report, counts,
                       Violation{"modes.regular", {Witness{"U", Subset(u, m)}},
                                 "fast and oracle regular-open tests disagree"});
        }
    });
    auto r = enumerate_regulars(x, limits);
    if (static_cast<int>(r.size()) > oracle.max_family) {
        report.note("way-below oracle skipped: " + std::to_string(r.size())
                    + " regular open sets exceed the limit of "
                    + std::to_string(oracle.max_family));
        return report;
    }
    auto fast = way_below_matrix(r, Mode::Fast);
    auto slow = way_below_matrix(r, Mode::Oracle, oracle);
    const auto& regs = r.members.masks();
    for (std::size_t i = 0; i < regs.size(); ++i) {
        for (std::size_t j = 0; j < regs.size(); ++j) {
            if (fast[i][j] != slow[i][j]) {
                add_capped(report, counts,
                           Violation{"modes.waybelow",
                                     {Witness{"U1", Subset(u, regs[i])},
                                      Witness{"U2", Subset(u, regs[j])}},
                                     "fast and oracle way-below disagree"});
            }
        }
    }
    return report;
}

Report verify_continuity(const FGCSpacePtr& x, const OracleLimits& oracle, const Limits& limits)
{
    Report report;
    std::map<std::string, std::size_t> counts;
    const auto& u = x->universe();
    auto w = [&](const char* role, Mask m) { return Witness{role, Subset(u, m)}; };
    auto r = enumerate_regulars(x, limits);
    for (const auto& n : r.notes) report.note(n);
    const auto& regs = r.members.masks();
    const auto& fam = x->family().masks();
    const auto& hulls = x->family_hulls();

    const auto basis = basis_of(*x);
    for (Mask b : basis.masks()) {
        if (!r.members.contains(b)) {
            add_capped(report, counts,
                       Violation{"basis.regular", {w("B", b)}, "basis member is not regular open"});
        }
    }

    for (Mask reg : regs) {
        std::vector<Mask> approximants;
        for (Mask b : basis.masks()) {
            if (is_subset(b, reg) && r.members.contains(b) && way_below_fast(*x, b, reg)) {
                approximants.push_back(b);
            }
        }
        Mask joined = 0;
        for (Mask b : approximants) joined |= b;
        if (!is_directed(approximants) || joined != reg) {
            add_capped(report, counts,
                       Violation{"basis.approximation", {w("U", reg)},
                                 "basis members way below U are not directed with union U"});
        }
        for_each_submask(reg, [&](Mask m) {
            for (std::size_t i = 0; i < fam.size(); ++i) {
                if (is_subset(fam[i], reg) && is_subset(m, hulls[i]) && is_subset(hulls[i], reg)) {
                    return;
                }
            }
            add_capped(report, counts,
                       Violation{"regular.refine", {w("U", reg), w("M", m)},
                                 "no member F <= U has M <= <F> <= U"});
        });
    }

    if (static_cast<int>(regs.size()) <= oracle.max_family && regs.size() < 63) {
        for_each_directed_subfamily(regs, [&](std::uint64_t, Mask joined) {
            if (!r.members.contains(joined)) {
                add_capped(report, counts,
                           Violation{"regulars.directed_union", {w("U", joined)},
                                     "union of a directed family of regulars is not regular"});
            }
        });
    } else {
        report.note("directed-union check skipped: too many regular open sets");
    }

    auto wb = way_below_matrix(r, Mode::Fast);
    const std::size_t k = regs.size();
    std::vector<std::size_t> basis_idx;
    for (std::size_t i = 0; i < k; ++i) {
        if (basis.contains(regs[i])) basis_idx.push_back(i);
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (!wb[i][j]) continue;
            if (!is_subset(regs[i], regs[j])) {
                add_capped(report, counts,
                           Violation{"waybelow.inclusion", {w("U1", regs[i]), w("U2", regs[j])},
                                     "U1 << U2 but U1 is not contained in U2"});
            }
            for (std::size_t l = 0; l < k; ++l) {
                if (wb[j][l] && !wb[i][l]) {
                    add_capped(report, counts,
                               Violation{"waybelow.transitive",
                                         {w("U1", regs[i]), w("U2", regs[j]), w("U3", regs[l])},
                                         "U1 << U2 << U3 but not U1 << U3"});
                }
            }
        }
    }
    // Interpolation: a finite set M of regulars way below U has a basis member
    // between M and U. All M are tried when the family is small, else |M| <= 2.
    const bool exhaustive = k <= static_cast<std::size_t>(oracle.max_family) && k < 63;
    auto interpolates = [&](std::uint64_t sel, std::size_t target) {
        for (std::size_t b : basis_idx) {
            if (!wb[b][target]) continue;
            bool all = true;
            for (std::uint64_t s = sel; s; s &= s - 1) {
                if (!wb[static_cast<std::size_t>(__builtin_ctzll(s))][b]) {
                    all = false;
                    break;
                }
            }
            if (all) return true;
        }
        return false;
    };
    for (std::size_t t = 0; t < k; ++t) {
        std::uint64_t below = 0;
        for (std::size_t i = 0; i < k && i < 63; ++i) {
            if (wb[i][t]) below |= std::uint64_t{1} << i;
        }
        auto check = [&](std::uint64_t sel) {
            if (!interpolates(sel, t)) {
                std::vector<Witness> ws{w("U", regs[t])};
                for (std::uint64_t s = sel; s; s &= s - 1) {
                    ws.push_back(w("M", regs[static_cast<std::size_t>(__builtin_ctzll(s))]));
                }
                add_capped(report, counts,
                           Violation{"waybelow.interpolation", std::move(ws),
                                     "no basis member lies between M and U"});
            }
        };
        if (exhaustive) {
            for_each_submask(below, check);
        } else {
            check(0);
            for (std::uint64_t a = below; a; a &= a - 1) {
                const std::uint64_t ba = a & -a;
                check(ba);
                for (std::uint64_t b = a & (a - 1); b; b &= b - 1) check(ba | (b & -b));
            }
        }
    }
    if (!exhaustive) report.note("interpolation checked for sets of at most two regulars");
    return report;
}

}  // namespace fgc
