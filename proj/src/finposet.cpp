#include "fgc/finposet.hpp"

#include <algorithm>
#include <numeric>

namespace fgc {

namespace {

Mask bit(int i) { return Mask{1} << i; }

struct DirectedSet {
    Mask members;
    std::optional<int> sup;
};

std::vector<DirectedSet> directed_subsets(const FinPoset& p, const Limits& limits)
{
    if (p.size() > limits.directed_cap) {
        throw Error(ErrorCode::CapExceeded,
                    "directed-subset enumeration limited to " + std::to_string(limits.directed_cap) +
                        " elements, poset has " + std::to_string(p.size()));
    }
    std::vector<DirectedSet> out;
    const Mask full = p.elements()->full_mask();
    for (Mask s = 1; s <= full && s != 0; ++s) {
        if (p.is_directed(s)) out.push_back({s, p.sup(s)});
    }
    return out;
}

std::vector<Mask> way_below_oracle(const FinPoset& p, const std::vector<DirectedSet>& dirs)
{
    const int n = p.size();
    std::vector<Mask> wb(static_cast<std::size_t>(n), 0);
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            bool below = true;
            for (const auto& d : dirs) {
                if (!d.sup || !p.leq(y, *d.sup)) continue;
                if ((d.members & p.up(x)) == 0) {
                    below = false;
                    break;
                }
            }
            if (below) wb[static_cast<std::size_t>(y)] |= bit(x);
        }
    }
    return wb;
}

bool directed_with_sup(const FinPoset& p, Mask s, int target)
{
    if (!p.is_directed(s)) return false;
    auto sup = p.sup(s);
    return sup && *sup == target;
}

}  // namespace

FinPoset::FinPoset(UniversePtr elements, const std::vector<std::pair<int, int>>& pairs)
    : elements_(std::move(elements))
{
    const int n = elements_->size();
    if (n == 0) throw Error(ErrorCode::EmptyPoset, "poset has no elements");
    up_.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) up_[static_cast<std::size_t>(i)] = bit(i);
    for (auto [a, b] : pairs) {
        if (a < 0 || b < 0 || a >= n || b >= n) {
            throw Error(ErrorCode::InvalidInput, "order pair refers to an unknown element");
        }
        up_[static_cast<std::size_t>(a)] |= bit(b);
    }
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            if ((up_[static_cast<std::size_t>(i)] >> k) & 1U) {
                up_[static_cast<std::size_t>(i)] |= up_[static_cast<std::size_t>(k)];
            }
        }
    }
    down_.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (leq(i, j)) down_[static_cast<std::size_t>(j)] |= bit(i);
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (leq(i, j) && leq(j, i)) {
                throw Error(ErrorCode::NotAPartialOrder,
                            "order is not antisymmetric: " + elements_->label(i) + " and " +
                                elements_->label(j) + " lie below each other");
            }
        }
    }
}

FinPosetPtr FinPoset::from_labels(std::vector<std::string> labels,
                                  const std::vector<std::pair<std::string, std::string>>& leq)
{
    auto u = Universe::make(std::move(labels));
    std::vector<std::pair<int, int>> pairs;
    for (const auto& [a, b] : leq) {
        auto ia = u->index_of(a);
        auto ib = u->index_of(b);
        if (!ia || !ib) {
            throw Error(ErrorCode::InvalidInput, "unknown element in order pair [" + a + "," + b + "]");
        }
        pairs.emplace_back(*ia, *ib);
    }
    return std::make_shared<const FinPoset>(u, pairs);
}

Mask FinPoset::down_set(Mask a) const
{
    Mask out = 0;
    for (Mask r = a; r; r &= r - 1) out |= down(__builtin_ctzll(r));
    return out;
}

Mask FinPoset::up_set(Mask a) const
{
    Mask out = 0;
    for (Mask r = a; r; r &= r - 1) out |= up(__builtin_ctzll(r));
    return out;
}

Mask FinPoset::upper_bounds(Mask s) const
{
    Mask out = elements_->full_mask();
    for (Mask r = s; r; r &= r - 1) out &= up(__builtin_ctzll(r));
    return out;
}

std::optional<int> FinPoset::greatest(Mask s) const
{
    for (Mask r = s; r; r &= r - 1) {
        const int i = __builtin_ctzll(r);
        if (is_subset(s, down(i))) return i;
    }
    return std::nullopt;
}

std::optional<int> FinPoset::least(Mask s) const
{
    for (Mask r = s; r; r &= r - 1) {
        const int i = __builtin_ctzll(r);
        if (is_subset(s, up(i))) return i;
    }
    return std::nullopt;
}

std::optional<int> FinPoset::sup_within(Mask s, Mask region) const
{
    return least(upper_bounds(s) & region);
}

bool FinPoset::is_directed(Mask s) const
{
    if (s == 0) return false;
    for (Mask a = s; a; a &= a - 1) {
        const int i = __builtin_ctzll(a);
        for (Mask b = a; b; b &= b - 1) {
            const int j = __builtin_ctzll(b);
            if ((up(i) & up(j) & s) == 0) return false;
        }
    }
    return true;
}

std::vector<std::pair<int, int>> FinPoset::cover_pairs() const
{
    std::vector<std::pair<int, int>> out;
    const int n = size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j || !leq(i, j)) continue;
            const Mask between = (up(i) & down(j)) & ~(bit(i) | bit(j));
            if (between == 0) out.emplace_back(i, j);
        }
    }
    return out;
}

bool MonotoneMap::is_order_preserving() const
{
    const int n = source->size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (source->leq(i, j) && !target->leq((*this)(i), (*this)(j))) return false;
        }
    }
    return true;
}

PosetFlags classify_poset(const FinPoset& p, const Limits& limits)
{
    PosetFlags flags;
    const int n = p.size();
    check_cap(n, limits);
    const Mask full = p.elements()->full_mask();

    if (n <= limits.directed_cap) {
        const auto dirs = directed_subsets(p, limits);
        flags.dcpo = std::all_of(dirs.begin(), dirs.end(), [](const DirectedSet& d) { return d.sup.has_value(); });
        const auto wb = way_below_oracle(p, dirs);
        flags.continuous = flags.dcpo;
        flags.algebraic = flags.dcpo;
        Mask compact = 0;
        for (int x = 0; x < n; ++x) {
            if ((wb[static_cast<std::size_t>(x)] >> x) & 1U) compact |= bit(x);
        }
        for (int x = 0; x < n; ++x) {
            if (!directed_with_sup(p, wb[static_cast<std::size_t>(x)], x)) flags.continuous = false;
            if (!directed_with_sup(p, p.down(x) & compact, x)) flags.algebraic = false;
        }
    } else {
        flags.dcpo = true;
        flags.continuous = true;
        flags.algebraic = true;
        flags.notes.push_back("directed-subset enumeration skipped above " +
                              std::to_string(limits.directed_cap) +
                              " elements; finite posets are algebraic dcpos");
    }

    bool lattice = true;
    bool bounded = true;
    for_each_submask(full, [&](Mask s) {
        const bool has_sup = p.sup(s).has_value();
        if (!has_sup) lattice = false;
        if (!has_sup && p.upper_bounds(s) != 0) bounded = false;
    });
    bool local = true;
    for (int x = 0; x < n && local; ++x) {
        const Mask region = p.down(x);
        for_each_submask(region, [&](Mask s) {
            if (local && !p.sup_within(s, region)) local = false;
        });
    }
    flags.complete_lattice = lattice && flags.continuous;
    flags.bounded_complete = bounded && flags.continuous;
    flags.l_domain = local && flags.continuous;
    return flags;
}

bool way_below_poset(const FinPoset& p, int x, int y, Mode mode, const Limits& limits)
{
    if (mode == Mode::Fast) return p.leq(x, y);
    const auto dirs = directed_subsets(p, limits);
    for (const auto& d : dirs) {
        if (!d.sup || !p.leq(y, *d.sup)) continue;
        if ((d.members & p.up(x)) == 0) return false;
    }
    return true;
}

std::vector<Mask> way_below_sets(const FinPoset& p, Mode mode, const Limits& limits)
{
    if (mode == Mode::Oracle) return way_below_oracle(p, directed_subsets(p, limits));
    std::vector<Mask> out;
    for (int y = 0; y < p.size(); ++y) out.push_back(p.down(y));
    return out;
}

bool is_scott_continuous(const MonotoneMap& f, Mode mode, const Limits& limits)
{
    if (mode == Mode::Fast) return f.is_order_preserving();
    for (const auto& d : directed_subsets(*f.source, limits)) {
        if (!d.sup) continue;
        Mask image = 0;
        for (Mask r = d.members; r; r &= r - 1) image |= bit(f(__builtin_ctzll(r)));
        auto s = f.target->sup(image);
        if (!s || *s != f(*d.sup)) return false;
    }
    return true;
}

std::vector<MonotoneMap> monotone_maps(const FinPosetPtr& source, const FinPosetPtr& target)
{
    std::vector<MonotoneMap> out;
    const int n = source->size();
    const int m = target->size();
    std::vector<int> table(static_cast<std::size_t>(n), 0);
    auto extend = [&](auto&& self, int i) -> void {
        if (i == n) {
            out.push_back({source, target, table});
            return;
        }
        for (int v = 0; v < m; ++v) {
            bool fits = true;
            for (int j = 0; j < i && fits; ++j) {
                const int w = table[static_cast<std::size_t>(j)];
                if (source->leq(j, i) && !target->leq(w, v)) fits = false;
                if (source->leq(i, j) && !target->leq(v, w)) fits = false;
            }
            if (!fits) continue;
            table[static_cast<std::size_t>(i)] = v;
            self(self, i + 1);
        }
    };
    extend(extend, 0);
    return out;
}

bool is_basis(const FinPoset& p, Mask basis, const Limits& limits)
{
    const Mask full = p.elements()->full_mask();
    if (!is_subset(basis, full)) return false;
    const auto wb = way_below_sets(p, p.size() <= limits.directed_cap ? Mode::Oracle : Mode::Fast, limits);
    for (int x = 0; x < p.size(); ++x) {
        if (!directed_with_sup(p, wb[static_cast<std::size_t>(x)] & basis, x)) return false;
    }
    return true;
}

PosetSpace poset_to_fgcs(const FinPosetPtr& p, std::optional<Mask> basis, const Limits& limits)
{
    if (!p || p->size() == 0) throw Error(ErrorCode::EmptyPoset, "poset has no elements");
    const int n = p->size();
    check_cap(n, limits);
    const Mask full = p->elements()->full_mask();
    if (basis && !is_basis(*p, *basis, limits)) {
        throw Error(ErrorCode::InvalidBasis, "supplied subset " + render(*p->elements(), *basis) +
                                                 " is not a basis of the poset");
    }
    const auto wb = way_below_sets(*p, Mode::Fast, limits);

    std::vector<Mask> gamma(static_cast<std::size_t>(full) + 1);
    std::map<Mask, Mask> tau;
    std::vector<Mask> family;
    for (Mask a = 0; a <= full; ++a) {
        gamma[a] = p->down_set(a);
        Mask approx = 0;
        for (Mask r = a; r; r &= r - 1) approx |= wb[static_cast<std::size_t>(__builtin_ctzll(r))];
        tau.emplace(a, approx);
        if (a != 0 && p->greatest(a)) family.push_back(a);
        if (a == full) break;
    }
    auto space = make_gcs(ClosureSpec::full_table(p->elements(), std::move(gamma)),
                          TauSpec::partial_table(p->elements(), std::move(tau)), limits);
    return {p, make_fgcs(space, SubsetFamily(p->elements(), std::move(family)), limits)};
}

bool regular_characterization(const FinPosetPtr& p, const Subset& u, RegularMode mode,
                              const Limits& limits)
{
    if (mode == RegularMode::Direct) {
        auto ps = poset_to_fgcs(p, std::nullopt, limits);
        return is_regular_open(*ps.space, Subset(ps.space->universe(), u.bits()), Mode::Fast, limits);
    }
    check_cap(p->size(), limits);
    const auto wb = way_below_sets(*p, Mode::Fast, limits);
    const Mask um = u.bits();
    for (Mask r = um; r; r &= r - 1) {
        if (!is_subset(wb[static_cast<std::size_t>(__builtin_ctzll(r))], um)) return false;
    }
    bool ok = true;
    for_each_submask(um, [&](Mask m) {
        if (!ok) return;
        bool found = false;
        for (Mask r = um; r && !found; r &= r - 1) {
            if (is_subset(m, wb[static_cast<std::size_t>(__builtin_ctzll(r))])) found = true;
        }
        ok = found;
    });
    return ok;
}

RoundTrip roundtrip_iso(const FinPosetPtr& p, const Limits& limits)
{
    RoundTrip rt;
    auto ps = poset_to_fgcs(p, std::nullopt, limits);
    rt.regulars = enumerate_regulars(ps.space, limits);
    const auto& u = ps.space->universe();
    const int n = p->size();
    const auto wb = way_below_sets(*p, Mode::Fast, limits);

    for (int x = 0; x < n; ++x) {
        const Mask fx = wb[static_cast<std::size_t>(x)];
        rt.f.push_back(fx);
        if (!rt.regulars.members.contains(fx)) {
            rt.report.add({"roundtrip.f_regular", {{"x", Subset(u, bit(x))}, {"f(x)", Subset(u, fx)}},
                           "approximants of " + u->label(x) + " do not form a regular open set"});
        }
    }
    const auto& members = rt.regulars.members.masks();
    for (Mask m : members) {
        auto s = p->sup(m);
        rt.g.push_back(s);
        if (!s) {
            rt.report.add({"roundtrip.g_sup", {{"U", Subset(u, m)}}, "regular open set has no supremum"});
        }
    }
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (p->leq(x, y) && !is_subset(rt.f[static_cast<std::size_t>(x)], rt.f[static_cast<std::size_t>(y)])) {
                rt.report.add({"roundtrip.f_monotone", {{"x", Subset(u, bit(x))}, {"y", Subset(u, bit(y))}},
                               "x <= y but f(x) is not contained in f(y)"});
            }
        }
        auto back = rt.regulars.index_of(rt.f[static_cast<std::size_t>(x)]);
        if (back && rt.g[*back] != x) {
            rt.report.add({"roundtrip.gf", {{"x", Subset(u, bit(x))}}, "g(f(x)) differs from x"});
        }
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = 0; j < members.size(); ++j) {
            if (!is_subset(members[i], members[j])) continue;
            if (rt.g[i] && rt.g[j] && !p->leq(*rt.g[i], *rt.g[j])) {
                rt.report.add({"roundtrip.g_monotone", {{"U", Subset(u, members[i])}, {"V", Subset(u, members[j])}},
                               "U <= V but g(U) is not below g(V)"});
            }
        }
        if (rt.g[i] && rt.f[static_cast<std::size_t>(*rt.g[i])] != members[i]) {
            rt.report.add({"roundtrip.fg", {{"U", Subset(u, members[i])}}, "f(g(U)) differs from U"});
        }
    }
    rt.report.notes.insert(rt.report.notes.end(), rt.regulars.notes.begin(), rt.regulars.notes.end());
    return rt;
}

FinPosetPtr regular_poset(const RegularFamily& r)
{
    const auto& masks = r.members.masks();
    if (masks.empty()) throw Error(ErrorCode::EmptyPoset, "no regular open sets");
    std::vector<std::string> labels;
    for (Mask m : masks) labels.push_back(render(*r.members.universe(), m));
    std::vector<std::pair<int, int>> leq;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        for (std::size_t j = 0; j < masks.size(); ++j) {
            if (i != j && is_subset(masks[i], masks[j])) leq.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
    for (auto& l : labels) {
        std::replace(l.begin(), l.end(), ',', ' ');
        std::replace(l.begin(), l.end(), '{', '[');
        std::replace(l.begin(), l.end(), '}', ']');
    }
    return std::make_shared<const FinPoset>(Universe::make(std::move(labels)), leq);
}

std::vector<FinPosetPtr> labeled_posets(int n)
{
    if (n < 1) return {};
    if (n > 6) throw Error(ErrorCode::CapExceeded, "exhaustive poset generation limited to 6 elements");
    std::vector<std::vector<Mask>> level{{bit(0)}};
    for (int k = 1; k < n; ++k) {
        std::vector<std::vector<Mask>> next;
        const Mask all = bit(k) - 1;
        for (const auto& up : level) {
            std::vector<Mask> down(static_cast<std::size_t>(k), 0);
            for (int i = 0; i < k; ++i) {
                for (int j = 0; j < k; ++j) {
                    if ((up[static_cast<std::size_t>(i)] >> j) & 1U) down[static_cast<std::size_t>(j)] |= bit(i);
                }
            }
            auto closed_down = [&](Mask d) {
                for (Mask r = d; r; r &= r - 1) {
                    if (!is_subset(down[static_cast<std::size_t>(__builtin_ctzll(r))], d)) return false;
                }
                return true;
            };
            auto closed_up = [&](Mask s) {
                for (Mask r = s; r; r &= r - 1) {
                    if (!is_subset(up[static_cast<std::size_t>(__builtin_ctzll(r))], s)) return false;
                }
                return true;
            };
            for_each_submask(all, [&](Mask d) {
                if (!closed_down(d)) return;
                for_each_submask(all & ~d, [&](Mask s) {
                    if (!closed_up(s)) return;
                    for (Mask r = d; r; r &= r - 1) {
                        if (!is_subset(s, up[static_cast<std::size_t>(__builtin_ctzll(r))])) return;
                    }
                    std::vector<Mask> ext = up;
                    for (Mask r = d; r; r &= r - 1) ext[static_cast<std::size_t>(__builtin_ctzll(r))] |= bit(k);
                    ext.push_back(bit(k) | s);
                    next.push_back(std::move(ext));
                });
            });
        }
        level = std::move(next);
    }
    auto u = Universe::numbered(n);
    std::vector<FinPosetPtr> out;
    out.reserve(level.size());
    for (const auto& up : level) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i != j && ((up[static_cast<std::size_t>(i)] >> j) & 1U)) pairs.emplace_back(i, j);
            }
        }
        out.push_back(std::make_shared<const FinPoset>(u, pairs));
    }
    return out;
}

FinPosetPtr random_poset(int n, std::mt19937_64& rng, double edge_probability)
{
    if (n < 1) throw Error(ErrorCode::EmptyPoset, "poset has no elements");
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        const auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double draw = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            if (draw < edge_probability) {
                pairs.emplace_back(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
            }
        }
    }
    return std::make_shared<const FinPoset>(Universe::numbered(n), pairs);
}

}  // namespace fgc
