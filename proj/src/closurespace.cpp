#include "fgc/closurespace.hpp"

#include <algorithm>

namespace fgc {

namespace {

constexpr Mask kUndefined = ~Mask{0};
constexpr std::size_t kMaxPerRule = 16;

class RuleSink {
public:
    explicit RuleSink(Report& report) : report_(report) {}

    void add(const std::string& rule, std::vector<Witness> witnesses, std::string message)
    {
        auto& n = counts_[rule];
        if (n++ < kMaxPerRule) {
            report_.add(Violation{rule, std::move(witnesses), std::move(message)});
        } else if (n == kMaxPerRule + 1) {
            report_.note("further violations of " + rule + " omitted");
        }
    }

private:
    Report& report_;
    std::map<std::string, std::size_t> counts_;
};

}  // namespace

ClosureSpec ClosureSpec::closed_system(SubsetFamily closed)
{
    ClosureSpec spec;
    spec.kind_ = Kind::ClosedSystem;
    spec.universe_ = closed.universe();
    spec.closed_ = std::move(closed);
    return spec;
}

ClosureSpec ClosureSpec::full_table(UniversePtr universe, std::vector<Mask> table)
{
    if (table.size() != (std::size_t{1} << universe->size())) {
        throw Error(ErrorCode::InvalidInput, "closure table must cover every subset");
    }
    for (Mask m : table) {
        if (!is_subset(m, universe->full_mask())) {
            throw Error(ErrorCode::InvalidInput, "closure table value outside universe");
        }
    }
    ClosureSpec spec;
    spec.kind_ = Kind::FullTable;
    spec.universe_ = std::move(universe);
    spec.table_ = std::move(table);
    return spec;
}

ClosureSpec ClosureSpec::identity(UniversePtr universe)
{
    std::vector<Mask> table(std::size_t{1} << universe->size());
    for (std::size_t i = 0; i < table.size(); ++i) table[i] = i;
    return full_table(std::move(universe), std::move(table));
}

Mask ClosureSpec::apply(Mask a) const
{
    if (kind_ == Kind::FullTable) return table_.at(a);
    Mask out = universe_->full_mask();
    for (Mask c : closed_.masks()) {
        if (is_subset(a, c)) out &= c;
    }
    return out;
}

TauSpec TauSpec::interior_system(SubsetFamily opens)
{
    TauSpec spec;
    spec.kind_ = Kind::InteriorSystem;
    spec.universe_ = opens.universe();
    spec.opens_ = std::move(opens);
    return spec;
}

TauSpec TauSpec::partial_table(UniversePtr universe, std::map<Mask, Mask> table)
{
    for (auto [k, v] : table) {
        if (!is_subset(k, universe->full_mask()) || !is_subset(v, universe->full_mask())) {
            throw Error(ErrorCode::InvalidInput, "tau table entry outside universe");
        }
    }
    TauSpec spec;
    spec.kind_ = Kind::PartialTable;
    spec.universe_ = std::move(universe);
    spec.table_ = std::move(table);
    return spec;
}

TauSpec TauSpec::identity(UniversePtr universe)
{
    std::map<Mask, Mask> table;
    for_each_submask(universe->full_mask(), [&](Mask m) { table.emplace(m, m); });
    return partial_table(std::move(universe), std::move(table));
}

std::optional<Mask> TauSpec::apply(Mask a) const
{
    if (kind_ == Kind::InteriorSystem) {
        Mask out = 0;
        for (Mask o : opens_.masks()) {
            if (is_subset(o, a)) out |= o;
        }
        return out;
    }
    auto it = table_.find(a);
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

GCSpace::GCSpace(ClosureSpec gamma, TauSpec tau, const Limits& limits)
    : universe_(gamma.universe()), gamma_(std::move(gamma)), tau_(std::move(tau))
{
    if (tau_.universe() != universe_) {
        throw Error(ErrorCode::UniverseMismatch, "gamma and tau over different universes");
    }
    check_cap(universe_->size(), limits);
    const std::size_t n = std::size_t{1} << universe_->size();
    gamma_table_.resize(n);
    hull_table_.assign(n, kUndefined);
    std::map<Mask, Mask> tau_cache;
    for (std::size_t a = 0; a < n; ++a) {
        gamma_table_[a] = gamma_.apply(a);
    }
    for (std::size_t a = 0; a < n; ++a) {
        const Mask c = gamma_table_[a];
        auto it = tau_cache.find(c);
        if (it == tau_cache.end()) {
            auto t = tau_.apply(c);
            it = tau_cache.emplace(c, t ? *t : kUndefined).first;
        }
        hull_table_[a] = it->second;
    }
    for (const auto& [c, t] : tau_cache) closed_.push_back(c);
    std::sort(closed_.begin(), closed_.end());
    closed_.erase(std::unique(closed_.begin(), closed_.end()), closed_.end());
    if (universe_->size() > limits.warn_above) {
        validation_.note("exhaustive axiom check above " + std::to_string(limits.warn_above)
                         + " elements");
    }
    validation_.merge(check_axioms());
}

Mask GCSpace::hull(Mask a) const
{
    const Mask h = hull_table_.at(a);
    if (h == kUndefined) {
        throw Error(ErrorCode::TauUndefined,
                    "tau undefined at " + render(*universe_, gamma_table_[a]));
    }
    return h;
}

std::optional<Mask> GCSpace::try_hull(Mask a) const
{
    const Mask h = hull_table_.at(a);
    if (h == kUndefined) return std::nullopt;
    return h;
}

Report GCSpace::check_axioms() const
{
    Report report;
    RuleSink sink(report);
    const auto& u = universe_;
    const Mask full = u->full_mask();
    auto w = [&](const char* role, Mask m) { return Witness{role, Subset(u, m)}; };

    if (gamma_.kind() == ClosureSpec::Kind::ClosedSystem) {
        const auto& cs = gamma_.closed_sets();
        if (!cs.contains(full)) {
            sink.add("closed.top", {w("X", full)}, "the universe is not a closed set");
        }
        const auto& m = cs.masks();
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (std::size_t j = i + 1; j < m.size(); ++j) {
                if (!cs.contains(m[i] & m[j])) {
                    sink.add("closed.meet", {w("A", m[i]), w("B", m[j])},
                             "intersection of two closed sets is not closed");
                }
            }
        }
    } else {
        for_each_submask(full, [&](Mask a) {
            const Mask g = gamma_table_[a];
            if (!is_subset(a, g)) {
                sink.add("gamma.extensive", {w("A", a)}, "A is not contained in gamma(A)");
            }
            if (gamma_table_[g] != g) {
                sink.add("gamma.idempotent", {w("A", a)}, "gamma(gamma(A)) != gamma(A)");
            }
            for (Mask rest = full & ~a; rest; rest &= rest - 1) {
                const Mask b = a | (rest & -rest);
                if (!is_subset(g, gamma_table_[b])) {
                    sink.add("gamma.monotone", {w("A", a), w("B", b)},
                             "A <= B but gamma(A) is not contained in gamma(B)");
                }
            }
        });
    }

    for_each_submask(full, [&](Mask a) {
        const Mask g = gamma_table_[a];
        const Mask h = hull_table_[a];
        if (h == kUndefined) {
            sink.add("tau.undefined", {w("A", a)}, "tau has no value at gamma(A)");
            return;
        }
        if (!is_subset(h, g)) {
            sink.add("gcs.1", {w("A", a)}, "tau(gamma(A)) is not contained in gamma(A)");
        }
        auto hh = tau_.apply(h);
        if (!hh) {
            sink.add("tau.undefined", {w("A", a)}, "tau has no value at tau(gamma(A))");
        } else if (*hh != h) {
            sink.add("gcs.2", {w("A", a)}, "tau(tau(gamma(A))) != tau(gamma(A))");
        }
        for (Mask rest = full & ~a; rest; rest &= rest - 1) {
            const Mask b = a | (rest & -rest);
            const Mask hb = hull_table_[b];
            if (hb != kUndefined && !is_subset(h, hb)) {
                sink.add("gcs.3", {w("A", a), w("B", b)},
                         "A <= B but tau(gamma(A)) is not contained in tau(gamma(B))");
            }
        }
    });
    return report;
}

GCSpacePtr make_gcs(ClosureSpec gamma, TauSpec tau, const Limits& limits)
{
    return std::make_shared<const GCSpace>(std::move(gamma), std::move(tau), limits);
}

Subset gamma_apply(const GCSpace& g, const Subset& a)
{
    if (a.universe() != g.universe()) {
        throw Error(ErrorCode::UniverseMismatch, "subset is not over the space's universe");
    }
    return Subset(g.universe(), g.gamma(a.bits()));
}

Subset hull(const GCSpace& g, const Subset& a)
{
    if (a.universe() != g.universe()) {
        throw Error(ErrorCode::UniverseMismatch, "subset is not over the space's universe");
    }
    return Subset(g.universe(), g.hull(a.bits()));
}

Report validate_gcs(const GCSpace& g, const Limits& limits)
{
    check_cap(g.size(), limits);
    return g.validation();
}

bool replay_gcs(const GCSpace& g, const Violation& v)
{
    const Subset* a = v.find("A");
    const Subset* b = v.find("B");
    auto hull_or = [&](Mask m) { return g.try_hull(m); };
    if (v.rule == "closed.top") {
        return !g.gamma_spec().closed_sets().contains(g.universe()->full_mask());
    }
    if (!a) return false;
    const Mask am = a->bits();
    if (v.rule == "closed.meet") {
        return b && !g.gamma_spec().closed_sets().contains(am & b->bits());
    }
    if (v.rule == "gamma.extensive") return !is_subset(am, g.gamma(am));
    if (v.rule == "gamma.idempotent") return g.gamma(g.gamma(am)) != g.gamma(am);
    if (v.rule == "gamma.monotone") {
        return b && is_subset(am, b->bits()) && !is_subset(g.gamma(am), g.gamma(b->bits()));
    }
    auto h = hull_or(am);
    if (v.rule == "tau.undefined") return !h || !g.tau(*h);
    if (!h) return false;
    if (v.rule == "gcs.1") return !is_subset(*h, g.gamma(am));
    if (v.rule == "gcs.2") {
        auto hh = g.tau(*h);
        return hh && *hh != *h;
    }
    if (v.rule == "gcs.3") {
        if (!b || !is_subset(am, b->bits())) return false;
        auto hb = hull_or(b->bits());
        return hb && !is_subset(*h, *hb);
    }
    return false;
}

GCSpacePtr from_topology(const SubsetFamily& opens, const Limits& limits)
{
    const auto& u = opens.universe();
    const Mask full = u->full_mask();
    if (!opens.contains(Mask{0})) {
        throw Error(ErrorCode::NotATopology, "open sets must contain the empty set");
    }
    if (!opens.contains(full)) {
        throw Error(ErrorCode::NotATopology, "open sets must contain the universe");
    }
    const auto& m = opens.masks();
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            if (!opens.contains(m[i] | m[j])) {
                throw Error(ErrorCode::NotATopology, "union of " + render(*u, m[i]) + " and "
                                                         + render(*u, m[j]) + " is not open");
            }
            if (!opens.contains(m[i] & m[j])) {
                throw Error(ErrorCode::NotATopology, "intersection of " + render(*u, m[i])
                                                         + " and " + render(*u, m[j])
                                                         + " is not open");
            }
        }
    }
    std::vector<Mask> closed;
    closed.reserve(m.size());
    for (Mask o : m) closed.push_back(full & ~o);
    return make_gcs(ClosureSpec::closed_system(SubsetFamily(u, std::move(closed))),
                    TauSpec::interior_system(opens), limits);
}

Report is_algebraic_closure(const ClosureSpec& gamma, const Limits& limits)
{
    const auto& u = gamma.universe();
    check_cap(u->size(), limits);
    Report report;
    RuleSink sink(report);
    for_each_submask(u->full_mask(), [&](Mask a) {
        Mask joined = 0;
        for_each_submask(a, [&](Mask f) { joined |= gamma.apply(f); });
        if (joined != gamma.apply(a)) {
            sink.add("gamma.algebraic", {Witness{"A", Subset(u, a)}},
                     "gamma(A) differs from the union of gamma(F) over finite F <= A");
        }
    });
    return report;
}

namespace {

std::vector<Mask> moore_closure_table(Mask full, const std::vector<Mask>& closed)
{
    std::vector<Mask> table(full + 1);
    for (Mask a = 0; a <= full; ++a) {
        Mask out = full;
        for (Mask c : closed) {
            if (is_subset(a, c)) out &= c;
        }
        table[a] = out;
    }
    return table;
}

bool decomposes_with(const std::vector<Mask>& composite, const std::vector<Mask>& gamma,
                     const std::vector<bool>& is_closed)
{
    const Mask full = static_cast<Mask>(composite.size() - 1);
    std::vector<Mask> tau(full + 1, kUndefined);
    for (Mask a = 0; a <= full; ++a) {
        const Mask c = gamma[a];
        if (tau[c] == kUndefined) {
            tau[c] = composite[a];
        } else if (tau[c] != composite[a]) {
            return false;
        }
    }
    for (Mask a = 0; a <= full; ++a) {
        const Mask c = gamma[a];
        const Mask t = tau[c];
        if (!is_subset(t, c)) return false;
        // tau on a closed image is already fixed; elsewhere it may be chosen as the identity.
        if (is_closed[t] && tau[t] != t) return false;
        for (Mask rest = full & ~a; rest; rest &= rest - 1) {
            if (!is_subset(composite[a], composite[a | (rest & -rest)])) return false;
        }
    }
    return true;
}

std::vector<std::vector<Mask>> moore_families(Mask full)
{
    std::vector<std::vector<Mask>> out;
    const std::size_t others = full;  // subsets other than the universe
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << others); ++pick) {
        std::vector<Mask> fam{full};
        for (std::size_t i = 0; i < others; ++i) {
            if ((pick >> i) & 1U) fam.push_back(static_cast<Mask>(i));
        }
        std::vector<bool> in(full + 1, false);
        for (Mask m : fam) in[m] = true;
        bool closed = true;
        for (std::size_t i = 0; i < fam.size() && closed; ++i) {
            for (std::size_t j = i + 1; j < fam.size(); ++j) {
                if (!in[fam[i] & fam[j]]) {
                    closed = false;
                    break;
                }
            }
        }
        if (closed) out.push_back(std::move(fam));
    }
    return out;
}

}  // namespace

std::optional<SubsetFamily> gcs_decomposition(const UniversePtr& universe,
                                              const std::vector<Mask>& composite)
{
    if (universe->size() > 4) {
        throw Error(ErrorCode::CapExceeded, "decomposition search limited to 4 elements");
    }
    const Mask full = universe->full_mask();
    if (composite.size() != full + 1) {
        throw Error(ErrorCode::InvalidInput, "composite table must cover every subset");
    }
    for (const auto& fam : moore_families(full)) {
        std::vector<bool> is_closed(full + 1, false);
        for (Mask m : fam) is_closed[m] = true;
        if (decomposes_with(composite, moore_closure_table(full, fam), is_closed)) {
            return SubsetFamily(universe, fam);
        }
    }
    return std::nullopt;
}

std::optional<CiWitness> find_ci_non_gcs(int max_n)
{
    if (max_n > 4) throw Error(ErrorCode::CapExceeded, "topology search limited to 4 points");
    for (int n = 1; n <= max_n; ++n) {
        auto u = Universe::numbered(n);
        const Mask full = u->full_mask();
        const std::size_t inner = full - 1;  // subsets strictly between empty and full
        for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << inner); ++pick) {
            std::vector<Mask> opens{0, full};
            for (std::size_t i = 0; i < inner; ++i) {
                if ((pick >> i) & 1U) opens.push_back(static_cast<Mask>(i + 1));
            }
            std::vector<bool> in(full + 1, false);
            for (Mask m : opens) in[m] = true;
            bool topology = true;
            for (std::size_t i = 0; i < opens.size() && topology; ++i) {
                for (std::size_t j = i + 1; j < opens.size(); ++j) {
                    if (!in[opens[i] | opens[j]] || !in[opens[i] & opens[j]]) {
                        topology = false;
                        break;
                    }
                }
            }
            if (!topology) continue;
            std::vector<Mask> composite(full + 1);
            for (Mask a = 0; a <= full; ++a) {
                Mask interior = 0;
                for (Mask o : opens) {
                    if (is_subset(o, a)) interior |= o;
                }
                Mask closure = full;
                for (Mask o : opens) {
                    if (is_subset(interior, full & ~o)) closure &= full & ~o;
                }
                composite[a] = closure;
            }
            if (!gcs_decomposition(u, composite)) {
                return CiWitness{SubsetFamily(u, opens), composite};
            }
        }
    }
    return std::nullopt;
}

}  // namespace fgc
