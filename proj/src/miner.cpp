#include "fgc/miner.hpp"

#include <algorithm>

namespace fgc {

namespace {

bool chance(std::mt19937_64& rng, double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; }

int below(std::mt19937_64& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

std::vector<Mask> close_under(std::vector<Mask> sets, bool intersections)
{
    bool grown = true;
    while (grown) {
        grown = false;
        const std::size_t k = sets.size();
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                const Mask m = intersections ? (sets[i] & sets[j]) : (sets[i] | sets[j]);
                if (std::find(sets.begin(), sets.end(), m) == sets.end()) {
                    sets.push_back(m);
                    grown = true;
                }
            }
        }
    }
    std::sort(sets.begin(), sets.end());
    return sets;
}

TauSpec random_tau_table(std::mt19937_64& rng, const UniversePtr& u, std::vector<Mask> closed)
{
    std::stable_sort(closed.begin(), closed.end(), [](Mask a, Mask b) { return popcount(a) < popcount(b); });
    std::map<Mask, Mask> table;
    for (Mask c : closed) {
        Mask lower = 0;
        for (Mask d : closed) {
            if (d != c && is_subset(d, c)) lower |= table.at(d);
        }
        Mask pick = c;
        for (int attempt = 0; attempt < 4; ++attempt) {
            const Mask s = lower | (rng() & c);
            const bool is_closed = std::find(closed.begin(), closed.end(), s) != closed.end();
            if (s == c || !is_closed || (table.count(s) && table.at(s) == s)) {
                pick = s;
                break;
            }
        }
        table[c] = pick;
        if (!table.count(pick)) table[pick] = pick;
    }
    if (chance(rng, 0.2)) {
        auto it = table.begin();
        std::advance(it, below(rng, static_cast<int>(table.size())));
        it->second = rng() & u->full_mask();
    }
    return TauSpec::partial_table(u, std::move(table));
}

std::vector<Mask> repair_family(const GCSpace& g, std::vector<Mask> fam)
{
    for (int round = 0; round < 64; ++round) {
        bool added = false;
        for (std::size_t i = 0; i < fam.size() && !added; ++i) {
            const Mask hf = g.hull(fam[i]);
            for_each_submask(hf, [&](Mask m) {
                if (added) return;
                const bool ok = std::any_of(fam.begin(), fam.end(), [&](Mask f1) {
                    return is_subset(m, g.hull(f1)) && is_subset(f1, hf);
                });
                if (ok) return;
                for_each_submask(hf, [&](Mask s) {
                    if (!added && is_subset(m, g.hull(s))) {
                        fam.push_back(s);
                        added = true;
                    }
                });
            });
        }
        if (!added) break;
    }
    return fam;
}

std::vector<Mask> hull_closed_family(const GCSpace& g, std::vector<Mask> fam)
{
    std::vector<bool> in(static_cast<std::size_t>(g.universe()->full_mask()) + 1, false);
    for (Mask f : fam) in[f] = true;
    bool grown = true;
    while (grown) {
        grown = false;
        for (std::size_t f = 0; f < in.size(); ++f) {
            if (!in[f]) continue;
            for_each_submask(g.hull(f), [&](Mask m) {
                if (!in[m]) {
                    in[m] = true;
                    grown = true;
                }
            });
        }
    }
    std::vector<Mask> out;
    for (std::size_t f = 0; f < in.size(); ++f) {
        if (in[f]) out.push_back(f);
    }
    return out;
}

Violation error_violation(const std::string& rule, const FGCSpacePtr& x, const std::string& message)
{
    return {rule, {{"X", Subset::full(x->universe())}}, message};
}

void absorb(Report& into, const Report& from, const std::string& prefix)
{
    for (auto v : from.violations) {
        v.rule = prefix + "." + v.rule;
        into.add(std::move(v));
    }
    into.notes.insert(into.notes.end(), from.notes.begin(), from.notes.end());
}

PosetSpace small_poset_space(std::mt19937_64& rng)
{
    return poset_to_fgcs(random_poset(1 + below(rng, 3), rng));
}

Report check_sigma_laws(const FGCSpacePtr& x)
{
    Report r;
    const auto& fam = x->family().masks();
    const auto& hulls = x->family_hulls();
    auto sigma = [&](std::size_t i, Mask m) { return f_sups(x, Subset(x->universe(), fam[i]), Subset(x->universe(), m)); };
    for (std::size_t i = 0; i < fam.size(); ++i) {
        for_each_submask(hulls[i], [&](Mask m) {
            auto s = sigma(i, m);
            for (Mask g : s.members.masks()) {
                if (x->hull(g) != s.hull()->bits()) {
                    r.add({"sigma.shared_hull", {{"F", Subset(x->universe(), fam[i])}, {"M", Subset(x->universe(), m)}},
                           "F-sups with different hulls"});
                }
            }
            if (s.empty()) return;
            for (std::size_t k = 0; k < fam.size(); ++k) {
                if (!is_subset(fam[i], hulls[k])) continue;
                auto wider = sigma(k, m);
                if (wider.empty()) continue;
                for (Mask g : s.members.masks()) {
                    if (!wider.members.contains(g)) {
                        r.add({"sigma.monotone",
                               {{"F1", Subset(x->universe(), fam[i])}, {"F2", Subset(x->universe(), fam[k])},
                                {"M", Subset(x->universe(), m)}},
                               "F-sup for F1 is not an F-sup for F2"});
                    }
                }
            }
        });
    }
    return r;
}

}  // namespace

std::string to_string(Target t)
{
    switch (t) {
    case Target::GcsAxioms: return "gcs-axioms";
    case Target::FgcsAxiom: return "fgcs-axiom";
    case Target::Dcpo: return "dcpo";
    case Target::Basis: return "basis";
    case Target::WayBelow: return "waybelow";
    case Target::LConsistency: return "Lconsistency";
    case Target::BC: return "BC";
    case Target::AmLaws: return "am-laws";
    case Target::FunctorLaws: return "functor-laws";
    case Target::Roundtrip: return "roundtrip";
    }
    return "?";
}

std::vector<Target> all_targets()
{
    return {Target::GcsAxioms, Target::FgcsAxiom,    Target::Dcpo,   Target::Basis,
            Target::WayBelow,  Target::LConsistency, Target::BC,     Target::AmLaws,
            Target::FunctorLaws, Target::Roundtrip};
}

Target parse_target(const std::string& name)
{
    for (Target t : all_targets()) {
        if (to_string(t) == name) return t;
    }
    throw Error(ErrorCode::InvalidInput, "unknown miner target '" + name + "'");
}

GCSpacePtr random_gcs(std::mt19937_64& rng, int n, const Limits& limits)
{
    auto u = Universe::numbered(n);
    const Mask full = u->full_mask();
    std::vector<Mask> closed{full};
    const int k = below(rng, n + 2);
    for (int i = 0; i < k; ++i) closed.push_back(rng() & full);
    closed = close_under(closed, true);
    auto gamma = ClosureSpec::closed_system(SubsetFamily(u, closed));
    if (chance(rng, 0.5)) {
        std::vector<Mask> opens{0};
        const int m = below(rng, n + 2);
        for (int i = 0; i < m; ++i) opens.push_back(rng() & full);
        if (chance(rng, 0.7)) opens.push_back(full);
        return make_gcs(gamma, TauSpec::interior_system(SubsetFamily(u, close_under(opens, false))), limits);
    }
    return make_gcs(gamma, random_tau_table(rng, u, closed), limits);
}

Instance random_instance(std::mt19937_64& rng, int max_n, const Limits& limits)
{
    const int n = 1 + below(rng, std::max(1, max_n));
    Instance inst;
    if (chance(rng, 0.35)) {
        auto ps = poset_to_fgcs(random_poset(n, rng), std::nullopt, limits);
        inst.origin = "poset";
        inst.poset = ps.poset;
        inst.space = ps.space;
        inst.gcs = ps.space->space_ptr();
        inst.family = ps.space->family();
        return inst;
    }
    inst.gcs = random_gcs(rng, n, limits);
    const Mask full = inst.gcs->universe()->full_mask();
    std::vector<Mask> fam;
    for (Mask m = 1; m <= full; ++m) {
        if (chance(rng, 0.3)) fam.push_back(m);
    }
    if (chance(rng, 0.1)) fam.push_back(0);
    if (fam.empty()) fam.push_back(1 + (rng() % full));
    const int strategy = below(rng, 3);
    if (inst.gcs->validated() && strategy == 1) {
        fam = repair_family(*inst.gcs, fam);
    } else if (inst.gcs->validated() && strategy == 2) {
        std::vector<Mask> seeds(fam.begin(), fam.begin() + 1 + below(rng, static_cast<int>(std::min<std::size_t>(fam.size(), 3))));
        fam = repair_family(*inst.gcs, hull_closed_family(*inst.gcs, seeds));
    }
    static const char* names[] = {"random/filtered", "random/repaired", "random/hull-closed"};
    inst.origin = names[strategy];
    inst.family = SubsetFamily(inst.gcs->universe(), fam);
    if (inst.gcs->validated()) inst.space = make_fgcs(inst.gcs, inst.family, limits);
    return inst;
}

Report check_target(const Instance& inst, Target t, std::mt19937_64& rng, const MinerConfig& cfg)
{
    Report r;
    const std::string name = to_string(t);
    if (t == Target::GcsAxioms) {
        for (const auto& v : inst.gcs->validation().violations) {
            if (!replay_gcs(*inst.gcs, v)) r.add({name + ".replay", v.witnesses, "witness of " + v.rule + " does not replay"});
        }
        return r;
    }
    if (t == Target::FgcsAxiom) {
        if (!inst.space) return r;
        for (const auto& v : inst.space->validation().violations) {
            if (!replay_fgcs(*inst.space, v)) r.add({name + ".replay", v.witnesses, "witness of " + v.rule + " does not replay"});
        }
        return r;
    }
    if (!inst.space || !inst.space->validated()) return r;
    const auto& x = inst.space;
    try {
        switch (t) {
        case Target::Dcpo: {
            auto regs = enumerate_regulars(x, cfg.limits);
            if (regs.size() == 0) {
                r.add(error_violation(name + ".empty", x, "no regular open sets"));
                break;
            }
            auto flags = classify_poset(*regular_poset(regs), cfg.limits);
            if (!flags.dcpo || !flags.continuous) {
                r.add(error_violation(name + ".continuous", x, "regular open sets do not form a continuous dcpo"));
            }
            break;
        }
        case Target::Basis: absorb(r, verify_continuity(x, cfg.oracle, cfg.limits), name); break;
        case Target::WayBelow: absorb(r, check_mode_agreement(x, cfg.oracle, cfg.limits), name); break;
        case Target::LConsistency: {
            auto res = verify_subclass_theorems(x, cfg.limits);
            for (const auto& v : res.report.violations) {
                if (v.rule == "subclass.lc_ldomain") r.add(v);
            }
            for (const auto& v : res.lc_report.violations) {
                if (!replay_local_consistency(x, v)) r.add({name + ".replay", v.witnesses, "lc witness does not replay"});
            }
            absorb(r, check_sigma_laws(x), name);
            break;
        }
        case Target::BC: {
            auto res = verify_subclass_theorems(x, cfg.limits);
            for (const auto& v : res.report.violations) {
                if (v.rule != "subclass.lc_ldomain") r.add(v);
            }
            for (const auto& v : res.bc_report.violations) {
                if (!replay_consistency(*x, v)) r.add({name + ".replay", v.witnesses, "bc witness does not replay"});
            }
            break;
        }
        case Target::AmLaws: {
            auto rx = enumerate_regulars(x, cfg.limits);
            auto other = small_poset_space(rng);
            for (const auto& target : {x, other.space}) {
                auto rt = enumerate_regulars(target, cfg.limits);
                auto t1 = scott_to_am(random_regular_map(rx, rt, rng), cfg.limits);
                absorb(r, t1.validation(), name);
                absorb(r, check_am_consequences(t1, cfg.limits), name);
                if (!(am_compose(am_identity(x), t1) == t1) || !(am_compose(t1, am_identity(target)) == t1)) {
                    r.add(error_violation(name + ".identity", x, "identity is not neutral"));
                }
                std::vector<Mask> image = t1.images();
                if (!image.empty()) {
                    image[static_cast<std::size_t>(below(rng, static_cast<int>(image.size())))] ^=
                        Mask{1} << below(rng, target->size());
                    AMRelation mutated(x, target, image, cfg.limits);
                    for (const auto& v : mutated.validation().violations) {
                        if (!replay_am(mutated, v)) r.add({name + ".replay", v.witnesses, "witness of " + v.rule + " does not replay"});
                    }
                }
            }
            absorb(r, am_identity(x).validation(), name);
            break;
        }
        case Target::FunctorLaws: {
            auto y = small_poset_space(rng);
            auto z = small_poset_space(rng);
            auto rx = enumerate_regulars(x, cfg.limits);
            auto ry = enumerate_regulars(y.space, cfg.limits);
            auto rz = enumerate_regulars(z.space, cfg.limits);
            auto t1 = scott_to_am(random_regular_map(rx, ry, rng), cfg.limits);
            auto t2 = scott_to_am(random_regular_map(ry, rz, rng), cfg.limits);
            auto t3 = scott_to_am(random_regular_map(rz, rx, rng), cfg.limits);
            absorb(r, check_functor_laws({{t1, t2}, {t2, t3}}, cfg.limits), name);
            if (!(am_compose(am_compose(t1, t2), t3) == am_compose(t1, am_compose(t2, t3)))) {
                r.add(error_violation(name + ".associative", x, "composition is not associative"));
            }
            break;
        }
        case Target::Roundtrip: {
            FinPosetPtr p = inst.poset ? inst.poset : regular_poset(enumerate_regulars(x, cfg.limits));
            auto rt = roundtrip_iso(p, cfg.limits);
            absorb(r, rt.report, name);
            if (rt.regulars.size() != static_cast<std::size_t>(p->size())) {
                r.add(error_violation(name + ".size", x, "regular open sets and poset differ in size"));
            }
            break;
        }
        default: break;
        }
    } catch (const Error& e) {
        r.add(error_violation(name + ".error", x, std::string(to_string(e.code())) + ": " + e.what()));
    }
    return r;
}

namespace {

FGCSpacePtr without_point(const FGCSpace& x, int p, const Limits& limits)
{
    const int n = x.size();
    if (n <= 1) return nullptr;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
        if (i != p) labels.push_back(x.universe()->label(i));
    }
    auto u = Universe::make(labels);
    auto embed = [&](Mask a) {
        const Mask low = a & ((Mask{1} << p) - 1);
        return low | ((a & ~((Mask{1} << p) - 1)) << 1);
    };
    auto project = [&](Mask a) {
        const Mask low = a & ((Mask{1} << p) - 1);
        return low | ((a >> 1) & ~((Mask{1} << p) - 1));
    };
    std::vector<Mask> gamma;
    std::map<Mask, Mask> tau;
    for (Mask a = 0; a <= u->full_mask(); ++a) {
        gamma.push_back(project(x.space().gamma(embed(a))));
        if (auto t = x.space().tau(embed(a))) tau[a] = project(*t);
    }
    auto g = make_gcs(ClosureSpec::full_table(u, gamma), TauSpec::partial_table(u, tau), limits);
    if (!g->validated()) return nullptr;
    std::vector<Mask> fam;
    for (Mask f : x.family().masks()) {
        if (!((f >> p) & 1U)) fam.push_back(project(f));
    }
    if (fam.empty()) return nullptr;
    auto out = make_fgcs(g, SubsetFamily(u, fam), limits);
    return out->validated() ? out : nullptr;
}

}  // namespace

FGCSpacePtr shrink(const FGCSpacePtr& x, const std::function<bool(const FGCSpacePtr&)>& fails, const Limits& limits)
{
    FGCSpacePtr cur = x;
    bool changed = true;
    while (changed) {
        changed = false;
        const auto& fam = cur->family().masks();
        for (std::size_t i = 0; i < fam.size() && fam.size() > 1; ++i) {
            std::vector<Mask> fewer = fam;
            fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
            auto cand = make_fgcs(cur->space_ptr(), SubsetFamily(cur->universe(), fewer), limits);
            if (cand->validated() && fails(cand)) {
                cur = cand;
                changed = true;
                break;
            }
        }
        if (changed) continue;
        for (int p = 0; p < cur->size(); ++p) {
            auto cand = without_point(*cur, p, limits);
            if (cand && fails(cand)) {
                cur = cand;
                changed = true;
                break;
            }
        }
    }
    return cur;
}

MinerReport run_miner(const MinerConfig& cfg)
{
    MinerReport out;
    out.config = cfg;
    if (cfg.max_n < 1 || cfg.max_n > 8) throw Error(ErrorCode::InvalidInput, "max_n must lie in 1..8");
    std::mt19937_64 rng(cfg.seed);
    for (int i = 0; i < cfg.count; ++i) {
        Instance inst = random_instance(rng, cfg.max_n, cfg.limits);
        ++out.counts.generated;
        if (inst.poset) ++out.counts.poset_derived;
        const bool valid = inst.space && inst.space->validated();
        if (valid) {
            ++out.counts.valid;
            if (is_locally_consistent(*inst.space, cfg.limits).ok) ++out.counts.locally_consistent;
            if (is_consistent(*inst.space, cfg.limits).ok) ++out.counts.consistent;
            const auto regs = enumerate_regulars(inst.space, cfg.limits).size();
            out.counts.regular_max = std::max(out.counts.regular_max, regs);
            if (regs > static_cast<std::size_t>(cfg.oracle.max_family)) ++out.counts.oracle_skipped;
        }
        for (Target t : cfg.targets) {
            const std::uint64_t check_seed = cfg.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(i + 1)) ^
                                             static_cast<std::uint64_t>(t);
            std::mt19937_64 check_rng(check_seed);
            Report r = check_target(inst, t, check_rng, cfg);
            ++out.counts.checks;
            if (r.ok) continue;
            Finding f;
            f.instance = static_cast<std::size_t>(i);
            f.origin = inst.origin;
            f.target = t;
            f.violation = r.violations.front();
            if (valid) {
                const std::string rule = f.violation.rule;
                f.shrunk = shrink(inst.space, [&](const FGCSpacePtr& cand) {
                    Instance sub{inst.origin, cand->space_ptr(), cand->family(), cand, nullptr};
                    std::mt19937_64 again(check_seed);
                    auto rr = check_target(sub, t, again, cfg);
                    return std::any_of(rr.violations.begin(), rr.violations.end(),
                                       [&](const Violation& v) { return v.rule == rule; });
                }, cfg.limits);
            }
            out.findings.push_back(std::move(f));
        }
    }
    if (out.counts.oracle_skipped) {
        out.notes.push_back("way-below oracle skipped on " + std::to_string(out.counts.oracle_skipped) +
                            " instances with more than " + std::to_string(cfg.oracle.max_family) + " regular open sets");
    }
    return out;
}

}  // namespace fgc
