#include "fgc/subclasses.hpp"


namespace fgc {

namespace {

constexpr std::size_t kMaxPerRule = 16;

/// Members of Sigma(F, M) as masks.
std::vector<Mask> sigma_masks(const FGCSpace& x, Mask hf, Mask m)
{
    const Mask hm = x.hull(m);
    const auto& fam = x.family().masks();
    const auto& hulls = x.family_hulls();
    Mask bound = hf;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        if (is_subset(hm, hulls[i]) && is_subset(hulls[i], hf)) bound &= hulls[i];
    }
    std::vector<Mask> out;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        if (is_subset(hm, hulls[i]) && is_subset(fam[i], hf) && is_subset(hulls[i], bound)) {
            out.push_back(fam[i]);
        }
    }
    return out;
}

void record(Report& report, std::size_t& count, const std::string& rule, Violation v)
{
    if (count++ < kMaxPerRule) {
        report.add(std::move(v));
    } else {
        report.ok = false;
        if (count == kMaxPerRule + 1) report.note("further violations of " + rule + " omitted");
    }
}

}  // namespace

std::optional<Subset> SigmaSet::representative() const
{
    if (members.empty()) return std::nullopt;
    return members.at(0);
}

std::optional<Subset> SigmaSet::hull() const
{
    if (members.empty()) return std::nullopt;
    return Subset(space->universe(), space->hull(members.masks().front()));
}

SigmaSet f_sups(const FGCSpacePtr& x, const Subset& f, const Subset& m)
{
    if (!x->family().contains(f.bits())) {
        throw Error(ErrorCode::NotInFamily, f.str() + " is not a family member");
    }
    const Mask hf = x->hull(f.bits());
    if (!is_subset(m.bits(), hf)) {
        throw Error(ErrorCode::MNotInHull, m.str() + " is not contained in the hull of " + f.str());
    }
    return {x, f.bits(), m.bits(), SubsetFamily(x->universe(), sigma_masks(*x, hf, m.bits()))};
}

Report is_locally_consistent(const FGCSpace& x, const Limits& limits)
{
    check_cap(x.size(), limits);
    Report report;
    std::size_t count = 0;
    const auto& fam = x.family().masks();
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const Mask hf = x.family_hulls()[i];
        for_each_submask(hf, [&](Mask m) {
            if (!sigma_masks(x, hf, m).empty()) return;
            record(report, count, "lc",
                   {"lc",
                    {{"F", Subset(x.universe(), fam[i])}, {"M", Subset(x.universe(), m)}},
                    "no F-sup of M exists"});
        });
    }
    return report;
}

bool replay_local_consistency(const FGCSpacePtr& x, const Violation& v)
{
    const Subset* f = v.find("F");
    const Subset* m = v.find("M");
    if (v.rule != "lc" || !f || !m) return false;
    try {
        return f_sups(x, *f, *m).empty();
    } catch (const Error&) {
        return false;
    }
}

Report is_consistent(const FGCSpace& x, const Limits& limits)
{
    check_cap(x.size(), limits);
    Report report;
    std::size_t count = 0;
    const auto& fam = x.family().masks();
    for (std::size_t i = 0; i < fam.size(); ++i) {
        for_each_submask(x.family_hulls()[i], [&](Mask m) {
            if (x.family().contains(m)) return;
            record(report, count, "bc",
                   {"bc",
                    {{"F", Subset(x.universe(), fam[i])}, {"M", Subset(x.universe(), m)}},
                    "subset of a hull is not a family member"});
        });
    }
    return report;
}

bool replay_consistency(const FGCSpace& x, const Violation& v)
{
    const Subset* f = v.find("F");
    const Subset* m = v.find("M");
    if (v.rule != "bc" || !f || !m || !x.family().contains(f->bits())) return false;
    return is_subset(m->bits(), x.hull(f->bits())) && !x.family().contains(m->bits());
}

std::string to_string(SpaceClass c)
{
    switch (c) {
    case SpaceClass::General: return "general";
    case SpaceClass::LocallyConsistent: return "locally-consistent";
    case SpaceClass::Consistent: return "consistent";
    }
    return "general";
}

SubclassResult verify_subclass_theorems(const FGCSpacePtr& x, const Limits& limits)
{
    SubclassResult out;
    out.lc_report = is_locally_consistent(*x, limits);
    out.bc_report = is_consistent(*x, limits);
    out.locally_consistent = out.lc_report.ok;
    out.consistent = out.bc_report.ok;
    if (out.consistent) {
        out.space_class = SpaceClass::Consistent;
    } else if (out.locally_consistent) {
        out.space_class = SpaceClass::LocallyConsistent;
    }

    auto r = enumerate_regulars(x, limits);
    out.regular_count = r.size();
    if (r.size() > 0) {
        out.regular_flags = classify_poset(*regular_poset(r), limits);
    } else {
        out.report.note("no regular open sets; every order flag is false");
    }
    const auto& flags = out.regular_flags;
    const auto full = Subset::full(x->universe());
    if (out.locally_consistent && !flags.l_domain) {
        out.report.add({"subclass.lc_ldomain", {{"X", full}},
                        "locally consistent but the regular open sets do not form an L-domain"});
    }
    if (out.consistent && !out.locally_consistent) {
        out.report.add({"subclass.bc_lc", {{"X", full}}, "consistent but not locally consistent"});
    }
    if (out.consistent && !flags.bounded_complete) {
        out.report.add({"subclass.bc_bounded", {{"X", full}},
                        "consistent but the regular open sets are not bounded complete"});
    }
    if (!out.locally_consistent) out.report.note("not locally consistent; the L-domain implication is vacuous");
    if (!out.consistent) out.report.note("not consistent; the bounded-completeness implication is vacuous");
    return out;
}

}  // namespace fgc
