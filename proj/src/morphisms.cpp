#include "fgc/morphisms.hpp"

#include <algorithm>

namespace fgc {

namespace {

Mask bit(int i) { return Mask{1} << i; }

std::size_t member_index(const FGCSpace& x, Mask f)
{
    const auto& fam = x.family().masks();
    auto it = std::lower_bound(fam.begin(), fam.end(), f);
    if (it == fam.end() || *it != f) {
        throw Error(ErrorCode::NotInFamily, render(*x.universe(), f) + " is not a family member");
    }
    return static_cast<std::size_t>(it - fam.begin());
}

/// Hulls <G'> of target members G' related to some source member G <= <F>,
/// for the member at index i.
std::vector<Mask> am3_covers(const AMRelation& t, std::size_t i)
{
    const auto& src = *t.source();
    const auto& tgt = *t.target();
    const Mask hf = src.family_hulls()[i];
    std::vector<Mask> covers;
    for (std::size_t g = 0; g < src.family().size(); ++g) {
        if (!is_subset(src.family().masks()[g], hf)) continue;
        for (std::size_t h = 0; h < tgt.family().size(); ++h) {
            if (is_subset(tgt.family().masks()[h], t.images()[g])) covers.push_back(tgt.family_hulls()[h]);
        }
    }
    std::sort(covers.begin(), covers.end());
    covers.erase(std::unique(covers.begin(), covers.end()), covers.end());
    return covers;
}

bool covered(const std::vector<Mask>& covers, Mask m)
{
    return std::any_of(covers.begin(), covers.end(), [m](Mask c) { return is_subset(m, c); });
}

Subset src_sub(const AMRelation& t, Mask m) { return Subset(t.source()->universe(), m); }
Subset tgt_sub(const AMRelation& t, Mask m) { return Subset(t.target()->universe(), m); }

constexpr std::size_t kMaxPerRule = 16;

}  // namespace

AMRelation::AMRelation(FGCSpacePtr source, FGCSpacePtr target, std::vector<Mask> image,
                       const Limits& limits)
    : source_(std::move(source)), target_(std::move(target)), image_(std::move(image))
{
    if (!source_->validated() || !target_->validated()) {
        throw Error(ErrorCode::NotValidated, "approximable mappings need validated spaces");
    }
    if (image_.size() != source_->family().size()) {
        throw Error(ErrorCode::InvalidInput, "relation must list images for every source member");
    }
    const Mask full = target_->universe()->full_mask();
    for (Mask m : image_) {
        if (!is_subset(m, full)) throw Error(ErrorCode::InvalidInput, "relation refers to unknown target points");
    }
    validation_ = validate_am(*this, limits);
}

AMRelation AMRelation::from_pairs(FGCSpacePtr source, FGCSpacePtr target,
                                  const std::vector<std::pair<Mask, int>>& pairs, const Limits& limits)
{
    std::vector<Mask> image(source->family().size(), 0);
    for (auto [f, x] : pairs) {
        if (x < 0 || x >= target->size()) throw Error(ErrorCode::InvalidInput, "unknown target point");
        image[member_index(*source, f)] |= bit(x);
    }
    return AMRelation(std::move(source), std::move(target), std::move(image), limits);
}

Mask AMRelation::image(Mask f) const { return image_[member_index(*source_, f)]; }

std::vector<std::pair<Mask, int>> AMRelation::pairs() const
{
    std::vector<std::pair<Mask, int>> out;
    for (std::size_t i = 0; i < image_.size(); ++i) {
        for (Mask r = image_[i]; r; r &= r - 1) out.emplace_back(source_->family().masks()[i], __builtin_ctzll(r));
    }
    return out;
}

Report validate_am(const AMRelation& t, const Limits& limits)
{
    const auto& src = *t.source();
    const auto& tgt = *t.target();
    check_cap(tgt.size(), limits);
    Report report;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::size_t n3 = 0;
    auto push = [&](std::size_t& count, Violation v) {
        if (count++ < kMaxPerRule) {
            report.add(std::move(v));
        } else if (count == kMaxPerRule + 1) {
            report.note("further violations of " + v.rule + " omitted");
        }
    };
    const auto& fam = src.family().masks();
    const auto& tfam = tgt.family().masks();
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const Mask img = t.images()[i];
        for (std::size_t j = 0; j < tfam.size(); ++j) {
            if (is_subset(tfam[j], img) && !is_subset(tgt.family_hulls()[j], img)) {
                push(n1, {"am.1", {{"F", src_sub(t, fam[i])}, {"F'", tgt_sub(t, tfam[j])}},
                          "F relates to F' but not to its hull"});
            }
        }
        for (std::size_t k = 0; k < fam.size(); ++k) {
            if (!is_subset(fam[i], src.family_hulls()[k])) continue;
            const Mask missing = img & ~t.images()[k];
            if (missing) {
                push(n2, {"am.2",
                          {{"F", src_sub(t, fam[i])}, {"F1", src_sub(t, fam[k])},
                           {"M'", tgt_sub(t, missing & (~missing + 1))}},
                          "F <= <F1> and F relates to M' but F1 does not"});
            }
        }
        const auto covers = am3_covers(t, i);
        for_each_submask(img, [&](Mask m) {
            if (!covered(covers, m)) {
                push(n3, {"am.3", {{"F", src_sub(t, fam[i])}, {"M'", tgt_sub(t, m)}},
                          "no G <= <F> and G' with M' <= <G'> and G relating to G'"});
            }
        });
    }
    return report;
}

bool replay_am(const AMRelation& t, const Violation& v)
{
    try {
        const Subset* f = v.find("F");
        if (!f) return false;
        const std::size_t i = member_index(*t.source(), f->bits());
        const Mask img = t.images()[i];
        if (v.rule == "am.1") {
            const Subset* fp = v.find("F'");
            if (!fp) return false;
            const Mask hp = t.target()->hull(fp->bits());
            return t.target()->family().contains(fp->bits()) && is_subset(fp->bits(), img) && !is_subset(hp, img);
        }
        if (v.rule == "am.2") {
            const Subset* f1 = v.find("F1");
            const Subset* m = v.find("M'");
            if (!f1 || !m) return false;
            const std::size_t k = member_index(*t.source(), f1->bits());
            return is_subset(f->bits(), t.source()->family_hulls()[k]) && is_subset(m->bits(), img) &&
                   !is_subset(m->bits(), t.images()[k]);
        }
        if (v.rule == "am.3") {
            const Subset* m = v.find("M'");
            return m && is_subset(m->bits(), img) && !covered(am3_covers(t, i), m->bits());
        }
    } catch (const Error&) {
        return false;
    }
    return false;
}

AMRelation am_identity(const FGCSpacePtr& x)
{
    return AMRelation(x, x, x->family_hulls());
}

bool same_space(const FGCSpace& a, const FGCSpace& b)
{
    if (&a == &b) return true;
    return a.universe()->labels() == b.universe()->labels() && a.family() == b.family() &&
           a.family_hulls() == b.family_hulls() && a.space().closed_sets() == b.space().closed_sets();
}

AMRelation am_compose(const AMRelation& t1, const AMRelation& t2)
{
    if (!same_space(*t1.target(), *t2.source())) {
        throw Error(ErrorCode::SpaceMismatch, "target of the first mapping is not the source of the second");
    }
    const auto& mid = t2.source()->family().masks();
    std::vector<Mask> image;
    for (Mask first : t1.images()) {
        Mask out = 0;
        for (std::size_t g = 0; g < mid.size(); ++g) {
            if (is_subset(mid[g], first)) out |= t2.images()[g];
        }
        image.push_back(out);
    }
    return AMRelation(t1.source(), t2.target(), std::move(image));
}

AMImage am_apply(const AMRelation& t, const Subset& u, const Limits& limits)
{
    if (!is_regular_open(*t.source(), u, Mode::Fast, limits)) {
        throw Error(ErrorCode::NotRegular, u.str() + " is not regular open in the source");
    }
    Mask out = 0;
    const auto& fam = t.source()->family().masks();
    for (std::size_t i = 0; i < fam.size(); ++i) {
        if (is_subset(fam[i], u.bits())) out |= t.images()[i];
    }
    Subset image(t.target()->universe(), out);
    return {image, is_regular_open(*t.target(), image, Mode::Fast, limits)};
}

Mask RegularMap::apply(Mask u) const
{
    auto i = source.index_of(u);
    if (!i) throw Error(ErrorCode::NotRegular, render(*source.members.universe(), u) + " is not regular open");
    return target.members.masks()[static_cast<std::size_t>(map(static_cast<int>(*i)))];
}

RegularMap make_regular_map(RegularFamily source, RegularFamily target, std::vector<int> table)
{
    auto sp = regular_poset(source);
    auto tp = regular_poset(target);
    return {std::move(source), std::move(target), MonotoneMap{sp, tp, std::move(table)}};
}

RegularMap am_to_scott(const AMRelation& t, const Limits& limits)
{
    auto rs = enumerate_regulars(t.source(), limits);
    auto rt = enumerate_regulars(t.target(), limits);
    std::vector<int> table;
    for (const auto& u : rs.members.members()) {
        auto img = am_apply(t, u, limits).image;
        auto j = rt.index_of(img.bits());
        if (!j) throw Error(ErrorCode::NotRegular, "image " + img.str() + " of " + u.str() + " is not regular open");
        table.push_back(static_cast<int>(*j));
    }
    return make_regular_map(std::move(rs), std::move(rt), std::move(table));
}

AMRelation scott_to_am(const RegularMap& phi, const Limits& limits)
{
    const Mode mode = phi.map.source->size() <= limits.directed_cap ? Mode::Oracle : Mode::Fast;
    if (!is_scott_continuous(phi.map, mode, limits)) {
        throw Error(ErrorCode::NotScottContinuous, "map does not preserve directed sups");
    }
    const auto& x = phi.source.space;
    std::vector<Mask> image;
    for (Mask h : x->family_hulls()) image.push_back(phi.apply(h));
    return AMRelation(x, phi.target.space, std::move(image), limits);
}

AMRelation poset_fn_to_am(const MonotoneMap& f, const PosetSpace& source, const PosetSpace& target,
                          const Limits& limits)
{
    if (f.source->size() != source.poset->size() || f.target->size() != target.poset->size()) {
        throw Error(ErrorCode::SpaceMismatch, "map does not fit the given posets");
    }
    const auto wb = way_below_sets(*target.poset, Mode::Fast, limits);
    std::vector<Mask> image;
    for (Mask m : source.space->family().masks()) {
        auto top = source.poset->greatest(m);
        if (!top) {
            throw Error(ErrorCode::NoGreatestElement,
                        render(*source.poset->elements(), m) + " has no greatest element");
        }
        image.push_back(wb[static_cast<std::size_t>(f(*top))]);
    }
    return AMRelation(source.space, target.space, std::move(image), limits);
}

MonotoneMap am_to_poset_fn(const AMRelation& t, const PosetSpace& source, const PosetSpace& target)
{
    const auto wb = way_below_sets(*source.poset, Mode::Fast);
    const auto& fam = t.source()->family().masks();
    std::vector<int> table;
    for (int x = 0; x < source.poset->size(); ++x) {
        Mask related = 0;
        for (std::size_t i = 0; i < fam.size(); ++i) {
            if (is_subset(fam[i], wb[static_cast<std::size_t>(x)])) related |= t.images()[i];
        }
        auto s = target.poset->sup(related);
        if (!s) {
            throw Error(ErrorCode::SupMissing, "points related below " + source.poset->elements()->label(x) +
                                                   " have no supremum");
        }
        table.push_back(*s);
    }
    return {source.poset, target.poset, std::move(table)};
}

Report check_am_consequences(const AMRelation& t, const Limits& limits)
{
    const auto& src = *t.source();
    const auto& tgt = *t.target();
    check_cap(tgt.size(), limits);
    Report report;
    const auto& fam = src.family().masks();
    const Mask full = tgt.universe()->full_mask();
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const Mask img = t.images()[i];
        for_each_submask(full, [&](Mask m) {
            bool below = false;
            for (std::size_t g = 0; g < fam.size() && !below; ++g) {
                below = is_subset(fam[g], src.family_hulls()[i]) && is_subset(m, t.images()[g]);
            }
            if (is_subset(m, img) != below) {
                report.add({"am.prop1", {{"F", src_sub(t, fam[i])}, {"M'", tgt_sub(t, m)}},
                            "F relates to M' iff some G <= <F> does: fails"});
            }
            if (!is_subset(m, img)) return;
            bool lifted = false;
            for (std::size_t h = 0; h < tgt.family().size() && !lifted; ++h) {
                lifted = is_subset(m, tgt.family_hulls()[h]) && is_subset(tgt.family().masks()[h], img);
            }
            if (!lifted) {
                report.add({"am.prop2", {{"F", src_sub(t, fam[i])}, {"M'", tgt_sub(t, m)}},
                            "no G' with M' <= <G'> related to F"});
            }
        });
        for (std::size_t k = 0; k < fam.size(); ++k) {
            if (is_subset(fam[k], fam[i]) && !is_subset(t.images()[k], img)) {
                report.add({"am.prop3", {{"F1", src_sub(t, fam[k])}, {"F", src_sub(t, fam[i])}},
                            "F1 <= F but F1 relates to points F does not"});
            }
        }
    }
    return report;
}

Report check_functor_laws(const std::vector<std::pair<AMRelation, AMRelation>>& sample, const Limits& limits)
{
    Report report;
    auto whole = [](const FGCSpacePtr& x) { return Subset::full(x->universe()); };
    auto guarded = [&](const char* rule, const FGCSpacePtr& x, auto&& body) {
        try {
            body();
        } catch (const Error& e) {
            report.add({rule, {{"X", whole(x)}}, e.what()});
        }
    };
    for (const auto& [t1, t2] : sample) {
        for (const auto& x : {t1.source(), t1.target(), t2.target()}) {
            guarded("functor.identity", x, [&] {
                auto g = am_to_scott(am_identity(x), limits);
                for (std::size_t i = 0; i < g.map.table.size(); ++i) {
                    if (g.map.table[i] != static_cast<int>(i)) {
                        report.add({"functor.identity", {{"U", g.source.members.at(i)}},
                                    "identity mapping does not fix U"});
                    }
                }
            });
        }
        guarded("functor.compose", t1.source(), [&] {
            auto g1 = am_to_scott(t1, limits);
            auto g2 = am_to_scott(t2, limits);
            auto g12 = am_to_scott(am_compose(t1, t2), limits);
            for (const auto& u : g1.source.members.members()) {
                if (g12.apply(u.bits()) != g2.apply(g1.apply(u.bits()))) {
                    report.add({"functor.compose", {{"U", u}}, "image of a composite differs from the composite of images"});
                }
            }
        });
        for (const AMRelation* t : {&t1, &t2}) {
            guarded("functor.roundtrip_am", t->source(), [&] {
                auto phi = am_to_scott(*t, limits);
                if (!(scott_to_am(phi, limits) == *t)) {
                    report.add({"functor.roundtrip_am", {{"X", whole(t->source())}},
                                "relation rebuilt from its regular map differs"});
                }
                if (!(am_to_scott(scott_to_am(phi, limits), limits) == phi)) {
                    report.add({"functor.roundtrip_map", {{"X", whole(t->source())}},
                                "regular map rebuilt from its relation differs"});
                }
            });
        }
    }
    return report;
}

RegularMap random_regular_map(const RegularFamily& source, const RegularFamily& target, std::mt19937_64& rng)
{
    const auto& sm = source.members.masks();
    const auto& tm = target.members.masks();
    std::vector<std::size_t> order(sm.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return popcount(sm[a]) < popcount(sm[b]); });
    std::vector<int> table(sm.size(), 0);
    for (int attempt = 0; attempt < 16; ++attempt) {
        bool ok = true;
        for (std::size_t idx : order) {
            Mask floor = 0;
            for (std::size_t j = 0; j < sm.size(); ++j) {
                if (j != idx && is_subset(sm[j], sm[idx])) floor |= tm[static_cast<std::size_t>(table[j])];
            }
            std::vector<int> candidates;
            for (std::size_t c = 0; c < tm.size(); ++c) {
                if (is_subset(floor, tm[c])) candidates.push_back(static_cast<int>(c));
            }
            if (candidates.empty()) {
                ok = false;
                break;
            }
            table[idx] = candidates[static_cast<std::size_t>(rng() % candidates.size())];
        }
        if (ok) return make_regular_map(source, target, table);
    }
    std::fill(table.begin(), table.end(), static_cast<int>(rng() % tm.size()));
    return make_regular_map(source, target, table);
}

}  // namespace fgc
