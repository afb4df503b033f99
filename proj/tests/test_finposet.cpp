#include "doctest.h"

#include <map>
#include <random>

#include "fgc/fixtures.hpp"
#include "oracles.hpp"

using namespace fgc;

TEST_CASE("poset counts match brute-force relation enumeration")
{
    for (int n = 1; n <= 4; ++n) {
        auto gen = labeled_posets(n);
        auto brute = oracle::all_partial_orders(n);
        REQUIRE(gen.size() == brute.size());
        std::set<oracle::Relation> a(brute.begin(), brute.end());
        std::set<oracle::Relation> b;
        for (const auto& p : gen) b.insert(oracle::relation_of(*p));
        CHECK(a == b);
    }
    CHECK(labeled_posets(4).size() == 219);
}

TEST_CASE("partial order validation")
{
    CHECK_THROWS_AS(FinPoset::from_labels({"a", "b"}, {{"a", "b"}, {"b", "a"}}), Error);
    CHECK_THROWS_AS(FinPoset::from_labels({"a", "b"}, {{"a", "c"}}), Error);
    auto p = FinPoset::from_labels({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
    CHECK(p->leq(0, 2));
    CHECK(p->cover_pairs().size() == 2);
}

TEST_CASE("classification of fixtures")
{
    auto d = classify_poset(*fixtures::diamond());
    CHECK(d.dcpo);
    CHECK(d.continuous);
    CHECK(d.algebraic);
    CHECK(d.complete_lattice);
    CHECK(d.l_domain);
    CHECK(d.bounded_complete);
    auto m = classify_poset(*fixtures::m());
    CHECK(m.l_domain);
    CHECK_FALSE(m.bounded_complete);
    auto t = classify_poset(*fixtures::two_top());
    CHECK_FALSE(t.l_domain);
    CHECK_FALSE(t.bounded_complete);
}

TEST_CASE("classification agrees with brute force on all small posets")
{
    for (int n = 1; n <= 4; ++n) {
        for (const auto& p : labeled_posets(n)) {
            auto f = classify_poset(*p);
            auto r = oracle::relation_of(*p);
            auto o = oracle::flags(r);
            CHECK(f.dcpo);
            CHECK(f.continuous);
            CHECK(f.algebraic);
            CHECK(f.complete_lattice == o.complete_lattice);
            CHECK(f.l_domain == o.l_domain);
            CHECK(f.bounded_complete == o.bounded_complete);
            for (int x = 0; x < n; ++x) {
                for (int y = 0; y < n; ++y) {
                    const bool fast = way_below_poset(*p, x, y, Mode::Fast);
                    CHECK(fast == way_below_poset(*p, x, y, Mode::Oracle));
                    CHECK(fast == oracle::way_below(r, x, y));
                }
            }
        }
    }
}

TEST_CASE("way below on fixtures")
{
    auto c = fixtures::chain(2);
    CHECK(way_below_poset(*c, 0, 1, Mode::Oracle));
    auto v = fixtures::v();
    CHECK_FALSE(way_below_poset(*v, 1, 2, Mode::Oracle));
    CHECK(way_below_poset(*v, 0, 0, Mode::Oracle));
    Limits small;
    small.directed_cap = 2;
    CHECK_THROWS_AS(way_below_poset(*v, 0, 0, Mode::Oracle, small), Error);
    auto big = classify_poset(*fixtures::chain(12));
    CHECK(big.dcpo);
    CHECK_FALSE(big.notes.empty());
}

TEST_CASE("scott continuity")
{
    auto d = fixtures::diamond();
    MonotoneMap id{d, d, {0, 1, 2, 3}};
    MonotoneMap bottom{d, d, {0, 0, 0, 0}};
    MonotoneMap swap{d, d, {0, 2, 1, 3}};
    MonotoneMap flip{d, d, {3, 1, 2, 0}};
    for (auto mode : {Mode::Fast, Mode::Oracle}) {
        CHECK(is_scott_continuous(id, mode));
        CHECK(is_scott_continuous(bottom, mode));
        CHECK(is_scott_continuous(swap, mode));
        CHECK_FALSE(is_scott_continuous(flip, mode));
    }
    auto maps = monotone_maps(fixtures::chain(2), fixtures::chain(2));
    CHECK(maps.size() == 3);
    for (const auto& f : monotone_maps(fixtures::v(), d)) {
        CHECK(is_scott_continuous(f, Mode::Oracle));
    }
}

TEST_CASE("poset to space")
{
    auto v = poset_to_fgcs(fixtures::v()).space;
    CHECK(v->validated());
    std::vector<std::string> fam;
    for (const auto& s : v->family().members()) fam.push_back(s.str());
    CHECK(fam == std::vector<std::string>{"{bot}", "{a}", "{bot,a}", "{b}", "{bot,b}"});
    auto pt = poset_to_fgcs(fixtures::chain(1)).space;
    CHECK(pt->family().masks() == std::vector<Mask>{1});
    CHECK(pt->space().hull(1) == 1);
    CHECK_THROWS_AS(poset_to_fgcs(fixtures::v(), Mask{0b011}), Error);
    CHECK_NOTHROW(poset_to_fgcs(fixtures::v(), Mask{0b111}));
}

TEST_CASE("hull law: hull of F is the down-set of its greatest element")
{
    for (int n = 1; n <= 4; ++n) {
        for (const auto& p : labeled_posets(n)) {
            auto x = poset_to_fgcs(p).space;
            REQUIRE(x->validated());
            for (std::size_t i = 0; i < x->family().size(); ++i) {
                const Mask f = x->family().masks()[i];
                CHECK(x->family_hulls()[i] == p->down(*p->greatest(f)));
            }
        }
    }
}

TEST_CASE("regular characterization")
{
    auto c = fixtures::chain(2);
    auto uc = c->elements();
    for (auto mode : {RegularMode::R1R2, RegularMode::Direct}) {
        CHECK(regular_characterization(c, Subset(uc, 0b11), mode));
        CHECK_FALSE(regular_characterization(c, Subset(uc, 0b10), mode));
        CHECK_FALSE(regular_characterization(fixtures::v(), Subset::full(fixtures::v()->elements()), mode));
    }
    for (int n = 1; n <= 4; ++n) {
        for (const auto& p : labeled_posets(n)) {
            for (const auto& u : enumerate_subsets(p->elements())) {
                CHECK(regular_characterization(p, u, RegularMode::R1R2) ==
                      regular_characterization(p, u, RegularMode::Direct));
            }
        }
    }
}

TEST_CASE("round trip")
{
    auto rt = roundtrip_iso(fixtures::chain(2));
    CHECK(rt.report.ok);
    CHECK(rt.f[1] == 0b11);
    CHECK(rt.g[*rt.regulars.index_of(0b11)] == 1);
    auto d = roundtrip_iso(fixtures::diamond());
    CHECK(d.report.ok);
    CHECK(d.regulars.size() == 4);
    CHECK(roundtrip_iso(fixtures::chain(1)).report.ok);
    for (int n = 1; n <= 4; ++n) {
        for (const auto& p : labeled_posets(n)) {
            auto r = roundtrip_iso(p);
            CHECK(r.report.ok);
            CHECK(r.regulars.size() == static_cast<std::size_t>(n));
            std::set<Mask> principal;
            for (int x = 0; x < n; ++x) principal.insert(p->down(x));
            CHECK(std::set<Mask>(r.regulars.members.masks().begin(), r.regulars.members.masks().end()) == principal);
        }
    }
}

TEST_CASE("random posets are reproducible and round trip")
{
    std::mt19937_64 a(3);
    std::mt19937_64 b(3);
    for (int n = 5; n <= 8; ++n) {
        auto p = random_poset(n, a);
        auto q = random_poset(n, b);
        CHECK(*p == *q);
        CHECK(roundtrip_iso(p).report.ok);
        auto flags = classify_poset(*p);
        auto o = oracle::flags(oracle::relation_of(*p));
        CHECK(flags.l_domain == o.l_domain);
        CHECK(flags.bounded_complete == o.bounded_complete);
    }
}

TEST_CASE("regular poset is isomorphic in size")
{
    auto d = roundtrip_iso(fixtures::diamond());
    auto rp = regular_poset(d.regulars);
    CHECK(rp->size() == 4);
    auto f = classify_poset(*rp);
    CHECK(f.complete_lattice);
}
