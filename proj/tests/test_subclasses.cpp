#include "doctest.h"

#include "fgc/fixtures.hpp"
#include "fgc/subclasses.hpp"
#include "oracles.hpp"

using namespace fgc;

namespace {

Subset sub(const FGCSpacePtr& x, Mask m) { return Subset(x->universe(), m); }

bool has_witness(const Report& r, Mask f, Mask m)
{
    for (const auto& v : r.violations) {
        if (v.find("F")->bits() == f && v.find("M")->bits() == m) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("f-sups on fixtures")
{
    auto c = fixtures::chain2();
    auto s = f_sups(c, sub(c, 0b10), sub(c, 0b01));
    CHECK(s.members.contains(Mask{0b01}));
    CHECK(s.hull()->bits() == 0b01);
    CHECK(s.representative()->bits() == 0b01);
    auto f = fixtures::flat();
    CHECK(f_sups(f, sub(f, 0b11), sub(f, 0)).empty());
    auto p = fixtures::point();
    CHECK(f_sups(p, sub(p, 1), sub(p, 1)).members.masks() == std::vector<Mask>{1});
    CHECK_THROWS_AS(f_sups(c, sub(c, 0), sub(c, 0)), Error);
    CHECK_THROWS_AS(f_sups(c, sub(c, 0b01), sub(c, 0b10)), Error);
}

TEST_CASE("local consistency")
{
    CHECK(is_locally_consistent(*fixtures::chain2()).ok);
    auto f = fixtures::flat();
    auto r = is_locally_consistent(*f);
    REQUIRE_FALSE(r.ok);
    CHECK(has_witness(r, 0b11, 0));
    for (const auto& v : r.violations) CHECK(replay_local_consistency(f, v));
    CHECK(is_locally_consistent(*poset_to_fgcs(fixtures::m()).space).ok);
    CHECK_FALSE(is_locally_consistent(*poset_to_fgcs(fixtures::two_top()).space).ok);
}

TEST_CASE("consistency is read with the empty M included")
{
    auto d = poset_to_fgcs(fixtures::diamond()).space;
    auto rd = is_consistent(*d);
    CHECK_FALSE(rd.ok);
    CHECK(has_witness(rd, 0b1000, 0));
    CHECK(has_witness(rd, 0b1000, 0b0110));
    auto m = poset_to_fgcs(fixtures::m()).space;
    auto rm = is_consistent(*m);
    CHECK(has_witness(rm, 0b01000, 0b00110));
    for (const auto& v : rm.violations) CHECK(replay_consistency(*m, v));
    CHECK_FALSE(is_consistent(*fixtures::point()).ok);

    auto u = Universe::make({"a", "b"});
    auto g = make_gcs(ClosureSpec::identity(u), TauSpec::identity(u));
    auto powerset = make_fgcs(g, SubsetFamily(u, std::vector<Mask>{0, 1, 2, 3}));
    CHECK(is_consistent(*powerset).ok);
    CHECK(is_locally_consistent(*powerset).ok);
    auto res = verify_subclass_theorems(powerset);
    CHECK(res.report.ok);
    CHECK(res.space_class == SpaceClass::Consistent);
    CHECK(res.regular_flags.bounded_complete);
}

TEST_CASE("subclass theorems on fixtures")
{
    auto c = verify_subclass_theorems(fixtures::chain2());
    CHECK(c.report.ok);
    CHECK(c.locally_consistent);
    auto f = verify_subclass_theorems(fixtures::flat());
    CHECK(f.report.ok);
    CHECK_FALSE(f.locally_consistent);
    CHECK_FALSE(f.regular_flags.l_domain);
    auto d = verify_subclass_theorems(poset_to_fgcs(fixtures::diamond()).space);
    CHECK(d.report.ok);
    CHECK(d.locally_consistent);
    CHECK(d.regular_flags.l_domain);
    CHECK(to_string(f.space_class) == "general");
}

TEST_CASE("f-sups match the definition and share one hull")
{
    for (int n = 1; n <= 4; ++n) {
        for (const auto& p : labeled_posets(n)) {
            auto x = poset_to_fgcs(p).space;
            const auto& fam = x->family().masks();
            for (std::size_t i = 0; i < fam.size(); ++i) {
                const Mask hf = x->family_hulls()[i];
                for_each_submask(hf, [&](Mask m) {
                    auto s = f_sups(x, sub(x, fam[i]), sub(x, m));
                    std::vector<Mask> expected;
                    for (const auto& g : oracle::f_sups(*x, oracle::to_set(fam[i]), oracle::to_set(m))) {
                        expected.push_back(oracle::to_mask(g));
                    }
                    std::sort(expected.begin(), expected.end());
                    CHECK(s.members.masks() == expected);
                    for (Mask g : s.members.masks()) CHECK(x->hull(g) == s.hull()->bits());
                    for (std::size_t k = 0; k < fam.size(); ++k) {
                        if (!is_subset(fam[i], x->family_hulls()[k])) continue;
                        auto wider = f_sups(x, sub(x, fam[k]), sub(x, m));
                        if (wider.empty()) continue;
                        for (Mask g : s.members.masks()) CHECK(wider.members.contains(g));
                    }
                });
            }
        }
    }
}

TEST_CASE("local consistency matches L-domains on all small posets")
{
    int l_domains = 0;
    for (int n = 1; n <= 4; ++n) {
        for (const auto& p : labeled_posets(n)) {
            auto x = poset_to_fgcs(p).space;
            const bool ld = classify_poset(*p).l_domain;
            CHECK(is_locally_consistent(*x).ok == ld);
            CHECK_FALSE(is_consistent(*x).ok);
            auto res = verify_subclass_theorems(x);
            CHECK(res.report.ok);
            l_domains += ld;
        }
    }
    CHECK(l_domains > 0);
}
