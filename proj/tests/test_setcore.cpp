#include "doctest.h"

#include "fgc/setcore.hpp"

using namespace fgc;

TEST_CASE("subset rendering and parsing")
{
    auto u = Universe::make({"a", "b", "c"});
    auto s = Subset::parse(u, "{c, a}");
    CHECK(s.bits() == 0b101);
    CHECK(s.str() == "{a,c}");
    CHECK(Subset::parse(u, "{}").is_empty());
    CHECK_THROWS_AS(Subset::parse(u, "{d}"), Error);
    CHECK_THROWS_AS(Subset::parse(u, "a,b"), Error);
}

TEST_CASE("set algebra")
{
    auto u = Universe::make({"a", "b", "c"});
    auto ab = Subset::of(u, {"a", "b"});
    auto bc = Subset::of(u, {"b", "c"});
    CHECK((ab | bc) == Subset::full(u));
    CHECK((ab & bc).labels() == std::vector<std::string>{"b"});
    CHECK((ab - bc).labels() == std::vector<std::string>{"a"});
    CHECK(ab.complement().labels() == std::vector<std::string>{"c"});
    auto other = Universe::make({"a", "b", "c"});
    CHECK_THROWS_AS(ab | Subset::full(other), Error);
}

TEST_CASE("canonical order")
{
    auto u = Universe::numbered(4);
    auto all = enumerate_subsets(u);
    REQUIRE(all.size() == 16);
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(canonical_index(all[i]) == i);
    CHECK(all.front().is_empty());
    CHECK_THROWS_AS(enumerate_subsets(Universe::numbered(20)), Error);
    Limits wide;
    wide.cap = 20;
    CHECK_NOTHROW(canonical_index(Subset::full(Universe::numbered(20)), wide));
}

TEST_CASE("submask enumeration visits every submask once in order")
{
    std::vector<Mask> seen;
    for_each_submask(0b1011, [&](Mask m) { seen.push_back(m); });
    CHECK(seen == std::vector<Mask>{0, 1, 2, 3, 8, 9, 10, 11});
}

TEST_CASE("families deduplicate and sort")
{
    auto u = Universe::numbered(3);
    SubsetFamily f(u, std::vector<Mask>{4, 1, 4, 0});
    CHECK(f.masks() == std::vector<Mask>{0, 1, 4});
    CHECK(f.contains(Mask{1}));
    CHECK_FALSE(f.contains(Mask{2}));
}

TEST_CASE("universe labels")
{
    CHECK_THROWS_AS(Universe::make({"a", "a"}), Error);
    CHECK_THROWS_AS(Universe::make({"a,b"}), Error);
    CHECK(Universe::numbered(3)->label(2) == "2");
}
