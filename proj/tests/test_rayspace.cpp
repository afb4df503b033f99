#include "doctest.h"

#include "fgc/rayspace.hpp"

using namespace fgc;

TEST_CASE("rationals")
{
    CHECK(parse_rat("3/6") == Rat(1, 2));
    CHECK(parse_rat("-4") == Rat(-4));
    CHECK(to_string(parse_rat("-6/3 ")) == "-2");
    CHECK_THROWS_AS(parse_rat("6/-3"), Error);
    CHECK_THROWS_AS(parse_rat("1/0"), Error);
    CHECK_THROWS_AS(parse_rat("x"), Error);
}

TEST_CASE("hulls")
{
    CHECK(ray_hull({1, 3}) == RayOpen::open(1));
    CHECK(ray_hull({0}) == RayOpen::open(0));
    CHECK(ray_hull({-2, 5, 7}) == RayOpen::open(-2));
    CHECK(ray_gamma({-2, 5, 7}) == RayOpen::closed(-2));
    CHECK_THROWS_AS(ray_hull({}), Error);
    CHECK(ray_hull({1, 3}).str() == "(1,inf)");
}

TEST_CASE("regular rays")
{
    CHECK(ray_is_regular(RayOpen::open(0)));
    CHECK_FALSE(ray_is_regular(RayOpen::closed(0)));
    CHECK(ray_is_regular(RayOpen::all()));
    CHECK_FALSE(ray_is_regular(RayOpen::empty()));
    auto w = ray_regular_witness(RayOpen::open(0), {Rat(1, 3), 5});
    REQUIRE(w);
    CHECK(ray_subset(ray_hull(*w), RayOpen::open(0)));
    CHECK(ray_hull(*w).contains(Rat(1, 3)));
}

TEST_CASE("way below")
{
    CHECK(ray_way_below(RayOpen::open(1), RayOpen::open(0)));
    CHECK(*ray_way_below_witness(RayOpen::open(1), RayOpen::open(0)) == std::vector<Rat>{Rat(1, 2)});
    CHECK_FALSE(ray_way_below(RayOpen::open(0), RayOpen::open(0)));
    CHECK_FALSE(ray_way_below(RayOpen::all(), RayOpen::all()));
    CHECK(ray_way_below(RayOpen::open(3), RayOpen::all()));
    CHECK_THROWS_AS(ray_way_below(RayOpen::closed(0), RayOpen::all()), Error);
}

TEST_CASE("sigma sets")
{
    CHECK(ray_sigma({0}, {}).empty());
    auto s = ray_sigma({0}, {2, 3});
    CHECK(s.str() == "{G : min G = 2}");
    CHECK(s.contains({2, 7}));
    CHECK_FALSE(s.contains({3}));
    CHECK(ray_is_f_sup({0}, {1}, {1}));
    CHECK(ray_sigma({0}, {1}).contains({1}));
    CHECK_FALSE(ray_is_f_sup({0}, {1}, {Rat(1, 2)}));
    CHECK_FALSE(ray_is_f_sup({0}, {}, {1}));
    CHECK_THROWS_AS(ray_sigma({0}, {0}), Error);
}

TEST_CASE("parsing rays")
{
    CHECK(RayOpen::parse("(1,inf)") == RayOpen::open(1));
    CHECK(RayOpen::parse("[1/2, inf)") == RayOpen::closed(Rat(1, 2)));
    CHECK(RayOpen::parse("all") == RayOpen::all());
    CHECK_THROWS_AS(RayOpen::parse("(1,2)"), Error);
    CHECK(ray_union({RayOpen::open(3), RayOpen::open(1), RayOpen::open(2)}) == RayOpen::open(1));
}
