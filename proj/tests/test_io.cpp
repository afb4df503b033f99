#include "doctest.h"

#include "fgc/fixtures.hpp"
#include "fgc/io.hpp"
#include "fgc/miner.hpp"

using namespace fgc;

TEST_CASE("malformed documents name line and column")
{
    try {
        parse_document("{\n  \"universe\": [\"a\",\n}", "doc");
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).rfind("doc:3:1", 0) == 0);
    }
    CHECK_THROWS_AS(space_from_json(parse_document(R"({"universe": ["a"]})")), Error);
    CHECK_THROWS_AS(space_from_json(parse_document(R"({"universe": ["a"], "gamma": 3, "tau": "identity"})")), Error);
}

TEST_CASE("space documents round trip")
{
    for (const auto& x : {fixtures::flat(), fixtures::chain2(), poset_to_fgcs(fixtures::m()).space}) {
        auto doc = space_to_json(*x);
        auto back = space_from_json(parse_document(doc.dump()));
        REQUIRE(back.fgcs);
        CHECK(back.fgcs->universe()->labels() == x->universe()->labels());
        CHECK(back.fgcs->family() == x->family());
        for (Mask a = 0; a <= x->universe()->full_mask(); ++a) {
            CHECK(back.gcs->gamma(a) == x->space().gamma(a));
            CHECK(back.gcs->tau(a) == x->space().tau(a));
        }
        CHECK(space_to_json(*back.fgcs) == doc);
    }
}

TEST_CASE("random spaces survive serialisation")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        auto inst = random_instance(rng, 5);
        auto doc = space_to_json(*inst.gcs);
        auto back = space_from_json(doc);
        CHECK(back.gcs->validated() == inst.gcs->validated());
        CHECK(space_to_json(*back.gcs) == doc);
    }
}

TEST_CASE("poset documents close the order")
{
    auto p = poset_from_json(parse_document(R"({"elements": ["x","y","z"], "leq": [["x","y"],["y","z"]]})"));
    CHECK(p->leq(0, 2));
    CHECK(*poset_from_json(poset_to_json(*p)) == *p);
    CHECK_THROWS_AS(poset_from_json(parse_document(R"({"elements": ["x","y"], "leq": [["x","y"],["y","x"]]})")), Error);
    CHECK_THROWS_AS(poset_from_json(parse_document(R"({"elements": ["x"], "leq": [["x","w"]]})")), Error);
    CHECK(is_poset_document(poset_to_json(*p)));
}

TEST_CASE("mappings round trip with inline spaces")
{
    auto x = fixtures::chain2();
    auto t = am_identity(x);
    auto back = mapping_from_json(parse_document(mapping_to_json(t).dump()), ".");
    CHECK(back == t);
    CHECK(back.validated());
    Json doc = mapping_to_json(t);
    doc["pairs"].push_back({Json::array({"0"}), "z"});
    CHECK_THROWS_AS(mapping_from_json(doc, "."), Error);
}

TEST_CASE("reloaded report witnesses replay")
{
    auto g = fixtures::chain2_patched();
    REQUIRE_FALSE(g->validated());
    auto reloaded = report_from_json(parse_document(report_to_json(g->validation()).dump()), g->universe());
    CHECK_FALSE(reloaded.ok);
    REQUIRE(reloaded.violations.size() == g->validation().violations.size());
    for (const auto& v : reloaded.violations) CHECK(replay_gcs(*g, v));

    auto flat = fixtures::flat();
    auto lc = report_from_json(report_to_json(is_locally_consistent(*flat)), flat->universe());
    REQUIRE(lc.violations.size() == 1);
    CHECK(replay_local_consistency(flat, lc.violations[0]));
}

TEST_CASE("human rendering")
{
    Report r;
    r.add({"lc", {{"F", Subset::parse(fixtures::flat()->universe(), "{a,b}")}}, "no F-sup"});
    auto text = render_human(report_to_json(r));
    CHECK(text.find("rule: lc") != std::string::npos);
    CHECK(text.find("F: {a,b}") != std::string::npos);
}
