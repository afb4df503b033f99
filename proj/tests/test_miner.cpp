#include "doctest.h"

#include <chrono>
#include <iostream>

#include "fgc/miner.hpp"

using namespace fgc;

TEST_CASE("target names round trip")
{
    for (Target t : all_targets()) CHECK(parse_target(to_string(t)) == t);
    CHECK_THROWS_AS(parse_target("nope"), Error);
}

TEST_CASE("random gcs candidates replay their violations")
{
    std::mt19937_64 rng(7);
    int valid = 0;
    for (int i = 0; i < 300; ++i) {
        auto g = random_gcs(rng, 1 + static_cast<int>(rng() % 5));
        if (g->validated()) ++valid;
        for (const auto& v : g->validation().violations) CHECK(replay_gcs(*g, v));
    }
    CHECK(valid > 100);
    CHECK(valid < 300);
}

TEST_CASE("identical config gives identical findings")
{
    MinerConfig cfg;
    cfg.count = 60;
    auto a = run_miner(cfg);
    auto b = run_miner(cfg);
    CHECK(a.counts.valid == b.counts.valid);
    CHECK(a.counts.consistent == b.counts.consistent);
    CHECK(a.findings.size() == b.findings.size());
    CHECK(a.counts.generated == 60);
}

TEST_CASE("default mine")
{
    MinerConfig cfg;
    const auto t0 = std::chrono::steady_clock::now();
    auto r = run_miner(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    MESSAGE("valid " << r.counts.valid << " poset " << r.counts.poset_derived << " lc "
                     << r.counts.locally_consistent << " bc " << r.counts.consistent << " rmax "
                     << r.counts.regular_max << " skipped " << r.counts.oracle_skipped << " secs " << secs);
    for (const auto& f : r.findings) {
        MESSAGE(f.instance << " " << f.origin << " " << to_string(f.target) << " " << f.violation.rule << " "
                           << f.violation.message);
    }
    CHECK(r.ok());
}

TEST_CASE("shrink keeps a failing predicate")
{
    MinerConfig cfg;
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        auto inst = random_instance(rng, 4);
        if (!inst.space || !inst.space->validated()) continue;
        auto small = shrink(inst.space, [](const FGCSpacePtr& x) { return x->family().size() >= 1; });
        CHECK(small->family().size() == 1);
        CHECK(small->validated());
    }
}
