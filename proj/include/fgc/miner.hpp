#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fgc/morphisms.hpp"
#include "fgc/subclasses.hpp"

namespace fgc {

enum class Target {
    GcsAxioms,
    FgcsAxiom,
    Dcpo,
    Basis,
    WayBelow,
    LConsistency,
    BC,
    AmLaws,
    FunctorLaws,
    Roundtrip,
};

std::string to_string(Target t);
/// Accepts the names printed by to_string. Throws InvalidInput.
Target parse_target(const std::string& name);
std::vector<Target> all_targets();

struct MinerConfig {
    std::uint64_t seed = 42;
    int count = 1000;
    int max_n = 5;
    std::vector<Target> targets = all_targets();
    OracleLimits oracle;
    Limits limits;
};

/// A candidate triple and how it was drawn. `space` is null when the
/// candidate failed the axioms; `gcs` and `family` are always set.
struct Instance {
    std::string origin;
    GCSpacePtr gcs;
    SubsetFamily family;
    FGCSpacePtr space;
    FinPosetPtr poset;
};

/// Random closure system (random subsets closed under intersection) with a
/// tau drawn as an interior system or as a random table on closed sets.
GCSpacePtr random_gcs(std::mt19937_64& rng, int n, const Limits& limits = {});

/// One candidate: half the time a poset-derived space, otherwise a random
/// space with a random, repaired or hull-closed family.
Instance random_instance(std::mt19937_64& rng, int max_n, const Limits& limits = {});

/// Runs the checks of one target; rule ids are prefixed with the target
/// name.
Report check_target(const Instance& inst, Target t, std::mt19937_64& rng, const MinerConfig& cfg);

/// Greedily drops family members, then points, while the space stays valid
/// and `fails` still holds.
FGCSpacePtr shrink(const FGCSpacePtr& x, const std::function<bool(const FGCSpacePtr&)>& fails,
                   const Limits& limits = {});

struct Finding {
    std::size_t instance = 0;
    std::string origin;
    Target target = Target::GcsAxioms;
    Violation violation;
    FGCSpacePtr shrunk;
};

struct MinerCounts {
    std::size_t generated = 0;
    std::size_t valid = 0;
    std::size_t poset_derived = 0;
    std::size_t locally_consistent = 0;
    std::size_t consistent = 0;
    std::size_t regular_max = 0;
    std::size_t oracle_skipped = 0;
    std::size_t checks = 0;
};

struct MinerReport {
    MinerConfig config;
    MinerCounts counts;
    std::vector<Finding> findings;
    std::vector<std::string> notes;

    bool ok() const noexcept { return findings.empty(); }
};

MinerReport run_miner(const MinerConfig& cfg);

}  // namespace fgc
