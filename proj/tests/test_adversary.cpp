#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "adversary/adversary.hpp"
#include "ompc/enumeration_oracle.hpp"
#include "util/rng.hpp"

TEST_CASE("binary tree layout and counts for m=4, d=2") {
    auto run = adversary::generate(4, 2, 1);
    const auto& inst = run.instance;
    CHECK(inst.numEdges() == 6);
    CHECK(inst.numVariables() == 12);
    CHECK(inst.coveringFrequency() == 1);

    auto sys = inst.packingSystem();
    CHECK(sys.m == 4);

    // Root path of every leaf has log2(m) = 2 edges, so each leaf row
    // carries unit coefficients from 2 edges * d variables.
    for (int leaf = 0; leaf < 4; ++leaf) {
        int rows = 0;
        for (ompc::VarId id = 0; id < inst.numVariables(); ++id)
            for (auto [row, c] : sys.columnOf(id))
                if (row == leaf) {
                    CHECK(c == 1.0);
                    ++rows;
                }
        CHECK(rows == 2 * 2);
    }

    // 2 path nodes, log2(d) = 1 constraint each.
    CHECK(run.constraints.size() == 2);
    CHECK(run.offPathSurvivors.size() == 2);
    for (const auto& c : run.constraints) CHECK(c.coeffs.size() == 2 * 2);  // d + d active
}

TEST_CASE("constraint supports halve round by round") {
    auto run = adversary::generate(16, 16, 9);
    // 4 path nodes, 4 rounds each; support = |A_on| + |A_off| halving from 2d.
    REQUIRE(run.constraints.size() == 16);
    for (int node = 0; node < 4; ++node)
        for (int round = 0; round < 4; ++round)
            CHECK(run.constraints[node * 4 + round].coeffs.size() ==
                  static_cast<std::size_t>(32 >> round));
}

TEST_CASE("generate validates its arguments") {
    CHECK_THROWS_AS(adversary::generate(3, 2, 0), ompc::InstanceError);
    CHECK_THROWS_AS(adversary::generate(4, 5, 0), ompc::InstanceError);
    CHECK_THROWS_AS(adversary::generate(1, 2, 0), ompc::InstanceError);
}

TEST_CASE("offline certificate covers all constraints with alpha = 1") {
    for (int trial = 0; trial < 20; ++trial) {
        auto run = adversary::generate(8, 4, util::trialSeed(3, trial));
        auto cert = adversary::offlineOpt(run);  // validates internally
        CHECK(cert.ones.size() == 3);            // one survivor per path node
        // Survivors sit on off-path edges: distinct edges.
        std::set<int> edges;
        for (ompc::VarId id : cert.ones) edges.insert(run.instance.edgeOf(id));
        CHECK(edges.size() == 3);
    }
}

TEST_CASE("determinism: same seed, same run") {
    auto a = adversary::generate(8, 8, 777);
    auto b = adversary::generate(8, 8, 777);
    CHECK(a.leaf == b.leaf);
    CHECK(a.offPathSurvivors == b.offPathSurvivors);
    REQUIRE(a.constraints.size() == b.constraints.size());
    for (std::size_t i = 0; i < a.constraints.size(); ++i)
        CHECK(a.constraints[i].coeffs == b.constraints[i].coeffs);
}

TEST_CASE("evaluate reports violations between the theoretical bounds") {
    auto stats = adversary::evaluateDefault(8, 8, 40, 2024);
    CHECK(stats.trials == 40);
    CHECK(stats.perTrial.size() == 40);
    CHECK(stats.lowerBound == doctest::Approx(0.25 * 2 * 3));
    CHECK(stats.upperBound ==
          doctest::Approx(3.0 * std::log(2.0 * 8) / std::log(1.5)));
    CHECK(stats.meanMaxViolation >= stats.minMaxViolation);
    CHECK(stats.maxMaxViolation <= stats.upperBound + 1e-9);
    CHECK(stats.p50 <= stats.p90 + 1e-12);
    // The stream forces load despite the alpha=1 certificate.
    CHECK(stats.meanMaxViolation > 1.0);
}
