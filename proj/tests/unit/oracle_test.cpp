#include "rsb/evaluation.hpp"
#include "rsb/oracle.hpp"

#include "test_models.hpp"

#include <doctest.h>

#include <cmath>

using namespace rsb;

TEST_CASE("oracle: trajectories partition probability one") {
    const MdpModel m = build_jaquette_example(0.05);
    const MarkovPlan plan{{testing::kU1}, testing::kU0};
    double total = 0.0;
    std::size_t count = 0;
    oracle::for_each_trajectory(m, plan, 0, 0.5, 3, [&](const oracle::Trajectory& t) {
        total += t.probability;
        ++count;
        CHECK(t.states.size() == 4);
        CHECK(t.actions.size() == 3);
    });
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(count == 27);
}

TEST_CASE("oracle: payoff of a hand-checked path") {
    const MdpModel m = build_jaquette_example(0.0);
    bool seen = false;
    oracle::for_each_trajectory(m, MarkovPlan::stationary(testing::kU1), 0, 0.5, 2,
                                [&](const oracle::Trajectory& t) {
                                    if (t.states == std::vector<std::size_t>{0, 2, 0}) {
                                        seen = true;
                                        CHECK(t.payoff == 1.0 + 0.5 * 8.0);
                                        CHECK(t.probability == doctest::Approx(0.1));
                                    }
                                });
    CHECK(seen);
}

TEST_CASE("oracle: plan value agrees with the step-wise evaluator") {
    for (std::uint64_t seed = 20; seed < 24; ++seed) {
        const MdpModel m = testing::random_model(seed, 3, 2, Direction::maximize, 0.0);
        const MarkovPlan plan{{rule_from_index(m, seed % 8), rule_from_index(m, 3)},
                              rule_from_index(m, 5)};
        for (double g : {-4.0, 0.0, 2.5}) {
            const Vector a = oracle::enumerate_value(m, plan, g, 0.7, 4);
            const Vector b = evaluate_plan_finite(m, plan, g, 0.7, 4);
            for (std::size_t x = 0; x < 3; ++x) CHECK(std::abs(a[x] - b[x]) <= 1e-12);
        }
    }
}

TEST_CASE("oracle: optimum dominates sampled plans") {
    const MdpModel m = build_jaquette_example(0.05);
    const oracle::OptimalPlan best = oracle::enumerate_optimal(m, 1.0, 0.9, 3);
    for (std::size_t i = 0; i < 8; ++i) {
        const Vector v = oracle::enumerate_value(m, MarkovPlan::stationary(rule_from_index(m, i)),
                                                 1.0, 0.9, 3);
        for (std::size_t x = 0; x < 3; ++x) CHECK(v[x] >= best.values[x] - 1e-12);
    }
    const Vector own = oracle::enumerate_value(m, best.plan, 1.0, 0.9, 3);
    for (std::size_t x = 0; x < 3; ++x) CHECK(std::abs(own[x] - best.values[x]) <= 1e-12);
}

TEST_CASE("oracle: enumeration caps") {
    const MdpModel m = build_jaquette_example(0.05);
    CHECK_THROWS_AS(oracle::enumerate_value(m, MarkovPlan::stationary(testing::kU0), 1.0, 0.9, 5, 100),
                    CapacityError);
    CHECK_THROWS_AS(oracle::enumerate_optimal(m, 1.0, 0.9, 8), CapacityError);
}
