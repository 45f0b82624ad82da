#include "rsb/average.hpp"
#include "rsb/evaluation.hpp"

#include "test_models.hpp"

#include <doctest.h>

#include <cmath>

using namespace rsb;

namespace {

double exhaustive_gain(const MdpModel& m, double gamma) {
    const std::size_t count = rule_count(m, 100000);
    double best = average_value_of_rule(m, rule_from_index(m, 0), gamma);
    for (std::size_t i = 1; i < count; ++i) {
        const double v = average_value_of_rule(m, rule_from_index(m, i), gamma);
        if (improves(m.direction(), v, best)) best = v;
    }
    return best;
}

}  // namespace

TEST_CASE("average: gain equals the best stationary rule on random models") {
    for (std::uint64_t seed = 100; seed < 108; ++seed) {
        const Direction dir = seed % 2 ? Direction::maximize : Direction::minimize;
        const MdpModel m = testing::random_model(seed, 3, 3, dir, 0.02);
        for (double g : {-1.5, 0.0, 0.8}) {
            INFO("seed " << seed << " gamma " << g);
            const AverageSolution s = solve_average(m, g, 1e-11);
            CHECK(std::abs(s.lambda - exhaustive_gain(m, g)) <= 1e-8);
            CHECK(std::abs(average_value_of_rule(m, s.rule, g) - s.lambda) <= 1e-8);
        }
    }
}

TEST_CASE("average: residual holds under independent re-application") {
    const MdpModel m = testing::random_model(7, 5, 2, Direction::minimize);
    const AverageSolution s = solve_rs_average(m, 2.0, 1e-11);
    CHECK(s.bias[s.reference_state] == 0.0);
    const Vector tw = average_bellman_operator(m, 2.0, s.bias);
    double residual = 0.0;
    for (std::size_t x = 0; x < tw.size(); ++x)
        residual = std::max(residual, std::abs(tw[x] - s.bias[x] - s.lambda));
    CHECK(residual <= s.residual + 1e-12);
    CHECK(residual <= 1e-10);
}

TEST_CASE("average: reference state changes the bias by a constant only") {
    const MdpModel m = testing::random_model(8, 4, 3, Direction::maximize);
    const AverageSolution a = solve_rs_average(m, -1.0, 1e-11, 0);
    const AverageSolution b = solve_rs_average(m, -1.0, 1e-11, 2);
    CHECK(a.lambda == doctest::Approx(b.lambda).epsilon(1e-10));
    CHECK(b.bias[2] == 0.0);
    const double shift = a.bias[2];
    for (std::size_t x = 0; x < 4; ++x) CHECK(std::abs(a.bias[x] - shift - b.bias[x]) <= 1e-8);
}

TEST_CASE("average: periodic example converges in both directions") {
    const MdpModel m = build_jaquette_example(0.0);
    const AverageSolution lo = solve_rs_average(m, 1.0, 1e-11);
    CHECK(std::abs(lo.lambda - testing::example_average(true, 1.0)) <= 1e-9);
    CHECK(lo.rule[0] == 1);
    const AverageSolution hi = solve_rs_average(m.with_direction(Direction::maximize), 1.0, 1e-11);
    CHECK(std::abs(hi.lambda - testing::example_average(false, 1.0)) <= 1e-9);
    CHECK(hi.rule[0] == 0);
    const AverageSolution rn = solve_rn_average(m, 1e-11);
    CHECK(std::abs(rn.lambda - 0.9) <= 1e-9);
}

TEST_CASE("average: optimal rule set follows the gap sign") {
    const MdpModel m = build_jaquette_example(0.0);
    // g(3) > 0: every rule playing action 0 at state 0 is optimal.
    const auto at3 = optimal_rule_set(m, 3.0, 1e-8);
    REQUIRE(at3.size() == 4);
    for (const auto& u : at3) CHECK(u[0] == 0);
    CHECK(at3.front() == DecisionRule({0, 0, 0}));
    // g(1) < 0: the other four.
    const auto at1 = optimal_rule_set(m, 1.0, 1e-8);
    REQUIRE(at1.size() == 4);
    for (const auto& u : at1) CHECK(u[0] == 1);
    CHECK(is_average_optimal(m, 1.0, testing::kU1, 1e-8));
    CHECK_FALSE(is_average_optimal(m, 1.0, testing::kU0, 1e-8));
}

TEST_CASE("average: iteration cap and argument checks") {
    const MdpModel m = testing::random_model(1, 4, 2, Direction::minimize);
    CHECK_THROWS_AS(solve_rs_average(m, 1.0, 1e-12, 0, AverageOptions{2}), ConvergenceError);
    CHECK_THROWS_AS(solve_rs_average(m, 0.0, 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(solve_rs_average(m, 1.0, 1e-10, 4), std::invalid_argument);
}
