#include "rsb/evaluation.hpp"

#include "test_models.hpp"

#include <doctest.h>

#include <cmath>

using namespace rsb;
using testing::kU0;
using testing::kU1;

namespace {

/// (I - beta P_u)^{-1} c_u by Gauss-Jordan elimination; risk-neutral oracle.
Vector linear_discounted(const MdpModel& m, const DecisionRule& u, double beta) {
    const std::size_t n = m.state_count();
    const Matrix p = rule_transition_matrix(m, u);
    const Vector c = rule_stage_vector(m, u);
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = (i == j ? 1.0 : 0.0) - beta * p(i, j);
        a[i][n] = c[i];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (std::size_t k = col; k <= n; ++k) a[r][k] -= f * a[col][k];
        }
    }
    Vector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i][n] / a[i][i];
    return out;
}

}  // namespace

TEST_CASE("evaluation: stationary distribution of the periodic example") {
    const MdpModel m = build_jaquette_example(0.0);
    const Vector mu0 = stationary_distribution(m, kU0);
    CHECK(mu0[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(mu0[1] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(mu0[2] == doctest::Approx(0.25).epsilon(1e-14));
    const Vector mu1 = stationary_distribution(m, kU1);
    CHECK(mu1[1] == doctest::Approx(0.45).epsilon(1e-14));
    CHECK(mu1[2] == doctest::Approx(0.05).epsilon(1e-14));
}

TEST_CASE("evaluation: two recurrent classes are reported") {
    Matrix id(2, 2);
    id(0, 0) = id(1, 1) = 1.0;
    const MdpModel m({id}, Matrix(2, 1, 1.0), Direction::minimize);
    CHECK_THROWS_AS(stationary_distribution(m, DecisionRule({0, 0})), ModelError);
    CHECK_THROWS_AS(average_value_of_rule(m, DecisionRule({0, 0}), 0.0), ModelError);
}

TEST_CASE("evaluation: example averages match the closed forms") {
    const MdpModel m = build_jaquette_example(0.0);
    CHECK(std::abs(average_value_of_rule(m, kU0, 0.0) - 2.0) <= 1e-10);
    CHECK(std::abs(average_value_of_rule(m, kU1, 0.0) - 0.9) <= 1e-10);
    for (double g : {-5.0, -2.0, -0.579, -0.1, 0.01, 0.5, 1.0, 1.6, 3.0, 5.0}) {
        INFO("gamma = " << g);
        CHECK(std::abs(average_value_of_rule(m, kU0, g) - testing::example_average(false, g)) <=
              1e-10);
        CHECK(std::abs(average_value_of_rule(m, kU1, g) - testing::example_average(true, g)) <=
              1e-10);
    }
}

TEST_CASE("evaluation: average criterion is continuous at gamma = 0") {
    const MdpModel m = build_jaquette_example(0.0);
    for (double g : {1e-9, -1e-9}) {
        CHECK(std::abs(average_value_of_rule(m, kU0, g) - 2.0) <= 1e-6);
        CHECK(std::abs(average_value_of_rule(m, kU1, g) - 0.9) <= 1e-6);
    }
}

TEST_CASE("evaluation: average criterion is monotone in gamma") {
    const MdpModel m = testing::random_model(5, 4, 2, Direction::minimize);
    const DecisionRule u({1, 0, 1, 1});
    double prev = average_value_of_rule(m, u, -4.0);
    for (double g = -3.5; g <= 4.0; g += 0.5) {
        const double cur = average_value_of_rule(m, u, g);
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
}

TEST_CASE("evaluation: risk-neutral discounted equals the linear solve") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const MdpModel m = testing::random_model(seed, 4, 3, Direction::maximize);
        const DecisionRule u({2, 0, 1, 1});
        const Vector expected = linear_discounted(m, u, 0.9);
        const Vector got = evaluate_discounted(m, MarkovPlan::stationary(u), 0.0, 0.9, 1e-10);
        for (std::size_t x = 0; x < 4; ++x) CHECK(std::abs(got[x] - expected[x]) <= 1e-9);
    }
}

TEST_CASE("evaluation: discounted criterion translates with the stage") {
    const MdpModel m = build_jaquette_example(0.05);
    const double beta = 0.8, k = 3.0;
    const MarkovPlan plan{{kU1, kU0}, kU1};
    for (double g : {-2.0, 1.5}) {
        const Vector base = evaluate_discounted(m, plan, g, beta, 1e-11);
        const Vector moved = evaluate_discounted(m.with_stage_shift(k), plan, g, beta, 1e-11);
        for (std::size_t x = 0; x < 3; ++x)
            CHECK(moved[x] - base[x] == doctest::Approx(k / (1.0 - beta)).epsilon(1e-9));
    }
}

TEST_CASE("evaluation: finite horizon of one step is the stage value") {
    const MdpModel m = build_jaquette_example(0.01);
    const Vector v = evaluate_plan_finite(m, MarkovPlan::stationary(kU1), 2.0, 0.5, 1);
    CHECK(v == Vector{1.0, 0.0, 8.0});
    CHECK(evaluate_plan_finite(m, MarkovPlan::stationary(kU1), 2.0, 0.5, 0) == Vector(3, 0.0));
}
