#include "rsb/model.hpp"

#include "test_models.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace rsb;

TEST_CASE("model: dimension mismatches are rejected") {
    Matrix p(2, 2, 0.5);
    CHECK_THROWS_AS(MdpModel({p}, Matrix(3, 1), Direction::minimize), ModelError);
    CHECK_THROWS_AS(MdpModel({p, Matrix(2, 3)}, Matrix(2, 2), Direction::minimize), ModelError);
    CHECK_THROWS_AS(MdpModel({p}, Matrix(2, 2), Direction::minimize), ModelError);
    CHECK_NOTHROW(MdpModel({p}, Matrix(2, 1), Direction::minimize));
}

TEST_CASE("model: example builder reproduces the printed matrices") {
    const MdpModel m = build_jaquette_example(0.01);
    REQUIRE(m.state_count() == 3);
    REQUIRE(m.action_count() == 2);
    CHECK(m.direction() == Direction::minimize);
    CHECK(m.kernel(0)(0, 0) == doctest::Approx(0.02));
    CHECK(m.kernel(0)(0, 1) == doctest::Approx(0.49));
    CHECK(m.kernel(1)(0, 1) == doctest::Approx(0.89));
    CHECK(m.kernel(1)(0, 2) == doctest::Approx(0.09));
    CHECK(m.kernel(1)(2, 0) == doctest::Approx(0.98));
    CHECK(m.stage(0, 0) == 0.0);
    CHECK(m.stage(0, 1) == 1.0);
    CHECK(m.stage(1, 1) == 0.0);
    CHECK(m.stage(2, 0) == 8.0);
    CHECK_THROWS_AS(build_jaquette_example(0.1), std::invalid_argument);
    CHECK_THROWS_AS(build_jaquette_example(-0.01), std::invalid_argument);
}

TEST_CASE("model: validation reports margin and problems") {
    const ValidationReport zero = validate_model(build_jaquette_example(0.0));
    CHECK(zero.stochastic_ok);
    CHECK(zero.stage_finite);
    CHECK(zero.condition_c_margin == 0.0);
    CHECK_FALSE(zero.warnings.empty());

    const ValidationReport mixed = validate_model(build_jaquette_example(0.05));
    CHECK(mixed.condition_c_margin == doctest::Approx(0.05));
    CHECK(mixed.warnings.empty());

    Matrix p(2, 2, 0.5);
    p(1, 1) = 0.6;
    Matrix c(2, 1, 1.0);
    c(0, 0) = std::numeric_limits<double>::infinity();
    const MdpModel broken({p}, c, Direction::maximize);
    const ValidationReport bad = validate_model(broken);
    CHECK_FALSE(bad.stochastic_ok);
    CHECK_FALSE(bad.stage_finite);
    CHECK_THROWS_AS(require_solvable(broken), ModelError);
    CHECK_NOTHROW(require_solvable(build_jaquette_example(0.0)));
}

TEST_CASE("model: rule enumeration is lexicographic with state 0 first") {
    const MdpModel m = build_jaquette_example(0.0);
    CHECK(rule_count(m, 1000) == 8);
    CHECK(rule_count(m, 5) == 6);
    CHECK(rule_from_index(m, 0) == DecisionRule({0, 0, 0}));
    CHECK(rule_from_index(m, 1) == DecisionRule({0, 0, 1}));
    CHECK(rule_from_index(m, 4) == DecisionRule({1, 0, 0}));
    CHECK(rule_from_index(m, 7) == DecisionRule({1, 1, 1}));
    for (std::size_t i = 0; i + 1 < 8; ++i) CHECK(rule_from_index(m, i) < rule_from_index(m, i + 1));
}

TEST_CASE("model: rule helpers") {
    const MdpModel m = build_jaquette_example(0.0);
    const Matrix p = rule_transition_matrix(m, testing::kU1);
    CHECK(p(0, 1) == doctest::Approx(0.9));
    CHECK(p(1, 0) == 1.0);
    CHECK(rule_stage_vector(m, testing::kU1) == Vector{1.0, 0.0, 8.0});
    CHECK_THROWS_AS(m.check_rule(DecisionRule({0, 0})), ModelError);
    CHECK_THROWS_AS(m.check_rule(DecisionRule({0, 2, 0})), ModelError);
    CHECK(to_string(testing::kU1) == "1 0 0");
}

TEST_CASE("model: stage shift and direction copies") {
    const MdpModel m = build_jaquette_example(0.0);
    const MdpModel shifted = m.with_stage_shift(2.5);
    CHECK(shifted.stage(2, 1) == 10.5);
    CHECK(shifted.stage_min() == 2.5);
    CHECK(shifted.stage_span() == m.stage_span());
    CHECK(m.with_direction(Direction::maximize).direction() == Direction::maximize);
    CHECK(m.with_direction(Direction::minimize) == m);
}

TEST_CASE("model: plans") {
    MarkovPlan plan{{testing::kU0, testing::kU0}, testing::kU1};
    CHECK(plan.at(1) == testing::kU0);
    CHECK(plan.at(2) == testing::kU1);
    CHECK(plan.at(1000) == testing::kU1);
    CHECK(MarkovPlan::stationary(testing::kU0).at(0) == testing::kU0);
}
