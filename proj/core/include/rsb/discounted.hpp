#pragma once

#include "rsb/model.hpp"

#include <cstddef>

namespace rsb {

/// Smallest N with stage_span * beta^N / (1 - beta) < tol.
std::size_t horizon_for_tolerance(double beta, double stage_span, double tol);

struct RiskNeutralDiscounted {
    Vector values;
    DecisionRule rule;
    std::size_t iterations = 0;
};

/// Value iteration for the risk-neutral discounted problem. Stops once the
/// sup-norm step is at most tol * (1 - beta) / (2 beta); the rule is greedy
/// for the final values with lowest-index tie-breaking.
RiskNeutralDiscounted solve_rn_discounted(const MdpModel& model, double beta, double tol);

/// Optimal values on the risk grid gamma_n = gamma * beta^n together with the
/// per-level optimisers.
struct DiscountedSolution {
    double gamma = 0.0;
    double beta = 0.0;
    /// values[n] is the optimal value at grid level n, n = 0 .. horizon.
    std::vector<Vector> values;
    /// rules[n] attains the optimum at level n, n = 0 .. horizon - 1.
    std::vector<DecisionRule> rules;
    DecisionRule tail_rule;
    std::size_t horizon = 0;
    double tail_error_bound = 0.0;

    /// The plan (rules[0], ..., rules[horizon - 1], tail_rule, tail_rule, ...).
    MarkovPlan plan() const { return {rules, tail_rule}; }
};

/// Risk-sensitive discounted solver.
///
/// Level `horizon` is seeded with the risk-neutral discounted value and the
/// recursion
///   w_n(x) = opt_a [ c(x, a) + (1 / gamma_n) ln sum_y exp(gamma_{n+1} w_{n+1}(y)) P^a(x, y) ]
/// is run back to level 0. The horizon comes from horizon_for_tolerance, so
/// values[0] is within tail_error_bound (< tol) of the infinite-grid value.
/// Throws std::invalid_argument for gamma == 0 or beta outside (0, 1).
DiscountedSolution solve_rs_discounted(const MdpModel& model, double gamma, double beta,
                                       double tol);

/// The same recursion over exactly `horizon` steps with a zero terminal value.
/// gamma == 0 is accepted. tail_rule is rules.back() (or the all-zero rule for
/// horizon 0) and tail_error_bound is 0.
DiscountedSolution solve_rs_finite_horizon(const MdpModel& model, double gamma, double beta,
                                           std::size_t horizon);

/// Applies the optimal one-step operator at level `level` of the risk grid
/// gamma * beta^n to `next` (the level + 1 values). Exposed for consistency checks.
Vector discounted_bellman_step(const MdpModel& model, double gamma, double beta,
                               std::size_t level, const Vector& next,
                               DecisionRule* rule = nullptr);

}  // namespace rsb
