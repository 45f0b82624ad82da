#pragma once

#include "rsb/model.hpp"

#include <cstddef>

namespace rsb {

/// Invariant distribution of the chain under `rule`, by a direct linear solve
/// of mu^T (P - I) = 0 with the normalisation sum(mu) = 1. Works for periodic
/// chains. Throws ModelError when the system is singular (more than one
/// recurrent class) or the residual exceeds 1e-12.
Vector stationary_distribution(const MdpModel& model, const DecisionRule& rule);

struct PerronOptions {
    std::size_t max_iterations = 1'000'000;
};

/// Long-run average criterion of a stationary rule.
///
/// For gamma != 0 this is (1/gamma) ln rho(Q) with Q(x, y) = exp(gamma c(x, u(x))) P(x, y),
/// found by shifted power iteration with Collatz-Wielandt bracketing. For
/// gamma == 0 it is the stationary mean of the stage values.
/// Throws ConvergenceError if the iteration cap is hit.
double average_value_of_rule(const MdpModel& model, const DecisionRule& rule, double gamma,
                             const PerronOptions& options = {});

/// Discounted criterion of a Markov plan from every start state, truncated at
/// a horizon chosen so that the result is within `tol` of the infinite sum.
Vector evaluate_discounted(const MdpModel& model, const MarkovPlan& plan, double gamma,
                           double beta, double tol);

/// Discounted criterion of a plan over exactly `horizon` steps (stage payoffs
/// at steps 0 .. horizon-1, nothing afterwards).
Vector evaluate_plan_finite(const MdpModel& model, const MarkovPlan& plan, double gamma,
                            double beta, std::size_t horizon);

}  // namespace rsb
