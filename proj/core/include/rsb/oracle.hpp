#pragma once

#include "rsb/model.hpp"

#include <cstddef>
#include <functional>

namespace rsb::oracle {

/// Brute-force ground truth for small instances. Nothing in this namespace
/// uses the optimising recursions or the certainty-equivalent operator.
/// enumerate_value sums over sample paths; enumerate_optimal walks every
/// Markov plan and evaluates it through the step-wise factorisation of the
/// path sum E exp(gamma * payoff), carried in log space.

struct Trajectory {
    /// x_0 .. x_H
    std::vector<std::size_t> states;
    /// a_0 .. a_{H-1}
    std::vector<std::size_t> actions;
    double probability = 1.0;
    /// sum_i beta^i c(x_i, a_i)
    double payoff = 0.0;
};

inline constexpr std::size_t kTrajectoryCap = 10'000'000;
inline constexpr std::size_t kPlanCap = 1'000'000;

/// Visits every positive-probability path of length `horizon` from `start`
/// under `plan`. Throws CapacityError if state_count^horizon exceeds `cap`.
void for_each_trajectory(const MdpModel& model, const MarkovPlan& plan, std::size_t start,
                         double beta, std::size_t horizon,
                         const std::function<void(const Trajectory&)>& visit,
                         std::size_t cap = kTrajectoryCap);

/// Exact finite-horizon discounted criterion of `plan` from every start state:
/// (1/gamma) ln sum_paths p exp(gamma payoff), or the mean payoff at gamma == 0.
Vector enumerate_value(const MdpModel& model, const MarkovPlan& plan, double gamma, double beta,
                       std::size_t horizon, std::size_t cap = kTrajectoryCap);

struct OptimalPlan {
    Vector values;
    /// Horizon-length prefix; tail repeats the last rule.
    MarkovPlan plan;
};

/// Best value over all horizon-length Markov plans, per start state, in the
/// model's direction. The returned plan is the lexicographically smallest one
/// attaining the optimum from every start state. Throws CapacityError when
/// (|U|^|E|)^horizon exceeds `cap`.
OptimalPlan enumerate_optimal(const MdpModel& model, double gamma, double beta,
                              std::size_t horizon, std::size_t cap = kPlanCap);

}  // namespace rsb::oracle
