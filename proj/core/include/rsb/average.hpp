#pragma once

#include "rsb/model.hpp"

#include <cstddef>
#include <vector>

namespace rsb {

struct AverageOptions {
    std::size_t max_iterations = 1'000'000;
};

/// Gain/bias pair of the average optimality equation.
struct AverageSolution {
    double gamma = 0.0;
    /// Optimal long-run gain.
    double lambda = 0.0;
    /// Bias vector, zero at the reference state.
    Vector bias;
    std::size_t reference_state = 0;
    DecisionRule rule;
    /// max_x |T bias(x) - bias(x) - lambda|.
    double residual = 0.0;
    std::size_t iterations = 0;
};

/// Average Bellman operator T w(x) = opt_a [c(x, a) + CE_gamma(P^a(x, .), w)].
/// gamma == 0 gives the linear operator. `rule`, if given, receives the
/// optimiser with lowest-index tie-breaking.
Vector average_bellman_operator(const MdpModel& model, double gamma, const Vector& w,
                                DecisionRule* rule = nullptr);

/// Relative value iteration for the risk-sensitive average criterion (gamma != 0).
///
/// Each sweep mixes T w with w + lambda_k in the entropic sense, an
/// aperiodicity transform with the same fixed points as T, and re-centres
/// at the reference state. Stops when span(T w - w) <= tol; lambda is the
/// midpoint of the final increment. Throws ConvergenceError at the cap.
AverageSolution solve_rs_average(const MdpModel& model, double gamma, double tol,
                                 std::size_t reference_state = 0,
                                 const AverageOptions& options = {});

/// Risk-neutral counterpart of solve_rs_average.
AverageSolution solve_rn_average(const MdpModel& model, double tol,
                                 std::size_t reference_state = 0,
                                 const AverageOptions& options = {});

/// Dispatches to solve_rs_average or solve_rn_average.
AverageSolution solve_average(const MdpModel& model, double gamma, double tol,
                              std::size_t reference_state = 0,
                              const AverageOptions& options = {});

/// Default solver tolerance used by the optimality tests below.
inline constexpr double kAverageSolverTol = 1e-11;

/// True iff the rule's own average value is within `slack` of the optimal gain
/// in the model's optimisation direction.
bool is_average_optimal(const MdpModel& model, double gamma, const DecisionRule& rule,
                        double slack);

/// Same test against a precomputed optimal gain.
bool is_average_optimal(const MdpModel& model, double gamma, const DecisionRule& rule,
                        double slack, double optimal_gain);

/// Every stationary rule passing is_average_optimal, in lexicographic order.
/// Throws CapacityError when |U|^|E| exceeds `cap`.
std::vector<DecisionRule> optimal_rule_set(const MdpModel& model, double gamma, double slack,
                                           std::size_t cap = 1'000'000);

}  // namespace rsb
