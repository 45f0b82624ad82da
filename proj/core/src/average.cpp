#include "rsb/average.hpp"

#include "rsb/entropic.hpp"
#include "rsb/evaluation.hpp"
#include "rsb/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace rsb {

Vector average_bellman_operator(const MdpModel& model, double gamma, const Vector& w,
                                DecisionRule* rule) {
    const Direction dir = model.direction();
    Vector out(model.state_count());
    if (rule) *rule = DecisionRule::constant(model.state_count(), 0);
    for (std::size_t x = 0; x < model.state_count(); ++x) {
        double best = 0.0;
        std::size_t best_action = 0;
        for (std::size_t a = 0; a < model.action_count(); ++a) {
            const double q =
                model.stage(x, a) + entropic_ce_unchecked(gamma, model.transition(x, a), w);
            if (a == 0 || improves(dir, q, best)) {
                best = q;
                best_action = a;
            }
        }
        out[x] = best;
        if (rule) rule->action_of[x] = best_action;
    }
    return out;
}

namespace {

AverageSolution relative_value_iteration(const MdpModel& model, double gamma, double tol,
                                         std::size_t z, const AverageOptions& options) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (!std::isfinite(gamma)) throw std::invalid_argument("risk parameter is not finite");
    require_solvable(model);
    if (z >= model.state_count()) throw std::invalid_argument("reference state out of range");

    const std::size_t n = model.state_count();
    constexpr std::array<double, 2> half{0.5, 0.5};

    AverageSolution sol;
    sol.gamma = gamma;
    sol.reference_state = z;
    Vector w(n, 0.0);
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
        const Vector tw = average_bellman_operator(model, gamma, w, &sol.rule);
        double hi = tw[0] - w[0];
        double lo = hi;
        for (std::size_t x = 1; x < n; ++x) {
            hi = std::max(hi, tw[x] - w[x]);
            lo = std::min(lo, tw[x] - w[x]);
        }
        const double gain = 0.5 * (hi + lo);
        if (hi - lo <= tol) {
            sol.lambda = gain;
            sol.bias = std::move(w);
            sol.residual = 0.5 * (hi - lo);
            sol.iterations = it;
            return sol;
        }

        // Entropic mix of T w and w + gain: with h = exp(gamma w) this is the
        // lazy operator (max_a Q^a + e^{gamma gain} I) / 2, which breaks
        // periodicity and keeps the fixed point of T.
        Vector next(n);
        for (std::size_t x = 0; x < n; ++x) {
            const std::array<double, 2> pair{tw[x], w[x] + gain};
            next[x] = entropic_ce_unchecked(gamma, half, pair);
        }
        const double anchor = next[z];
        for (std::size_t x = 0; x < n; ++x) w[x] = next[x] - anchor;
    }
    throw ConvergenceError("relative value iteration did not reach span tolerance within " +
                           std::to_string(options.max_iterations) + " sweeps");
}

}  // namespace

AverageSolution solve_rs_average(const MdpModel& model, double gamma, double tol,
                                 std::size_t reference_state, const AverageOptions& options) {
    if (gamma == 0.0) {
        throw std::invalid_argument(
            "risk-sensitive average solver needs gamma != 0; use solve_rn_average");
    }
    return relative_value_iteration(model, gamma, tol, reference_state, options);
}

AverageSolution solve_rn_average(const MdpModel& model, double tol, std::size_t reference_state,
                                 const AverageOptions& options) {
    return relative_value_iteration(model, 0.0, tol, reference_state, options);
}

AverageSolution solve_average(const MdpModel& model, double gamma, double tol,
                              std::size_t reference_state, const AverageOptions& options) {
    return relative_value_iteration(model, gamma, tol, reference_state, options);
}

bool is_average_optimal(const MdpModel& model, double gamma, const DecisionRule& rule,
                        double slack, double optimal_gain) {
    const double value = average_value_of_rule(model, rule, gamma);
    return model.direction() == Direction::maximize ? value >= optimal_gain - slack
                                                    : value <= optimal_gain + slack;
}

bool is_average_optimal(const MdpModel& model, double gamma, const DecisionRule& rule,
                        double slack) {
    const double gain = solve_average(model, gamma, kAverageSolverTol).lambda;
    return is_average_optimal(model, gamma, rule, slack, gain);
}

std::vector<DecisionRule> optimal_rule_set(const MdpModel& model, double gamma, double slack,
                                           std::size_t cap) {
    const std::size_t count = rule_count(model, cap);
    if (count > cap) {
        throw CapacityError("rule enumeration exceeds cap of " + std::to_string(cap));
    }
    const double gain = solve_average(model, gamma, kAverageSolverTol).lambda;
    std::vector<char> keep(count, 0);
    parallel_for(count, [&](std::size_t i) {
        keep[i] = is_average_optimal(model, gamma, rule_from_index(model, i), slack, gain) ? 1 : 0;
    });
    std::vector<DecisionRule> out;
    for (std::size_t i = 0; i < count; ++i)
        if (keep[i]) out.push_back(rule_from_index(model, i));
    return out;
}

}  // namespace rsb
