#include "rsb/discounted.hpp"

#include "detail.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rsb {

namespace {

void check_discount(double beta) {
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("discount must lie in (0, 1)");
}

double sup_distance(const Vector& a, const Vector& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace

std::size_t horizon_for_tolerance(double beta, double stage_span, double tol) {
    check_discount(beta);
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (!(stage_span >= 0.0)) throw std::invalid_argument("stage span must be nonnegative");

    double bound = stage_span / (1.0 - beta);
    if (bound < tol) return 0;
    // Closed-form guess, then walk to the exact smallest N.
    auto n = static_cast<std::size_t>(
        std::max(0.0, std::floor(std::log(tol * (1.0 - beta) / stage_span) / std::log(beta))));
    auto bound_at = [&](std::size_t k) {
        return stage_span * std::pow(beta, static_cast<double>(k)) / (1.0 - beta);
    };
    while (n > 0 && bound_at(n - 1) < tol) --n;
    while (!(bound_at(n) < tol)) ++n;
    return n;
}

RiskNeutralDiscounted solve_rn_discounted(const MdpModel& model, double beta, double tol) {
    check_discount(beta);
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    require_solvable(model);

    const std::size_t n = model.state_count();
    const double stop = tol * (1.0 - beta) / (2.0 * beta);
    RiskNeutralDiscounted out;
    out.rule = DecisionRule::constant(n, 0);
    Vector v(n, 0.0);
    Vector next(n);
    for (;;) {
        detail::optimal_step(model, 0.0, beta, v, next, out.rule);
        ++out.iterations;
        const double step = sup_distance(next, v);
        std::swap(v, next);
        if (step <= stop) break;
    }
    // Greedy rule for the returned values.
    detail::optimal_step(model, 0.0, beta, v, next, out.rule);
    out.values = std::move(v);
    return out;
}

Vector discounted_bellman_step(const MdpModel& model, double gamma, double beta,
                               std::size_t level, const Vector& next, DecisionRule* rule) {
    Vector out(model.state_count());
    DecisionRule scratch = DecisionRule::constant(model.state_count(), 0);
    detail::optimal_step(model, detail::grid_gamma(gamma, beta, level + 1), beta, next, out,
                         scratch);
    if (rule) *rule = std::move(scratch);
    return out;
}

namespace {

void run_backward(const MdpModel& model, DiscountedSolution& sol) {
    const std::size_t n = model.state_count();
    sol.rules.assign(sol.horizon, DecisionRule::constant(n, 0));
    for (std::size_t level = sol.horizon; level-- > 0;) {
        detail::optimal_step(model, detail::grid_gamma(sol.gamma, sol.beta, level + 1), sol.beta,
                             sol.values[level + 1], sol.values[level], sol.rules[level]);
    }
}

}  // namespace

DiscountedSolution solve_rs_discounted(const MdpModel& model, double gamma, double beta,
                                       double tol) {
    check_discount(beta);
    if (gamma == 0.0 || !std::isfinite(gamma)) {
        throw std::invalid_argument(
            "risk-sensitive solver needs a finite nonzero gamma; use solve_rn_discounted");
    }
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    require_solvable(model);

    DiscountedSolution sol;
    sol.gamma = gamma;
    sol.beta = beta;
    const double span = model.stage_span();
    sol.horizon = horizon_for_tolerance(beta, span, tol);
    sol.tail_error_bound = span * std::pow(beta, static_cast<double>(sol.horizon)) / (1.0 - beta);

    // The seed only needs to be within span / (1 - beta) of the true level-N
    // value, so a coarse risk-neutral solve is enough.
    RiskNeutralDiscounted rn = solve_rn_discounted(model, beta, std::max(tol, 1e-12));
    sol.tail_rule = rn.rule;
    sol.values.assign(sol.horizon + 1, Vector(model.state_count()));
    sol.values[sol.horizon] = std::move(rn.values);
    run_backward(model, sol);
    return sol;
}

DiscountedSolution solve_rs_finite_horizon(const MdpModel& model, double gamma, double beta,
                                           std::size_t horizon) {
    check_discount(beta);
    if (!std::isfinite(gamma)) throw std::invalid_argument("risk parameter is not finite");
    require_solvable(model);

    DiscountedSolution sol;
    sol.gamma = gamma;
    sol.beta = beta;
    sol.horizon = horizon;
    sol.values.assign(horizon + 1, Vector(model.state_count(), 0.0));
    run_backward(model, sol);
    sol.tail_rule =
        horizon > 0 ? sol.rules.back() : DecisionRule::constant(model.state_count(), 0);
    return sol;
}

}  // namespace rsb
