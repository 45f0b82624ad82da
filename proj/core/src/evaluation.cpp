#include "rsb/evaluation.hpp"

#include "detail.hpp"
#include "rsb/discounted.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rsb {

namespace {

/// Solves A x = b in place by Gaussian elimination with partial pivoting.
/// Returns false when a pivot falls below `pivot_floor`.
bool gauss_solve(Matrix a, Vector& b, double pivot_floor) {
    const std::size_t n = a.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (std::abs(a(pivot, col)) <= pivot_floor) return false;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
            b[r] -= f * b[col];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a(i, c) * b[c];
        b[i] = s / a(i, i);
    }
    return true;
}

double perron_average(const MdpModel& model, const DecisionRule& rule, double gamma,
                      const PerronOptions& options) {
    const Matrix p = rule_transition_matrix(model, rule);
    const Vector c = rule_stage_vector(model, rule);
    const std::size_t n = c.size();

    // Rescale so that every twist factor lies in (0, 1].
    const double ref = gamma > 0.0 ? *std::max_element(c.begin(), c.end())
                                   : *std::min_element(c.begin(), c.end());
    Vector twist(n);
    for (std::size_t x = 0; x < n; ++x) twist[x] = std::exp(gamma * (c[x] - ref));

    Vector h(n, 1.0);
    Vector qh(n);
    const double target = 1e-13 * std::min(1.0, std::abs(gamma));
    double best_spread = std::numeric_limits<double>::infinity();
    std::size_t since_improvement = 0;

    for (std::size_t it = 0; it < options.max_iterations; ++it) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            double s = 0.0;
            for (std::size_t y = 0; y < n; ++y) s += p(x, y) * h[y];
            qh[x] = twist[x] * s;
            const double r = qh[x] / h[x];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }

        if (lo > 0.0) {
            const double spread = std::log(hi / lo);
            if (spread <= target) return ref + 0.5 * (std::log(lo) + std::log(hi)) / gamma;
            if (spread < best_spread) {
                best_spread = spread;
                since_improvement = 0;
            } else if (++since_improvement >= 200 && best_spread <= 1e-9) {
                // Bracket has hit the rounding floor.
                return ref + 0.5 * (std::log(lo) + std::log(hi)) / gamma;
            }
        }

        // Shift by the current root estimate: removes the periodic part of the
        // spectrum without moving the eigenvector.
        const double shift = lo > 0.0 ? std::sqrt(lo * hi) : hi;
        double top = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            h[x] = qh[x] + shift * h[x];
            top = std::max(top, h[x]);
        }
        for (double& v : h) v /= top;
    }
    throw ConvergenceError("Perron iteration did not converge for rule [" + to_string(rule) +
                           "]");
}

void check_discount(double beta) {
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("discount must lie in (0, 1)");
}

}  // namespace

Vector stationary_distribution(const MdpModel& model, const DecisionRule& rule) {
    require_solvable(model);
    const Matrix p = rule_transition_matrix(model, rule);
    const std::size_t n = p.rows();

    // Rows 0..n-2 of (P - I)^T, last row replaced by the normalisation.
    Matrix a(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = p(j, i) - (i == j ? 1.0 : 0.0);
    for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = 1.0;
    Vector mu(n, 0.0);
    mu[n - 1] = 1.0;

    if (!gauss_solve(a, mu, 1e-12)) {
        throw ModelError("chain under rule [" + to_string(rule) +
                         "] has no unique invariant distribution");
    }
    for (double& m : mu) m = std::max(m, 0.0);

    double residual = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
        double s = -mu[y];
        for (std::size_t x = 0; x < n; ++x) s += mu[x] * p(x, y);
        residual = std::max(residual, std::abs(s));
    }
    if (residual > 1e-12) {
        throw ModelError("invariant distribution for rule [" + to_string(rule) +
                         "] has residual above 1e-12");
    }
    return mu;
}

double average_value_of_rule(const MdpModel& model, const DecisionRule& rule, double gamma,
                             const PerronOptions& options) {
    if (!std::isfinite(gamma)) throw std::invalid_argument("risk parameter is not finite");
    if (gamma != 0.0) {
        require_solvable(model);
        return perron_average(model, rule, gamma, options);
    }
    const Vector mu = stationary_distribution(model, rule);
    const Vector c = rule_stage_vector(model, rule);
    double value = 0.0;
    for (std::size_t x = 0; x < c.size(); ++x) value += mu[x] * c[x];
    return value;
}

Vector evaluate_plan_finite(const MdpModel& model, const MarkovPlan& plan, double gamma,
                            double beta, std::size_t horizon) {
    check_discount(beta);
    require_solvable(model);
    model.check_rule(plan.tail);
    for (const auto& r : plan.prefix) model.check_rule(r);

    Vector next(model.state_count(), 0.0);
    Vector cur(model.state_count());
    for (std::size_t level = horizon; level-- > 0;) {
        detail::rule_step(model, plan.at(level), detail::grid_gamma(gamma, beta, level + 1),
                          beta, next, cur);
        std::swap(next, cur);
    }
    return next;
}

Vector evaluate_discounted(const MdpModel& model, const MarkovPlan& plan, double gamma,
                           double beta, double tol) {
    check_discount(beta);
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    require_solvable(model);
    model.check_rule(plan.tail);
    for (const auto& r : plan.prefix) model.check_rule(r);

    // Any seed in [min c, max c] / (1 - beta) is within span / (1 - beta) of
    // the true tail value; the midpoint halves that.
    const double span = model.stage_span();
    const std::size_t horizon =
        std::max(horizon_for_tolerance(beta, 0.5 * span, tol), plan.prefix.size());
    Vector next(model.state_count(),
                0.5 * (model.stage_min() + model.stage_max()) / (1.0 - beta));
    Vector cur(model.state_count());
    for (std::size_t level = horizon; level-- > 0;) {
        detail::rule_step(model, plan.at(level), detail::grid_gamma(gamma, beta, level + 1),
                          beta, next, cur);
        std::swap(next, cur);
    }
    return next;
}

}  // namespace rsb
