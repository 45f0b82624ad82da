#pragma once

#include "rsb/entropic.hpp"
#include "rsb/model.hpp"

#include <cmath>
#include <cstddef>

namespace rsb::detail {

/// Risk level gamma * beta^n on the discounted grid.
inline double grid_gamma(double gamma, double beta, std::size_t n) {
    return gamma == 0.0 ? 0.0 : gamma * std::pow(beta, static_cast<double>(n));
}

/// One backward step under a fixed rule:
/// out(x) = c(x, u(x)) + beta * CE_{gamma_next}(P^{u(x)}(x, .), next).
inline void rule_step(const MdpModel& model, const DecisionRule& rule, double gamma_next,
                      double beta, const Vector& next, Vector& out) {
    for (std::size_t x = 0; x < model.state_count(); ++x) {
        const std::size_t a = rule[x];
        out[x] = model.stage(x, a) +
                 beta * entropic_ce_unchecked(gamma_next, model.transition(x, a), next);
    }
}

/// One backward step optimising over actions with lowest-index tie-breaking.
inline void optimal_step(const MdpModel& model, double gamma_next, double beta,
                         const Vector& next, Vector& out, DecisionRule& rule) {
    const Direction dir = model.direction();
    for (std::size_t x = 0; x < model.state_count(); ++x) {
        std::size_t best_action = 0;
        double best = 0.0;
        for (std::size_t a = 0; a < model.action_count(); ++a) {
            const double q = model.stage(x, a) +
                             beta * entropic_ce_unchecked(gamma_next, model.transition(x, a), next);
            if (a == 0 || improves(dir, q, best)) {
                best = q;
                best_action = a;
            }
        }
        out[x] = best;
        rule.action_of[x] = best_action;
    }
}

}  // namespace rsb::detail
