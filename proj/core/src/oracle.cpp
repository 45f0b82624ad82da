#include "rsb/oracle.hpp"

#include "rsb/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rsb::oracle {

namespace {

std::size_t checked_power(std::size_t base, std::size_t exponent, std::size_t cap,
                          const char* what) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (base != 0 && count > cap / base) {
            throw CapacityError(std::string(what) + " exceeds cap of " + std::to_string(cap));
        }
        count *= base;
    }
    if (count > cap) throw CapacityError(std::string(what) + " exceeds cap of " + std::to_string(cap));
    return count;
}

/// Streaming (1/gamma) ln sum w_i exp(gamma s_i), rescaled whenever a new
/// maximum exponent appears.
class EntropicAccumulator {
public:
    explicit EntropicAccumulator(double gamma) : gamma_(gamma) {}

    void add(double weight, double payoff) {
        if (weight <= 0.0) return;
        if (gamma_ == 0.0) {
            mean_ += weight * payoff;
            return;
        }
        const double e = gamma_ * payoff;
        if (e > top_) {
            sum_ = sum_ * std::exp(top_ - e) + weight;
            top_ = e;
        } else {
            sum_ += weight * std::exp(e - top_);
        }
    }

    double result() const {
        if (gamma_ == 0.0) return mean_;
        return (top_ + std::log(sum_)) / gamma_;
    }

private:
    double gamma_;
    double top_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
    double mean_ = 0.0;
};

void check_inputs(const MdpModel& model, const MarkovPlan& plan, double beta) {
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("discount must lie in (0, 1)");
    model.check_rule(plan.tail);
    for (const auto& r : plan.prefix) model.check_rule(r);
}

/// Depth-first walk over x_1 .. x_{H-1}, charging the stage payoff at each
/// step. The last transition does not change the payoff, so it is not taken.
template <class Leaf>
void walk(const MdpModel& model, const MarkovPlan& plan, double beta, std::size_t horizon,
          std::vector<std::size_t>& states, double prob, double payoff, double discount,
          Leaf&& leaf) {
    const std::size_t step = states.size() - 1;
    const std::size_t x = states.back();
    const std::size_t a = plan.at(step)[x];
    const double pay = payoff + discount * model.stage(x, a);
    if (step + 1 == horizon) {
        leaf(prob, pay);
        return;
    }
    auto row = model.transition(x, a);
    for (std::size_t y = 0; y < row.size(); ++y) {
        if (row[y] <= 0.0) continue;
        states.push_back(y);
        walk(model, plan, beta, horizon, states, prob * row[y], pay, discount * beta, leaf);
        states.pop_back();
    }
}

double value_from(const MdpModel& model, const MarkovPlan& plan, double gamma, double beta,
                  std::size_t horizon, std::size_t start) {
    if (horizon == 0) return 0.0;
    EntropicAccumulator acc(gamma);
    std::vector<std::size_t> states{start};
    states.reserve(horizon + 1);
    walk(model, plan, beta, horizon, states, 1.0, 0.0, 1.0,
         [&](double prob, double payoff) { acc.add(prob, payoff); });
    return acc.result();
}

}  // namespace

void for_each_trajectory(const MdpModel& model, const MarkovPlan& plan, std::size_t start,
                         double beta, std::size_t horizon,
                         const std::function<void(const Trajectory&)>& visit, std::size_t cap) {
    check_inputs(model, plan, beta);
    checked_power(model.state_count(), horizon, cap, "trajectory enumeration");

    std::vector<std::size_t> states{start};
    auto emit = [&](double prob, double payoff) {
        Trajectory t;
        t.states = states;
        for (std::size_t i = 0; i < horizon; ++i) t.actions.push_back(plan.at(i)[states[i]]);
        t.probability = prob;
        t.payoff = payoff;
        visit(t);
    };
    if (horizon == 0) {
        emit(1.0, 0.0);
        return;
    }
    // Full paths x_0 .. x_H; the payoff is complete once step H-1 is charged.
    struct Walker {
        const MdpModel& model;
        const MarkovPlan& plan;
        double beta;
        std::size_t horizon;
        std::vector<std::size_t>& states;
        decltype(emit)& out;
        void operator()(double prob, double payoff, double discount) {
            const std::size_t step = states.size() - 1;
            if (step == horizon) {
                out(prob, payoff);
                return;
            }
            const std::size_t x = states.back();
            const std::size_t a = plan.at(step)[x];
            auto row = model.transition(x, a);
            for (std::size_t y = 0; y < row.size(); ++y) {
                if (row[y] <= 0.0) continue;
                states.push_back(y);
                (*this)(prob * row[y], payoff + discount * model.stage(x, a), discount * beta);
                states.pop_back();
            }
        }
    };
    Walker{model, plan, beta, horizon, states, emit}(1.0, 0.0, 1.0);
}

Vector enumerate_value(const MdpModel& model, const MarkovPlan& plan, double gamma, double beta,
                       std::size_t horizon, std::size_t cap) {
    check_inputs(model, plan, beta);
    checked_power(model.state_count(), horizon, cap, "trajectory enumeration");
    Vector out(model.state_count());
    for (std::size_t x = 0; x < out.size(); ++x)
        out[x] = value_from(model, plan, gamma, beta, horizon, x);
    return out;
}

OptimalPlan enumerate_optimal(const MdpModel& model, double gamma, double beta,
                              std::size_t horizon, std::size_t cap) {
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("discount must lie in (0, 1)");
    const std::size_t rules = rule_count(model, cap);
    if (rules > cap) throw CapacityError("plan enumeration exceeds cap of " + std::to_string(cap));
    const std::size_t plans = checked_power(rules, horizon, cap, "plan enumeration");
    const std::size_t n = model.state_count();

    // Plan index in mixed radix, step 0 most significant: lexicographic order.
    auto plan_at = [&](std::size_t index) {
        MarkovPlan plan;
        plan.prefix.resize(horizon);
        for (std::size_t step = horizon; step-- > 0;) {
            plan.prefix[step] = rule_from_index(model, index % rules);
            index /= rules;
        }
        plan.tail = horizon > 0 ? plan.prefix.back() : DecisionRule::constant(n, 0);
        return plan;
    };

    // Backward pass over the path sum of one plan: with L_H = 0,
    //   L_t(x) = gamma beta^t c(x, a_t(x)) + ln sum_y P(x, y) exp(L_{t+1}(y)),
    // and the criterion from x is L_0(x) / gamma. At gamma == 0 the same
    // pass runs on expectations instead of logarithms.
    auto plan_value = [&](const MarkovPlan& plan, double* out) {
        std::vector<double> next(n, 0.0), here(n);
        double discount = std::pow(beta, static_cast<double>(horizon));
        for (std::size_t step = horizon; step-- > 0;) {
            discount /= beta;
            for (std::size_t x = 0; x < n; ++x) {
                const std::size_t a = plan.at(step)[x];
                auto row = model.transition(x, a);
                double acc;
                if (gamma == 0.0) {
                    acc = 0.0;
                    for (std::size_t y = 0; y < n; ++y) acc += row[y] * next[y];
                } else {
                    double top = -std::numeric_limits<double>::infinity();
                    for (std::size_t y = 0; y < n; ++y)
                        if (row[y] > 0.0) top = std::max(top, next[y]);
                    double sum = 0.0;
                    for (std::size_t y = 0; y < n; ++y)
                        if (row[y] > 0.0) sum += row[y] * std::exp(next[y] - top);
                    acc = top + std::log(sum);
                }
                const double charge = discount * model.stage(x, a);
                here[x] = (gamma == 0.0 ? charge : gamma * charge) + acc;
            }
            std::swap(here, next);
        }
        for (std::size_t x = 0; x < n; ++x) out[x] = gamma == 0.0 ? next[x] : next[x] / gamma;
    };

    std::vector<double> values(plans * n);
    parallel_for(plans, [&](std::size_t i) { plan_value(plan_at(i), &values[i * n]); });

    OptimalPlan best;
    best.values.assign(n, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
        double v = values[x];
        for (std::size_t i = 1; i < plans; ++i)
            if (improves(model.direction(), values[i * n + x], v)) v = values[i * n + x];
        best.values[x] = v;
    }

    auto attains = [&](std::size_t i) {
        for (std::size_t x = 0; x < n; ++x) {
            const double slack = 1e-12 * std::max(1.0, std::abs(best.values[x]));
            if (std::abs(values[i * n + x] - best.values[x]) > slack) return false;
        }
        return true;
    };
    for (std::size_t i = 0; i < plans; ++i) {
        if (attains(i)) {
            best.plan = plan_at(i);
            return best;
        }
    }
    // No single plan is optimal from every start state; fall back to the
    // lexicographically first plan optimal from state 0.
    for (std::size_t i = 0; i < plans; ++i) {
        if (std::abs(values[i * n] - best.values[0]) <=
            1e-12 * std::max(1.0, std::abs(best.values[0]))) {
            best.plan = plan_at(i);
            break;
        }
    }
    return best;
}

}  // namespace rsb::oracle
