#include "rsb/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rsb {

DecisionRule DecisionRule::constant(std::size_t state_count, std::size_t action) {
    return DecisionRule(std::vector<std::size_t>(state_count, action));
}

std::string to_string(const DecisionRule& rule) {
    std::ostringstream out;
    for (std::size_t x = 0; x < rule.size(); ++x) {
        if (x > 0) out << ' ';
        out << rule[x];
    }
    return out.str();
}

MdpModel::MdpModel(std::vector<Matrix> kernels, Matrix stage, Direction direction)
    : kernels_(std::move(kernels)), stage_(std::move(stage)), direction_(direction) {
    const std::size_t n = stage_.rows();
    if (n == 0) throw ModelError("model has no states");
    if (stage_.cols() == 0) throw ModelError("model has no actions");
    if (kernels_.size() != stage_.cols()) {
        throw ModelError("stage table has " + std::to_string(stage_.cols()) +
                         " action columns but " + std::to_string(kernels_.size()) +
                         " transition matrices were given");
    }
    for (std::size_t a = 0; a < kernels_.size(); ++a) {
        if (kernels_[a].rows() != n || kernels_[a].cols() != n) {
            throw ModelError("transition matrix for action " + std::to_string(a) + " is " +
                             std::to_string(kernels_[a].rows()) + "x" +
                             std::to_string(kernels_[a].cols()) + ", expected " +
                             std::to_string(n) + "x" + std::to_string(n));
        }
    }
}

double MdpModel::stage_min() const {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < state_count(); ++x)
        for (double v : stage_.row(x)) m = std::min(m, v);
    return m;
}

double MdpModel::stage_max() const {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < state_count(); ++x)
        for (double v : stage_.row(x)) m = std::max(m, v);
    return m;
}

MdpModel MdpModel::with_stage_shift(double shift) const {
    Matrix shifted = stage_;
    for (std::size_t x = 0; x < state_count(); ++x)
        for (double& v : shifted.row(x)) v += shift;
    return MdpModel(kernels_, std::move(shifted), direction_);
}

MdpModel MdpModel::with_direction(Direction dir) const {
    return MdpModel(kernels_, stage_, dir);
}

void MdpModel::check_rule(const DecisionRule& rule) const {
    if (rule.size() != state_count()) {
        throw ModelError("decision rule covers " + std::to_string(rule.size()) +
                         " states, model has " + std::to_string(state_count()));
    }
    for (std::size_t x = 0; x < rule.size(); ++x) {
        if (rule[x] >= action_count()) {
            throw ModelError("decision rule assigns action " + std::to_string(rule[x]) +
                             " to state " + std::to_string(x) + " but the model has " +
                             std::to_string(action_count()) + " actions");
        }
    }
}

ValidationReport validate_model(const MdpModel& model) {
    ValidationReport report;
    report.stochastic_ok = true;
    report.stage_finite = true;
    double margin = std::numeric_limits<double>::infinity();

    for (std::size_t a = 0; a < model.action_count(); ++a) {
        for (std::size_t x = 0; x < model.state_count(); ++x) {
            double sum = 0.0;
            bool in_range = true;
            for (double p : model.transition(x, a)) {
                if (!(p >= 0.0 && p <= 1.0)) in_range = false;
                sum += p;
                margin = std::min(margin, p);
            }
            if (!in_range) {
                report.stochastic_ok = false;
                report.warnings.push_back("action " + std::to_string(a) + ", state " +
                                          std::to_string(x) +
                                          ": probability outside [0, 1]");
            } else if (std::abs(sum - 1.0) > 1e-12) {
                report.stochastic_ok = false;
                std::ostringstream msg;
                msg.precision(17);
                msg << "action " << a << ", state " << x << ": row sums to " << sum;
                report.warnings.push_back(msg.str());
            }
        }
    }
    for (std::size_t x = 0; x < model.state_count(); ++x) {
        for (std::size_t a = 0; a < model.action_count(); ++a) {
            if (!std::isfinite(model.stage(x, a))) {
                report.stage_finite = false;
                report.warnings.push_back("stage value at state " + std::to_string(x) +
                                          ", action " + std::to_string(a) +
                                          " is not finite");
            }
        }
    }

    report.condition_c_margin = std::isfinite(margin) ? std::max(margin, 0.0) : 0.0;
    if (report.condition_c_margin <= 0.0) {
        report.warnings.push_back(
            "uniform mixing margin is 0: some transition probability vanishes, "
            "so span contraction is not guaranteed");
    }
    return report;
}

void require_solvable(const MdpModel& model) {
    const ValidationReport report = validate_model(model);
    if (report.stochastic_ok && report.stage_finite) return;
    std::string msg = "model is not solvable:";
    for (const auto& w : report.warnings) msg += "\n  " + w;
    throw ModelError(msg);
}

Matrix rule_transition_matrix(const MdpModel& model, const DecisionRule& rule) {
    model.check_rule(rule);
    const std::size_t n = model.state_count();
    Matrix p(n, n);
    for (std::size_t x = 0; x < n; ++x) {
        auto src = model.transition(x, rule[x]);
        std::copy(src.begin(), src.end(), p.row(x).begin());
    }
    return p;
}

Vector rule_stage_vector(const MdpModel& model, const DecisionRule& rule) {
    model.check_rule(rule);
    Vector c(model.state_count());
    for (std::size_t x = 0; x < c.size(); ++x) c[x] = model.stage(x, rule[x]);
    return c;
}

std::size_t rule_count(const MdpModel& model, std::size_t cap) {
    std::size_t count = 1;
    for (std::size_t x = 0; x < model.state_count(); ++x) {
        if (count > cap / model.action_count()) return cap + 1;
        count *= model.action_count();
    }
    return count;
}

DecisionRule rule_from_index(const MdpModel& model, std::size_t index) {
    const std::size_t n = model.state_count();
    const std::size_t k = model.action_count();
    std::vector<std::size_t> actions(n);
    for (std::size_t i = n; i-- > 0;) {
        actions[i] = index % k;
        index /= k;
    }
    return DecisionRule(std::move(actions));
}

MdpModel build_jaquette_example(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon < 0.1)) {
        throw std::invalid_argument("example perturbation must lie in [0, 0.1)");
    }
    const double e = epsilon;
    Matrix p0(3, 3);
    Matrix p1(3, 3);
    const double tail_rows[3] = {1.0 - 2.0 * e, e, e};

    p0(0, 0) = 2.0 * e;
    p0(0, 1) = 0.5 - e;
    p0(0, 2) = 0.5 - e;
    p1(0, 0) = 2.0 * e;
    p1(0, 1) = 0.9 - e;
    p1(0, 2) = 0.1 - e;
    for (std::size_t x = 1; x < 3; ++x) {
        for (std::size_t y = 0; y < 3; ++y) {
            p0(x, y) = tail_rows[y];
            p1(x, y) = tail_rows[y];
        }
    }

    Matrix stage(3, 2);
    stage(0, 0) = 0.0;
    stage(0, 1) = 1.0;
    stage(1, 0) = 0.0;
    stage(1, 1) = 0.0;
    stage(2, 0) = 8.0;
    stage(2, 1) = 8.0;

    return MdpModel({std::move(p0), std::move(p1)}, std::move(stage), Direction::minimize);
}

}  // namespace rsb
