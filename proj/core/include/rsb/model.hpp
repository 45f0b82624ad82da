#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsb {

using Vector = std::vector<double>;

/// Raised when a model is structurally inconsistent or unusable by a solver.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an iterative method exhausts its iteration budget.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an enumeration would exceed its configured cap.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Direction { maximize, minimize };

/// True when `candidate` strictly improves on `incumbent` under `dir`.
inline bool improves(Direction dir, double candidate, double incumbent) {
    return dir == Direction::maximize ? candidate > incumbent : candidate < incumbent;
}

/// Dense row-major matrix, sized once at construction.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }
    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Stationary Markov decision rule: one action index per state.
struct DecisionRule {
    std::vector<std::size_t> action_of;

    DecisionRule() = default;
    explicit DecisionRule(std::vector<std::size_t> actions) : action_of(std::move(actions)) {}

    /// The rule playing `action` in every state.
    static DecisionRule constant(std::size_t state_count, std::size_t action);

    std::size_t size() const { return action_of.size(); }
    std::size_t operator[](std::size_t state) const { return action_of[state]; }

    auto operator<=>(const DecisionRule&) const = default;
};

/// Actions as a comma-free string such as "0 1 1".
std::string to_string(const DecisionRule& rule);

/// Finite prefix of rules followed by a stationary tail rule.
struct MarkovPlan {
    std::vector<DecisionRule> prefix;
    DecisionRule tail;

    /// Rule used at step n.
    const DecisionRule& at(std::size_t n) const {
        return n < prefix.size() ? prefix[n] : tail;
    }

    static MarkovPlan stationary(DecisionRule rule) { return {{}, std::move(rule)}; }

    bool operator==(const MarkovPlan&) const = default;
};

/// Finite MDP: per-action transition kernels P^a(x, y) and stage values c(x, a).
class MdpModel {
public:
    MdpModel() = default;

    /// Throws ModelError on inconsistent dimensions. Stochasticity is not
    /// checked here; see validate_model.
    MdpModel(std::vector<Matrix> kernels, Matrix stage, Direction direction);

    std::size_t state_count() const { return stage_.rows(); }
    std::size_t action_count() const { return stage_.cols(); }
    Direction direction() const { return direction_; }

    const Matrix& kernel(std::size_t action) const { return kernels_[action]; }
    const std::vector<Matrix>& kernels() const { return kernels_; }
    std::span<const double> transition(std::size_t state, std::size_t action) const {
        return kernels_[action].row(state);
    }

    const Matrix& stage() const { return stage_; }
    double stage(std::size_t state, std::size_t action) const { return stage_(state, action); }

    double stage_min() const;
    double stage_max() const;
    double stage_span() const { return stage_max() - stage_min(); }

    /// Copy with `shift` added to every stage value.
    MdpModel with_stage_shift(double shift) const;
    MdpModel with_direction(Direction dir) const;

    /// Throws ModelError if the rule does not fit this model.
    void check_rule(const DecisionRule& rule) const;

    bool operator==(const MdpModel&) const = default;

private:
    std::vector<Matrix> kernels_;
    Matrix stage_;
    Direction direction_ = Direction::maximize;
};

struct ValidationReport {
    bool stochastic_ok = false;
    bool stage_finite = false;
    /// min over a, x, y of P^a(x, y); positive iff the uniform mixing condition holds.
    double condition_c_margin = 0.0;
    std::vector<std::string> warnings;
};

/// Row sums are checked to 1e-12. Never throws on bad data; see require_solvable.
ValidationReport validate_model(const MdpModel& model);

/// Throws ModelError unless the model is stochastic with finite stage values.
void require_solvable(const MdpModel& model);

/// Transition matrix of the chain induced by `rule`.
Matrix rule_transition_matrix(const MdpModel& model, const DecisionRule& rule);

/// Stage vector c(x, rule(x)).
Vector rule_stage_vector(const MdpModel& model, const DecisionRule& rule);

/// Number of stationary rules, |U|^|E|, saturating at `cap + 1`.
std::size_t rule_count(const MdpModel& model, std::size_t cap);

/// Rule with mixed-radix index `index` (state 0 is the most significant digit).
DecisionRule rule_from_index(const MdpModel& model, std::size_t index);

/// The three-state, two-action example with perturbation epsilon in [0, 0.1).
/// States 0, 1, 2 and actions 0, 1; the direction is minimize.
MdpModel build_jaquette_example(double epsilon);

}  // namespace rsb
