#pragma once

#include "rsb/discounted.hpp"
#include "rsb/model.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace rsb {

/// Centred discounted quantities at one discount factor.
struct VanishingDiscountRow {
    double beta = 0.0;
    /// V_n(z) - beta V_{n+1}(z), with V_n the level-n discounted value.
    double lambda_n = 0.0;
    /// V_n(.) - V_n(z); zero at z.
    Vector centered_bias;
};

/// Per-point verdicts of a threshold scan. `threshold` is the first grid point
/// from which every verdict to the end of the grid is true.
struct ThresholdScanResult {
    std::vector<double> grid;
    std::vector<bool> verdicts;
    /// Rule examined at each grid point.
    std::vector<DecisionRule> rules;
    std::optional<double> threshold;
};

/// Switch index of a discounted solution; nullopt stands for "unswitched".
using SwitchIndex = std::optional<std::size_t>;

/// One cell of a switch-point grid.
struct SwitchCell {
    enum class Kind { index, unswitched, error };
    Kind kind = Kind::index;
    std::size_t index = 0;

    static SwitchCell from(SwitchIndex s) {
        return s ? SwitchCell{Kind::index, *s} : SwitchCell{Kind::unswitched, 0};
    }
    bool operator==(const SwitchCell&) const = default;
};

struct SwitchpointGrid {
    std::vector<double> beta_axis;
    std::vector<double> gamma_axis;
    /// cells[i * gamma_axis.size() + j] belongs to (beta_axis[i], gamma_axis[j]).
    std::vector<SwitchCell> cells;

    const SwitchCell& at(std::size_t beta_index, std::size_t gamma_index) const {
        return cells[beta_index * gamma_axis.size() + gamma_index];
    }
};

struct GapCurve {
    std::vector<double> gamma_axis;
    std::vector<double> gap;
    std::vector<double> zeros;
};

/// beta_k = 1 - (1 - beta0) 2^-k for k = 0 .. depth.
std::vector<double> geometric_beta_grid(double beta0, std::size_t depth);

/// Smallest n with rules[m] == tail_rule for every n <= m < horizon, or
/// nullopt when the last level's rule differs from the tail.
SwitchIndex switch_index(const DiscountedSolution& solution);

/// lambda_n and centred bias read off solve_rs_discounted at each beta.
std::vector<VanishingDiscountRow> vanishing_discount_sequence(const MdpModel& model,
                                                              double gamma, std::size_t level,
                                                              const std::vector<double>& betas,
                                                              std::size_t reference_state,
                                                              double tol);

/// Greedy risk-neutral discounted rule per beta; the threshold is where the
/// rule settles for good, provided the settled rule is average optimal.
ThresholdScanResult blackwell_scan_rn(const MdpModel& model, const std::vector<double>& betas,
                                      double tol, double slack = 1e-8);

/// Verdict per beta: is the level-n optimiser of the risk-sensitive discounted
/// problem average optimal at gamma?
ThresholdScanResult blackwell_scan_rs(const MdpModel& model, double gamma, std::size_t level,
                                      const std::vector<double>& betas, double slack,
                                      double tol);

/// Verdict per gamma: is the discounted optimal plan stationary from step 0?
/// `gammas` must share a sign and approach 0 in absolute value. Recorded rules
/// are the level-0 optimisers.
ThresholdScanResult stationarity_scan(const MdpModel& model, double beta,
                                      const std::vector<double>& gammas, double tol);

/// Switch index on every (beta, gamma) cell. gamma == 0 cells record 0.
/// Solver failures are recorded as error cells; the scan continues.
SwitchpointGrid switchpoint_grid(const MdpModel& model, const std::vector<double>& betas,
                                 const std::vector<double>& gammas, double tol);

/// g(gamma) = J(rule_b) - J(rule_a) for the average criterion, from Perron
/// evaluations (gamma == 0 uses the stationary distribution).
GapCurve policy_gap_curve(const MdpModel& model, const DecisionRule& rule_a,
                          const DecisionRule& rule_b, const std::vector<double>& gammas);

/// Sign changes of g on a uniform scan of `interval`, refined by bisection
/// until |g| <= root_tol (or the bracket stops shrinking).
std::vector<double> find_gap_zeros(const MdpModel& model, const DecisionRule& rule_a,
                                   const DecisionRule& rule_b,
                                   std::pair<double, double> interval, double root_tol,
                                   std::size_t scan_points = 512);

}  // namespace rsb
