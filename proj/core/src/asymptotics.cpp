#include "rsb/asymptotics.hpp"

#include "rsb/average.hpp"
#include "rsb/evaluation.hpp"
#include "rsb/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rsb {

namespace {

std::optional<double> trailing_true_threshold(const std::vector<double>& grid,
                                              const std::vector<bool>& verdicts) {
    std::size_t first = verdicts.size();
    while (first > 0 && verdicts[first - 1]) --first;
    if (first == verdicts.size()) return std::nullopt;
    return grid[first];
}

void check_betas(const std::vector<double>& betas) {
    for (std::size_t i = 0; i < betas.size(); ++i) {
        if (!(betas[i] > 0.0 && betas[i] < 1.0))
            throw std::invalid_argument("discount grid must lie in (0, 1)");
        if (i > 0 && !(betas[i] > betas[i - 1]))
            throw std::invalid_argument("discount grid must be increasing");
    }
}

}  // namespace

std::vector<double> geometric_beta_grid(double beta0, std::size_t depth) {
    if (!(beta0 > 0.0 && beta0 < 1.0)) throw std::invalid_argument("beta0 must lie in (0, 1)");
    std::vector<double> grid;
    grid.reserve(depth + 1);
    for (std::size_t k = 0; k <= depth; ++k)
        grid.push_back(1.0 - std::ldexp(1.0 - beta0, -static_cast<int>(k)));
    return grid;
}

SwitchIndex switch_index(const DiscountedSolution& solution) {
    const auto& rules = solution.rules;
    std::size_t n = rules.size();
    while (n > 0 && rules[n - 1] == solution.tail_rule) --n;
    if (!rules.empty() && n == rules.size()) return std::nullopt;
    return n;
}

std::vector<VanishingDiscountRow> vanishing_discount_sequence(const MdpModel& model,
                                                              double gamma, std::size_t level,
                                                              const std::vector<double>& betas,
                                                              std::size_t reference_state,
                                                              double tol) {
    check_betas(betas);
    if (reference_state >= model.state_count())
        throw std::invalid_argument("reference state out of range");

    std::vector<VanishingDiscountRow> rows(betas.size());
    parallel_for(betas.size(), [&](std::size_t i) {
        const DiscountedSolution sol = solve_rs_discounted(model, gamma, betas[i], tol);
        // Levels past the truncation horizon share the seed value, which is
        // within the tail bound of each of them.
        const Vector& here = sol.values[std::min(level, sol.horizon)];
        const Vector& next = sol.values[std::min(level + 1, sol.horizon)];
        VanishingDiscountRow& row = rows[i];
        row.beta = betas[i];
        // Both levels in value units: the gamma_n-scaled increment divided by gamma_n.
        row.lambda_n = here[reference_state] - betas[i] * next[reference_state];
        row.centered_bias.resize(here.size());
        for (std::size_t x = 0; x < here.size(); ++x)
            row.centered_bias[x] = here[x] - here[reference_state];
    });
    return rows;
}

ThresholdScanResult blackwell_scan_rn(const MdpModel& model, const std::vector<double>& betas,
                                      double tol, double slack) {
    check_betas(betas);
    ThresholdScanResult out;
    out.grid = betas;
    out.rules.resize(betas.size());
    parallel_for(betas.size(),
                 [&](std::size_t i) { out.rules[i] = solve_rn_discounted(model, betas[i], tol).rule; });

    out.verdicts.assign(betas.size(), false);
    if (betas.empty()) return out;
    const DecisionRule& settled = out.rules.back();
    if (is_average_optimal(model, 0.0, settled, slack)) {
        for (std::size_t i = 0; i < betas.size(); ++i) out.verdicts[i] = out.rules[i] == settled;
    }
    out.threshold = trailing_true_threshold(out.grid, out.verdicts);
    return out;
}

ThresholdScanResult blackwell_scan_rs(const MdpModel& model, double gamma, std::size_t level,
                                      const std::vector<double>& betas, double slack,
                                      double tol) {
    check_betas(betas);
    const double gain = solve_average(model, gamma, kAverageSolverTol).lambda;

    ThresholdScanResult out;
    out.grid = betas;
    out.rules.resize(betas.size());
    std::vector<char> verdicts(betas.size(), 0);
    parallel_for(betas.size(), [&](std::size_t i) {
        const DiscountedSolution sol = solve_rs_discounted(model, gamma, betas[i], tol);
        out.rules[i] = sol.plan().at(level);
        verdicts[i] = is_average_optimal(model, gamma, out.rules[i], slack, gain) ? 1 : 0;
    });
    out.verdicts.assign(verdicts.begin(), verdicts.end());
    out.threshold = trailing_true_threshold(out.grid, out.verdicts);
    return out;
}

ThresholdScanResult stationarity_scan(const MdpModel& model, double beta,
                                      const std::vector<double>& gammas, double tol) {
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        if (gammas[i] == 0.0 || (gammas[i] > 0.0) != (gammas[0] > 0.0))
            throw std::invalid_argument("risk grid must be nonzero and of one sign");
        if (i > 0 && !(std::abs(gammas[i]) < std::abs(gammas[i - 1])))
            throw std::invalid_argument("risk grid must decrease toward 0 in absolute value");
    }

    ThresholdScanResult out;
    out.grid = gammas;
    out.rules.resize(gammas.size());
    std::vector<char> verdicts(gammas.size(), 0);
    parallel_for(gammas.size(), [&](std::size_t i) {
        const DiscountedSolution sol = solve_rs_discounted(model, gammas[i], beta, tol);
        out.rules[i] = sol.plan().at(0);
        const SwitchIndex s = switch_index(sol);
        verdicts[i] = (s && *s == 0) ? 1 : 0;
    });
    out.verdicts.assign(verdicts.begin(), verdicts.end());
    out.threshold = trailing_true_threshold(out.grid, out.verdicts);
    return out;
}

SwitchpointGrid switchpoint_grid(const MdpModel& model, const std::vector<double>& betas,
                                 const std::vector<double>& gammas, double tol) {
    check_betas(betas);
    require_solvable(model);
    SwitchpointGrid grid;
    grid.beta_axis = betas;
    grid.gamma_axis = gammas;
    grid.cells.resize(betas.size() * gammas.size());

    parallel_for(grid.cells.size(), [&](std::size_t cell) {
        const double beta = betas[cell / gammas.size()];
        const double gamma = gammas[cell % gammas.size()];
        if (gamma == 0.0) {
            grid.cells[cell] = SwitchCell{SwitchCell::Kind::index, 0};
            return;
        }
        try {
            grid.cells[cell] = SwitchCell::from(switch_index(solve_rs_discounted(model, gamma, beta, tol)));
        } catch (const std::exception&) {
            grid.cells[cell] = SwitchCell{SwitchCell::Kind::error, 0};
        }
    });
    return grid;
}

GapCurve policy_gap_curve(const MdpModel& model, const DecisionRule& rule_a,
                          const DecisionRule& rule_b, const std::vector<double>& gammas) {
    GapCurve curve;
    curve.gamma_axis = gammas;
    curve.gap.resize(gammas.size());
    parallel_for(gammas.size(), [&](std::size_t i) {
        curve.gap[i] = rule_a == rule_b ? 0.0
                                        : average_value_of_rule(model, rule_b, gammas[i]) -
                                              average_value_of_rule(model, rule_a, gammas[i]);
    });
    return curve;
}

std::vector<double> find_gap_zeros(const MdpModel& model, const DecisionRule& rule_a,
                                   const DecisionRule& rule_b,
                                   std::pair<double, double> interval, double root_tol,
                                   std::size_t scan_points) {
    auto [lo, hi] = interval;
    if (!(lo < hi)) throw std::invalid_argument("empty interval");
    if (!(root_tol > 0.0)) throw std::invalid_argument("root tolerance must be positive");
    scan_points = std::max<std::size_t>(scan_points, 2);
    if (rule_a == rule_b) return {};

    auto g = [&](double gamma) {
        return average_value_of_rule(model, rule_b, gamma) -
               average_value_of_rule(model, rule_a, gamma);
    };

    std::vector<double> xs(scan_points);
    for (std::size_t i = 0; i < scan_points; ++i)
        xs[i] = i + 1 == scan_points
                    ? hi
                    : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(scan_points - 1);
    std::vector<double> gs(scan_points);
    parallel_for(scan_points, [&](std::size_t i) { gs[i] = g(xs[i]); });

    std::vector<double> zeros;
    for (std::size_t i = 0; i + 1 < scan_points; ++i) {
        if (gs[i] == 0.0) {
            zeros.push_back(xs[i]);
            continue;
        }
        if ((gs[i] > 0.0) == (gs[i + 1] > 0.0) || gs[i + 1] == 0.0) continue;

        double a = xs[i], b = xs[i + 1];
        double ga = gs[i];
        double mid = 0.5 * (a + b);
        for (int it = 0; it < 200; ++it) {
            mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            const double gm = g(mid);
            if (gm == 0.0) break;
            if ((gm > 0.0) == (ga > 0.0)) {
                a = mid;
                ga = gm;
            } else {
                b = mid;
            }
            if (b - a <= root_tol && std::abs(gm) <= root_tol) break;
        }
        zeros.push_back(mid);
    }
    if (gs.back() == 0.0) zeros.push_back(xs.back());
    return zeros;
}

}  // namespace rsb
