#include "rsb/cli/app.hpp"

#include "rsb/asymptotics.hpp"
#include "rsb/average.hpp"
#include "rsb/cli/csv.hpp"
#include "rsb/cli/grid.hpp"
#include "rsb/cli/model_io.hpp"
#include "rsb/discounted.hpp"
#include "rsb/evaluation.hpp"
#include "rsb/oracle.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <optional>

namespace rsb::cli {

namespace {

struct Options {
    std::string model;
    std::string out = "-";
    std::string out_dir = ".";
    std::string beta_grid;
    std::string beta_geometric;
    std::string gamma_grid;
    double beta = 0.0;
    double gamma = 0.0;
    double tol = 1e-10;
    double slack = 1e-8;
    double root_tol = 1e-10;
    std::size_t level = 0;
    std::size_t horizon = 4;
    std::string reference;
    std::string rule;
    std::string rule_a;
    std::string rule_b;
    std::optional<double> eval_beta;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Summary lines go to stdout unless stdout carries CSV.
struct Streams {
    std::ostream& out;
    std::ostream& err;
    std::ostream& notes(const Options& o) const { return o.out == "-" ? err : out; }
};

void emit(const CsvTable& table, const Options& o, const Streams& s) {
    if (o.out == "-")
        render_csv(table, s.out);
    else
        write_csv(table, o.out);
}

std::size_t reference_state(const LabeledModel& m, const Options& o) {
    return o.reference.empty() ? 0 : m.state_index(o.reference);
}

std::vector<double> discount_axis(const Options& o, const Streams& s) {
    if (!o.beta_grid.empty() && !o.beta_geometric.empty())
        throw UsageError("give either --beta or --beta-geometric, not both");
    std::vector<double> grid;
    if (!o.beta_geometric.empty()) {
        grid = parse_geometric_grid(o.beta_geometric);
    } else if (!o.beta_grid.empty()) {
        grid = parse_grid(o.beta_grid);
    } else {
        throw UsageError("a discount grid is required (--beta or --beta-geometric)");
    }
    const std::size_t before = grid.size();
    std::erase_if(grid, [](double b) { return !(b > 0.0 && b < 1.0); });
    if (grid.size() != before) {
        s.err << "note: dropped " << (before - grid.size())
              << " discount value(s) outside (0, 1)\n";
    }
    if (grid.empty()) throw UsageError("discount grid has no points in (0, 1)");
    return grid;
}

std::vector<double> risk_axis(const Options& o) {
    if (o.gamma_grid.empty()) throw UsageError("a risk grid is required (--gamma)");
    return parse_grid(o.gamma_grid);
}

void print_vector(std::ostream& out, const LabeledModel& m, const std::string& name,
                  const Vector& v) {
    for (std::size_t x = 0; x < v.size(); ++x)
        out << name << '[' << m.state_labels[x] << "] = " << format_real(v[x]) << '\n';
}

int cmd_validate(const Options& o, const Streams& s) {
    const LabeledModel m = load_model_file(o.model);
    const ValidationReport r = validate_model(m.model);
    s.out << "states: " << m.model.state_count() << '\n'
          << "actions: " << m.model.action_count() << '\n'
          << "direction: " << (m.model.direction() == Direction::maximize ? "max" : "min") << '\n'
          << "stochastic: " << (r.stochastic_ok ? "yes" : "no") << '\n'
          << "stage finite: " << (r.stage_finite ? "yes" : "no") << '\n'
          << "mixing margin: " << format_real(r.condition_c_margin) << '\n';
    for (const auto& w : r.warnings) s.out << "warning: " << w << '\n';
    return r.stochastic_ok && r.stage_finite ? kExitOk : kExitSolver;
}

int cmd_solve_discounted(const Options& o, const Streams& s) {
    const LabeledModel m = load_model_file(o.model);
    // The per-level CSV is only written to a file, so the summary keeps stdout.
    std::ostream& notes = s.out;
    if (o.gamma == 0.0) {
        const RiskNeutralDiscounted rn = solve_rn_discounted(m.model, o.beta, o.tol);
        notes << "rule: " << m.format_rule(rn.rule) << '\n'
              << "iterations: " << rn.iterations << '\n';
        print_vector(notes, m, "value", rn.values);
        CsvTable table{{"level", "gamma_n", "rule"}, {}};
        for (const auto& l : m.state_labels) table.header.push_back("value_" + l);
        std::vector<CsvCell> row{std::int64_t{0}, 0.0, m.format_rule(rn.rule)};
        for (double v : rn.values) row.emplace_back(v);
        table.rows.push_back(std::move(row));
        if (o.out != "-") emit(table, o, s);
        return kExitOk;
    }

    const DiscountedSolution sol = solve_rs_discounted(m.model, o.gamma, o.beta, o.tol);
    const SwitchIndex sw = switch_index(sol);
    notes << "horizon: " << sol.horizon << '\n'
          << "tail error bound: " << format_real(sol.tail_error_bound) << '\n'
          << "tail rule: " << m.format_rule(sol.tail_rule) << '\n'
          << "first rule: " << m.format_rule(sol.plan().at(0)) << '\n'
          << "switch index: " << (sw ? std::to_string(*sw) : std::string("unswitched")) << '\n';
    print_vector(notes, m, "value", sol.values.front());

    if (o.out != "-") {
        CsvTable table{{"level", "gamma_n", "rule"}, {}};
        for (const auto& l : m.state_labels) table.header.push_back("value_" + l);
        for (std::size_t n = 0; n <= sol.horizon; ++n) {
            std::vector<CsvCell> row{static_cast<std::int64_t>(n),
                                     o.gamma * std::pow(o.beta, static_cast<double>(n)),
                                     m.format_rule(sol.plan().at(n))};
            for (double v : sol.values[n]) row.emplace_back(v);
            table.rows.push_back(std::move(row));
        }
        emit(table, o, s);
    }
    return kExitOk;
}

int cmd_solve_average(const Options& o, const Streams& s) {
    const LabeledModel m = load_model_file(o.model);
    const AverageSolution sol = solve_average(m.model, o.gamma, o.tol, reference_state(m, o));
    s.out << "lambda: " << format_real(sol.lambda) << '\n'
          << "rule: " << m.format_rule(sol.rule) << '\n'
          << "residual: " << format_real(sol.residual) << '\n'
          << "iterations: " << sol.iterations << '\n'
          << "reference state: " << m.state_labels[sol.reference_state] << '\n';
    print_vector(s.out, m, "bias", sol.bias);
    return kExitOk;
}

int cmd_eval_rule(const Options& o, const Streams& s) {
    const LabeledModel m = load_model_file(o.model);
    const DecisionRule rule = m.parse_rule(o.rule);
    if (o.eval_beta) {
        const Vector v =
            evaluate_discounted(m.model, MarkovPlan::stationary(rule), o.gamma, *o.eval_beta, o.tol);
        print_vector(s.out, m, "discounted", v);
    } else {
        s.out << "average: " << format_real(average_value_of_rule(m.model, rule, o.gamma)) << '\n';
    }
    return kExitOk;
}

CsvTable threshold_table(const LabeledModel& m, const ThresholdScanResult& r) {
    CsvTable table{{"param", "verdict", "rule"}, {}};
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        table.rows.push_back({r.grid[i], std::string(r.verdicts[i] ? "true" : "false"),
                              m.format_rule(r.rules[i])});
    }
    return table;
}

void report_threshold(std::ostream& notes, const ThresholdScanResult& r) {
    notes << "threshold: " << (r.threshold ? format_real(*r.threshold) : std::string("none-in-grid"))
          << '\n';
}

int cmd_scan_blackwell_rn(const Options& o, const Streams& s) {
    const LabeledModel m = load_model_file(o.model);
    const ThresholdScanResult r = blackwell_scan_rn(m.model, discount_axis(o, s), o.tol, o.slack);
    emit(threshold_table(m, r), o, s);
    report_threshold(s.notes(o), r);
    return kExitOk;
}

int cmd_scan_blackwell_rs(const Options& o, const Streams& s) {
    const LabeledModel m = load_model_file(o.model);
    const ThresholdScanResult r =
        blackwell_scan_rs(m.model, o.gamma, o.level, discount_axis(o, s), o.slack, o.tol);
    emit(threshold_table(m, r), o, s);
    report_threshold(s.notes(o), r);
    return kExitOk;
}

int cmd_scan_stationarity(const Options& o, const Streams& s) {
    const LabeledModel m = load_model_file(o.model);
    const ThresholdScanResult r = stationarity_scan(m.model, o.beta, risk_axis(o), o.tol);
    emit(threshold_table(m, r), o, s);
    report_threshold(s.notes(o), r);
    return kExitOk;
}

int cmd_scan_switchpoints(const Options& o, const Streams& s) {
    const LabeledModel m = load_model_file(o.model);
    const SwitchpointGrid grid = switchpoint_grid(m.model, discount_axis(o, s), risk_axis(o), o.tol);
    CsvTable table{{"beta", "gamma", "switch_index"}, {}};
    table.rows.reserve(grid.cells.size());
    std::size_t errors = 0;
    for (std::size_t i = 0; i < grid.beta_axis.size(); ++i) {
        for (std::size_t j = 0; j < grid.gamma_axis.size(); ++j) {
            const SwitchCell& c = grid.at(i, j);
            CsvCell value;
            switch (c.kind) {
                case SwitchCell::Kind::index: value = static_cast<std::int64_t>(c.index); break;
                case SwitchCell::Kind::unswitched: value = std::string("unswitched"); break;
                case SwitchCell::Kind::error:
                    value = std::string("error");
                    ++errors;
                    break;
            }
            table.rows.push_back({grid.beta_axis[i], grid.gamma_axis[j], std::move(value)});
        }
    }
    emit(table, o, s);
    if (errors > 0) s.err << "warning: " << errors << " cell(s) failed to solve\n";
    return kExitOk;
}

int cmd_gap_curve(const Options& o, const Streams& s) {
    const LabeledModel m = load_model_file(o.model);
    if (m.model.action_count() < 2 && (o.rule_a.empty() || o.rule_b.empty()))
        throw UsageError("single-action model: give --rule-a and --rule-b");
    const DecisionRule a = o.rule_a.empty() ? DecisionRule::constant(m.model.state_count(), 0)
                                            : m.parse_rule(o.rule_a);
    const DecisionRule b = o.rule_b.empty() ? DecisionRule::constant(m.model.state_count(), 1)
                                            : m.parse_rule(o.rule_b);
    const std::vector<double> gammas = risk_axis(o);
    const GapCurve curve = policy_gap_curve(m.model, a, b, gammas);
    CsvTable table{{"gamma", "g"}, {}};
    for (std::size_t i = 0; i < gammas.size(); ++i) table.rows.push_back({gammas[i], curve.gap[i]});
    emit(table, o, s);

    const auto [lo, hi] = std::minmax_element(gammas.begin(), gammas.end());
    if (*lo < *hi) {
        for (double z : find_gap_zeros(m.model, a, b, {*lo, *hi}, o.root_tol))
            s.notes(o) << "zero: " << format_real(z) << '\n';
    }
    return kExitOk;
}

int cmd_vanishing_discount(const Options& o, const Streams& s) {
    const LabeledModel m = load_model_file(o.model);
    const auto rows = vanishing_discount_sequence(m.model, o.gamma, o.level, discount_axis(o, s),
                                                  reference_state(m, o), o.tol);
    CsvTable table{{"beta", "lambda_n"}, {}};
    for (const auto& l : m.state_labels) table.header.push_back("bias_" + l);
    for (const auto& r : rows) {
        std::vector<CsvCell> row{r.beta, r.lambda_n};
        for (double v : r.centered_bias) row.emplace_back(v);
        table.rows.push_back(std::move(row));
    }
    emit(table, o, s);
    return kExitOk;
}

int cmd_oracle_check(const Options& o, const Streams& s) {
    const LabeledModel m = load_model_file(o.model);
    const std::vector<double> gammas = risk_axis(o);
    const std::vector<double> betas = discount_axis(o, s);
    bool ok = true;
    for (double gamma : gammas) {
        for (double beta : betas) {
            for (std::size_t h = 1; h <= o.horizon; ++h) {
                const DiscountedSolution sol = solve_rs_finite_horizon(m.model, gamma, beta, h);
                const oracle::OptimalPlan best = oracle::enumerate_optimal(m.model, gamma, beta, h);
                const MarkovPlan plan = sol.plan();
                const Vector rec = evaluate_plan_finite(m.model, plan, gamma, beta, h);
                const Vector enu = oracle::enumerate_value(m.model, plan, gamma, beta, h);
                double d_opt = 0.0, d_eval = 0.0;
                for (std::size_t x = 0; x < rec.size(); ++x) {
                    d_opt = std::max(d_opt, std::abs(sol.values[0][x] - best.values[x]));
                    d_eval = std::max(d_eval, std::abs(rec[x] - enu[x]));
                }
                const bool pass = d_opt <= 1e-9 && d_eval <= 1e-12;
                ok = ok && pass;
                s.out << "gamma=" << format_real(gamma) << " beta=" << format_real(beta)
                      << " horizon=" << h << " optimal_diff=" << format_real(d_opt)
                      << " plan_diff=" << format_real(d_eval) << (pass ? " ok" : " FAIL") << '\n';
            }
        }
    }
    return ok ? kExitOk : kExitSolver;
}

int cmd_example(const Options& o, const Streams& s) {
    std::filesystem::create_directories(o.out_dir);
    const double eps[] = {0.0, 0.01, 0.05};
    const auto names = example_file_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        const auto path = (std::filesystem::path(o.out_dir) / names[i]).string();
        save_model_file(with_default_labels(build_jaquette_example(eps[i])), path);
        load_model_file(path);
        s.out << "wrote " << path << '\n';
    }
    return kExitOk;
}

}  // namespace

std::vector<std::string> example_file_names() {
    return {"jaquette_eps0.json", "jaquette_eps0.01.json", "jaquette_eps0.05.json"};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Solvers and asymptotic scans for risk-sensitive finite MDPs", "rsb"};
    app.require_subcommand(1);
    Options o;
    std::function<int(const Options&, const Streams&)> action;

    auto sub = [&](const char* name, const char* help, auto handler) {
        CLI::App* cmd = app.add_subcommand(name, help);
        cmd->callback([&action, handler] { action = handler; });
        return cmd;
    };
    auto model_opt = [&](CLI::App* cmd) {
        cmd->add_option("--model", o.model, "Model file (JSON)")->required();
    };
    auto out_opt = [&](CLI::App* cmd) {
        cmd->add_option("--out", o.out, "CSV output path, '-' for stdout")->capture_default_str();
    };
    auto tol_opt = [&](CLI::App* cmd) {
        cmd->add_option("--tol", o.tol, "Solver tolerance")->capture_default_str();
    };
    auto beta_axis_opts = [&](CLI::App* cmd) {
        cmd->add_option("--beta", o.beta_grid, "Discount grid start:end:step or list");
        cmd->add_option("--beta-geometric", o.beta_geometric,
                        "Geometric discount grid beta0:depth, 1-(1-beta0)2^-k");
    };

    CLI::App* c = sub("validate", "Check stochasticity and report the mixing margin", cmd_validate);
    model_opt(c);

    c = sub("solve-discounted", "Optimal discounted values and rules", cmd_solve_discounted);
    model_opt(c);
    c->add_option("--beta", o.beta, "Discount factor in (0, 1)")->required();
    c->add_option("--gamma", o.gamma, "Risk parameter (0 for risk neutral)")->required();
    tol_opt(c);
    c->add_option("--out", o.out, "Per-level CSV path");

    c = sub("solve-average", "Optimal long-run average gain, bias and rule", cmd_solve_average);
    model_opt(c);
    c->add_option("--gamma", o.gamma, "Risk parameter (0 for risk neutral)")->required();
    tol_opt(c);
    c->add_option("--ref", o.reference, "Reference state label (default: first state)");

    c = sub("eval-rule", "Evaluate a stationary rule", cmd_eval_rule);
    model_opt(c);
    c->add_option("--rule", o.rule, "Comma-separated action labels, one per state")->required();
    c->add_option("--gamma", o.gamma, "Risk parameter")->required();
    c->add_option("--beta", o.eval_beta, "Discount factor; omit for the average criterion");
    tol_opt(c);

    c = sub("scan-blackwell-rn", "Risk-neutral Blackwell threshold scan over beta",
            cmd_scan_blackwell_rn);
    model_opt(c);
    beta_axis_opts(c);
    tol_opt(c);
    c->add_option("--slack", o.slack, "Average-optimality slack")->capture_default_str();
    out_opt(c);

    c = sub("scan-blackwell-rs", "Risk-sensitive Blackwell scan over beta at fixed gamma",
            cmd_scan_blackwell_rs);
    model_opt(c);
    c->add_option("--gamma", o.gamma, "Nonzero risk parameter")->required();
    c->add_option("--level", o.level, "Grid level n of the examined rule")->capture_default_str();
    beta_axis_opts(c);
    tol_opt(c);
    c->add_option("--slack", o.slack, "Average-optimality slack")->capture_default_str();
    out_opt(c);

    c = sub("scan-stationarity", "Ultimate-stationarity scan over gamma at fixed beta",
            cmd_scan_stationarity);
    model_opt(c);
    c->add_option("--beta", o.beta, "Discount factor in (0, 1)")->required();
    c->add_option("--gamma", o.gamma_grid, "Risk grid, one sign, |gamma| decreasing")->required();
    tol_opt(c);
    out_opt(c);

    c = sub("scan-switchpoints", "Switch index on a (beta, gamma) grid", cmd_scan_switchpoints);
    model_opt(c);
    beta_axis_opts(c);
    c->add_option("--gamma", o.gamma_grid, "Risk grid start:end:step or list")->required();
    tol_opt(c);
    out_opt(c);

    c = sub("gap-curve", "Average-criterion difference of two rules over gamma", cmd_gap_curve);
    model_opt(c);
    c->add_option("--gamma", o.gamma_grid, "Risk grid start:end:step or list")->required();
    c->add_option("--rule-a", o.rule_a, "Baseline rule (default: first action everywhere)");
    c->add_option("--rule-b", o.rule_b, "Compared rule (default: second action everywhere)");
    c->add_option("--root-tol", o.root_tol, "Tolerance for located zeros")->capture_default_str();
    out_opt(c);

    c = sub("vanishing-discount", "Centred discounted gain and bias along a beta grid",
            cmd_vanishing_discount);
    model_opt(c);
    c->add_option("--gamma", o.gamma, "Nonzero risk parameter")->required();
    c->add_option("--level", o.level, "Grid level n")->capture_default_str();
    beta_axis_opts(c);
    c->add_option("--ref", o.reference, "Reference state label (default: first state)");
    tol_opt(c);
    out_opt(c);

    c = sub("oracle-check", "Compare recursions against brute-force enumeration",
            cmd_oracle_check);
    model_opt(c);
    c->add_option("--gamma", o.gamma_grid, "Risk grid")->required();
    beta_axis_opts(c);
    c->add_option("--horizon", o.horizon, "Largest horizon checked")->capture_default_str();

    c = sub("example", "Write the three-state example models", cmd_example);
    c->add_option("--out-dir", o.out_dir, "Target directory")->capture_default_str();

    std::vector<std::string> argv_storage{"rsb"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    const Streams streams{out, err};
    try {
        return action(o, streams);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    }
}

}  // namespace rsb::cli
