#include "rsb/asymptotics.hpp"
#include "rsb/average.hpp"
#include "rsb/discounted.hpp"
#include "rsb/evaluation.hpp"

#include <benchmark/benchmark.h>

namespace {

const rsb::MdpModel& example() {
    static const rsb::MdpModel model = rsb::build_jaquette_example(0.0);
    return model;
}

// One switch-point cell; the range argument is beta in hundredths.
void BM_DiscountedCell(benchmark::State& state) {
    const double beta = static_cast<double>(state.range(0)) / 100.0;
    for (auto _ : state) {
        auto sol = rsb::solve_rs_discounted(example(), 3.0, beta, 1e-10);
        benchmark::DoNotOptimize(rsb::switch_index(sol));
    }
}
BENCHMARK(BM_DiscountedCell)->Arg(50)->Arg(90)->Arg(99);

void BM_PerronEvaluation(benchmark::State& state) {
    const rsb::DecisionRule rule({1, 0, 0});
    for (auto _ : state) benchmark::DoNotOptimize(rsb::average_value_of_rule(example(), rule, 1.0));
}
BENCHMARK(BM_PerronEvaluation);

void BM_AverageSolve(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(rsb::solve_rs_average(example(), 1.0, rsb::kAverageSolverTol).lambda);
}
BENCHMARK(BM_AverageSolve);

void BM_SwitchpointRow(benchmark::State& state) {
    std::vector<double> gammas;
    for (int i = -50; i <= 50; ++i) gammas.push_back(i * 0.1);
    for (auto _ : state)
        benchmark::DoNotOptimize(rsb::switchpoint_grid(example(), {0.95}, gammas, 1e-10).cells.size());
}
BENCHMARK(BM_SwitchpointRow)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
