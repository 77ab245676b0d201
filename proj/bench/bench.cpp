// Compares the serial reference kernels against the OpenMP ones: the Gram
// construction and the Monte Carlo trial loop. Also cross-checks that both
// paths produce identical results before timing them.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "eigensense/linalg.hpp"
#include "eigensense/montecarlo.hpp"
#include "eigensense/signal.hpp"

namespace es = eigensense;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_of(Clock::time_point start, Clock::time_point stop) {
    return std::chrono::duration<double>(stop - start).count();
}

template <typename F>
double best_of(int reps, F&& body) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto start = Clock::now();
        body();
        const auto stop = Clock::now();
        best = std::min(best, seconds_of(start, stop));
    }
    return best;
}

void bench_gram(std::size_t sensors, std::size_t samples, int reps) {
    es::ScenarioConfig config;
    config.sensors = sensors;
    config.samples = samples;
    config.seed = 7;
    const es::ObservationMatrix observation = es::synthesize(config);

    const es::HermitianMatrix serial = es::gram_serial(observation.samples);
    const es::HermitianMatrix parallel = es::gram(observation.samples);
    bool identical = true;
    for (std::size_t i = 0; i < serial.entries().size(); ++i) {
        identical = identical && serial.entries()[i] == parallel.entries()[i];
    }

    const double t_serial = best_of(reps, [&] { es::gram_serial(observation.samples); });
    const double t_parallel = best_of(reps, [&] { es::gram(observation.samples); });
    std::printf("gram     K=%-4zu N=%-5zu serial %8.4f s   openmp %8.4f s   speedup %5.2fx   %s\n",
                sensors, samples, t_serial, t_parallel, t_serial / t_parallel,
                identical ? "bit-identical" : "MISMATCH");
}

void bench_experiment(std::size_t trials, int reps) {
    es::ExperimentSpec spec;
    spec.name = "bench";
    spec.kind = es::ExperimentKind::ratio_convergence;
    spec.alpha = 0.1;
    spec.hypothesis = es::Hypothesis::H0;
    spec.sample_sizes = {200};
    spec.trials = trials;
    spec.master_seed = 11;

    const es::ExperimentSummary serial = es::run_experiment_serial(spec);
    const es::ExperimentSummary parallel = es::run_experiment(spec);
    const bool identical =
        serial.points[0].mean_ratio == parallel.points[0].mean_ratio &&
        serial.points[0].ratio_std_error == parallel.points[0].ratio_std_error;

    const double t_serial = best_of(reps, [&] { es::run_experiment_serial(spec); });
    const double t_parallel = best_of(reps, [&] { es::run_experiment(spec); });
    std::printf("trials   n=%-4zu (K=20,N=200) serial %8.4f s   openmp %8.4f s   speedup %5.2fx   %s\n",
                trials, t_serial, t_parallel, t_serial / t_parallel,
                identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    int reps = 3;
    if (argc > 1) {
        reps = std::max(1, std::atoi(argv[1]));
    }
    std::printf("threads = %d\n", es::resolve_thread_count());
    bench_gram(50, 500, reps);
    bench_gram(200, 1000, reps);
    bench_experiment(100, reps);
    return 0;
}
