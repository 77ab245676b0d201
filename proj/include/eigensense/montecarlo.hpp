#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eigensense/detect.hpp"
#include "eigensense/signal.hpp"

namespace eigensense {

enum class ExperimentKind { ratio_convergence, detector_comparison };

/// Description of one Monte Carlo experiment: a sweep over block sizes N,
/// either at fixed aspect ratio (K = alpha * N) or at fixed sensor count.
struct ExperimentSpec {
    std::string name;
    ExperimentKind kind = ExperimentKind::ratio_convergence;

    // ratio-convergence: K = alpha * N, single hypothesis per run.
    double alpha = 0.5;
    Hypothesis hypothesis = Hypothesis::H0;

    // detector-comparison: K fixed, truth balanced 50/50 per point.
    std::size_t sensors = 10;
    bool known_variance = true;

    /// SNR under H1. Convergence runs read it as the total SNR of the fixed
    /// unit-energy channel (sigma2 = 1/rho); comparison runs read it as the
    /// per-sensor average received SNR under the variance-1/K Rayleigh
    /// profile (sigma2 = (1/K)/rho).
    double rho_db = -5.0;
    NoiseKind noise = NoiseKind::gaussian;
    SignalKind signal = SignalKind::gaussian;
    std::vector<std::size_t> sample_sizes;  ///< swept N values
    std::size_t trials = 2000;              ///< per sweep point
    std::uint64_t master_seed = 0;
    std::vector<DetectorId> detectors;  ///< empty = default set for the kind

    /// Validates and fills the default detector set. Throws ConfigError.
    void validate_and_finalize();
};

/// One trial's measurements; `labels` is parallel to the spec's detectors.
struct TrialRecord {
    std::size_t trial_index = 0;
    Hypothesis truth = Hypothesis::H0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double ratio = 0.0;
    std::vector<Hypothesis> labels;
};

/// Per-detector aggregate at one sweep point.
struct DetectorPointStats {
    DetectorId detector;
    double proportion_correct;
    double ci_low;   ///< Wilson 95%
    double ci_high;
    double specificity;  ///< correct rate on H0 trials (NaN if none)
    double sensitivity;  ///< correct rate on H1 trials (NaN if none)
};

/// Aggregate of all trials at one (K, N) sweep point.
struct SweepPointSummary {
    std::size_t samples = 0;  ///< N
    std::size_t sensors = 0;  ///< K
    double alpha = 0.0;       ///< K / N
    std::size_t trials = 0;
    double mean_ratio = 0.0;
    double ratio_std_error = 0.0;       ///< 0 for a single trial
    double asymptote = 0.0;             ///< NaN for comparison runs
    double ratio_to_asymptote = 0.0;    ///< NaN likewise
    bool baik_condition_satisfied = false;  ///< metadata flag for H1 normalization
    std::vector<DetectorPointStats> detectors;
};

struct ExperimentSummary {
    ExperimentSpec spec;
    std::vector<SweepPointSummary> points;
};

/// 95% Wilson score interval for `successes` out of `n`.
struct WilsonInterval {
    double low;
    double high;
};
WilsonInterval wilson_interval(std::size_t successes, std::size_t n);

/// Aggregates the records of one sweep point. Deterministic: accumulation
/// follows trial-index order regardless of how the records were produced.
/// Throws DomainError on an empty record list.
SweepPointSummary summarize(const ExperimentSpec& spec, std::size_t point_index,
                            std::span<const TrialRecord> records);

/// Runs the experiment with trials dispatched across OpenMP threads.
/// Each trial draws from a substream derived from (master_seed, point, trial),
/// and records land in a preallocated slot, so the summary is bit-identical
/// at every thread count. Thread count is capped by EIGENSENSE_THREADS
/// (0 or unset = all available).
ExperimentSummary run_experiment(const ExperimentSpec& spec);

/// Single-threaded reference runner kept for tests and the benchmark.
ExperimentSummary run_experiment_serial(const ExperimentSpec& spec);

/// Convergence study of lambda_max/lambda_min toward its limit, at fixed
/// alpha, for each N in `sample_sizes` (K = alpha * N must be integral).
/// Under H1: sigma2 = 1/rho at rho = -5 dB with a fixed unit-energy channel.
ExperimentSummary run_ratio_convergence(double alpha, std::vector<std::size_t> sample_sizes,
                                        Hypothesis hypothesis, std::size_t trials,
                                        std::uint64_t seed);

/// Detector comparison at fixed K over `sample_sizes`, truth balanced 50/50,
/// Rayleigh fading of variance 1/K under H1. rho_db is the per-sensor
/// average received SNR (sigma2 = (1/K)/rho). Compares the blind ratio
/// detector against energy-plus-voting at V_T = sigma2 when the variance is
/// treated as known.
ExperimentSummary run_detector_comparison(std::size_t sensors,
                                          std::vector<std::size_t> sample_sizes, double rho_db,
                                          bool known_variance, std::size_t trials,
                                          std::uint64_t seed);

/// Thread cap from EIGENSENSE_THREADS (0 or unset = all available); always 1
/// without OpenMP.
int resolve_thread_count();

}  // namespace eigensense
