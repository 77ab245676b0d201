#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "eigensense/montecarlo.hpp"

namespace eigensense {

/// Command-line overrides applied on top of a parsed config section.
struct RunOverrides {
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
};

/// Experiment config files are flat key/value text with one `[section]` per
/// experiment preset:
///
///   [paper-fig4]
///   experiment = ratio-convergence
///   alpha = 0.5
///   hypothesis = H0
///   N = 20, 50, 100, 200, 400
///   trials = 2000
///   seed = 104729
///
/// Unknown keys are an error. `section` selects one preset when the file
/// holds several; a file with exactly one section needs no selector.
ExperimentSpec parse_experiment_config(const std::filesystem::path& path,
                                       const std::optional<std::string>& section,
                                       const RunOverrides& overrides);

/// Same, from an in-memory string (used by tests).
ExperimentSpec parse_experiment_config_text(const std::string& text,
                                            const std::optional<std::string>& section,
                                            const RunOverrides& overrides);

/// CSV with the fixed column set
///   experiment,alpha_or_K,N,detector,trials,proportion_correct,ci_low,
///   ci_high,mean_ratio,ratio_to_asymptote,seed
/// one row per (sweep point, detector), numbers at 9 significant digits.
std::string summary_to_csv(const ExperimentSummary& summary);

/// Gnuplot-friendly flavor: `#`-prefixed header, whitespace-separated columns.
std::string summary_to_dat(const ExperimentSummary& summary);

/// JSON run manifest: config echo, seed, per-point aggregates, library version.
std::string summary_to_manifest(const ExperimentSummary& summary);

}  // namespace eigensense
