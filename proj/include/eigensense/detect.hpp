#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "eigensense/linalg.hpp"
#include "eigensense/rmt.hpp"
#include "eigensense/signal.hpp"

namespace eigensense {

enum class DetectorId { mp_support, eig_ratio, energy, energy_vote };

std::string_view detector_name(DetectorId id);
std::optional<DetectorId> detector_from_name(std::string_view name);

/// Outcome of one detector applied to one observation.
struct Decision {
    Hypothesis label;
    double statistic;
    double threshold;
    DetectorId detector;
};

/// Majority-vote fusion of per-sensor decisions.
struct FusionDecision {
    Hypothesis label;
    std::size_t votes_h1 = 0;
    std::size_t votes_total = 0;
};

/// Known-variance support test: H0 iff every eigenvalue lies inside
/// [a (1 - slack), b (1 + slack)]. The statistic is the largest signed
/// excursion outside [a, b] (negative when all eigenvalues are interior),
/// compared against threshold 0.
///
/// `samples` is the N of the originating K x N block; the test refuses
/// spectra whose K/N does not match support.alpha.
Decision support_test(const EigenSpectrum& spectrum, std::size_t samples,
                      const MpSupport& support, double slack = 0.0);

/// Variance-free ratio test: H0 iff lambda_max / lambda_min <= threshold
/// (boundary inclusive). Eigenvalues in [-1e-9 * trace, 0) are clamped to 0
/// first; a zero (or negative) lambda_min forces H1 with an infinite
/// statistic rather than a division error.
Decision ratio_test(const EigenSpectrum& spectrum, double alpha);

/// Single-sensor energy rule: H1 iff (1/N) sum |y(k)|^2 >= v_t
/// (boundary fires H1).
Decision energy_test(std::span<const Complex> samples, double v_t);

/// Majority vote; an exact tie decides H1 (protects the primary user).
FusionDecision vote(std::span<const Decision> decisions);

/// Per-sensor energy tests at threshold v_t fused by majority vote.
FusionDecision energy_vote(const ObservationMatrix& observation, double v_t);

/// gram -> eigh -> support_test pipeline (uses the noise variance).
Decision rmt_detect_known_variance(const ObservationMatrix& observation, double sigma2,
                                   double slack = 0.0);

/// gram -> eigh -> ratio_test pipeline. Blind: consumes only the aspect
/// ratio K/N, never the noise variance (the signature admits none).
Decision rmt_detect_blind(const ObservationMatrix& observation);

}  // namespace eigensense
