#include "eigensense/detect.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "eigensense/errors.hpp"
#include "eigensense/format.hpp"

namespace eigensense {

std::string_view detector_name(DetectorId id) {
    switch (id) {
        case DetectorId::mp_support:
            return "mp-support";
        case DetectorId::eig_ratio:
            return "eig-ratio";
        case DetectorId::energy:
            return "energy";
        case DetectorId::energy_vote:
            return "energy-vote";
    }
    return "unknown";
}

std::optional<DetectorId> detector_from_name(std::string_view name) {
    if (name == "mp-support") return DetectorId::mp_support;
    if (name == "eig-ratio") return DetectorId::eig_ratio;
    if (name == "energy") return DetectorId::energy;
    if (name == "energy-vote") return DetectorId::energy_vote;
    return std::nullopt;
}

Decision support_test(const EigenSpectrum& spectrum, std::size_t samples,
                      const MpSupport& support, double slack) {
    if (samples == 0) {
        throw DimensionError("sample count must be positive");
    }
    if (!(slack >= 0.0)) {
        throw DomainError("slack must be nonnegative");
    }
    const double actual_alpha =
        static_cast<double>(spectrum.size()) / static_cast<double>(samples);
    if (std::abs(actual_alpha - support.alpha) > 1e-12) {
        throw ConfigError("spectrum aspect ratio " + fmt_g9(actual_alpha) +
                          " does not match support alpha " + fmt_g9(support.alpha));
    }

    const double lo = support.a * (1.0 - slack);
    const double hi = support.b * (1.0 + slack);
    const double excursion =
        std::max(spectrum.max() - support.b, support.a - spectrum.min());
    const bool inside = spectrum.min() >= lo && spectrum.max() <= hi;
    return {inside ? Hypothesis::H0 : Hypothesis::H1, excursion, 0.0,
            DetectorId::mp_support};
}

Decision ratio_test(const EigenSpectrum& spectrum, double alpha) {
    const double threshold = ratio_threshold(alpha);

    // PSD clamp: negative dust within 1e-9 of the trace scale counts as 0.
    const double clamp = 1e-9 * std::abs(spectrum.trace);
    double lambda_min = spectrum.min();
    if (lambda_min < 0.0 && lambda_min >= -clamp) {
        lambda_min = 0.0;
    }
    double lambda_max = spectrum.max();
    if (lambda_max < 0.0 && lambda_max >= -clamp) {
        lambda_max = 0.0;
    }

    if (lambda_min <= 0.0) {
        // Degenerate spectrum: record an infinite ratio and fire H1.
        return {Hypothesis::H1, std::numeric_limits<double>::infinity(), threshold,
                DetectorId::eig_ratio};
    }
    const double statistic = lambda_max / lambda_min;
    return {statistic <= threshold ? Hypothesis::H0 : Hypothesis::H1, statistic, threshold,
            DetectorId::eig_ratio};
}

Decision energy_test(std::span<const Complex> samples, double v_t) {
    if (samples.empty()) {
        throw DomainError("energy test needs at least one sample");
    }
    if (!(v_t > 0.0)) {
        throw DomainError("energy threshold must be positive, got " + fmt_g9(v_t));
    }
    double energy = 0.0;
    for (const Complex& y : samples) {
        energy += std::norm(y);
    }
    const double statistic = energy / static_cast<double>(samples.size());
    return {statistic >= v_t ? Hypothesis::H1 : Hypothesis::H0, statistic, v_t,
            DetectorId::energy};
}

FusionDecision vote(std::span<const Decision> decisions) {
    if (decisions.empty()) {
        throw DomainError("vote needs at least one decision");
    }
    std::size_t votes_h1 = 0;
    for (const Decision& d : decisions) {
        if (d.label == Hypothesis::H1) {
            ++votes_h1;
        }
    }
    const std::size_t total = decisions.size();
    // Strict majority decides; an exact tie falls to H1.
    const Hypothesis label = 2 * votes_h1 >= total ? Hypothesis::H1 : Hypothesis::H0;
    return {label, votes_h1, total};
}

FusionDecision energy_vote(const ObservationMatrix& observation, double v_t) {
    const ComplexMatrix& y = observation.samples;
    std::vector<Decision> decisions;
    decisions.reserve(y.rows());
    for (std::size_t i = 0; i < y.rows(); ++i) {
        decisions.push_back(energy_test(y.row(i), v_t));
    }
    return vote(decisions);
}

Decision rmt_detect_known_variance(const ObservationMatrix& observation, double sigma2,
                                   double slack) {
    const ComplexMatrix& y = observation.samples;
    if (y.rows() > y.cols()) {
        throw UnsupportedRegimeError("K=" + std::to_string(y.rows()) + " exceeds N=" +
                                     std::to_string(y.cols()));
    }
    const double alpha = static_cast<double>(y.rows()) / static_cast<double>(y.cols());
    const MpSupport support = mp_support(sigma2, alpha);
    return support_test(eigh(gram(y)), y.cols(), support, slack);
}

Decision rmt_detect_blind(const ObservationMatrix& observation) {
    const ComplexMatrix& y = observation.samples;
    if (y.rows() > y.cols()) {
        throw UnsupportedRegimeError("K=" + std::to_string(y.rows()) + " exceeds N=" +
                                     std::to_string(y.cols()));
    }
    const double alpha = static_cast<double>(y.rows()) / static_cast<double>(y.cols());
    return ratio_test(eigh(gram(y)), alpha);
}

}  // namespace eigensense
