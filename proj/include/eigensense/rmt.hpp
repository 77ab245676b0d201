#pragma once

namespace eigensense {

/// Noise-only support of the sample covariance spectrum: the limit law for a
/// K x N pure-noise block with aspect ratio alpha = K/N < 1 and per-sample
/// variance sigma2 concentrates on [a, b].
struct MpSupport {
    double sigma2;  ///< noise variance, > 0
    double alpha;   ///< aspect ratio K/N, in (0, 1)
    double a;       ///< lower edge sigma2 * (1 - sqrt(alpha))^2
    double b;       ///< upper edge sigma2 * (1 + sqrt(alpha))^2
};

/// Closed-form support edges. Throws UnsupportedRegimeError for alpha >= 1
/// (the lower edge degenerates to 0) and DomainError for non-positive inputs.
MpSupport mp_support(double sigma2, double alpha);

/// Density of the continuous part of the limiting spectral law at x > 0:
/// sqrt((x-a)^+ (b-x)^+) / (2 pi alpha sigma2 x); zero outside [a, b].
/// The point mass at zero has weight (1 - 1/alpha)^+ = 0 for alpha < 1 and
/// is therefore not represented.
double mp_density(double x, const MpSupport& support);

/// Largest/smallest-eigenvalue ratio of the noise-only support:
/// (1 + sqrt(alpha))^2 / (1 - sqrt(alpha))^2. Independent of sigma2.
double ratio_threshold(double alpha);

/// Whether a rank-one signal of SNR rho separates from the noise bulk:
/// alpha < 1 and rho > sqrt(alpha).
bool baik_detectable(double alpha, double rho);

/// Rank-one-signal quantities under H1.
struct SpikedModel {
    double channel_energy;  ///< total channel gain, sum |h_i|^2
    double sigma2;
    double alpha;
    double rho;      ///< SNR, channel_energy / sigma2
    double b_prime;  ///< limit of the top eigenvalue, (channel_energy + sigma2)(1 + alpha/rho)
    bool detectable; ///< baik_detectable(alpha, rho)
};

/// Asymptotic top eigenvalue of the sample covariance with one signal
/// present. Throws DomainError for channel_energy = 0 (noise-only regime).
SpikedModel spiked_top_eigenvalue(double channel_energy, double sigma2, double alpha);

/// Inverts r = (rho + 1)(1 + alpha/rho) / (1 - sqrt(alpha))^2 for the SNR.
///
/// The identity clears to rho^2 + (1 + alpha - c) rho + alpha = 0 with
/// c = r (1 - sqrt(alpha))^2; the larger root is returned because an
/// admissible SNR must exceed sqrt(alpha). Throws NotDetectableError when
/// r <= ratio_threshold(alpha) and DomainError when the discriminant is
/// negative (both the ratio and the discriminant are reported).
double snr_from_ratio(double r, double alpha);

/// 10 * log10(rho).
double db_from_linear(double rho);

/// 10^(rho_db / 10).
double linear_from_db(double rho_db);

}  // namespace eigensense
