#include "eigensense/rmt.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "eigensense/errors.hpp"
#include "eigensense/format.hpp"

namespace eigensense {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0)) {
        throw DomainError("alpha must be in (0,1), got " + fmt_g9(alpha));
    }
    if (!(alpha < 1.0)) {
        throw UnsupportedRegimeError("alpha must be in (0,1), got " + fmt_g9(alpha) +
                                     " (requires more samples than sensors)");
    }
}

}  // namespace

MpSupport mp_support(double sigma2, double alpha) {
    if (!(sigma2 > 0.0)) {
        throw DomainError("sigma2 must be positive, got " + fmt_g9(sigma2));
    }
    check_alpha(alpha);
    const double root = std::sqrt(alpha);
    const double lo = 1.0 - root;
    const double hi = 1.0 + root;
    return {sigma2, alpha, sigma2 * lo * lo, sigma2 * hi * hi};
}

double mp_density(double x, const MpSupport& support) {
    if (!(x > 0.0)) {
        throw DomainError("density argument must be positive, got " + fmt_g9(x));
    }
    const double above = x - support.a;
    const double below = support.b - x;
    if (above <= 0.0 || below <= 0.0) {
        return 0.0;
    }
    return std::sqrt(above * below) /
           (2.0 * std::numbers::pi * support.alpha * support.sigma2 * x);
}

double ratio_threshold(double alpha) {
    check_alpha(alpha);
    const double root = std::sqrt(alpha);
    const double hi = 1.0 + root;
    const double lo = 1.0 - root;
    return (hi * hi) / (lo * lo);
}

bool baik_detectable(double alpha, double rho) {
    if (!(alpha > 0.0)) {
        throw DomainError("alpha must be positive, got " + fmt_g9(alpha));
    }
    return alpha < 1.0 && rho > std::sqrt(alpha);
}

SpikedModel spiked_top_eigenvalue(double channel_energy, double sigma2, double alpha) {
    if (!(sigma2 > 0.0)) {
        throw DomainError("sigma2 must be positive, got " + fmt_g9(sigma2));
    }
    check_alpha(alpha);
    if (!(channel_energy > 0.0)) {
        throw DomainError("channel energy must be positive for a signal-bearing model, got " +
                          fmt_g9(channel_energy));
    }
    const double rho = channel_energy / sigma2;
    const double b_prime = (channel_energy + sigma2) * (1.0 + alpha / rho);
    return {channel_energy, sigma2, alpha, rho, b_prime, baik_detectable(alpha, rho)};
}

double snr_from_ratio(double r, double alpha) {
    const double threshold = ratio_threshold(alpha);
    if (!(r > threshold)) {
        throw NotDetectableError("ratio " + fmt_g9(r) + " does not exceed the threshold " +
                                 fmt_g9(threshold) + "; signal not detectable");
    }
    const double root = std::sqrt(alpha);
    const double c = r * (1.0 - root) * (1.0 - root);
    // rho^2 + (1 + alpha - c) rho + alpha = 0; the larger root is the
    // admissible SNR (the smaller one falls below sqrt(alpha)).
    const double half_b = (c - 1.0 - alpha) / 2.0;
    const double discriminant = half_b * half_b - alpha;
    if (discriminant < 0.0) {
        throw DomainError("ratio " + fmt_g9(r) + " yields a negative discriminant " +
                          fmt_g9(discriminant) + "; no real SNR solves it");
    }
    return half_b + std::sqrt(discriminant);
}

double db_from_linear(double rho) {
    if (!(rho > 0.0)) {
        throw DomainError("dB conversion needs a positive ratio, got " + fmt_g9(rho));
    }
    return 10.0 * std::log10(rho);
}

double linear_from_db(double rho_db) {
    return std::pow(10.0, rho_db / 10.0);
}

}  // namespace eigensense
