#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eigensense/complex_matrix.hpp"
#include "eigensense/rng.hpp"

namespace eigensense {

enum class Hypothesis { H0, H1 };

enum class NoiseKind { gaussian, uniform, laplace };
enum class SignalKind { gaussian, qpsk };

/// One draw of the channel gains, held fixed across all N samples of a block.
struct ChannelRealization {
    std::vector<Complex> h;
    double channel_energy = 0.0;  ///< sum |h_i|^2

    static ChannelRealization from_gains(std::vector<Complex> gains);
};

/// Channel model: Rayleigh gains with per-sensor variance 1/K (so the total
/// expected channel energy is 1 regardless of K), or a caller-supplied fixed
/// vector.
struct Fading {
    enum class Kind { rayleigh_over_k, fixed };

    Kind kind = Kind::rayleigh_over_k;
    std::vector<Complex> fixed_h;  ///< used when kind == fixed

    static Fading rayleigh() { return {Kind::rayleigh_over_k, {}}; }
    static Fading fixed(std::vector<Complex> h) { return {Kind::fixed, std::move(h)}; }

    /// Equal real gains 1/sqrt(K); total channel energy 1 up to rounding.
    static Fading fixed_unit(std::size_t sensors);
};

/// Full description of one synthetic observation block.
struct ScenarioConfig {
    std::size_t sensors = 2;  ///< K, >= 2
    std::size_t samples = 4;  ///< N, >= K
    double sigma2 = 1.0;      ///< total complex noise variance per entry
    Hypothesis hypothesis = Hypothesis::H0;
    NoiseKind noise = NoiseKind::gaussian;
    SignalKind signal = SignalKind::gaussian;
    Fading fading = Fading::rayleigh();
    std::uint64_t seed = 0;

    /// Throws ConfigError on any violated constraint.
    void validate() const;

    /// Stable hash of every field, as a hex token.
    std::string digest() const;
};

/// K x N sample block with its generating ground truth.
struct ObservationMatrix {
    ComplexMatrix samples;
    Hypothesis truth;
    std::optional<ChannelRealization> channel;  ///< present under H1
    std::string config_digest;
};

/// Draws the channel gains. Rayleigh mode: circular Gaussian with
/// E|h_i|^2 = 1/K. Fixed mode: returns the configured gains verbatim.
ChannelRealization draw_channel(std::size_t sensors, const Fading& fading, Rng& rng);

/// Generates Y under the configured hypothesis:
///   H0: Y[i][k] = n_i(k)
///   H1: Y[i][k] = h_i * s(k) + n_i(k), h drawn once per block
/// with E|s(k)|^2 = 1 and per-entry noise variance sigma2. Deterministic in
/// the seed: the draw order is channel, then signal, then noise row-major.
ObservationMatrix synthesize(const ScenarioConfig& config);

/// Two independent zero-mean Gaussian draws, each of the given variance.
std::pair<double, double> gaussian_pair(Rng& rng, double variance);

/// Zero-mean uniform draw on [-sqrt(3 v), sqrt(3 v)]; variance exactly v.
double uniform_sym(Rng& rng, double variance);

/// Zero-mean Laplace draw of variance exactly v (scale sqrt(v/2)).
double laplace_sym(Rng& rng, double variance);

/// One complex draw of total variance `variance`, split evenly across the
/// real and imaginary parts, from the requested family.
Complex complex_noise(Rng& rng, NoiseKind kind, double variance);

}  // namespace eigensense
