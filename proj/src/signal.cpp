#include "eigensense/signal.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <string>

#include "eigensense/errors.hpp"

namespace eigensense {

namespace {

Complex draw_signal_sample(Rng& rng, SignalKind kind) {
    switch (kind) {
        case SignalKind::gaussian: {
            // Unit total variance, split across components.
            auto [re, im] = gaussian_pair(rng, 0.5);
            return {re, im};
        }
        case SignalKind::qpsk: {
            constexpr double amp = std::numbers::sqrt2 / 2.0;
            const std::uint64_t bits = rng.next_u64();
            return {(bits & 1) != 0 ? amp : -amp, (bits & 2) != 0 ? amp : -amp};
        }
    }
    throw ConfigError("unknown signal kind");
}

std::uint64_t hash_double(double x) {
    std::uint64_t bits;
    static_assert(sizeof bits == sizeof x);
    __builtin_memcpy(&bits, &x, sizeof bits);
    return bits;
}

}  // namespace

std::pair<double, double> gaussian_pair(Rng& rng, double variance) {
    const double u1 = rng.next_unit_positive();
    const double u2 = rng.next_unit();
    const double radius = std::sqrt(-2.0 * variance * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

double uniform_sym(Rng& rng, double variance) {
    const double half_width = std::sqrt(3.0 * variance);
    return (2.0 * rng.next_unit() - 1.0) * half_width;
}

double laplace_sym(Rng& rng, double variance) {
    const double scale = std::sqrt(variance / 2.0);
    const double magnitude = -scale * std::log(rng.next_unit_positive());
    return (rng.next_u64() & 1) != 0 ? magnitude : -magnitude;
}

Complex complex_noise(Rng& rng, NoiseKind kind, double variance) {
    const double component = variance / 2.0;
    switch (kind) {
        case NoiseKind::gaussian: {
            auto [re, im] = gaussian_pair(rng, component);
            return {re, im};
        }
        case NoiseKind::uniform: {
            const double re = uniform_sym(rng, component);
            return {re, uniform_sym(rng, component)};
        }
        case NoiseKind::laplace: {
            const double re = laplace_sym(rng, component);
            return {re, laplace_sym(rng, component)};
        }
    }
    throw ConfigError("unknown noise kind");
}

ChannelRealization ChannelRealization::from_gains(std::vector<Complex> gains) {
    if (gains.empty()) {
        throw ConfigError("channel needs at least one gain");
    }
    double energy = 0.0;
    for (const Complex& g : gains) {
        energy += std::norm(g);
    }
    return {std::move(gains), energy};
}

Fading Fading::fixed_unit(std::size_t sensors) {
    const double gain = std::sqrt(1.0 / static_cast<double>(sensors));
    return fixed(std::vector<Complex>(sensors, Complex(gain, 0.0)));
}

void ScenarioConfig::validate() const {
    if (sensors < 2) {
        throw ConfigError("cooperative sensing needs K >= 2 sensors, got " +
                          std::to_string(sensors));
    }
    if (samples < sensors) {
        throw ConfigError("need at least as many samples as sensors, got K=" +
                          std::to_string(sensors) + " N=" + std::to_string(samples));
    }
    if (!(sigma2 > 0.0)) {
        throw ConfigError("noise variance must be positive");
    }
    if (fading.kind == Fading::Kind::fixed && fading.fixed_h.size() != sensors) {
        throw ConfigError("fixed channel has " + std::to_string(fading.fixed_h.size()) +
                          " gains for K=" + std::to_string(sensors) + " sensors");
    }
}

std::string ScenarioConfig::digest() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    auto absorb = [&h](std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h = Rng(h).next_u64();
    };
    absorb(sensors);
    absorb(samples);
    absorb(hash_double(sigma2));
    absorb(static_cast<std::uint64_t>(hypothesis));
    absorb(static_cast<std::uint64_t>(noise));
    absorb(static_cast<std::uint64_t>(signal));
    absorb(static_cast<std::uint64_t>(fading.kind));
    for (const Complex& g : fading.fixed_h) {
        absorb(hash_double(g.real()));
        absorb(hash_double(g.imag()));
    }
    absorb(seed);

    char buffer[19];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(h));
    return buffer;
}

ChannelRealization draw_channel(std::size_t sensors, const Fading& fading, Rng& rng) {
    if (sensors == 0) {
        throw ConfigError("channel needs at least one sensor");
    }
    if (fading.kind == Fading::Kind::fixed) {
        return ChannelRealization::from_gains(fading.fixed_h);
    }
    // E|h_i|^2 = 1/K, split across components.
    const double component = 1.0 / (2.0 * static_cast<double>(sensors));
    std::vector<Complex> gains(sensors);
    for (Complex& g : gains) {
        auto [re, im] = gaussian_pair(rng, component);
        g = {re, im};
    }
    return ChannelRealization::from_gains(std::move(gains));
}

ObservationMatrix synthesize(const ScenarioConfig& config) {
    config.validate();
    Rng rng(config.seed);
    const std::size_t k = config.sensors;
    const std::size_t n = config.samples;

    ComplexMatrix y(k, n);
    std::optional<ChannelRealization> channel;

    if (config.hypothesis == Hypothesis::H1) {
        ChannelRealization drawn = draw_channel(k, config.fading, rng);
        std::vector<Complex> s(n);
        for (Complex& sample : s) {
            sample = draw_signal_sample(rng, config.signal);
        }
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                y(i, j) = drawn.h[i] * s[j];
            }
        }
        channel = std::move(drawn);
    }

    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            y(i, j) += complex_noise(rng, config.noise, config.sigma2);
        }
    }

    return {std::move(y), config.hypothesis, std::move(channel), config.digest()};
}

}  // namespace eigensense
