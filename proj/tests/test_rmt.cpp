#include <cmath>

#include <doctest.h>

#include "eigensense/errors.hpp"
#include "eigensense/rmt.hpp"
#include "eigensense/rng.hpp"
#include "oracles.hpp"

using namespace eigensense;

TEST_SUITE("rmt") {

TEST_CASE("support edges in closed form") {
    const MpSupport quarter = mp_support(1.0, 0.25);
    CHECK(quarter.a == 0.25);
    CHECK(quarter.b == 2.25);

    const MpSupport scaled = mp_support(2.0, 0.25);
    CHECK(scaled.a == 0.5);
    CHECK(scaled.b == 4.5);

    const MpSupport tenth = mp_support(1.0, 0.1);
    CHECK(tenth.a == doctest::Approx(0.46754446796632413).epsilon(1e-12));
    CHECK(tenth.b == doctest::Approx(1.7324555320336759).epsilon(1e-12));
}

TEST_CASE("support edges are recomputed bit-identically") {
    const MpSupport s = mp_support(3.7, 0.31);
    const double root = std::sqrt(s.alpha);
    CHECK(s.a == s.sigma2 * (1.0 - root) * (1.0 - root));
    CHECK(s.b == s.sigma2 * (1.0 + root) * (1.0 + root));
    CHECK(s.a > 0.0);
    CHECK(s.a < s.b);
}

TEST_CASE("support rejects bad parameters") {
    CHECK_THROWS_AS(mp_support(1.0, 1.0), UnsupportedRegimeError);
    CHECK_THROWS_AS(mp_support(1.0, 1.5), UnsupportedRegimeError);
    CHECK_THROWS_AS(mp_support(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(mp_support(1.0, -0.2), DomainError);
    CHECK_THROWS_AS(mp_support(0.0, 0.5), DomainError);
    CHECK_THROWS_AS(mp_support(-1.0, 0.5), DomainError);
}

TEST_CASE("edge scaling in sigma2 is exact") {
    const MpSupport base = mp_support(1.0, 0.37);
    for (double c : {0.5, 2.0, 9.25}) {
        const MpSupport scaled = mp_support(c, 0.37);
        CHECK(scaled.a == c * base.a);
        CHECK(scaled.b == c * base.b);
    }
}

TEST_CASE("density vanishes at and outside the edges") {
    const MpSupport s = mp_support(1.0, 0.25);
    CHECK(mp_density(s.a, s) == 0.0);
    CHECK(mp_density(s.b, s) == 0.0);
    CHECK(mp_density(s.a / 2.0, s) == 0.0);
    CHECK(mp_density(s.b * 2.0, s) == 0.0);
    CHECK(mp_density(1.0, s) > 0.0);
    CHECK_THROWS_AS(mp_density(0.0, s), DomainError);
    CHECK_THROWS_AS(mp_density(-1.0, s), DomainError);
}

TEST_CASE("density integrates to one over the support") {
    for (const auto& [sigma2, alpha] : std::initializer_list<std::pair<double, double>>{
             {1.0, 0.25}, {1.0, 0.1}, {2.5, 0.5}, {0.4, 0.85}}) {
        const MpSupport s = mp_support(sigma2, alpha);
        const double mass = oracles::adaptive_simpson(
            [&s](double x) { return mp_density(x, s); }, s.a, s.b, 1e-6);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-4));
    }
}

TEST_CASE("density is nonnegative on a grid") {
    const MpSupport s = mp_support(1.7, 0.6);
    for (int i = 1; i <= 200; ++i) {
        const double x = s.b * 1.2 * i / 200.0;
        CHECK(mp_density(x, s) >= 0.0);
    }
}

TEST_CASE("ratio threshold closed form") {
    CHECK(ratio_threshold(0.5) == doctest::Approx(33.970562748477141).epsilon(1e-12));
    // Note: this value follows from (1+sqrt(0.1))^2 / (1-sqrt(0.1))^2 and
    // equals b/a of the unit-variance support at alpha = 0.1.
    CHECK(ratio_threshold(0.1) == doctest::Approx(3.7054347783630703).epsilon(1e-12));
    CHECK(ratio_threshold(0.25) == doctest::Approx(9.0).epsilon(1e-12));
    CHECK_THROWS_AS(ratio_threshold(0.0), DomainError);
    CHECK_THROWS_AS(ratio_threshold(1.0), DomainError);
    CHECK_THROWS_AS(ratio_threshold(-0.5), DomainError);
}

TEST_CASE("ratio threshold tends to one for thin matrices") {
    CHECK(ratio_threshold(1e-8) == doctest::Approx(1.0).epsilon(1e-3));
    // monotone in alpha
    double previous = ratio_threshold(1e-8);
    for (double alpha = 0.1; alpha < 0.95; alpha += 0.1) {
        const double current = ratio_threshold(alpha);
        CHECK(current > previous);
        previous = current;
    }
}

TEST_CASE("ratio threshold equals b/a for every sigma2") {
    for (double sigma2 : {0.3, 1.0, 42.0}) {
        for (double alpha : {0.05, 0.1, 0.5, 0.9}) {
            const MpSupport s = mp_support(sigma2, alpha);
            CHECK(ratio_threshold(alpha) ==
                  doctest::Approx(s.b / s.a).epsilon(1e-12));
        }
    }
}

TEST_CASE("detectability condition") {
    CHECK(baik_detectable(0.1, 1.0));
    CHECK_FALSE(baik_detectable(0.5, linear_from_db(-5.0)));   // 0.316 < sqrt(0.5)
    CHECK_FALSE(baik_detectable(0.1, std::sqrt(0.1)));         // boundary is strict
    CHECK(baik_detectable(0.1, std::nextafter(std::sqrt(0.1), 1.0)));
    CHECK_FALSE(baik_detectable(1.2, 50.0));                   // alpha >= 1 never detects
    CHECK_THROWS_AS(baik_detectable(0.0, 1.0), DomainError);
}

TEST_CASE("spiked top eigenvalue") {
    const SpikedModel round = spiked_top_eigenvalue(1.0, 1.0, 0.25);
    CHECK(round.rho == 1.0);
    CHECK(round.b_prime == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(round.detectable);

    const SpikedModel minus5 = spiked_top_eigenvalue(1.0, 3.1622777, 0.1);
    CHECK(minus5.rho == doctest::Approx(0.31622776203367592).epsilon(1e-12));
    CHECK(minus5.b_prime == doctest::Approx(5.4785054951917290).epsilon(1e-12));

    CHECK_THROWS_AS(spiked_top_eigenvalue(0.0, 1.0, 0.25), DomainError);
    CHECK_THROWS_AS(spiked_top_eigenvalue(1.0, 1.0, 1.0), UnsupportedRegimeError);
}

TEST_CASE("spike exceeds the noise edge exactly when detectable") {
    Rng rng(61);
    for (int rep = 0; rep < 200; ++rep) {
        const double alpha = 0.05 + 0.9 * rng.next_unit();
        const double sigma2 = 0.25 + 4.0 * rng.next_unit();
        const double rho = std::sqrt(alpha) * (1.01 + 3.0 * rng.next_unit());
        const SpikedModel spiked = spiked_top_eigenvalue(rho * sigma2, sigma2, alpha);
        CHECK(spiked.detectable);
        CHECK(spiked.b_prime > mp_support(sigma2, alpha).b);
    }
}

TEST_CASE("spike is minimized at the detectability boundary") {
    for (double alpha : {0.1, 0.5, 0.8}) {
        const double sigma2 = 1.3;
        const double boundary = std::sqrt(alpha);
        const MpSupport support = mp_support(sigma2, alpha);
        const SpikedModel at = spiked_top_eigenvalue(boundary * sigma2, sigma2, alpha);
        CHECK(std::abs(at.b_prime - support.b) <= 1e-12 * support.b);
        for (double rho : {boundary * 0.9, boundary * 1.1}) {
            const SpikedModel off = spiked_top_eigenvalue(rho * sigma2, sigma2, alpha);
            CHECK(off.b_prime > support.b);
        }
    }
}

TEST_CASE("snr inversion picks the admissible root") {
    CHECK(snr_from_ratio(10.0, 0.25) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("snr inversion near the phase transition") {
    const double alpha = 0.1;
    const double r = ratio_threshold(alpha) * (1.0 + 1e-9);
    CHECK(snr_from_ratio(r, alpha) == doctest::Approx(std::sqrt(alpha)).epsilon(1e-3));
}

TEST_CASE("snr inversion round trip") {
    Rng rng(67);
    for (int rep = 0; rep < 100; ++rep) {
        const double alpha = 0.05 + 0.85 * rng.next_unit();
        const double rho = std::sqrt(alpha) * (1.01 + 5.0 * rng.next_unit());
        const double forward = (rho + 1.0) * (1.0 + alpha / rho) /
                               ((1.0 - std::sqrt(alpha)) * (1.0 - std::sqrt(alpha)));
        const double recovered = snr_from_ratio(forward, alpha);
        CHECK(std::abs(recovered - rho) <= 1e-9 * rho);
    }
}

TEST_CASE("snr inversion refuses sub-threshold ratios") {
    CHECK_THROWS_AS(snr_from_ratio(ratio_threshold(0.25), 0.25), NotDetectableError);
    CHECK_THROWS_AS(snr_from_ratio(1.0, 0.25), NotDetectableError);
}

TEST_CASE("db conversions") {
    CHECK(linear_from_db(-5.0) == doctest::Approx(0.31622776601683794).epsilon(1e-15));
    CHECK(db_from_linear(1.0) == 0.0);
    CHECK(db_from_linear(linear_from_db(-5.0)) == doctest::Approx(-5.0).epsilon(1e-12));
    CHECK_THROWS_AS(db_from_linear(0.0), DomainError);
}

}  // TEST_SUITE
