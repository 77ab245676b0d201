#include <cmath>
#include <cstdlib>
#include <vector>

#include <doctest.h>

#include "eigensense/errors.hpp"
#include "eigensense/montecarlo.hpp"
#include "eigensense/rmt.hpp"

using namespace eigensense;

namespace {

ExperimentSpec small_convergence_spec() {
    ExperimentSpec spec;
    spec.name = "test";
    spec.kind = ExperimentKind::ratio_convergence;
    spec.alpha = 0.1;
    spec.hypothesis = Hypothesis::H0;
    spec.sample_sizes = {50, 100};
    spec.trials = 60;
    spec.master_seed = 4242;
    return spec;
}

ExperimentSpec small_comparison_spec() {
    ExperimentSpec spec;
    spec.name = "test-cmp";
    spec.kind = ExperimentKind::detector_comparison;
    spec.sensors = 10;
    spec.known_variance = true;
    spec.rho_db = -5.0;
    spec.sample_sizes = {10, 40};
    spec.trials = 61;  // odd on purpose
    spec.master_seed = 777;
    return spec;
}

bool summaries_identical(const ExperimentSummary& a, const ExperimentSummary& b) {
    if (a.points.size() != b.points.size()) {
        return false;
    }
    for (std::size_t p = 0; p < a.points.size(); ++p) {
        const SweepPointSummary& x = a.points[p];
        const SweepPointSummary& y = b.points[p];
        if (x.mean_ratio != y.mean_ratio || x.ratio_std_error != y.ratio_std_error) {
            return false;
        }
        if (x.detectors.size() != y.detectors.size()) {
            return false;
        }
        for (std::size_t d = 0; d < x.detectors.size(); ++d) {
            if (x.detectors[d].proportion_correct != y.detectors[d].proportion_correct ||
                x.detectors[d].ci_low != y.detectors[d].ci_low ||
                x.detectors[d].ci_high != y.detectors[d].ci_high) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("wilson interval frozen values") {
    // Closed-form evaluation at z = 1.959963984540054.
    const WilsonInterval w = wilson_interval(95, 100);
    CHECK(w.low == doctest::Approx(0.88824953076808085).epsilon(1e-9));
    CHECK(w.high == doctest::Approx(0.97845632084563203).epsilon(1e-9));

    const WilsonInterval all = wilson_interval(100, 100);
    CHECK(all.high == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(all.low < 1.0);
    CHECK(all.low > 0.9);

    const WilsonInterval none = wilson_interval(0, 50);
    CHECK(none.low == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(none.high > 0.0);

    CHECK_THROWS_AS(wilson_interval(1, 0), DomainError);
}

TEST_CASE("wilson interval contains the point estimate") {
    for (std::size_t n : {1ul, 2ul, 10ul, 997ul}) {
        for (std::size_t successes = 0; successes <= n; successes += std::max<std::size_t>(1, n / 7)) {
            const WilsonInterval w = wilson_interval(successes, n);
            const double p = static_cast<double>(successes) / static_cast<double>(n);
            CHECK(w.low >= 0.0);
            CHECK(w.high <= 1.0);
            CHECK(w.low <= p + 1e-15);
            CHECK(w.high >= p - 1e-15);
        }
    }
}

TEST_CASE("summarize on synthetic records") {
    ExperimentSpec spec = small_convergence_spec();
    spec.validate_and_finalize();

    std::vector<TrialRecord> records;
    for (std::size_t t = 0; t < 100; ++t) {
        TrialRecord r;
        r.trial_index = t;
        r.truth = Hypothesis::H0;
        r.lambda_min = 1.0;
        r.lambda_max = 2.0;
        r.ratio = 2.0;
        r.labels = {Hypothesis::H0};  // always correct
        records.push_back(r);
    }
    const SweepPointSummary point = summarize(spec, 0, records);
    CHECK(point.trials == 100);
    CHECK(point.mean_ratio == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(point.ratio_std_error == 0.0);
    REQUIRE(point.detectors.size() == 1);
    CHECK(point.detectors[0].proportion_correct == 1.0);
    CHECK(point.detectors[0].ci_high == doctest::Approx(1.0).epsilon(1e-12));

    // Half correct.
    for (std::size_t t = 0; t < records.size(); ++t) {
        records[t].labels[0] = t % 2 == 0 ? Hypothesis::H0 : Hypothesis::H1;
    }
    const SweepPointSummary half = summarize(spec, 0, records);
    CHECK(half.detectors[0].proportion_correct == 0.5);

    CHECK_THROWS_AS(summarize(spec, 0, std::span<const TrialRecord>{}), DomainError);
}

TEST_CASE("parallel and serial runners agree bit for bit") {
    const ExperimentSpec spec = small_convergence_spec();
    const ExperimentSummary serial = run_experiment_serial(spec);
    const ExperimentSummary parallel = run_experiment(spec);
    CHECK(summaries_identical(serial, parallel));
}

TEST_CASE("thread cap does not change results") {
    const ExperimentSpec spec = small_comparison_spec();
    setenv("EIGENSENSE_THREADS", "1", 1);
    const ExperimentSummary one = run_experiment(spec);
    setenv("EIGENSENSE_THREADS", "4", 1);
    const ExperimentSummary four = run_experiment(spec);
    unsetenv("EIGENSENSE_THREADS");
    CHECK(summaries_identical(one, four));
}

TEST_CASE("repeat runs are bit-identical") {
    const ExperimentSpec spec = small_comparison_spec();
    CHECK(summaries_identical(run_experiment(spec), run_experiment(spec)));
}

TEST_CASE("comparison runs balance the truth") {
    ExperimentSpec spec = small_comparison_spec();
    spec.sample_sizes = {20};
    spec.trials = 61;
    const ExperimentSummary summary = run_experiment(spec);
    REQUIRE(summary.points.size() == 1);
    const SweepPointSummary& point = summary.points[0];
    // 31 H0 trials, 30 H1 trials: proportion = (31 spec + 30 sens) / 61.
    REQUIRE(point.detectors.size() == 2);
    for (const DetectorPointStats& det : point.detectors) {
        const double recombined =
            (31.0 * det.specificity + 30.0 * det.sensitivity) / 61.0;
        CHECK(det.proportion_correct == doctest::Approx(recombined).epsilon(1e-12));
    }
}

TEST_CASE("balanced decomposition halves exactly on even trials") {
    ExperimentSpec spec = small_comparison_spec();
    spec.sample_sizes = {20};
    spec.trials = 60;
    const ExperimentSummary summary = run_experiment(spec);
    for (const DetectorPointStats& det : summary.points[0].detectors) {
        CHECK(det.proportion_correct ==
              doctest::Approx((det.specificity + det.sensitivity) / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("single-trial experiments produce degenerate but valid summaries") {
    ExperimentSpec spec = small_comparison_spec();
    spec.sample_sizes = {15};
    spec.trials = 1;
    const ExperimentSummary summary = run_experiment(spec);
    const SweepPointSummary& point = summary.points[0];
    CHECK(point.trials == 1);
    CHECK(point.ratio_std_error == 0.0);
    for (const DetectorPointStats& det : point.detectors) {
        CHECK(det.ci_low >= 0.0);
        CHECK(det.ci_high <= 1.0);
        CHECK(det.ci_low <= det.proportion_correct);
        CHECK(det.ci_high >= det.proportion_correct);
    }
}

TEST_CASE("non-integral sensor counts are rejected") {
    ExperimentSpec spec = small_convergence_spec();
    spec.sample_sizes = {50, 55};  // alpha 0.1 * 55 = 5.5
    CHECK_THROWS_AS(run_experiment(spec), ConfigError);
}

TEST_CASE("invalid specs are rejected") {
    ExperimentSpec spec = small_convergence_spec();
    spec.trials = 0;
    CHECK_THROWS_AS(run_experiment(spec), ConfigError);

    spec = small_convergence_spec();
    spec.sample_sizes.clear();
    CHECK_THROWS_AS(run_experiment(spec), ConfigError);

    spec = small_convergence_spec();
    spec.alpha = 1.2;
    CHECK_THROWS_AS(run_experiment(spec), ConfigError);

    spec = small_comparison_spec();
    spec.sample_sizes = {5};  // below K
    CHECK_THROWS_AS(run_experiment(spec), ConfigError);
}

TEST_CASE("h0 convergence heads toward the threshold") {
    ExperimentSpec spec = small_convergence_spec();
    spec.sample_sizes = {50, 200};
    spec.trials = 150;
    const ExperimentSummary summary = run_experiment(spec);
    REQUIRE(summary.points.size() == 2);
    CHECK(summary.points[0].ratio_to_asymptote > 0.4);
    CHECK(summary.points[0].ratio_to_asymptote < 1.0);
    CHECK(summary.points[1].ratio_to_asymptote > summary.points[0].ratio_to_asymptote);
    CHECK(summary.points[0].baik_condition_satisfied);
    CHECK(summary.points[0].asymptote == doctest::Approx(ratio_threshold(0.1)).epsilon(1e-12));
}

TEST_CASE("h1 convergence normalizes by the spiked limit") {
    ExperimentSpec spec = small_convergence_spec();
    spec.hypothesis = Hypothesis::H1;
    spec.alpha = 0.5;
    spec.sample_sizes = {40};
    spec.trials = 80;
    const ExperimentSummary summary = run_experiment(spec);
    const SweepPointSummary& point = summary.points[0];
    // At -5 dB and alpha = 1/2 the separation condition fails; the flag says so.
    CHECK_FALSE(point.baik_condition_satisfied);
    const double rho = linear_from_db(-5.0);
    const double sigma2 = 1.0 / rho;
    const double expected =
        spiked_top_eigenvalue(1.0, sigma2, 0.5).b_prime / mp_support(sigma2, 0.5).a;
    CHECK(point.asymptote == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("comparison handles the square K = N point") {
    ExperimentSpec spec = small_comparison_spec();
    spec.sample_sizes = {10};  // K = N = 10
    spec.trials = 40;
    const ExperimentSummary summary = run_experiment(spec);
    const SweepPointSummary& point = summary.points[0];
    REQUIRE(point.detectors.size() == 2);
    // The ratio detector degenerates to always-H0 there: every H0 trial is
    // correct, every H1 trial is missed.
    CHECK(point.detectors[0].detector == DetectorId::eig_ratio);
    CHECK(point.detectors[0].specificity == 1.0);
    CHECK(point.detectors[0].sensitivity == 0.0);
}

TEST_CASE("blind comparison runs without the energy detector") {
    ExperimentSpec spec = small_comparison_spec();
    spec.known_variance = false;
    spec.sample_sizes = {40};
    spec.trials = 30;
    const ExperimentSummary summary = run_experiment(spec);
    REQUIRE(summary.points[0].detectors.size() == 1);
    CHECK(summary.points[0].detectors[0].detector == DetectorId::eig_ratio);
}

TEST_CASE("convenience wrappers match explicit specs") {
    const ExperimentSummary a = run_ratio_convergence(0.1, {50}, Hypothesis::H0, 25, 5);
    ExperimentSpec spec;
    spec.name = "ratio-convergence";
    spec.kind = ExperimentKind::ratio_convergence;
    spec.alpha = 0.1;
    spec.hypothesis = Hypothesis::H0;
    spec.sample_sizes = {50};
    spec.trials = 25;
    spec.master_seed = 5;
    const ExperimentSummary b = run_experiment(spec);
    CHECK(summaries_identical(a, b));
}

}  // TEST_SUITE
