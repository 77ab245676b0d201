#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "eigensense/detect.hpp"
#include "eigensense/errors.hpp"
#include "eigensense/experiment_io.hpp"
#include "eigensense/format.hpp"
#include "eigensense/matrix_io.hpp"
#include "eigensense/montecarlo.hpp"
#include "eigensense/rmt.hpp"
#include "eigensense/signal.hpp"
#include "eigensense/version.hpp"

namespace es = eigensense;

namespace {

// Exit statuses. 0 doubles as plain success for commands that do not decide
// between hypotheses.
constexpr int kExitH0 = 0;
constexpr int kExitUsage = 2;
constexpr int kExitH1 = 3;
constexpr int kExitNotDetectable = 4;

struct MpEdgesArgs {
    double sigma2 = 1.0;
    double alpha = 0.0;
};

struct DetectArgs {
    std::string input;
    std::string detector;
    std::optional<double> sigma2;
    std::optional<double> v_t;
    double slack = 0.0;
};

struct SynthArgs {
    std::string output;
    std::size_t sensors = 10;
    std::size_t samples = 100;
    double sigma2 = 1.0;
    std::string hypothesis = "H0";
    std::string noise = "gaussian";
    std::string signal = "gaussian";
    std::string fading = "rayleigh";
    std::uint64_t seed = 0;
};

struct ExperimentArgs {
    std::string config;
    std::optional<std::string> name;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    std::string out = "experiment";
    bool dat = false;
};

struct EstimateArgs {
    std::string input;
};

es::NoiseKind parse_noise(const std::string& value) {
    if (value == "gaussian") return es::NoiseKind::gaussian;
    if (value == "uniform") return es::NoiseKind::uniform;
    if (value == "laplace") return es::NoiseKind::laplace;
    throw es::ConfigError("noise must be gaussian, uniform, or laplace");
}

es::SignalKind parse_signal(const std::string& value) {
    if (value == "gaussian") return es::SignalKind::gaussian;
    if (value == "qpsk") return es::SignalKind::qpsk;
    throw es::ConfigError("signal must be gaussian or qpsk");
}

es::Hypothesis parse_hypothesis(const std::string& value) {
    if (value == "H0") return es::Hypothesis::H0;
    if (value == "H1") return es::Hypothesis::H1;
    throw es::ConfigError("hypothesis must be H0 or H1");
}

int cmd_mp_edges(const MpEdgesArgs& args) {
    const es::MpSupport support = es::mp_support(args.sigma2, args.alpha);
    std::cout << "sigma2 = " << es::fmt_g9(support.sigma2) << '\n'
              << "alpha = " << es::fmt_g9(support.alpha) << '\n'
              << "a = " << es::fmt_g9(support.a) << '\n'
              << "b = " << es::fmt_g9(support.b) << '\n'
              << "ratio_threshold = " << es::fmt_g9(es::ratio_threshold(args.alpha)) << '\n';
    return kExitH0;
}

void print_decision(const es::Decision& decision) {
    std::cout << "detector = " << es::detector_name(decision.detector) << '\n'
              << "statistic = " << es::fmt_g9(decision.statistic) << '\n'
              << "threshold = " << es::fmt_g9(decision.threshold) << '\n'
              << "label = " << (decision.label == es::Hypothesis::H1 ? "H1" : "H0") << '\n';
}

int cmd_detect(const DetectArgs& args) {
    const auto id = es::detector_from_name(args.detector);
    if (!id) {
        throw es::ConfigError("unknown detector `" + args.detector +
                              "`; use mp-support, eig-ratio, energy, or energy-vote");
    }
    const es::ComplexMatrix y = es::read_matrix_file(args.input);
    const es::ObservationMatrix observation{y, es::Hypothesis::H0, std::nullopt, ""};

    switch (*id) {
        case es::DetectorId::eig_ratio: {
            const es::Decision d = es::rmt_detect_blind(observation);
            print_decision(d);
            return d.label == es::Hypothesis::H1 ? kExitH1 : kExitH0;
        }
        case es::DetectorId::mp_support: {
            if (!args.sigma2) {
                throw es::ConfigError("mp-support needs --sigma2");
            }
            const es::Decision d = es::rmt_detect_known_variance(observation, *args.sigma2,
                                                                 args.slack);
            print_decision(d);
            return d.label == es::Hypothesis::H1 ? kExitH1 : kExitH0;
        }
        case es::DetectorId::energy: {
            if (!args.v_t) {
                throw es::ConfigError("energy needs --vt");
            }
            // Single-sensor rule applied to the pooled sample stream.
            const es::Decision d = es::energy_test(y.entries(), *args.v_t);
            print_decision(d);
            return d.label == es::Hypothesis::H1 ? kExitH1 : kExitH0;
        }
        case es::DetectorId::energy_vote: {
            if (!args.v_t) {
                throw es::ConfigError("energy-vote needs --vt");
            }
            const es::FusionDecision f = es::energy_vote(observation, *args.v_t);
            std::cout << "detector = energy-vote\n"
                      << "votes_h1 = " << f.votes_h1 << '\n'
                      << "votes_total = " << f.votes_total << '\n'
                      << "label = " << (f.label == es::Hypothesis::H1 ? "H1" : "H0") << '\n';
            return f.label == es::Hypothesis::H1 ? kExitH1 : kExitH0;
        }
    }
    throw es::ConfigError("unhandled detector");
}

int cmd_synth(const SynthArgs& args) {
    es::ScenarioConfig config;
    config.sensors = args.sensors;
    config.samples = args.samples;
    config.sigma2 = args.sigma2;
    config.hypothesis = parse_hypothesis(args.hypothesis);
    config.noise = parse_noise(args.noise);
    config.signal = parse_signal(args.signal);
    config.seed = args.seed;
    if (args.fading == "rayleigh") {
        config.fading = es::Fading::rayleigh();
    } else if (args.fading == "fixed-unit") {
        config.fading = es::Fading::fixed_unit(args.sensors);
    } else {
        throw es::ConfigError("fading must be rayleigh or fixed-unit");
    }

    const es::ObservationMatrix observation = es::synthesize(config);
    es::write_matrix_file(args.output, observation.samples,
                          "samples seed=" + std::to_string(config.seed));

    nlohmann::json manifest;
    manifest["library_version"] = es::kVersion;
    manifest["truth"] = observation.truth == es::Hypothesis::H1 ? "H1" : "H0";
    manifest["seed"] = config.seed;
    manifest["K"] = config.sensors;
    manifest["N"] = config.samples;
    manifest["sigma2"] = config.sigma2;
    manifest["noise"] = args.noise;
    manifest["signal"] = args.signal;
    manifest["fading"] = args.fading;
    manifest["config_digest"] = observation.config_digest;
    if (observation.channel) {
        manifest["channel_energy"] = observation.channel->channel_energy;
    }
    es::atomic_write(args.output + ".manifest.json", manifest.dump(2) + "\n");

    std::cout << "wrote " << args.output << " (K=" << config.sensors
              << " N=" << config.samples << ")\n"
              << "seed = " << config.seed << '\n';
    return kExitH0;
}

int cmd_experiment(const ExperimentArgs& args) {
    const es::RunOverrides overrides{args.trials, args.seed};
    const es::ExperimentSpec spec =
        es::parse_experiment_config(args.config, args.name, overrides);
    const es::ExperimentSummary summary = es::run_experiment(spec);

    const std::string csv_path = args.out + ".csv";
    es::atomic_write(csv_path, es::summary_to_csv(summary));
    es::atomic_write(args.out + ".manifest.json", es::summary_to_manifest(summary));
    if (args.dat) {
        es::atomic_write(args.out + ".dat", es::summary_to_dat(summary));
    }

    std::cout << "experiment = " << spec.name << '\n'
              << "seed = " << spec.master_seed << '\n'
              << "trials_per_point = " << spec.trials << '\n'
              << "wrote " << csv_path << '\n';
    for (const es::SweepPointSummary& point : summary.points) {
        std::cout << "N=" << point.samples << " K=" << point.sensors;
        if (spec.kind == es::ExperimentKind::ratio_convergence) {
            std::cout << " mean_ratio=" << es::fmt_g9(point.mean_ratio)
                      << " ratio_to_asymptote=" << es::fmt_g9(point.ratio_to_asymptote);
        }
        for (const es::DetectorPointStats& det : point.detectors) {
            std::cout << ' ' << es::detector_name(det.detector) << '='
                      << es::fmt_g9(det.proportion_correct);
        }
        std::cout << '\n';
    }
    return kExitH0;
}

int cmd_estimate_snr(const EstimateArgs& args) {
    const es::ComplexMatrix y = es::read_matrix_file(args.input);
    if (y.rows() > y.cols()) {
        throw es::UnsupportedRegimeError("K=" + std::to_string(y.rows()) + " exceeds N=" +
                                         std::to_string(y.cols()));
    }
    const double alpha = static_cast<double>(y.rows()) / static_cast<double>(y.cols());
    const auto [lambda_min, lambda_max] = es::extreme_eigs(es::gram(y));
    if (!(lambda_min > 0.0)) {
        throw es::NotDetectableError("degenerate spectrum; cannot estimate SNR");
    }
    const double ratio = lambda_max / lambda_min;
    double rho = 0.0;
    try {
        rho = es::snr_from_ratio(ratio, alpha);
    } catch (const es::NotDetectableError&) {
        throw es::NotDetectableError("signal not detectable; cannot estimate SNR (ratio " +
                                     es::fmt_g9(ratio) + " <= threshold " +
                                     es::fmt_g9(es::ratio_threshold(alpha)) + ")");
    }
    std::cout << "ratio = " << es::fmt_g9(ratio) << '\n'
              << "rho = " << es::fmt_g9(rho) << '\n'
              << "rho_db = " << es::fmt_g9(es::db_from_linear(rho)) << '\n';
    return kExitH0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Blind cooperative spectrum sensing via sample-covariance eigenvalues"};
    app.set_version_flag("--version", es::kVersion);
    app.require_subcommand(1);

    MpEdgesArgs mp_args;
    CLI::App* mp = app.add_subcommand("mp-edges", "Noise-only support edges and ratio threshold");
    mp->add_option("--sigma2", mp_args.sigma2, "Noise variance")->default_val(1.0);
    mp->add_option("--alpha", mp_args.alpha, "Aspect ratio K/N")->required();

    DetectArgs detect_args;
    CLI::App* detect = app.add_subcommand("detect", "Run one detector on a sample file");
    detect->add_option("input", detect_args.input, "Sample file")->required();
    detect->add_option("--detector", detect_args.detector,
                       "mp-support | eig-ratio | energy | energy-vote")
        ->required();
    detect->add_option("--sigma2", detect_args.sigma2, "Noise variance (mp-support)");
    detect->add_option("--vt", detect_args.v_t, "Energy threshold (energy, energy-vote)");
    detect->add_option("--slack", detect_args.slack, "Support slack (mp-support)")
        ->default_val(0.0);

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand("synth", "Write a synthetic sample file");
    synth->add_option("--out", synth_args.output, "Output path")->required();
    synth->add_option("--k", synth_args.sensors, "Sensors K")->default_val(10);
    synth->add_option("--n", synth_args.samples, "Samples N")->default_val(100);
    synth->add_option("--sigma2", synth_args.sigma2, "Noise variance")->default_val(1.0);
    synth->add_option("--hypothesis", synth_args.hypothesis, "H0 | H1")->default_val("H0");
    synth->add_option("--noise", synth_args.noise, "gaussian | uniform | laplace")
        ->default_val("gaussian");
    synth->add_option("--signal", synth_args.signal, "gaussian | qpsk")
        ->default_val("gaussian");
    synth->add_option("--fading", synth_args.fading, "rayleigh | fixed-unit")
        ->default_val("rayleigh");
    synth->add_option("--seed", synth_args.seed, "RNG seed")->default_val(0);

    ExperimentArgs exp_args;
    CLI::App* experiment = app.add_subcommand("experiment", "Run an experiment config");
    experiment->add_option("config", exp_args.config, "Config file")->required();
    experiment->add_option("--name", exp_args.name, "Section to run");
    experiment->add_option("--trials", exp_args.trials, "Override trials per point");
    experiment->add_option("--seed", exp_args.seed, "Override master seed");
    experiment->add_option("--out", exp_args.out, "Output base path")
        ->default_val("experiment");
    experiment->add_flag("--dat", exp_args.dat, "Also write a gnuplot-style .dat file");

    EstimateArgs est_args;
    CLI::App* estimate = app.add_subcommand("estimate-snr", "Estimate SNR from a sample file");
    estimate->add_option("input", est_args.input, "Sample file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (mp->parsed()) return cmd_mp_edges(mp_args);
        if (detect->parsed()) return cmd_detect(detect_args);
        if (synth->parsed()) return cmd_synth(synth_args);
        if (experiment->parsed()) return cmd_experiment(exp_args);
        if (estimate->parsed()) return cmd_estimate_snr(est_args);
        std::cerr << "error: no subcommand\n";
        return kExitUsage;
    } catch (const es::NotDetectableError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNotDetectable;
    } catch (const es::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
