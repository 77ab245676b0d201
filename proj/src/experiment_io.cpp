#include "eigensense/experiment_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "eigensense/errors.hpp"
#include "eigensense/format.hpp"
#include "eigensense/version.hpp"

namespace eigensense {

namespace {

std::string trim(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
        --end;
    }
    return std::string(s.substr(begin, end - begin));
}

struct ConfigEntry {
    std::string value;
    std::size_t line;
};

using Section = std::map<std::string, ConfigEntry>;

std::map<std::string, Section> parse_sections(const std::string& text) {
    std::map<std::string, Section> sections;
    std::string current;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string stripped = trim(line);
        if (stripped.empty()) {
            continue;
        }
        if (stripped.front() == '[') {
            if (stripped.back() != ']') {
                throw ParseError("unterminated section header", line_no);
            }
            current = trim(stripped.substr(1, stripped.size() - 2));
            if (current.empty()) {
                throw ParseError("empty section name", line_no);
            }
            if (sections.contains(current)) {
                throw ParseError("duplicate section [" + current + "]", line_no);
            }
            sections[current] = {};
            continue;
        }
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ParseError("expected `key = value`", line_no);
        }
        if (current.empty()) {
            throw ParseError("key appears before any [section] header", line_no);
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ParseError("empty key or value", line_no);
        }
        if (sections[current].contains(key)) {
            throw ParseError("duplicate key `" + key + "`", line_no);
        }
        sections[current][key] = {value, line_no};
    }
    return sections;
}

class SectionReader {
public:
    SectionReader(std::string name, Section section)
        : name_(std::move(name)), section_(std::move(section)) {}

    const std::string& name() const { return name_; }

    std::optional<std::string> take(const std::string& key) {
        auto it = section_.find(key);
        if (it == section_.end()) {
            return std::nullopt;
        }
        std::string value = it->second.value;
        section_.erase(it);
        return value;
    }

    std::string require(const std::string& key) {
        auto value = take(key);
        if (!value) {
            throw ConfigError("[" + name_ + "] is missing required key `" + key + "`");
        }
        return *value;
    }

    void reject_leftovers() const {
        if (!section_.empty()) {
            const auto& [key, entry] = *section_.begin();
            throw ConfigError("[" + name_ + "] has unknown key `" + key + "` (line " +
                              std::to_string(entry.line) + ")");
        }
    }

private:
    std::string name_;
    Section section_;
};

double to_double(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument(value);
        }
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("key `" + key + "` has non-numeric value `" + value + "`");
    }
}

std::uint64_t to_u64(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        const unsigned long long parsed = std::stoull(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument(value);
        }
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("key `" + key + "` has non-integer value `" + value + "`");
    }
}

bool to_bool(const std::string& value, const std::string& key) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ConfigError("key `" + key + "` must be true or false, got `" + value + "`");
}

std::vector<std::size_t> to_size_list(const std::string& value, const std::string& key) {
    std::vector<std::size_t> out;
    std::istringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) {
        const std::string token = trim(item);
        if (token.empty()) {
            throw ConfigError("key `" + key + "` has an empty list item");
        }
        out.push_back(static_cast<std::size_t>(to_u64(token, key)));
    }
    if (out.empty()) {
        throw ConfigError("key `" + key + "` must list at least one value");
    }
    return out;
}

NoiseKind to_noise(const std::string& value) {
    if (value == "gaussian") return NoiseKind::gaussian;
    if (value == "uniform") return NoiseKind::uniform;
    if (value == "laplace") return NoiseKind::laplace;
    throw ConfigError("noise must be gaussian, uniform, or laplace, got `" + value + "`");
}

SignalKind to_signal(const std::string& value) {
    if (value == "gaussian") return SignalKind::gaussian;
    if (value == "qpsk") return SignalKind::qpsk;
    throw ConfigError("signal must be gaussian or qpsk, got `" + value + "`");
}

Hypothesis to_hypothesis(const std::string& value) {
    if (value == "H0") return Hypothesis::H0;
    if (value == "H1") return Hypothesis::H1;
    throw ConfigError("hypothesis must be H0 or H1, got `" + value + "`");
}

ExperimentSpec build_spec(SectionReader& reader, const RunOverrides& overrides) {
    ExperimentSpec spec;
    spec.name = reader.name();

    const std::string kind = reader.require("experiment");
    if (kind == "ratio-convergence") {
        spec.kind = ExperimentKind::ratio_convergence;
        spec.alpha = to_double(reader.require("alpha"), "alpha");
        spec.hypothesis = to_hypothesis(reader.require("hypothesis"));
    } else if (kind == "detector-comparison") {
        spec.kind = ExperimentKind::detector_comparison;
        spec.sensors = static_cast<std::size_t>(to_u64(reader.require("K"), "K"));
        if (auto v = reader.take("known_variance")) {
            spec.known_variance = to_bool(*v, "known_variance");
        }
    } else {
        throw ConfigError("experiment must be ratio-convergence or detector-comparison, got `" +
                          kind + "`");
    }

    if (auto v = reader.take("rho_db")) {
        spec.rho_db = to_double(*v, "rho_db");
    }
    if (auto v = reader.take("noise")) {
        spec.noise = to_noise(*v);
    }
    if (auto v = reader.take("signal")) {
        spec.signal = to_signal(*v);
    }
    spec.sample_sizes = to_size_list(reader.require("N"), "N");
    if (auto v = reader.take("trials")) {
        spec.trials = static_cast<std::size_t>(to_u64(*v, "trials"));
    }
    spec.master_seed = to_u64(reader.require("seed"), "seed");
    reader.reject_leftovers();

    if (overrides.trials) {
        spec.trials = *overrides.trials;
    }
    if (overrides.seed) {
        spec.master_seed = *overrides.seed;
    }
    spec.validate_and_finalize();
    return spec;
}

std::string experiment_kind_name(ExperimentKind kind) {
    return kind == ExperimentKind::ratio_convergence ? "ratio-convergence"
                                                     : "detector-comparison";
}

std::string noise_name(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::gaussian:
            return "gaussian";
        case NoiseKind::uniform:
            return "uniform";
        case NoiseKind::laplace:
            return "laplace";
    }
    return "unknown";
}

std::string signal_name(SignalKind kind) {
    return kind == SignalKind::gaussian ? "gaussian" : "qpsk";
}

}  // namespace

ExperimentSpec parse_experiment_config_text(const std::string& text,
                                            const std::optional<std::string>& section,
                                            const RunOverrides& overrides) {
    auto sections = parse_sections(text);
    if (sections.empty()) {
        throw ConfigError("config has no [section]");
    }
    std::string chosen;
    if (section) {
        if (!sections.contains(*section)) {
            throw ConfigError("config has no section [" + *section + "]");
        }
        chosen = *section;
    } else if (sections.size() == 1) {
        chosen = sections.begin()->first;
    } else {
        std::string names;
        for (const auto& [name, _] : sections) {
            if (!names.empty()) {
                names += ", ";
            }
            names += name;
        }
        throw ConfigError("config has several sections (" + names +
                          "); pick one with --name");
    }
    SectionReader reader(chosen, sections.at(chosen));
    return build_spec(reader, overrides);
}

ExperimentSpec parse_experiment_config(const std::filesystem::path& path,
                                       const std::optional<std::string>& section,
                                       const RunOverrides& overrides) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_config_text(buffer.str(), section, overrides);
}

std::string summary_to_csv(const ExperimentSummary& summary) {
    std::string out =
        "experiment,alpha_or_K,N,detector,trials,proportion_correct,ci_low,ci_high,"
        "mean_ratio,ratio_to_asymptote,seed\n";
    const ExperimentSpec& spec = summary.spec;
    const std::string alpha_or_k = spec.kind == ExperimentKind::ratio_convergence
                                       ? fmt_g9(spec.alpha)
                                       : std::to_string(spec.sensors);
    for (const SweepPointSummary& point : summary.points) {
        for (const DetectorPointStats& det : point.detectors) {
            out += spec.name;
            out += ',';
            out += alpha_or_k;
            out += ',';
            out += std::to_string(point.samples);
            out += ',';
            out += detector_name(det.detector);
            out += ',';
            out += std::to_string(point.trials);
            out += ',';
            out += fmt_g9(det.proportion_correct);
            out += ',';
            out += fmt_g9(det.ci_low);
            out += ',';
            out += fmt_g9(det.ci_high);
            out += ',';
            out += fmt_g9(point.mean_ratio);
            out += ',';
            out += fmt_g9(point.ratio_to_asymptote);
            out += ',';
            out += std::to_string(spec.master_seed);
            out += '\n';
        }
    }
    return out;
}

std::string summary_to_dat(const ExperimentSummary& summary) {
    std::string csv = summary_to_csv(summary);
    std::string out;
    out.reserve(csv.size() + 2);
    bool first_line = true;
    for (char c : csv) {
        if (first_line && out.empty()) {
            out += "# ";
        }
        if (c == ',') {
            out += first_line ? "  " : " ";
        } else {
            out += c;
        }
        if (c == '\n') {
            first_line = false;
        }
    }
    return out;
}

std::string summary_to_manifest(const ExperimentSummary& summary) {
    const ExperimentSpec& spec = summary.spec;
    nlohmann::json j;
    j["library_version"] = kVersion;
    j["experiment"] = spec.name;
    j["kind"] = experiment_kind_name(spec.kind);
    j["seed"] = spec.master_seed;
    j["trials"] = spec.trials;
    j["noise"] = noise_name(spec.noise);
    j["signal"] = signal_name(spec.signal);
    j["rho_db"] = spec.rho_db;
    if (spec.kind == ExperimentKind::ratio_convergence) {
        j["alpha"] = spec.alpha;
        j["hypothesis"] = spec.hypothesis == Hypothesis::H0 ? "H0" : "H1";
    } else {
        j["K"] = spec.sensors;
        j["known_variance"] = spec.known_variance;
    }
    j["detectors"] = nlohmann::json::array();
    for (DetectorId id : spec.detectors) {
        j["detectors"].push_back(std::string(detector_name(id)));
    }
    j["points"] = nlohmann::json::array();
    for (const SweepPointSummary& point : summary.points) {
        nlohmann::json p;
        p["N"] = point.samples;
        p["K"] = point.sensors;
        p["alpha"] = point.alpha;
        p["trials"] = point.trials;
        p["mean_ratio"] = point.mean_ratio;
        p["ratio_std_error"] = point.ratio_std_error;
        if (spec.kind == ExperimentKind::ratio_convergence) {
            p["asymptote"] = point.asymptote;
            p["ratio_to_asymptote"] = point.ratio_to_asymptote;
            p["baik_condition_satisfied"] = point.baik_condition_satisfied;
        }
        p["detectors"] = nlohmann::json::array();
        for (const DetectorPointStats& det : point.detectors) {
            nlohmann::json d;
            d["detector"] = std::string(detector_name(det.detector));
            d["proportion_correct"] = det.proportion_correct;
            d["ci_low"] = det.ci_low;
            d["ci_high"] = det.ci_high;
            if (std::isfinite(det.specificity)) {
                d["specificity"] = det.specificity;
            }
            if (std::isfinite(det.sensitivity)) {
                d["sensitivity"] = det.sensitivity;
            }
            p["detectors"].push_back(d);
        }
        j["points"].push_back(p);
    }
    return j.dump(2) + "\n";
}

}  // namespace eigensense
