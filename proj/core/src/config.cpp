#include "ntcorr/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ntcorr {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};
using SectionMap = std::map<std::string, std::map<std::string, Entry>>;

[[noreturn]] void fail(int line, const std::string& what) {
    throw std::runtime_error("config line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

SectionMap tokenize(const std::string& text) {
    SectionMap out;
    std::istringstream in(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw);
        std::size_t hash = s.find('#');
        if (hash != std::string::npos) s = trim(s.substr(0, hash));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "malformed section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty()) fail(line, "empty section name");
            out.try_emplace(section);
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value");
        if (section.empty()) fail(line, "key outside any section");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty() || value.empty()) fail(line, "empty key or value");
        auto [it, inserted] = out[section].emplace(key, Entry{value, line});
        if (!inserted) fail(line, "duplicate key '" + key + "'");
    }
    return out;
}

class Reader {
public:
    explicit Reader(SectionMap sections) : sections_(std::move(sections)) {}

    bool has(const std::string& section, const std::string& key) {
        auto s = sections_.find(section);
        return s != sections_.end() && s->second.count(key) > 0;
    }

    Entry* get(const std::string& section, const std::string& key) {
        auto s = sections_.find(section);
        if (s == sections_.end()) return nullptr;
        auto k = s->second.find(key);
        if (k == s->second.end()) return nullptr;
        k->second.used = true;
        return &k->second;
    }

    std::string string_or(const std::string& section, const std::string& key,
                          const std::string& def) {
        Entry* e = get(section, key);
        return e ? e->value : def;
    }

    double real_or(const std::string& section, const std::string& key, double def) {
        Entry* e = get(section, key);
        if (!e) return def;
        try {
            std::size_t pos = 0;
            double v = std::stod(e->value, &pos);
            if (pos != e->value.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            fail(e->line, "expected a number for '" + key + "'");
        }
    }

    long long int_or(const std::string& section, const std::string& key, long long def) {
        Entry* e = get(section, key);
        if (!e) return def;
        long long v = 0;
        auto [p, ec] = std::from_chars(e->value.data(), e->value.data() + e->value.size(), v);
        if (ec != std::errc() || p != e->value.data() + e->value.size())
            fail(e->line, "expected an integer for '" + key + "'");
        return v;
    }

    std::uint64_t shots_or(const std::string& section, const std::string& key,
                           std::uint64_t def) {
        Entry* e = get(section, key);
        if (!e) return def;
        if (e->value == "inf") return kInfiniteShots;
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(e->value.data(), e->value.data() + e->value.size(), v);
        if (ec != std::errc() || p != e->value.data() + e->value.size() || v == 0)
            fail(e->line, "expected a positive integer or 'inf' for '" + key + "'");
        return v;
    }

    void check_consumed() const {
        for (const auto& [sec, keys] : sections_)
            for (const auto& [key, entry] : keys)
                if (!entry.used)
                    fail(entry.line, "unknown key '" + key + "' in section [" + sec + "]");
    }

private:
    SectionMap sections_;
};

ExperimentKind parse_experiment(const std::string& v, int line) {
    if (v == "schwinger_spectrum") return ExperimentKind::schwinger_spectrum;
    if (v == "ssh_spectrum") return ExperimentKind::ssh_spectrum;
    if (v == "tim_otoc") return ExperimentKind::tim_otoc;
    if (v == "bracket_selftest") return ExperimentKind::bracket_selftest;
    fail(line, "unknown experiment '" + v + "'");
}

const char* experiment_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::schwinger_spectrum: return "schwinger_spectrum";
        case ExperimentKind::ssh_spectrum: return "ssh_spectrum";
        case ExperimentKind::tim_otoc: return "tim_otoc";
        case ExperimentKind::bracket_selftest: return "bracket_selftest";
    }
    return "?";
}

const char* variant_name(QiteVariant v) {
    switch (v) {
        case QiteVariant::oracle: return "oracle";
        case QiteVariant::analytic: return "analytic";
        case QiteVariant::unitary: return "unitary";
        case QiteVariant::projective: return "projective";
    }
    return "?";
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    Reader r(tokenize(text));
    ExperimentConfig cfg;

    Entry* exp = r.get("run", "experiment");
    if (!exp) throw std::runtime_error("config: missing [run] experiment");
    cfg.experiment = parse_experiment(exp->value, exp->line);
    cfg.seed = std::uint64_t(r.int_or("run", "seed", 1));
    cfg.output_dir = r.string_or("run", "output_dir", "out");

    switch (cfg.experiment) {
        case ExperimentKind::schwinger_spectrum:
            cfg.schwinger.L = std::size_t(r.int_or("model", "L", 6));
            cfg.schwinger.m = r.real_or("model", "m", 0.5);
            cfg.schwinger.g = r.real_or("model", "g", 0.3);
            break;
        case ExperimentKind::ssh_spectrum:
            cfg.ssh.L = std::size_t(r.int_or("model", "L", 12));
            cfg.ssh.v = r.real_or("model", "v", 1.0);
            cfg.ssh.delta = r.real_or("model", "delta", 0.8);
            cfg.ssh.mu = r.real_or("model", "mu", -2.5);
            break;
        case ExperimentKind::tim_otoc:
            cfg.tim_L = std::size_t(r.int_or("model", "L", 8));
            break;
        case ExperimentKind::bracket_selftest:
            cfg.selftest_cases = std::size_t(r.int_or("model", "cases", 200));
            break;
    }

    std::string backend = r.string_or("backend", "kind", "trotter");
    if (backend == "exact")
        cfg.backend = BackendKind::exact;
    else if (backend == "trotter")
        cfg.backend = BackendKind::trotter;
    else
        throw std::runtime_error("config: backend kind must be exact or trotter");
    cfg.trotter_order = int(r.int_or("backend", "order", 1));
    cfg.trotter_dt = r.real_or("backend", "dt", 0.2);
    cfg.t_max = r.real_or("backend", "t_max", 10.0);

    std::string variant = r.string_or("qite", "variant", "oracle");
    if (variant == "oracle")
        cfg.qite_variant = QiteVariant::oracle;
    else if (variant == "analytic")
        cfg.qite_variant = QiteVariant::analytic;
    else if (variant == "unitary")
        cfg.qite_variant = QiteVariant::unitary;
    else if (variant == "projective")
        cfg.qite_variant = QiteVariant::projective;
    else
        throw std::runtime_error("config: unknown qite variant '" + variant + "'");
    cfg.tau_plus = r.real_or("qite", "tau_plus", kTauPlusDefault);
    cfg.tau_minus = r.real_or("qite", "tau_minus", kTauMinusDefault);
    cfg.qite_steps = int(r.int_or("qite", "steps", 1));

    cfg.noise.p = r.real_or("noise", "p", 0.0);
    cfg.noise.dt = r.real_or("noise", "dt", cfg.trotter_dt);
    cfg.noise.n_shot = r.shots_or("noise", "n_shot", kInfiniteShots);
    cfg.noise.seed = std::uint64_t(r.int_or("noise", "seed", 0));

    std::string window = r.string_or("processing", "window", "hamming");
    if (window == "hamming")
        cfg.window = WindowKind::hamming;
    else if (window == "rectangular")
        cfg.window = WindowKind::rectangular;
    else
        throw std::runtime_error("config: window must be hamming or rectangular");
    cfg.ca_runs = int(r.int_or("processing", "ca_runs", 1));
    cfg.peak_threshold = r.real_or("processing", "peak_threshold", 0.3);
    cfg.omega_min = r.real_or("processing", "omega_min", 0.5);

    cfg.oracle_max_qubits = std::size_t(r.int_or("run", "oracle_max_qubits",
                                                 long(kOracleMaxQubits)));

    r.check_consumed();
    validate_config(cfg);
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out.precision(17);
    out << "[run]\n";
    out << "experiment = " << experiment_name(cfg.experiment) << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "output_dir = " << cfg.output_dir << "\n";
    out << "oracle_max_qubits = " << cfg.oracle_max_qubits << "\n";
    out << "\n[model]\n";
    switch (cfg.experiment) {
        case ExperimentKind::schwinger_spectrum:
            out << "L = " << cfg.schwinger.L << "\n";
            out << "m = " << cfg.schwinger.m << "\n";
            out << "g = " << cfg.schwinger.g << "\n";
            break;
        case ExperimentKind::ssh_spectrum:
            out << "L = " << cfg.ssh.L << "\n";
            out << "v = " << cfg.ssh.v << "\n";
            out << "delta = " << cfg.ssh.delta << "\n";
            out << "mu = " << cfg.ssh.mu << "\n";
            break;
        case ExperimentKind::tim_otoc:
            out << "L = " << cfg.tim_L << "\n";
            break;
        case ExperimentKind::bracket_selftest:
            out << "cases = " << cfg.selftest_cases << "\n";
            break;
    }
    out << "\n[backend]\n";
    out << "kind = " << (cfg.backend == BackendKind::exact ? "exact" : "trotter") << "\n";
    out << "order = " << cfg.trotter_order << "\n";
    out << "dt = " << cfg.trotter_dt << "\n";
    out << "t_max = " << cfg.t_max << "\n";
    out << "\n[qite]\n";
    out << "variant = " << variant_name(cfg.qite_variant) << "\n";
    out << "tau_plus = " << cfg.tau_plus << "\n";
    out << "tau_minus = " << cfg.tau_minus << "\n";
    out << "steps = " << cfg.qite_steps << "\n";
    out << "\n[noise]\n";
    out << "p = " << cfg.noise.p << "\n";
    out << "dt = " << cfg.noise.dt << "\n";
    if (cfg.noise.n_shot == kInfiniteShots)
        out << "n_shot = inf\n";
    else
        out << "n_shot = " << cfg.noise.n_shot << "\n";
    out << "seed = " << cfg.noise.seed << "\n";
    out << "\n[processing]\n";
    out << "window = " << (cfg.window == WindowKind::hamming ? "hamming" : "rectangular") << "\n";
    out << "ca_runs = " << cfg.ca_runs << "\n";
    out << "peak_threshold = " << cfg.peak_threshold << "\n";
    out << "omega_min = " << cfg.omega_min << "\n";
    return out.str();
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    std::string text = serialize_config(cfg);
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void validate_config(const ExperimentConfig& cfg) {
    auto reject = [](const std::string& what) {
        throw std::runtime_error("config validation: " + what);
    };
    if (cfg.trotter_order != 1 && cfg.trotter_order != 2) reject("trotter order must be 1 or 2");
    if (cfg.trotter_dt <= 0) reject("trotter dt must be positive");
    if (cfg.t_max <= 0) reject("t_max must be positive");
    if (cfg.qite_steps < 1) reject("qite steps must be >= 1");
    if (std::abs(std::sinh(2 * cfg.tau_plus)) < 1e-12 ||
        std::abs(std::sin(2 * cfg.tau_minus)) < 1e-12)
        reject("degenerate tau shift values");
    if (cfg.noise.p < 0 || cfg.noise.p >= 1) reject("noise p must be in [0, 1)");
    if (cfg.ca_runs < 1) reject("ca_runs must be >= 1");
    if (cfg.peak_threshold <= 0 || cfg.peak_threshold >= 1)
        reject("peak_threshold must be in (0, 1)");
    if (cfg.omega_min < 0) reject("omega_min must be non-negative");
    switch (cfg.experiment) {
        case ExperimentKind::schwinger_spectrum:
            if (cfg.schwinger.L < 2 || cfg.schwinger.L % 2 != 0)
                reject("schwinger L must be even and >= 2");
            break;
        case ExperimentKind::ssh_spectrum:
            if (cfg.ssh.L < 2) reject("ssh L must be >= 2");
            break;
        case ExperimentKind::tim_otoc:
            if (cfg.tim_L < 2) reject("tim L must be >= 2");
            break;
        case ExperimentKind::bracket_selftest:
            if (cfg.selftest_cases < 1) reject("selftest cases must be >= 1");
            break;
    }
}

}  // namespace ntcorr
