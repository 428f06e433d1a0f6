#include "ntcorr/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "ntcorr/bracket.hpp"
#include "ntcorr/models.hpp"
#include "ntcorr/noise.hpp"
#include "ntcorr/oracle.hpp"

namespace ntcorr {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Independent stream per (master seed, task index).
std::mt19937_64 task_rng(std::uint64_t seed, std::uint64_t task) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ task));
}

EvolutionBackend make_backend(const ExperimentConfig& cfg, const PauliSum& h) {
    if (cfg.backend == BackendKind::exact) return EvolutionBackend::exact(h);
    return EvolutionBackend::trotter(h, cfg.trotter_order, cfg.trotter_dt);
}

std::vector<double> time_grid(const ExperimentConfig& cfg) {
    auto n = std::size_t(std::llround(cfg.t_max / cfg.trotter_dt)) + 1;
    std::vector<double> ts(n);
    for (std::size_t i = 0; i < n; ++i) ts[i] = cfg.trotter_dt * double(i);
    return ts;
}

double measure(const StateVector& state, const PauliSum& obs,
               std::optional<BracketSpec::ShotNoise>& shots) {
    if (shots) return shot_sample_observable(state, obs, shots->n_shot, *shots->rng);
    return state.expectation(obs);
}

/// One noisy (or exact) measurement pass of the pair-correlator signal
///   C_k(t) = sum_j e^{-ik(j+j0)} <[A_j(t), h_{j0}(0)]_->
/// with A_j = -(XX+YY)/2 on pair j, so that -i [h_j, h_j0] = [A_j, h_j0].
std::vector<std::vector<cplx>> schwinger_signals(const ExperimentConfig& cfg,
                                                 const EvolutionBackend& backend,
                                                 const std::vector<double>& ts,
                                                 const std::vector<int>& momenta,
                                                 std::mt19937_64* rng) {
    std::size_t L = cfg.schwinger.L;
    std::size_t j0 = default_reference_site(L);
    std::optional<BracketSpec::ShotNoise> shots;
    if (rng && cfg.noise.n_shot != kInfiniteShots)
        shots = BracketSpec::ShotNoise{cfg.noise.n_shot, rng};

    std::vector<PauliSum> a_ops;  // Hermitian partner of the pair operator
    for (std::size_t j = 0; j < L; ++j) a_ops.push_back(hadron_operator(L, j) * cplx(0, -1));

    PauliSum h_j0 = hadron_operator(L, j0);
    StateVector phi = bare_vacuum(L);

    // bracket[j][ti] = <[A_j(t), h_j0(0)]_->, accumulated from the four
    // evolving shifted states (two gate terms, two shifts).
    std::vector<std::vector<cplx>> bracket(L, std::vector<cplx>(ts.size(), cplx(0, 0)));
    double inv = 1.0 / std::sin(2 * cfg.tau_minus);
    for (const auto& [c_a, p_a] : h_j0.terms()) {
        for (int s : {+1, -1}) {
            StateVector state = phi;
            apply_pauli_exponential(state, p_a, double(s) * cfg.tau_minus, ExpKind::real_time);
            for (std::size_t ti = 0; ti < ts.size(); ++ti) {
                if (ti > 0) backend.evolve(state, ts[ti - 1], ts[ti]);
                for (std::size_t j = 0; j < L; ++j) {
                    double m = measure(state, a_ops[j], shots);
                    bracket[j][ti] += c_a * cplx(0, inv) * double(s) * m;
                }
            }
        }
    }

    std::vector<std::vector<cplx>> out(momenta.size(), std::vector<cplx>(ts.size()));
    for (std::size_t ki = 0; ki < momenta.size(); ++ki) {
        LatticeMomentum k{momenta[ki], L};
        std::vector<cplx> w = momentum_weights(k, j0, L);
        for (std::size_t ti = 0; ti < ts.size(); ++ti) {
            cplx sum = 0;
            for (std::size_t j = 0; j < L; ++j) sum += w[j] * bracket[j][ti];
            out[ki][ti] = sum;
        }
    }
    return out;
}

/// C_k(t) = (1/2) sum_j cos(kj) <[Y_0(t), X_j]_+>, measured from shifted
/// imaginary-time gates on each site.
std::vector<std::vector<cplx>> ssh_signals(const ExperimentConfig& cfg,
                                           const EvolutionBackend& backend,
                                           const std::vector<double>& ts,
                                           const std::vector<int>& momenta,
                                           std::mt19937_64* rng) {
    std::size_t L = cfg.ssh.L;
    std::optional<BracketSpec::ShotNoise> shots;
    if (rng && cfg.noise.n_shot != kInfiniteShots)
        shots = BracketSpec::ShotNoise{cfg.noise.n_shot, rng};

    StateVector phi = StateVector::zero_state(L);
    PauliSum y0(L, 1.0, PauliString::single(L, 0, Pauli::Y));
    QiteConfig qite_cfg;
    qite_cfg.steps = cfg.qite_steps;

    std::vector<std::vector<double>> anti(L, std::vector<double>(ts.size(), 0.0));
    double sh = std::sinh(2 * cfg.tau_plus);
    for (std::size_t j = 0; j < L; ++j) {
        PauliString xj = PauliString::single(L, j, Pauli::X);
        double x_exp = phi.expectation(xj);
        for (int s : {+1, -1}) {
            double tau = double(s) * cfg.tau_plus;
            // Two-time correction factor cosh(2 tau) - sinh(2 tau) <X_j>.
            double corr = std::cosh(2 * tau) - std::sinh(2 * tau) * x_exp;
            StateVector state = phi;
            apply_shift_gate(state, xj, BracketSign::plus, tau, cfg.qite_variant, qite_cfg);
            for (std::size_t ti = 0; ti < ts.size(); ++ti) {
                if (ti > 0) backend.evolve(state, ts[ti - 1], ts[ti]);
                double m = measure(state, y0, shots);
                anti[j][ti] += (-1.0 / sh) * double(s) * corr * m;
            }
        }
    }

    std::vector<std::vector<cplx>> out(momenta.size(), std::vector<cplx>(ts.size()));
    for (std::size_t ki = 0; ki < momenta.size(); ++ki) {
        double k = LatticeMomentum{momenta[ki], L}.k();
        for (std::size_t ti = 0; ti < ts.size(); ++ti) {
            double sum = 0;
            for (std::size_t j = 0; j < L; ++j) sum += std::cos(k * double(j)) * anti[j][ti];
            out[ki][ti] = 0.5 * sum;
        }
    }
    return out;
}

MomentumResult process_momentum(const ExperimentConfig& cfg, int n, double k,
                                const std::vector<double>& ts,
                                const std::vector<cplx>& run_a,
                                const std::vector<cplx>& run_b) {
    MomentumResult res;
    res.n = n;
    res.k = k;
    res.raw.t0 = 0;
    res.raw.dt = cfg.trotter_dt;
    res.raw.samples = run_a;

    auto pipeline = [&](const std::vector<cplx>& samples, WindowKind window) {
        SignalSeries s;
        s.t0 = 0;
        s.dt = cfg.trotter_dt;
        s.samples = samples;
        SignalSeries doubled = double_signal(s, Parity::antisymmetric);
        if (cfg.noise.p > 0) doubled = depolarize_series(doubled, cfg.noise);
        return dft(apply_window(doubled, window));
    };

    res.spectrum_raw = normalize_spectrum(pipeline(run_a, WindowKind::rectangular));
    Spectrum wa = pipeline(run_a, cfg.window);
    Spectrum wb = pipeline(run_b, cfg.window);
    res.spectrum_ca = correlation_analysis(wa, wb);

    for (const Peak& p : find_peaks(res.spectrum_ca, cfg.peak_threshold))
        if (p.omega > 1e-9) res.peaks.push_back(p);
    // Band energy: the tallest local maximum above the low-frequency cutoff.
    // Selected with a permissive threshold so that strong low-frequency
    // artifacts cannot mask the physical line entirely.
    for (const Peak& p : find_peaks(res.spectrum_ca, 0.02)) {
        if (p.omega >= cfg.omega_min) {
            res.peak_energy = p.omega;
            break;
        }
    }
    (void)ts;
    return res;
}

SpectrumRunOutput run_spectrum(const ExperimentConfig& cfg, bool schwinger) {
    std::size_t L = schwinger ? cfg.schwinger.L : cfg.ssh.L;
    PauliSum h = schwinger ? build_schwinger_truncated(cfg.schwinger) : build_ssh(cfg.ssh);
    EvolutionBackend backend = make_backend(cfg, h);
    std::vector<double> ts = time_grid(cfg);

    std::vector<int> momenta;
    for (int n = 0; n <= int(L) / 2; ++n) momenta.push_back(n);

    bool noisy = cfg.noise.n_shot != kInfiniteShots;
    std::mt19937_64 rng_a = task_rng(cfg.noise.seed == 0 ? cfg.seed : cfg.noise.seed, 1);
    std::mt19937_64 rng_b = task_rng(cfg.noise.seed == 0 ? cfg.seed : cfg.noise.seed, 2);

    auto signals = [&](std::mt19937_64* rng) {
        return schwinger ? schwinger_signals(cfg, backend, ts, momenta, rng)
                         : ssh_signals(cfg, backend, ts, momenta, rng);
    };
    std::vector<std::vector<cplx>> run_a = signals(noisy ? &rng_a : nullptr);
    std::vector<std::vector<cplx>> run_b =
        (noisy && cfg.ca_runs >= 2) ? signals(&rng_b) : run_a;

    SpectrumRunOutput out;
    for (std::size_t ki = 0; ki < momenta.size(); ++ki) {
        double k = LatticeMomentum{momenta[ki], L}.k();
        out.momenta.push_back(
            process_momentum(cfg, momenta[ki], k, ts, run_a[ki], run_b[ki]));
    }

    if (schwinger) {
        std::vector<std::pair<double, double>> points;
        for (const auto& mres : out.momenta)
            if (mres.peak_energy > 0) points.emplace_back(mres.k, mres.peak_energy);
        if (points.size() >= 3) {
            out.fit = fit_dispersion(points);
            out.fit_valid = true;
        }
    }
    return out;
}

}  // namespace

SpectrumRunOutput run_schwinger_spectrum(const ExperimentConfig& cfg) {
    return run_spectrum(cfg, true);
}

SpectrumRunOutput run_ssh_spectrum(const ExperimentConfig& cfg) {
    return run_spectrum(cfg, false);
}

OtocRunOutput run_tim_otoc(const ExperimentConfig& cfg) {
    std::size_t L = cfg.tim_L;
    PauliSum h = build_tim(L);
    EvolutionBackend backend = make_backend(cfg, h);
    StateVector phi = StateVector::plus_state(L);
    PauliString v = PauliString::single(L, 0, Pauli::Z);
    PauliString w = PauliString::single(L, L - 1, Pauli::X);

    std::mt19937_64 rng = task_rng(cfg.noise.seed == 0 ? cfg.seed : cfg.noise.seed, 3);
    std::optional<BracketSpec::ShotNoise> shots;
    if (cfg.noise.n_shot != kInfiniteShots)
        shots = BracketSpec::ShotNoise{cfg.noise.n_shot, &rng};

    OtocRunOutput out;
    out.times = time_grid(cfg);
    for (double t : out.times)
        out.f.push_back(otoc(w, v, t, phi, backend, cfg.tau_plus, cfg.tau_minus,
                             cfg.qite_variant, shots));
    return out;
}

SelftestOutput run_bracket_selftest(const ExperimentConfig& cfg) {
    SelftestOutput out;
    std::map<std::string, SelftestClass> classes;
    std::mt19937_64 rng = task_rng(cfg.seed, 0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto coeff = [&] { return 2.0 * unit(rng) - 1.0; };

    for (std::size_t i = 0; i < cfg.selftest_cases; ++i) {
        std::size_t nq = 2 + i % 3;  // 2..4 qubits
        std::size_t n = 2 + i % 2;   // bracket order
        std::size_t sign_code = n == 2 ? (i / 2) % 2 : (i / 2) % 4;

        auto random_string = [&] {
            PauliString p(nq);
            do {
                for (std::size_t q = 0; q < nq; ++q)
                    p.set_letter(q, Pauli(std::size_t(unit(rng) * 4) & 3));
            } while (p.is_identity_letters());
            return p;
        };

        PauliSum h(nq);
        for (std::size_t b = 0; b < nq + 1; ++b) h.add(coeff(), random_string());
        EvolutionBackend backend = EvolutionBackend::exact(h);

        StateVector state(nq);
        state.amplitudes()[0] = 1.0;
        for (std::size_t q = 0; q < nq; ++q) {
            double theta = std::numbers::pi * unit(rng);
            double lam = 2.0 * std::numbers::pi * unit(rng);
            StateVector next(nq);
            std::size_t bit = std::size_t(1) << (nq - 1 - q);
            for (std::size_t idx = 0; idx < state.dim(); ++idx) {
                cplx a = state.amplitudes()[idx];
                if (a == cplx(0, 0)) continue;
                next.amplitudes()[idx & ~bit] += a * std::cos(theta / 2);
                next.amplitudes()[idx | bit] +=
                    a * std::sin(theta / 2) * cplx(std::cos(lam), std::sin(lam));
            }
            state = next;
        }
        state.normalize();

        std::vector<double> times(n);
        for (auto& t : times) t = 2.0 * unit(rng);
        std::sort(times.begin(), times.end());

        BracketSpec spec;
        spec.initial_state = state;
        spec.backend = &backend;
        spec.tau_plus = cfg.tau_plus;
        spec.tau_minus = cfg.tau_minus;
        spec.variant = cfg.qite_variant;
        spec.times = times;
        std::vector<PauliSum> dense_ops;
        std::string label = "n=" + std::to_string(n) + ",b=";
        for (std::size_t j = 0; j + 1 < n; ++j) {
            spec.inner_ops.push_back(random_string());
            dense_ops.emplace_back(nq, 1.0, spec.inner_ops.back());
            bool plus = (sign_code >> j) & 1;
            spec.signs.push_back(plus ? BracketSign::plus : BracketSign::minus);
            label += plus ? '+' : '-';
        }
        PauliString final_string = random_string();
        spec.final_op = PauliSum(nq, 1.0, final_string);
        dense_ops.push_back(spec.final_op);

        std::vector<int> dense_signs;
        for (BracketSign s : spec.signs)
            dense_signs.push_back(s == BracketSign::plus ? 1 : -1);

        cplx got = nested_bracket(spec);
        cplx want = dense_nested_bracket(dense_ops, times, dense_signs, state, h,
                                         cfg.oracle_max_qubits);
        double dev = std::abs(got - want);

        auto& cls = classes[label];
        cls.name = label;
        ++cls.cases;
        cls.max_abs_dev = std::max(cls.max_abs_dev, dev);
        out.max_abs_dev = std::max(out.max_abs_dev, dev);
    }

    for (auto& [label, cls] : classes) out.classes.push_back(cls);
    out.pass = out.max_abs_dev < out.tolerance;

    std::ostringstream rep;
    rep << std::scientific << std::setprecision(3);
    rep << "bracket selftest: " << cfg.selftest_cases << " cases\n";
    for (const auto& cls : out.classes)
        rep << "  " << cls.name << "  cases=" << cls.cases
            << "  max_abs_dev=" << cls.max_abs_dev << "\n";
    rep << "max_abs_dev=" << out.max_abs_dev << " tolerance=" << out.tolerance << " "
        << (out.pass ? "PASS" : "FAIL") << "\n";
    out.report = rep.str();
    return out;
}

namespace {

namespace fs = std::filesystem;

void write_series_csv(const fs::path& path, const std::vector<double>& ts,
                      const std::vector<cplx>& values) {
    std::ofstream out(path);
    out << std::setprecision(12);
    out << "t,re,im\n";
    for (std::size_t i = 0; i < ts.size(); ++i)
        out << ts[i] << "," << values[i].real() << "," << values[i].imag() << "\n";
}

void write_spectrum_csv(const fs::path& path, const Spectrum& spec) {
    std::ofstream out(path);
    out << std::setprecision(12);
    out << "omega,re,im,normalized_magnitude\n";
    for (std::size_t i = 0; i < spec.omegas.size(); ++i)
        out << spec.omegas[i] << "," << spec.values[i].real() << ","
            << spec.values[i].imag() << "," << std::abs(spec.values[i]) << "\n";
}

void write_manifest(const ExperimentConfig& cfg, const fs::path& dir, double wall_seconds) {
    nlohmann::json j;
    std::ostringstream hash;
    hash << std::hex << config_hash(cfg);
    j["config_hash"] = hash.str();
    j["version"] = NTCORR_VERSION;
    j["seed"] = cfg.seed;
    j["wall_time_seconds"] = wall_seconds;
    j["config"] = serialize_config(cfg);
    std::ofstream out(dir / "manifest.json");
    out << j.dump(2) << "\n";
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    auto start = std::chrono::steady_clock::now();
    fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    int code = 0;

    switch (cfg.experiment) {
        case ExperimentKind::schwinger_spectrum:
        case ExperimentKind::ssh_spectrum: {
            bool schwinger = cfg.experiment == ExperimentKind::schwinger_spectrum;
            SpectrumRunOutput out = schwinger ? run_schwinger_spectrum(cfg)
                                              : run_ssh_spectrum(cfg);
            std::vector<double> ts = time_grid(cfg);
            std::ofstream peaks(dir / "peaks.csv");
            peaks << std::setprecision(12) << "n,k,omega,height\n";
            for (const auto& m : out.momenta) {
                std::string tag = "_k" + std::to_string(m.n) + ".csv";
                write_series_csv(dir / ("series" + tag), ts, m.raw.samples);
                write_spectrum_csv(dir / ("spectrum_raw" + tag), m.spectrum_raw);
                write_spectrum_csv(dir / ("spectrum_ca" + tag), m.spectrum_ca);
                for (const Peak& p : m.peaks)
                    peaks << m.n << "," << m.k << "," << p.omega << "," << p.height << "\n";
            }
            if (schwinger) {
                std::ofstream fit(dir / "dispersion.csv");
                fit << std::setprecision(12)
                    << "m_h_c2,c,se_m,se_c,residual,degenerate\n";
                if (out.fit_valid)
                    fit << out.fit.m_h_c2 << "," << out.fit.c << "," << out.fit.se_m << ","
                        << out.fit.se_c << "," << out.fit.residual << ","
                        << (out.fit.degenerate ? 1 : 0) << "\n";
                if (!out.fit_valid || out.fit.degenerate) code = 2;
            }
            break;
        }
        case ExperimentKind::tim_otoc: {
            OtocRunOutput out = run_tim_otoc(cfg);
            write_series_csv(dir / "otoc.csv", out.times, out.f);
            break;
        }
        case ExperimentKind::bracket_selftest: {
            SelftestOutput out = run_bracket_selftest(cfg);
            std::ofstream rep(dir / "selftest_report.txt");
            rep << out.report;
            if (!out.pass) code = 2;
            break;
        }
    }

    double wall = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start).count();
    write_manifest(cfg, dir, wall);
    return code;
}

}  // namespace ntcorr
