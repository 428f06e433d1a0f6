#pragma once

#include <string>
#include <vector>

#include "ntcorr/config.hpp"
#include "ntcorr/spectral.hpp"

namespace ntcorr {

/// Per-momentum pipeline output of a spectrum experiment.
struct MomentumResult {
    int n = 0;  // k = 2 pi n / L
    double k = 0;
    SignalSeries raw;           // positive-time signal
    Spectrum spectrum_raw;      // doubled, no window, normalized
    Spectrum spectrum_ca;       // windowed + correlation analysis, normalized
    std::vector<Peak> peaks;    // positive-frequency peaks of spectrum_ca
    double peak_energy = 0;     // highest-energy accepted peak, 0 if none
};

struct SpectrumRunOutput {
    std::vector<MomentumResult> momenta;
    DispersionFit fit;  // Schwinger only
    bool fit_valid = false;
};

struct OtocRunOutput {
    std::vector<double> times;
    std::vector<cplx> f;
};

struct SelftestClass {
    std::string name;
    std::size_t cases = 0;
    double max_abs_dev = 0;
};

struct SelftestOutput {
    std::vector<SelftestClass> classes;
    double max_abs_dev = 0;
    double tolerance = 1e-7;
    bool pass = false;
    std::string report;
};

SpectrumRunOutput run_schwinger_spectrum(const ExperimentConfig& cfg);
SpectrumRunOutput run_ssh_spectrum(const ExperimentConfig& cfg);
OtocRunOutput run_tim_otoc(const ExperimentConfig& cfg);
SelftestOutput run_bracket_selftest(const ExperimentConfig& cfg);

/// Dispatches on cfg.experiment, writes CSV artifacts and a manifest under
/// cfg.output_dir. Returns 0, or 2 when a numerical gate fails.
int run_experiment(const ExperimentConfig& cfg);

}  // namespace ntcorr
