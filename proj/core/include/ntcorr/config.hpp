#pragma once

#include <cstdint>
#include <string>

#include "ntcorr/models.hpp"
#include "ntcorr/noise.hpp"
#include "ntcorr/oracle.hpp"
#include "ntcorr/qite.hpp"
#include "ntcorr/spectral.hpp"

namespace ntcorr {

enum class ExperimentKind { schwinger_spectrum, ssh_spectrum, tim_otoc, bracket_selftest };
enum class BackendKind { exact, trotter };

/// Typed experiment description parsed from a sectioned key-value file.
/// Unknown sections or keys are hard errors with line numbers.
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::bracket_selftest;
    std::uint64_t seed = 1;
    std::string output_dir = "out";

    SchwingerParams schwinger;
    SSHParams ssh;
    std::size_t tim_L = 8;

    BackendKind backend = BackendKind::trotter;
    int trotter_order = 1;
    double trotter_dt = 0.2;
    double t_max = 10.0;

    QiteVariant qite_variant = QiteVariant::oracle;
    double tau_plus = kTauPlusDefault;
    double tau_minus = kTauMinusDefault;
    int qite_steps = 1;

    NoiseModel noise;

    WindowKind window = WindowKind::hamming;
    int ca_runs = 1;
    double peak_threshold = 0.3;
    // Peaks below this frequency are never selected as the band energy;
    // coarse Trotter runs accumulate spurious low-frequency lines.
    double omega_min = 0.5;

    std::size_t selftest_cases = 200;
    std::size_t oracle_max_qubits = kOracleMaxQubits;

    bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

/// FNV-1a of the canonical serialization; recorded in run manifests.
std::uint64_t config_hash(const ExperimentConfig& cfg);

void validate_config(const ExperimentConfig& cfg);

}  // namespace ntcorr
