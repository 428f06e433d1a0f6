#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ntcorr/evolution.hpp"
#include "ntcorr/pauli.hpp"
#include "ntcorr/qite.hpp"
#include "ntcorr/statevector.hpp"

namespace ntcorr {

enum class BracketSign { minus, plus };  // commutator / anticommutator

/// Final observable measured as the sandwich W U(t;0) V U(0;t) W at the
/// circuit's final time, which realizes the Heisenberg product W(t) V W(t).
struct CompositeFinal {
    PauliString w;
    PauliString v;
};

/// One nested commutator/anticommutator
///   c_b = <phi| [...[[O_{n-1}(t_{n-1}), O_{n-2}(t_{n-2})]_{b_{n-2}}, ...]_{b_0} |phi>
/// evaluated via shifted real/imaginary-time evolutions. inner_ops holds
/// O_0..O_{n-2} (Hermitian Pauli strings); the final observable is either a
/// Hermitian PauliSum or the composite sandwich.
struct BracketSpec {
    std::vector<PauliString> inner_ops;
    PauliSum final_op{1};
    std::optional<CompositeFinal> composite;
    std::vector<double> times;  // t_0 <= ... <= t_{n-1}
    std::vector<BracketSign> signs;
    StateVector initial_state{1};
    const EvolutionBackend* backend = nullptr;
    double tau_plus = kTauPlusDefault;
    double tau_minus = kTauMinusDefault;
    QiteVariant variant = QiteVariant::oracle;
    QiteConfig qite;  // used by the unitary variant

    // When set, the final-circuit expectations are estimated from n_shot
    // +-1 measurements per Pauli term instead of read out exactly.
    struct ShotNoise {
        std::uint64_t n_shot;
        std::mt19937_64* rng;
    };
    std::optional<ShotNoise> shots;
};

/// One shift gate: e^{-i tau O} for '-', normalized imaginary-time evolution
/// e^{-tau O} realized by the chosen QITE variant for '+'.
void apply_shift_gate(StateVector& state, const PauliString& op, BracketSign sign, double tau,
                      QiteVariant variant, const QiteConfig& qite_cfg);

/// <O_{n-1}>_b(tau): runs the shifted measurement circuit (gate at t_0,
/// evolve, gate at t_1, ..., measure at t_{n-1}) and returns the expectation.
double circuit_expectation(const BracketSpec& spec, const std::vector<double>& taus);

/// Corr(tau_0..tau_i) with i = max{j : b_j = '+'}: the QITE normalization
/// factor, expanded by Euler identities into Heisenberg-product expectations.
double correction_factor(const BracketSpec& spec, const std::vector<double>& tau_prefix);

/// The corrected parameter-shift evaluation over all 2^{n-1} shift tuples.
cplx nested_bracket(const BracketSpec& spec);

/// c_b for PauliSum-valued non-final operators: bilinear expansion over
/// their Pauli terms, each evaluated by nested_bracket.
cplx nested_bracket_general(const std::vector<PauliSum>& inner_ops, const PauliSum& final_op,
                            const std::vector<double>& times,
                            const std::vector<BracketSign>& signs, const StateVector& state,
                            const EvolutionBackend& backend,
                            double tau_plus = kTauPlusDefault,
                            double tau_minus = kTauMinusDefault,
                            QiteVariant variant = QiteVariant::oracle,
                            std::optional<BracketSpec::ShotNoise> shots = std::nullopt);

/// <phi| O_{n-1}(t_{n-1}) ... O_0(t_0) |phi> = 2^{-(n-1)} sum_b c_b, with
/// non-final PauliSum operators expanded multilinearly over their terms.
cplx n_time_correlation(const std::vector<PauliSum>& operators, const std::vector<double>& times,
                        const StateVector& state, const EvolutionBackend& backend,
                        double tau_plus = kTauPlusDefault, double tau_minus = kTauMinusDefault,
                        QiteVariant variant = QiteVariant::oracle);

/// F(t) = <phi| W(t) V W(t) V |phi> from one commutator and one
/// anticommutator of the composite final observable with O_0 = V.
cplx otoc(const PauliString& w, const PauliString& v, double t, const StateVector& state,
          const EvolutionBackend& backend, double tau_plus = kTauPlusDefault,
          double tau_minus = kTauMinusDefault, QiteVariant variant = QiteVariant::oracle,
          std::optional<BracketSpec::ShotNoise> shots = std::nullopt);

}  // namespace ntcorr
