#pragma once

#include <complex>
#include <vector>

#include "ntcorr/pauli.hpp"

namespace ntcorr {

enum class ExpKind { real_time, imaginary_time };

/// Dense complex amplitude vector over n qubits.
///
/// Qubit q maps to bit (n-1-q) of the amplitude index, so qubit 0 is the
/// leftmost tensor factor. norm_log accumulates the log of the norm factors
/// discarded by normalized non-unitary applications.
class StateVector {
public:
    explicit StateVector(std::size_t n_qubits);

    static StateVector zero_state(std::size_t n_qubits);
    /// Computational basis state from a bit string, qubit 0 first ("0110...").
    static StateVector basis_state(std::string_view bits);
    static StateVector plus_state(std::size_t n_qubits);

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }

    std::vector<cplx>& amplitudes() { return amps_; }
    const std::vector<cplx>& amplitudes() const { return amps_; }

    double norm_log() const { return norm_log_; }
    void add_norm_log(double x) { norm_log_ += x; }

    double norm() const;
    void normalize();

    /// In-place application of a (unitary) Pauli string, phase included.
    void apply_pauli(const PauliString& p);

    /// y += coeff * P x for every term of the sum; returns O|this>.
    StateVector apply_sum(const PauliSum& o) const;

    /// <this|other>
    cplx inner(const StateVector& other) const;

    /// <this|obs|this>, obs Hermitian.
    double expectation(const PauliSum& obs) const;
    double expectation(const PauliString& p) const;
    cplx expectation_cplx(const PauliSum& obs) const;

private:
    std::size_t n_qubits_;
    std::vector<cplx> amps_;
    double norm_log_ = 0.0;
};

/// e^{-i tau P} (real_time) or normalized e^{-tau P} (imaginary_time) via the
/// Euler identities for an involutory Pauli string; P must be Hermitian.
void apply_pauli_exponential(StateVector& state, const PauliString& p, double tau, ExpKind kind);

}  // namespace ntcorr
