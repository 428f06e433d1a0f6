#pragma once

#include <vector>

#include "ntcorr/pauli.hpp"
#include "ntcorr/statevector.hpp"

namespace ntcorr {

/// Lattice gauge chain with a staggered mass term, nearest-neighbor hopping
/// and a truncated electric energy. L spatial sites occupy 2L qubits.
struct SchwingerParams {
    std::size_t L = 6;
    double m = 0.5;
    double g = 0.3;

    bool operator==(const SchwingerParams&) const = default;
};

/// Staggered-hopping fermion chain in spin representation, L qubits.
struct SSHParams {
    std::size_t L = 12;
    double v = 1.0;
    double delta = 0.8;
    double mu = -2.5;

    bool operator==(const SSHParams&) const = default;
};

struct LatticeMomentum {
    int n = 0;       // k = 2 pi n / L, n in [-L/2, L/2]
    std::size_t L = 1;
    double k() const;
};

/// (m/2) sum_j (-1)^j Z_j on 2L qubits.
PauliSum schwinger_mass_term(std::size_t L, double m);

/// Mass + kinetic + truncated electric energy; Hermitian, reflection symmetric.
PauliSum build_schwinger_truncated(const SchwingerParams& p);

PauliSum build_ssh(const SSHParams& p);

/// -sum XX - sum Z on L qubits, 2L-1 terms.
PauliSum build_tim(std::size_t L);

/// h_j = -i(XX + YY)/2 on the qubit pair (2j, 2j+1); anti-Hermitian.
PauliSum hadron_operator(std::size_t L, std::size_t j);

/// The per-site weights e^{-ik(j + j0)} entering the momentum-projected
/// pair correlator sum over j = 0..L-1.
std::vector<cplx> momentum_weights(const LatticeMomentum& k, std::size_t j0, std::size_t L);

/// Center site ceil(L/2), the default projection reference.
std::size_t default_reference_site(std::size_t L);

/// Computational ground state of the mass term with m > 0 (2L qubits).
StateVector bare_vacuum(std::size_t L);

}  // namespace ntcorr
