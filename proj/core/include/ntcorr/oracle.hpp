#pragma once

#include <vector>

#include "ntcorr/dense.hpp"
#include "ntcorr/pauli.hpp"
#include "ntcorr/statevector.hpp"

namespace ntcorr {

inline constexpr std::size_t kOracleMaxQubits = 12;

/// <state| O_{n-1}(t_{n-1}) ... O_0(t_0) |state> by full diagonalization of
/// the Hamiltonian. Independent of the product-formula machinery; used as a
/// reference for small systems.
cplx exact_correlator_oracle(const std::vector<PauliSum>& operators,
                             const std::vector<double>& times, const StateVector& state,
                             const PauliSum& hamiltonian,
                             std::size_t max_qubits = kOracleMaxQubits);

/// <state| [[..[O_{n-1}(t_{n-1}), O_{n-2}(t_{n-2})]_{s_{n-2}}, ...]_{s_0}, applied
/// from the inside out: acc = O_{n-1}, then acc = [acc, O_j]_{s_j} going down.
/// signs[j] = -1 for a commutator, +1 for an anticommutator.
cplx dense_nested_bracket(const std::vector<PauliSum>& operators, const std::vector<double>& times,
                          const std::vector<int>& signs, const StateVector& state,
                          const PauliSum& hamiltonian,
                          std::size_t max_qubits = kOracleMaxQubits);

/// Lowest eigenpair by Lanczos iteration with full reorthogonalization.
/// Works through PauliSum application, so it scales past the dense cap.
struct GroundState {
    double energy;
    StateVector state;
};
GroundState lanczos_ground_state(const PauliSum& hamiltonian, int max_iters = 200,
                                 double tol = 1e-10, unsigned seed = 7);

}  // namespace ntcorr
