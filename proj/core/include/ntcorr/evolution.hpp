#pragma once

#include <memory>
#include <vector>

#include "ntcorr/pauli.hpp"
#include "ntcorr/statevector.hpp"

namespace ntcorr {

/// Time evolution under a Hermitian Pauli-sum Hamiltonian.
///
/// Two realizations: Trotterized product formulas (order 1 or 2, fixed step
/// length) and exact evolution through a cached eigendecomposition. Backwards
/// evolution inverts the exact forward gate sequence, so
/// evolve(t0, t) followed by evolve(t, t0) is an exact identity for both kinds.
class EvolutionBackend {
public:
    enum class Kind { exact, trotter };

    static EvolutionBackend exact(PauliSum hamiltonian);
    static EvolutionBackend trotter(PauliSum hamiltonian, int order, double dt);

    Kind kind() const { return kind_; }
    const PauliSum& hamiltonian() const { return hamiltonian_; }
    int trotter_order() const { return order_; }
    double trotter_dt() const { return dt_; }

    /// Evolves the state from t_from to t_to. For the trotter kind the
    /// duration must be an integer multiple of the step length (within 1e-9).
    void evolve(StateVector& state, double t_from, double t_to) const;

private:
    EvolutionBackend(Kind kind, PauliSum hamiltonian, int order, double dt);

    void trotter_step(StateVector& state, double direction) const;
    void exact_evolve(StateVector& state, double duration) const;

    Kind kind_;
    PauliSum hamiltonian_;
    int order_ = 0;
    double dt_ = 0;

    // Product-formula factors ordered by support site, left to right. The
    // canonical (lexicographic) term order sweeps the lattice from the last
    // site to the first, which skews the circuit's causal cone by one site
    // per step; ordering by support keeps propagation physical.
    std::vector<std::pair<double, PauliString>> factors_;

    struct EigCache;
    std::shared_ptr<EigCache> eig_;  // built lazily, then read-only
};

}  // namespace ntcorr
