#include "ntcorr/evolution.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "ntcorr/dense.hpp"

namespace ntcorr {

struct EvolutionBackend::EigCache {
    std::once_flag built;
    Eigen::MatrixXcd vectors;
    Eigen::VectorXd values;
};

EvolutionBackend::EvolutionBackend(Kind kind, PauliSum hamiltonian, int order, double dt)
    : kind_(kind), hamiltonian_(std::move(hamiltonian)), order_(order), dt_(dt) {
    if (!hamiltonian_.is_hermitian())
        throw std::invalid_argument("EvolutionBackend: Hamiltonian must be Hermitian");
    if (kind_ == Kind::trotter) {
        if (order_ != 1 && order_ != 2)
            throw std::invalid_argument("EvolutionBackend: trotter order must be 1 or 2");
        if (dt_ <= 0) throw std::invalid_argument("EvolutionBackend: trotter step must be positive");
        auto first_site = [](const PauliString& p) {
            for (std::size_t q = 0; q < p.n_qubits(); ++q)
                if (p.letter(q) != Pauli::I) return q;
            return p.n_qubits();
        };
        auto diagonal = [](const PauliString& p) {
            for (std::size_t q = 0; q < p.n_qubits(); ++q)
                if (p.letter(q) == Pauli::X || p.letter(q) == Pauli::Y) return false;
            return true;
        };
        // Brickwork layering: the mutually commuting diagonal terms first,
        // then off-diagonal terms on even starting sites, then on odd ones.
        // Sequential sweeps in site order would skew the causal cone.
        auto layer = [&](const PauliString& p) {
            if (diagonal(p)) return 0;
            return first_site(p) % 2 == 0 ? 1 : 2;
        };
        for (const auto& [c, p] : hamiltonian_.terms()) {
            if (std::abs(c.imag()) > 1e-12)
                throw std::invalid_argument("EvolutionBackend: Hamiltonian must be Hermitian");
            factors_.emplace_back(c.real(), p);
        }
        std::stable_sort(factors_.begin(), factors_.end(), [&](const auto& a, const auto& b) {
            auto ka = std::pair(layer(a.second), first_site(a.second));
            auto kb = std::pair(layer(b.second), first_site(b.second));
            return ka < kb;
        });
    } else {
        eig_ = std::make_shared<EigCache>();
    }
}

EvolutionBackend EvolutionBackend::exact(PauliSum hamiltonian) {
    return EvolutionBackend(Kind::exact, std::move(hamiltonian), 0, 0);
}

EvolutionBackend EvolutionBackend::trotter(PauliSum hamiltonian, int order, double dt) {
    return EvolutionBackend(Kind::trotter, std::move(hamiltonian), order, dt);
}

void EvolutionBackend::trotter_step(StateVector& state, double direction) const {
    auto apply_range = [&](bool reversed, double step) {
        if (!reversed) {
            for (const auto& [c, p] : factors_)
                apply_pauli_exponential(state, p, c * step, ExpKind::real_time);
        } else {
            for (auto it = factors_.rbegin(); it != factors_.rend(); ++it)
                apply_pauli_exponential(state, it->second, it->first * step, ExpKind::real_time);
        }
    };
    double step = direction * dt_;
    if (order_ == 1) {
        // Inverse steps reverse the gate order so evolve composes exactly.
        if (direction > 0)
            apply_range(false, step);
        else
            apply_range(true, step);
    } else {
        apply_range(false, step / 2);
        apply_range(true, step / 2);
    }
}

void EvolutionBackend::exact_evolve(StateVector& state, double duration) const {
    std::call_once(eig_->built, [&] {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense_matrix(hamiltonian_));
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("eigendecomposition failed");
        eig_->vectors = solver.eigenvectors();
        eig_->values = solver.eigenvalues();
    });
    Eigen::VectorXcd v = dense_vector(state);
    Eigen::VectorXcd w = eig_->vectors.adjoint() * v;
    for (Eigen::Index i = 0; i < w.size(); ++i)
        w[i] *= std::exp(cplx(0, -eig_->values[i] * duration));
    v = eig_->vectors * w;
    auto& amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = v[Eigen::Index(i)];
}

void EvolutionBackend::evolve(StateVector& state, double t_from, double t_to) const {
    double duration = t_to - t_from;
    if (duration == 0) return;
    if (kind_ == Kind::exact) {
        exact_evolve(state, duration);
        return;
    }
    double steps_real = std::abs(duration) / dt_;
    auto steps = static_cast<long>(std::llround(steps_real));
    if (std::abs(steps_real - double(steps)) * dt_ > 1e-9)
        throw std::invalid_argument("trotter evolution: duration is not a multiple of the step");
    double direction = duration > 0 ? 1.0 : -1.0;
    for (long k = 0; k < steps; ++k) trotter_step(state, direction);
}

}  // namespace ntcorr
