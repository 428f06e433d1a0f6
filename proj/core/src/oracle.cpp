#include "ntcorr/oracle.hpp"

#include <limits>
#include <random>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace ntcorr {

namespace {

Eigen::Matrix2cd site_matrix(Pauli p) {
    Eigen::Matrix2cd m;
    switch (p) {
        case Pauli::I: m << 1, 0, 0, 1; break;
        case Pauli::X: m << 0, 1, 1, 0; break;
        case Pauli::Y: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
        case Pauli::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

}  // namespace

Eigen::MatrixXcd dense_matrix(const PauliString& p) {
    Eigen::MatrixXcd m = p.phase() * site_matrix(p.letter(0));
    for (std::size_t q = 1; q < p.n_qubits(); ++q)
        m = Eigen::kroneckerProduct(m, site_matrix(p.letter(q))).eval();
    return m;
}

Eigen::MatrixXcd dense_matrix(const PauliSum& o) {
    std::size_t d = std::size_t(1) << o.n_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(d), Eigen::Index(d));
    for (const auto& [c, p] : o.terms()) m += c * dense_matrix(p);
    return m;
}

Eigen::VectorXcd dense_vector(const StateVector& s) {
    Eigen::VectorXcd v(Eigen::Index(s.dim()));
    for (std::size_t i = 0; i < s.dim(); ++i) v[Eigen::Index(i)] = s.amplitudes()[i];
    return v;
}

StateVector state_from_dense(const Eigen::VectorXcd& v) {
    std::size_t n = 0;
    while ((std::size_t(1) << n) < std::size_t(v.size())) ++n;
    if ((std::size_t(1) << n) != std::size_t(v.size()))
        throw std::invalid_argument("state_from_dense: dimension is not a power of two");
    StateVector s(n);
    for (std::size_t i = 0; i < s.dim(); ++i) s.amplitudes()[i] = v[Eigen::Index(i)];
    return s;
}

cplx exact_correlator_oracle(const std::vector<PauliSum>& operators,
                             const std::vector<double>& times, const StateVector& state,
                             const PauliSum& hamiltonian, std::size_t max_qubits) {
    if (operators.empty() || operators.size() != times.size())
        throw std::invalid_argument("exact_correlator_oracle: operators/times size mismatch");
    if (state.n_qubits() > max_qubits)
        throw std::runtime_error("exact_correlator_oracle: qubit count exceeds the oracle cap");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense_matrix(hamiltonian));
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("exact_correlator_oracle: eigendecomposition failed");
    const Eigen::MatrixXcd& vecs = solver.eigenvectors();
    const Eigen::VectorXd& vals = solver.eigenvalues();

    auto heisenberg = [&](const PauliSum& op, double t) {
        Eigen::MatrixXcd u_diag(vals.size(), 1);
        Eigen::VectorXcd ph(vals.size());
        for (Eigen::Index i = 0; i < vals.size(); ++i) ph[i] = std::exp(cplx(0, vals[i] * t));
        // U(t)^dag O U(t) with U(t) = V e^{-i Lambda t} V^dag.
        Eigen::MatrixXcd o_eig = vecs.adjoint() * dense_matrix(op) * vecs;
        for (Eigen::Index r = 0; r < o_eig.rows(); ++r)
            for (Eigen::Index c = 0; c < o_eig.cols(); ++c)
                o_eig(r, c) *= ph[r] * std::conj(ph[c]);
        return (vecs * o_eig * vecs.adjoint()).eval();
    };

    Eigen::VectorXcd v = dense_vector(state);
    // Apply O_0(t_0) first, then upward.
    for (std::size_t j = 0; j < operators.size(); ++j) v = heisenberg(operators[j], times[j]) * v;
    return dense_vector(state).dot(v);
}

cplx dense_nested_bracket(const std::vector<PauliSum>& operators, const std::vector<double>& times,
                          const std::vector<int>& signs, const StateVector& state,
                          const PauliSum& hamiltonian, std::size_t max_qubits) {
    std::size_t n = operators.size();
    if (n < 2 || times.size() != n || signs.size() != n - 1)
        throw std::invalid_argument("dense_nested_bracket: inconsistent sizes");
    if (state.n_qubits() > max_qubits)
        throw std::runtime_error("dense_nested_bracket: qubit count exceeds the oracle cap");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense_matrix(hamiltonian));
    const Eigen::MatrixXcd& vecs = solver.eigenvectors();
    const Eigen::VectorXd& vals = solver.eigenvalues();
    auto propagator = [&](double t) {
        Eigen::VectorXcd ph(vals.size());
        for (Eigen::Index i = 0; i < vals.size(); ++i) ph[i] = std::exp(cplx(0, -vals[i] * t));
        return (vecs * ph.asDiagonal() * vecs.adjoint()).eval();
    };
    auto heisenberg = [&](const PauliSum& op, double t) {
        Eigen::MatrixXcd u = propagator(t);
        return (u.adjoint() * dense_matrix(op) * u).eval();
    };

    Eigen::MatrixXcd acc = heisenberg(operators[n - 1], times[n - 1]);
    for (std::size_t j = n - 1; j-- > 0;) {
        Eigen::MatrixXcd oj = heisenberg(operators[j], times[j]);
        if (signs[j] < 0)
            acc = (acc * oj - oj * acc).eval();
        else
            acc = (acc * oj + oj * acc).eval();
    }
    Eigen::VectorXcd v = dense_vector(state);
    return v.dot(acc * v);
}

GroundState lanczos_ground_state(const PauliSum& hamiltonian, int max_iters, double tol,
                                 unsigned seed) {
    std::size_t n = hamiltonian.n_qubits();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    StateVector v(n);
    for (auto& a : v.amplitudes()) a = cplx(gauss(rng), gauss(rng));
    v.normalize();

    std::vector<StateVector> basis;
    std::vector<double> alpha, beta;
    basis.push_back(v);

    double prev_energy = std::numeric_limits<double>::infinity();
    Eigen::VectorXd ritz;
    for (int k = 0; k < max_iters; ++k) {
        StateVector w = basis.back().apply_sum(hamiltonian);
        double a = basis.back().inner(w).real();
        alpha.push_back(a);
        // Full reorthogonalization keeps the basis numerically orthonormal.
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) {
                cplx c = b.inner(w);
                for (std::size_t i = 0; i < w.dim(); ++i)
                    w.amplitudes()[i] -= c * b.amplitudes()[i];
            }
        double bnorm = w.norm();

        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(Eigen::Index(alpha.size()),
                                                  Eigen::Index(alpha.size()));
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            t(Eigen::Index(i), Eigen::Index(i)) = alpha[i];
            if (i + 1 < alpha.size()) {
                t(Eigen::Index(i), Eigen::Index(i + 1)) = beta[i];
                t(Eigen::Index(i + 1), Eigen::Index(i)) = beta[i];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        double energy = es.eigenvalues()[0];
        ritz = es.eigenvectors().col(0);
        bool converged = std::abs(energy - prev_energy) < tol;
        prev_energy = energy;
        if (converged || bnorm < 1e-12 || k == max_iters - 1) break;

        beta.push_back(bnorm);
        for (auto& x : w.amplitudes()) x /= bnorm;
        basis.push_back(std::move(w));
    }

    StateVector ground(n);
    for (std::size_t j = 0; j < std::size_t(ritz.size()); ++j)
        for (std::size_t i = 0; i < ground.dim(); ++i)
            ground.amplitudes()[i] += ritz[Eigen::Index(j)] * basis[j].amplitudes()[i];
    ground.normalize();
    return {prev_energy, ground};
}

}  // namespace ntcorr
