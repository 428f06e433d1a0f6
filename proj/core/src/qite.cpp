#include "ntcorr/qite.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <numbers>
#include <set>
#include <stdexcept>

#include "ntcorr/dense.hpp"

namespace ntcorr {

StateVector nonunitary_oracle(const StateVector& state, const PauliSum& o, double tau) {
    if (!o.is_hermitian()) throw std::invalid_argument("nonunitary_oracle: operator not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense_matrix(o));
    Eigen::VectorXcd v = solver.eigenvectors().adjoint() * dense_vector(state);
    // Offset by the smallest eigenvalue so large tau stays finite.
    double shift = solver.eigenvalues().minCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v[i] *= std::exp(-tau * (solver.eigenvalues()[i] - shift));
    StateVector out = state_from_dense(solver.eigenvectors() * v);
    out.normalize();
    return out;
}

StateVector analytic_single_qubit_qite(const StateVector& state, QiteAxis axis, std::size_t site,
                                       double tau_eff) {
    std::size_t n = state.n_qubits();
    if (site >= n) throw std::out_of_range("analytic_single_qubit_qite: site out of range");
    Pauli check = axis == QiteAxis::x_on_zero ? Pauli::Z : Pauli::X;
    if (std::abs(state.expectation(PauliString::single(n, site, check)) - 1.0) > 1e-9)
        throw std::runtime_error("analytic_single_qubit_qite: target site not in the required state");
    double theta;
    if (axis == QiteAxis::x_on_zero)
        theta = -2.0 * std::atan(std::tanh(tau_eff));
    else
        theta = 2.0 * std::atan(std::exp(2.0 * tau_eff)) - std::numbers::pi / 2;
    StateVector out = state;
    apply_pauli_exponential(out, PauliString::single(n, site, Pauli::Y), theta / 2,
                            ExpKind::real_time);
    return out;
}

namespace {

std::vector<std::size_t> qite_domain(const PauliString& sigma, int radius) {
    std::set<std::size_t> sites;
    long n = long(sigma.n_qubits());
    for (long q = 0; q < n; ++q)
        if (sigma.letter(std::size_t(q)) != Pauli::I)
            for (long d = q - radius; d <= q + radius; ++d)
                if (d >= 0 && d < n) sites.insert(std::size_t(d));
    return {sites.begin(), sites.end()};
}

}  // namespace

QiteStepResult qite_step_unitary(const StateVector& state, const PauliString& sigma, double dtau,
                                 const QiteConfig& cfg) {
    if (!sigma.is_hermitian())
        throw std::invalid_argument("qite_step_unitary: sigma must be Hermitian");
    std::vector<std::size_t> domain = qite_domain(sigma, cfg.domain_radius);
    if (domain.empty()) throw std::invalid_argument("qite_step_unitary: sigma is the identity");
    if (domain.size() > 6)
        throw std::invalid_argument(
            "qite_step_unitary: domain larger than 6 qubits; use the projective or analytic "
            "variant");

    std::size_t n = state.n_qubits();
    std::size_t n_codes = std::size_t(1) << (2 * domain.size());
    auto string_of = [&](std::size_t code) {
        PauliString s(n);
        for (std::size_t d = 0; d < domain.size(); ++d)
            s.set_letter(domain[d], Pauli((code >> (2 * d)) & 3));
        return s;
    };
    auto code_of = [&](const PauliString& s) {
        std::size_t code = 0;
        for (std::size_t d = 0; d < domain.size(); ++d)
            code |= std::size_t(s.letter(domain[d])) << (2 * d);
        return code;
    };

    // Expectations of every phase-free Pauli string on the domain; pair
    // products then reduce to a table lookup plus the product phase.
    std::vector<cplx> expect(n_codes);
    for (std::size_t code = 0; code < n_codes; ++code) {
        StateVector tmp = state;
        tmp.apply_pauli(string_of(code));
        expect[code] = state.inner(tmp);
    }

    std::size_t m = n_codes - 1;  // identity excluded
    auto mi = Eigen::Index(m);
    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(mi, mi);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(mi);
    for (std::size_t l = 1; l < n_codes; ++l) {
        PauliString sl = string_of(l);
        for (std::size_t lp = 1; lp < n_codes; ++lp) {
            PauliString prod = sl * string_of(lp);
            cplx val = prod.phase() * expect[code_of(prod)];
            mat(Eigen::Index(l - 1), Eigen::Index(lp - 1)) = val.real();
        }
        PauliString prod = sl * sigma;
        cplx val = prod.phase() * expect[code_of(prod)];
        rhs[Eigen::Index(l - 1)] = val.imag();
    }

    Eigen::MatrixXd reg = mat + cfg.regularization * Eigen::MatrixXd::Identity(mi, mi);
    Eigen::VectorXd a = reg.ldlt().solve(rhs);
    bool regularized =
        Eigen::FullPivLU<Eigen::MatrixXd>(mat).rank() < Eigen::Index(m);

    QiteStepResult result{state, {}, regularized};
    for (std::size_t l = 1; l < n_codes; ++l) {
        double al = a[Eigen::Index(l - 1)];
        result.coefficients.emplace_back(al, string_of(l));
        apply_pauli_exponential(result.state, string_of(l), dtau * al, ExpKind::real_time);
    }
    return result;
}

StateVector qite_evolve_unitary(const StateVector& state, const PauliString& sigma,
                                const QiteConfig& cfg) {
    if (cfg.steps < 1) throw std::invalid_argument("qite_evolve_unitary: steps must be >= 1");
    double dtau = cfg.total_tau / cfg.steps;
    StateVector out = state;
    for (int r = 0; r < cfg.steps; ++r) out = qite_step_unitary(out, sigma, dtau, cfg).state;
    return out;
}

ProjectiveResult qite_projective(const StateVector& state, const PauliString& sigma, int sign) {
    if (!sigma.is_hermitian())
        throw std::invalid_argument("qite_projective: sigma must be Hermitian");
    if (sign != 1 && sign != -1) throw std::invalid_argument("qite_projective: sign must be +-1");
    StateVector px = state;
    px.apply_pauli(sigma);
    StateVector out(state.n_qubits());
    for (std::size_t i = 0; i < out.dim(); ++i)
        out.amplitudes()[i] =
            0.5 * (state.amplitudes()[i] + double(sign) * px.amplitudes()[i]);
    double p = out.norm();
    if (p * p < 1e-14) throw std::runtime_error("qite_projective: zero-probability projection");
    double prob = p * p;
    for (auto& x : out.amplitudes()) x /= p;
    return {std::move(out), prob};
}

}  // namespace ntcorr
