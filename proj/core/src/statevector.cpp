#include "ntcorr/statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace ntcorr {

StateVector::StateVector(std::size_t n_qubits)
    : n_qubits_(n_qubits), amps_(std::size_t(1) << n_qubits, cplx(0, 0)) {
    if (n_qubits == 0 || n_qubits > 28) throw std::invalid_argument("unsupported qubit count");
}

StateVector StateVector::zero_state(std::size_t n_qubits) {
    StateVector s(n_qubits);
    s.amps_[0] = 1.0;
    return s;
}

StateVector StateVector::basis_state(std::string_view bits) {
    StateVector s(bits.size());
    std::size_t idx = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("basis_state: bits must be 0/1");
        idx = (idx << 1) | std::size_t(c - '0');
    }
    s.amps_[idx] = 1.0;
    return s;
}

StateVector StateVector::plus_state(std::size_t n_qubits) {
    StateVector s(n_qubits);
    double a = 1.0 / std::sqrt(double(s.dim()));
    for (auto& x : s.amps_) x = a;
    return s;
}

double StateVector::norm() const {
    double s = 0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

void StateVector::normalize() {
    double n = norm();
    if (n == 0) throw std::runtime_error("cannot normalize zero state");
    for (auto& a : amps_) a /= n;
}

namespace {

struct PauliMasks {
    std::size_t flip = 0;   // X or Y letters
    std::size_t z_like = 0; // Y or Z letters: sign (-1)^bit on the input bit
    std::size_t y = 0;
    cplx prefactor{1, 0};   // string phase times i^{#Y}
};

PauliMasks make_masks(const PauliString& p) {
    PauliMasks m;
    std::size_t n = p.n_qubits();
    int n_y = 0;
    for (std::size_t q = 0; q < n; ++q) {
        std::size_t bit = std::size_t(1) << (n - 1 - q);
        switch (p.letter(q)) {
            case Pauli::I: break;
            case Pauli::X: m.flip |= bit; break;
            case Pauli::Y: m.flip |= bit; m.z_like |= bit; m.y |= bit; ++n_y; break;
            case Pauli::Z: m.z_like |= bit; break;
        }
    }
    // Y|0> = i|1>, Y|1> = -i|0>: factor i * (-1)^bit, folded into prefactor
    // and the z_like sign mask.
    static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    m.prefactor = p.phase() * ipow[n_y % 4];
    return m;
}

}  // namespace

void StateVector::apply_pauli(const PauliString& p) {
    if (p.n_qubits() != n_qubits_)
        throw std::invalid_argument("apply_pauli: qubit count mismatch");
    PauliMasks m = make_masks(p);
    std::size_t d = dim();
    if (m.flip == 0) {
        for (std::size_t i = 0; i < d; ++i) {
            bool neg = std::popcount(i & m.z_like) & 1;
            amps_[i] *= neg ? -m.prefactor : m.prefactor;
        }
        return;
    }
    for (std::size_t i = 0; i < d; ++i) {
        std::size_t j = i ^ m.flip;
        if (j < i) continue;
        cplx ai = amps_[i], aj = amps_[j];
        cplx fi = (std::popcount(i & m.z_like) & 1) ? -m.prefactor : m.prefactor;
        cplx fj = (std::popcount(j & m.z_like) & 1) ? -m.prefactor : m.prefactor;
        amps_[j] = fi * ai;  // P maps |i> -> factor(i) |j>
        amps_[i] = fj * aj;
    }
}

StateVector StateVector::apply_sum(const PauliSum& o) const {
    if (o.n_qubits() != n_qubits_)
        throw std::invalid_argument("apply_sum: qubit count mismatch");
    StateVector out(n_qubits_);
    StateVector tmp(n_qubits_);
    for (const auto& [c, p] : o.terms()) {
        tmp.amps_ = amps_;
        tmp.apply_pauli(p);
        for (std::size_t i = 0; i < dim(); ++i) out.amps_[i] += c * tmp.amps_[i];
    }
    return out;
}

cplx StateVector::inner(const StateVector& other) const {
    if (other.n_qubits_ != n_qubits_)
        throw std::invalid_argument("inner: qubit count mismatch");
    cplx s = 0;
    for (std::size_t i = 0; i < dim(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
    return s;
}

double StateVector::expectation(const PauliString& p) const {
    StateVector tmp = *this;
    tmp.apply_pauli(p);
    return inner(tmp).real();
}

double StateVector::expectation(const PauliSum& obs) const {
    if (!obs.is_hermitian())
        throw std::invalid_argument("expectation: observable must be Hermitian");
    return expectation_cplx(obs).real();
}

cplx StateVector::expectation_cplx(const PauliSum& obs) const {
    cplx s = 0;
    StateVector tmp(n_qubits_);
    for (const auto& [c, p] : obs.terms()) {
        tmp.amps_ = amps_;
        tmp.apply_pauli(p);
        s += c * inner(tmp);
    }
    return s;
}

void apply_pauli_exponential(StateVector& state, const PauliString& p, double tau, ExpKind kind) {
    if (!p.is_hermitian())
        throw std::invalid_argument("apply_pauli_exponential: anti-Hermitian Pauli string");
    StateVector px = state;
    px.apply_pauli(p);
    auto& a = state.amplitudes();
    const auto& b = px.amplitudes();
    if (kind == ExpKind::real_time) {
        cplx c = std::cos(tau), s = cplx(0, -1) * std::sin(tau);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = c * a[i] + s * b[i];
    } else {
        double c = std::cosh(tau), s = -std::sinh(tau);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = c * a[i] + s * b[i];
        double n = state.norm();
        if (n == 0) throw std::runtime_error("imaginary-time evolution annihilated the state");
        for (auto& x : a) x /= n;
        state.add_norm_log(std::log(n));
    }
}

}  // namespace ntcorr
