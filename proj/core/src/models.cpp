#include "ntcorr/models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ntcorr {

namespace {

void add_two_site(PauliSum& h, double c, std::size_t a, std::size_t b, Pauli pa, Pauli pb) {
    PauliString s(h.n_qubits());
    s.set_letter(a, pa);
    s.set_letter(b, pb);
    h.add(c, s);
}

void add_one_site(PauliSum& h, double c, std::size_t a, Pauli pa) {
    h.add(c, PauliString::single(h.n_qubits(), a, pa));
}

// (XX + YY)/2 hopping between sites a and a+1, scaled by c.
void add_hopping(PauliSum& h, double c, std::size_t a) {
    add_two_site(h, c / 2, a, a + 1, Pauli::X, Pauli::X);
    add_two_site(h, c / 2, a, a + 1, Pauli::Y, Pauli::Y);
}

}  // namespace

double LatticeMomentum::k() const { return 2.0 * std::numbers::pi * double(n) / double(L); }

PauliSum schwinger_mass_term(std::size_t L, double m) {
    PauliSum h(2 * L);
    for (std::size_t j = 0; j < 2 * L; ++j)
        add_one_site(h, (j % 2 == 0 ? 1.0 : -1.0) * m / 2, j, Pauli::Z);
    return h;
}

PauliSum build_schwinger_truncated(const SchwingerParams& p) {
    if (p.L < 2 || p.L % 2 != 0)
        throw std::invalid_argument("build_schwinger_truncated: L must be even and >= 2");
    std::size_t L = p.L;
    PauliSum h = schwinger_mass_term(L, p.m);

    // Nearest-neighbor hopping (s+ s- + h.c.)/2 on every bond.
    for (std::size_t j = 0; j + 1 < 2 * L; ++j) add_hopping(h, 0.5, j);

    // Electric energy truncated at next-next nearest neighbors.
    double e = p.g * p.g / 2;
    auto zz = [&](double c, std::size_t a, std::size_t b) {
        add_two_site(h, e * c, a, b, Pauli::Z, Pauli::Z);
    };
    auto z = [&](double c, std::size_t a) { add_one_site(h, e * c, a, Pauli::Z); };

    double Lh = double(L) / 2;
    for (std::size_t j = 0; j < L / 2; ++j) {
        zz(Lh - 0.75 - double(j), 2 * j, 2 * j + 1);
        zz(double(j) + 0.25, L + 2 * j, L + 2 * j + 1);
    }
    for (std::size_t j = 1; j + 2 <= L / 2; ++j) {
        z(1.0, 2 * j);
        z(0.5, 2 * j + 1);
        z(-0.5, L + 2 * j);
        z(-1.0, L + 2 * j + 1);
    }
    z(1.0, 0);
    z(0.5, 1);
    z(0.5, L - 2);
    z(-0.5, L + 1);
    z(-0.5, 2 * L - 2);
    z(-1.0, 2 * L - 1);
    for (std::size_t j = 0; j + 2 <= L / 2; ++j) {
        double c1 = Lh - 1.25 - double(j);
        double c2 = Lh - 1.75 - double(j);
        zz(c1, 2 * j, 2 * j + 2);
        zz(c1, 2 * j + 1, 2 * j + 2);
        zz(c2, 2 * j, 2 * j + 3);
        zz(c2, 2 * j + 1, 2 * j + 3);
        double c3 = double(j) + 0.25;
        double c4 = double(j) + 0.75;
        zz(c3, L + 2 * j + 2, L + 2 * j);
        zz(c3, L + 2 * j + 3, L + 2 * j);
        zz(c4, L + 2 * j + 2, L + 2 * j + 1);
        zz(c4, L + 2 * j + 3, L + 2 * j + 1);
    }
    return h;
}

PauliSum build_ssh(const SSHParams& p) {
    if (p.L < 2) throw std::invalid_argument("build_ssh: L must be >= 2");
    PauliSum h(p.L);
    for (std::size_t j = 0; j + 1 < p.L; ++j) {
        double hop = p.v + (j % 2 == 0 ? 1.0 : -1.0) * p.delta / 2;
        add_hopping(h, -hop, j);
    }
    for (std::size_t j = 0; j < p.L; ++j) add_one_site(h, p.mu / 2, j, Pauli::Z);
    return h;
}

PauliSum build_tim(std::size_t L) {
    if (L < 2) throw std::invalid_argument("build_tim: L must be >= 2");
    PauliSum h(L);
    for (std::size_t j = 0; j + 1 < L; ++j) add_two_site(h, -1.0, j, j + 1, Pauli::X, Pauli::X);
    for (std::size_t j = 0; j < L; ++j) add_one_site(h, -1.0, j, Pauli::Z);
    return h;
}

PauliSum hadron_operator(std::size_t L, std::size_t j) {
    if (j >= L) throw std::out_of_range("hadron_operator: site out of range");
    PauliSum h(2 * L);
    cplx c(0, -0.5);
    PauliString xx(2 * L), yy(2 * L);
    xx.set_letter(2 * j, Pauli::X);
    xx.set_letter(2 * j + 1, Pauli::X);
    yy.set_letter(2 * j, Pauli::Y);
    yy.set_letter(2 * j + 1, Pauli::Y);
    h.add(c, xx);
    h.add(c, yy);
    return h;
}

std::vector<cplx> momentum_weights(const LatticeMomentum& k, std::size_t j0, std::size_t L) {
    if (k.L != L) throw std::invalid_argument("momentum_weights: lattice size mismatch");
    std::vector<cplx> w(L);
    for (std::size_t j = 0; j < L; ++j) {
        double phase = -k.k() * double(j + j0);
        w[j] = cplx(std::cos(phase), std::sin(phase));
    }
    return w;
}

std::size_t default_reference_site(std::size_t L) { return (L + 1) / 2; }

StateVector bare_vacuum(std::size_t L) {
    std::string bits;
    for (std::size_t j = 0; j < L; ++j) bits += "10";
    return StateVector::basis_state(bits);
}

}  // namespace ntcorr
