#include "ntcorr/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ntcorr {

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I: return 'I';
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    throw std::logic_error("bad Pauli letter");
}

Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I': return Pauli::I;
        case 'X': return Pauli::X;
        case 'Y': return Pauli::Y;
        case 'Z': return Pauli::Z;
    }
    throw std::invalid_argument(std::string("invalid Pauli letter: ") + c);
}

PauliString::PauliString(std::size_t n_qubits) : letters_(n_qubits, Pauli::I) {
    if (n_qubits == 0) throw std::invalid_argument("PauliString needs at least one qubit");
}

PauliString PauliString::from_label(std::string_view letters, int phase_power) {
    PauliString s(letters.size());
    for (std::size_t q = 0; q < letters.size(); ++q) s.letters_[q] = pauli_from_char(letters[q]);
    s.set_phase_power(phase_power);
    return s;
}

PauliString PauliString::single(std::size_t n_qubits, std::size_t site, Pauli p) {
    PauliString s(n_qubits);
    if (site >= n_qubits) throw std::out_of_range("Pauli site out of range");
    s.letters_[site] = p;
    return s;
}

cplx PauliString::phase() const {
    static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[phase_power_];
}

std::size_t PauliString::weight() const {
    return static_cast<std::size_t>(
        std::count_if(letters_.begin(), letters_.end(), [](Pauli p) { return p != Pauli::I; }));
}

bool PauliString::is_identity_letters() const {
    return std::all_of(letters_.begin(), letters_.end(), [](Pauli p) { return p == Pauli::I; });
}

std::string PauliString::label() const {
    std::string out(letters_.size(), 'I');
    for (std::size_t q = 0; q < letters_.size(); ++q) out[q] = pauli_char(letters_[q]);
    return out;
}

PauliString PauliString::stripped() const {
    PauliString s = *this;
    s.phase_power_ = 0;
    return s;
}

namespace {

// Single-site product table: (a, b) -> (result letter, phase power of i).
// E.g. X*Y = iZ -> (Z, 1); Y*X = -iZ -> (Z, 3).
struct SiteProduct {
    Pauli letter;
    int phase_power;
};

SiteProduct site_product(Pauli a, Pauli b) {
    if (a == Pauli::I) return {b, 0};
    if (b == Pauli::I) return {a, 0};
    if (a == b) return {Pauli::I, 0};
    int ia = static_cast<int>(a), ib = static_cast<int>(b);
    // The missing letter out of {X,Y,Z}.
    Pauli c = static_cast<Pauli>(6 - ia - ib);
    // Cyclic (X->Y->Z->X) products pick up +i, anticyclic -i.
    bool cyclic = (ib - ia + 3) % 3 == 1;
    return {c, cyclic ? 1 : 3};
}

}  // namespace

PauliString operator*(const PauliString& a, const PauliString& b) {
    if (a.n_qubits() != b.n_qubits())
        throw std::invalid_argument("PauliString product: qubit count mismatch");
    PauliString out(a.n_qubits());
    int k = a.phase_power_ + b.phase_power_;
    for (std::size_t q = 0; q < a.n_qubits(); ++q) {
        auto [letter, pk] = site_product(a.letters_[q], b.letters_[q]);
        out.letters_[q] = letter;
        k += pk;
    }
    out.set_phase_power(k);
    return out;
}

std::strong_ordering PauliString::operator<=>(const PauliString& other) const {
    if (auto c = letters_ <=> other.letters_; c != 0) return c;
    return phase_power_ <=> other.phase_power_;
}

PauliSum::PauliSum(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits == 0) throw std::invalid_argument("PauliSum needs at least one qubit");
}

PauliSum::PauliSum(std::size_t n_qubits, cplx coeff, const PauliString& p) : PauliSum(n_qubits) {
    add(coeff, p);
}

void PauliSum::add(cplx coeff, const PauliString& p) {
    if (p.n_qubits() != n_qubits_)
        throw std::invalid_argument("PauliSum::add: qubit count mismatch");
    terms_.emplace_back(coeff * p.phase(), p.stripped());
    canonicalize();
}

void PauliSum::add(const PauliSum& other) {
    if (other.n_qubits_ != n_qubits_)
        throw std::invalid_argument("PauliSum::add: qubit count mismatch");
    for (const auto& [c, p] : other.terms_) terms_.emplace_back(c, p);
    canonicalize();
}

void PauliSum::canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    std::vector<std::pair<cplx, PauliString>> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().second == t.second)
            merged.back().first += t.first;
        else
            merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const auto& t) { return std::abs(t.first) < kDropTol; });
    terms_ = std::move(merged);
}

bool PauliSum::is_hermitian(double tol) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [tol](const auto& t) { return std::abs(t.first.imag()) < tol; });
}

double PauliSum::norm_bound() const {
    double s = 0;
    for (const auto& [c, p] : terms_) s += std::abs(c);
    return s;
}

PauliSum PauliSum::operator*(const PauliSum& other) const {
    if (other.n_qubits_ != n_qubits_)
        throw std::invalid_argument("PauliSum product: qubit count mismatch");
    PauliSum out(n_qubits_);
    for (const auto& [ca, pa] : terms_)
        for (const auto& [cb, pb] : other.terms_) {
            PauliString prod = pa * pb;
            out.terms_.emplace_back(ca * cb * prod.phase(), prod.stripped());
        }
    out.canonicalize();
    return out;
}

PauliSum PauliSum::operator+(const PauliSum& other) const {
    PauliSum out = *this;
    out.add(other);
    return out;
}

PauliSum PauliSum::operator-(const PauliSum& other) const {
    return *this + other * cplx(-1.0, 0.0);
}

PauliSum PauliSum::operator*(cplx scale) const {
    PauliSum out = *this;
    for (auto& [c, p] : out.terms_) c *= scale;
    out.canonicalize();
    return out;
}

std::string PauliSum::to_text() const {
    std::ostringstream os;
    os.precision(17);
    for (const auto& [c, p] : terms_) {
        os << c.real();
        if (c.imag() != 0.0) os << (c.imag() > 0 ? "+" : "") << c.imag() << "i";
        os << " * " << p.label() << "\n";
    }
    return os.str();
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) { return a * b - b * a; }

PauliSum anticommutator(const PauliSum& a, const PauliSum& b) { return a * b + b * a; }

}  // namespace ntcorr
