#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ntcorr {

using cplx = std::complex<double>;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// A signed/phased tensor product of single-site Pauli operators.
///
/// The phase is restricted to the four fourth roots of unity and is stored
/// as the exponent k of i^k. Qubit 0 is the leftmost tensor factor and
/// Z|0> = +|0>.
class PauliString {
public:
    explicit PauliString(std::size_t n_qubits);
    static PauliString from_label(std::string_view letters, int phase_power = 0);
    static PauliString single(std::size_t n_qubits, std::size_t site, Pauli p);

    std::size_t n_qubits() const { return letters_.size(); }
    Pauli letter(std::size_t q) const { return letters_[q]; }
    void set_letter(std::size_t q, Pauli p) { letters_[q] = p; }

    int phase_power() const { return phase_power_; }
    void set_phase_power(int k) { phase_power_ = ((k % 4) + 4) % 4; }
    cplx phase() const;

    /// Number of non-identity letters.
    std::size_t weight() const;

    /// phase in {1, -1}. A phase of +/-i makes the string anti-Hermitian.
    bool is_hermitian() const { return phase_power_ % 2 == 0; }

    bool is_identity_letters() const;

    /// Letter sequence, e.g. "XIYZ" (phase not included).
    std::string label() const;

    /// Same letters with phase reset to +1.
    PauliString stripped() const;

    friend PauliString operator*(const PauliString& a, const PauliString& b);

    bool operator==(const PauliString& other) const = default;

    /// Lexicographic order on letter sequences, then phase power.
    std::strong_ordering operator<=>(const PauliString& other) const;

private:
    std::vector<Pauli> letters_;
    int phase_power_ = 0;  // phase = i^phase_power_
};

/// Complex-weighted sum of phase-free Pauli strings, kept canonical:
/// terms sorted lexicographically by letter sequence, duplicates merged,
/// coefficients below 1e-14 dropped.
class PauliSum {
public:
    static constexpr double kDropTol = 1e-14;

    explicit PauliSum(std::size_t n_qubits);
    PauliSum(std::size_t n_qubits, cplx coeff, const PauliString& p);

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t n_terms() const { return terms_.size(); }

    const std::vector<std::pair<cplx, PauliString>>& terms() const { return terms_; }

    /// Adds coeff * p, folding p's phase into the coefficient.
    void add(cplx coeff, const PauliString& p);
    void add(const PauliSum& other);

    bool is_hermitian(double tol = 1e-12) const;

    /// Sum of |coefficients|; an upper bound on the spectral norm.
    double norm_bound() const;

    PauliSum operator*(const PauliSum& other) const;
    PauliSum operator+(const PauliSum& other) const;
    PauliSum operator-(const PauliSum& other) const;
    PauliSum operator*(cplx scale) const;

    bool operator==(const PauliSum& other) const = default;

    /// One term per line: "coeff * XIYZ".
    std::string to_text() const;

private:
    void canonicalize();

    std::size_t n_qubits_;
    std::vector<std::pair<cplx, PauliString>> terms_;
};

PauliSum commutator(const PauliSum& a, const PauliSum& b);
PauliSum anticommutator(const PauliSum& a, const PauliSum& b);

inline double spectral_norm_bound(const PauliSum& a) { return a.norm_bound(); }

}  // namespace ntcorr
