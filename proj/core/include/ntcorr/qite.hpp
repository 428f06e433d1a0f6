#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "ntcorr/pauli.hpp"
#include "ntcorr/statevector.hpp"

namespace ntcorr {

/// Shift values with sinh(2 tau_plus) = sin(2 tau_minus) = 1.
inline const double kTauPlusDefault = 0.5 * std::log(1.0 + std::sqrt(2.0));
inline const double kTauMinusDefault = std::atan(1.0);  // pi/4

enum class QiteVariant { oracle, analytic, unitary, projective };

struct QiteConfig {
    double total_tau = kTauPlusDefault;
    int steps = 1;
    int domain_radius = 0;
    double regularization = 1e-8;
};

/// Normalized e^{-tau O}|psi> through the dense matrix exponential. Ground
/// truth for the other variants; dense, so small systems only.
StateVector nonunitary_oracle(const StateVector& state, const PauliSum& o, double tau);

/// Imaginary-time evolution realized by a single R_Y rotation on one site.
/// x_on_zero: e^{-tau X_j} on a site in |0>, angle -2 arctan(tanh tau).
/// z_on_plus: e^{-tau Z_j} on a site in |+>, angle 2 arctan(e^{2 tau}) - pi/2.
enum class QiteAxis { x_on_zero, z_on_plus };
StateVector analytic_single_qubit_qite(const StateVector& state, QiteAxis axis, std::size_t site,
                                       double tau_eff);

struct QiteStepResult {
    StateVector state;
    std::vector<std::pair<double, PauliString>> coefficients;  // a_l per basis string
    bool regularized = false;
};

/// One step of unitary imaginary-time evolution: solves M a = V over the
/// non-identity Pauli basis of the domain (support of sigma expanded by
/// domain_radius, clipped to the lattice) and applies prod_l e^{-i dtau a_l s_l}.
QiteStepResult qite_step_unitary(const StateVector& state, const PauliString& sigma, double dtau,
                                 const QiteConfig& cfg);

/// cfg.steps repetitions of qite_step_unitary with dtau = total_tau / steps.
StateVector qite_evolve_unitary(const StateVector& state, const PauliString& sigma,
                                const QiteConfig& cfg);

struct ProjectiveResult {
    StateVector state;
    double probability;
};

/// Projection onto the (sign) eigenspace of sigma: (I + sign*sigma)/2, the
/// tau -> -sign * infinity limit of the imaginary-time evolution.
ProjectiveResult qite_projective(const StateVector& state, const PauliString& sigma, int sign);

}  // namespace ntcorr
