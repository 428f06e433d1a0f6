#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "ntcorr/pauli.hpp"
#include "ntcorr/spectral.hpp"
#include "ntcorr/statevector.hpp"

namespace ntcorr {

inline constexpr std::uint64_t kInfiniteShots = std::numeric_limits<std::uint64_t>::max();

/// Classical noise model: global depolarizing per Trotter layer reduced to
/// exponential damping of correlators, plus finite measurement shots.
struct NoiseModel {
    double p = 0;        // depolarizing probability per layer, in [0, 1)
    double dt = 1;       // Trotter step length
    std::uint64_t n_shot = kInfiniteShots;
    std::uint64_t seed = 0;

    bool operator==(const NoiseModel&) const = default;

    double gamma() const;  // -log(1-p)/dt
};

/// Damps each sample by e^{-Gamma |t|}; negative-time samples from signal
/// doubling share the damping of their positive-time mirror.
SignalSeries depolarize_series(const SignalSeries& series, const NoiseModel& model);

/// F(omega) = (1 - e^{-(Gamma + i omega) T}) / (Gamma + i omega), the line
/// shape a delta peak acquires from damping over a finite window.
cplx smearing_function(double omega, double gamma, double t_span);

/// Mean of n_shot +-1 draws with P(+1) = (1 + expectation)/2.
double shot_sample(double expectation, std::uint64_t n_shot, std::mt19937_64& rng);

/// Per-Pauli-term shot sampling of <state|obs|state>, recombined with the
/// coefficients.
double shot_sample_observable(const StateVector& state, const PauliSum& obs,
                              std::uint64_t n_shot, std::mt19937_64& rng);

/// 2^{n-1} ||O|| [1/sqrt(N) + n_plus eps + constant * T (dt)^p ||H||^{p+1}].
double combined_error_bound(std::size_t n, std::size_t n_plus, std::uint64_t n_shot,
                            double eps_qite, double dt, int p_order, double h_norm,
                            double t_span, double o_norm, double constant = 1.0);

/// Strong short pulse H + Lambda*O over duration tau/Lambda, approximating an
/// instantaneous e^{-i tau O}.
struct BangBangPulse {
    double start = 0;
    double tau = 0;
    PauliSum op{1};
};

struct BangBangSchedule {
    double lambda = 1;
    std::vector<BangBangPulse> pulses;  // time ordered, non overlapping
    PauliSum h{1};
};

/// Piecewise-constant evolution under H'(t); each constant segment is
/// integrated exactly (dense).
StateVector simulate_bangbang(const BangBangSchedule& schedule, const StateVector& state,
                              double t_end);

/// Idealized reference: instantaneous e^{-i tau_j O_j} at each pulse start.
StateVector bangbang_ideal_reference(const BangBangSchedule& schedule, const StateVector& state,
                                     double t_end);

/// sum_j 2.31 |tau_j| ||H|| / Lambda.
double bangbang_error_bound(const BangBangSchedule& schedule);

struct ResourceEstimate {
    double n_q;         // k [2 xi (2 tau + ln(2/eps))]^d
    double log4_n_g;    // gate count exponent, constants set to 1
    double xi_threshold;
};
ResourceEstimate resource_estimate(double k, double xi, double tau, double eps, double d,
                                   double n_sites);

}  // namespace ntcorr
