#include "ntcorr/noise.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ntcorr/dense.hpp"

namespace ntcorr {

double NoiseModel::gamma() const {
    if (p < 0 || p >= 1) throw std::invalid_argument("NoiseModel: p must be in [0, 1)");
    if (dt <= 0) throw std::invalid_argument("NoiseModel: dt must be positive");
    return -std::log1p(-p) / dt;
}

SignalSeries depolarize_series(const SignalSeries& series, const NoiseModel& model) {
    double g = model.gamma();
    SignalSeries out = series;
    for (std::size_t i = 0; i < out.samples.size(); ++i)
        out.samples[i] *= std::exp(-g * std::abs(out.time(i)));
    return out;
}

cplx smearing_function(double omega, double gamma, double t_span) {
    if (gamma < 0) throw std::invalid_argument("smearing_function: gamma must be >= 0");
    cplx z(gamma, omega);
    if (std::abs(z) * t_span < 1e-9) return t_span;  // integral of ~1 over [0, T]
    return (1.0 - std::exp(-z * t_span)) / z;
}

double shot_sample(double expectation, std::uint64_t n_shot, std::mt19937_64& rng) {
    if (n_shot == 0) throw std::invalid_argument("shot_sample: N_shot must be positive");
    if (n_shot == kInfiniteShots) return expectation;
    double e = std::clamp(expectation, -1.0, 1.0);
    std::binomial_distribution<std::uint64_t> dist(n_shot, (1.0 + e) / 2.0);
    std::uint64_t ups = dist(rng);
    return 2.0 * double(ups) / double(n_shot) - 1.0;
}

double shot_sample_observable(const StateVector& state, const PauliSum& obs,
                              std::uint64_t n_shot, std::mt19937_64& rng) {
    if (!obs.is_hermitian())
        throw std::invalid_argument("shot_sample_observable: observable must be Hermitian");
    double total = 0;
    for (const auto& [c, p] : obs.terms()) {
        if (p.is_identity_letters()) {
            total += c.real();
            continue;
        }
        total += c.real() * shot_sample(state.expectation(p), n_shot, rng);
    }
    return total;
}

double combined_error_bound(std::size_t n, std::size_t n_plus, std::uint64_t n_shot,
                            double eps_qite, double dt, int p_order, double h_norm,
                            double t_span, double o_norm, double constant) {
    double shot = n_shot == kInfiniteShots ? 0.0 : 1.0 / std::sqrt(double(n_shot));
    double trotter = constant * t_span * std::pow(dt, p_order) * std::pow(h_norm, p_order + 1);
    return std::pow(2.0, double(n - 1)) * o_norm *
           (shot + double(n_plus) * eps_qite + trotter);
}

namespace {

void validate_schedule(const BangBangSchedule& s) {
    if (s.lambda < 1) throw std::invalid_argument("bangbang: lambda must be >= 1");
    double prev_end = -std::numeric_limits<double>::infinity();
    for (const auto& pulse : s.pulses) {
        if (pulse.start < prev_end - 1e-12)
            throw std::invalid_argument("bangbang: pulses must be time ordered, non overlapping");
        prev_end = pulse.start + std::abs(pulse.tau) / s.lambda;
    }
}

void dense_evolve(StateVector& state, const Eigen::MatrixXcd& h, double duration) {
    if (duration == 0) return;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    Eigen::VectorXcd v = solver.eigenvectors().adjoint() * dense_vector(state);
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v[i] *= std::exp(cplx(0, -solver.eigenvalues()[i] * duration));
    state = state_from_dense(solver.eigenvectors() * v);
}

}  // namespace

StateVector simulate_bangbang(const BangBangSchedule& schedule, const StateVector& state,
                              double t_end) {
    validate_schedule(schedule);
    Eigen::MatrixXcd h = dense_matrix(schedule.h);
    StateVector out = state;
    double t = 0;
    for (const auto& pulse : schedule.pulses) {
        double width = std::abs(pulse.tau) / schedule.lambda;
        if (pulse.start + width > t_end + 1e-12) break;
        dense_evolve(out, h, pulse.start - t);
        double strength = schedule.lambda * (pulse.tau < 0 ? -1.0 : 1.0);
        Eigen::MatrixXcd hp = h + strength * dense_matrix(pulse.op);
        dense_evolve(out, hp, width);
        t = pulse.start + width;
    }
    dense_evolve(out, h, t_end - t);
    return out;
}

StateVector bangbang_ideal_reference(const BangBangSchedule& schedule, const StateVector& state,
                                     double t_end) {
    validate_schedule(schedule);
    Eigen::MatrixXcd h = dense_matrix(schedule.h);
    StateVector out = state;
    double t = 0;
    for (const auto& pulse : schedule.pulses) {
        if (pulse.start > t_end + 1e-12) break;
        dense_evolve(out, h, pulse.start - t);
        dense_evolve(out, dense_matrix(pulse.op), pulse.tau);  // e^{-i tau O}
        t = pulse.start;
    }
    dense_evolve(out, h, t_end - t);
    return out;
}

double bangbang_error_bound(const BangBangSchedule& schedule) {
    validate_schedule(schedule);
    double h_norm = spectral_norm_bound(schedule.h);
    double total = 0;
    for (const auto& pulse : schedule.pulses)
        total += 2.31 * std::abs(pulse.tau) * h_norm / schedule.lambda;
    return total;
}

ResourceEstimate resource_estimate(double k, double xi, double tau, double eps, double d,
                                   double n_sites) {
    if (k <= 0 || xi <= 0 || eps <= 0 || d <= 0 || tau < 0 || n_sites <= 0)
        throw std::invalid_argument("resource_estimate: inputs must be positive");
    double diameter = 2.0 * xi * (2.0 * tau + std::log(2.0 / eps));
    double n_q = k * std::pow(diameter, d);
    double xi_threshold = std::pow(std::log(n_sites) / (2.0 * k * d), 1.0 / d);
    return {n_q, n_q, xi_threshold};
}

}  // namespace ntcorr
