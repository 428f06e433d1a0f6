#include "ntcorr/bracket.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "ntcorr/noise.hpp"

namespace ntcorr {

namespace {

void validate(const BracketSpec& spec) {
    std::size_t n = spec.inner_ops.size() + 1;
    if (n < 2) throw std::invalid_argument("bracket: need at least one non-final operator");
    if (spec.times.size() != n || spec.signs.size() != n - 1)
        throw std::invalid_argument("bracket: times/signs length mismatch");
    if (spec.backend == nullptr) throw std::invalid_argument("bracket: no evolution backend");
    for (const auto& op : spec.inner_ops)
        if (!op.is_hermitian())
            throw std::invalid_argument("bracket: non-final operators must be Hermitian");
    if (spec.composite) {
        if (!spec.composite->w.is_hermitian() || !spec.composite->v.is_hermitian())
            throw std::invalid_argument("bracket: composite factors must be Hermitian");
    } else if (!spec.final_op.is_hermitian()) {
        throw std::invalid_argument("bracket: final observable must be Hermitian");
    }
    if (std::abs(std::sinh(2 * spec.tau_plus)) < 1e-12 ||
        std::abs(std::sin(2 * spec.tau_minus)) < 1e-12)
        throw std::invalid_argument("bracket: degenerate shift values");
}

}  // namespace

void apply_shift_gate(StateVector& state, const PauliString& op, BracketSign sign, double tau,
                      QiteVariant variant, const QiteConfig& qite_cfg) {
    if (sign == BracketSign::minus) {
        apply_pauli_exponential(state, op, tau, ExpKind::real_time);
        return;
    }
    switch (variant) {
        case QiteVariant::oracle:
            apply_pauli_exponential(state, op, tau, ExpKind::imaginary_time);
            break;
        case QiteVariant::analytic: {
            if (op.weight() != 1 || op.phase() != cplx(1, 0))
                throw std::invalid_argument(
                    "bracket: analytic QITE needs a plain single-site X or Z");
            std::size_t site = 0;
            Pauli letter = Pauli::I;
            for (std::size_t q = 0; q < op.n_qubits(); ++q)
                if (op.letter(q) != Pauli::I) {
                    site = q;
                    letter = op.letter(q);
                }
            QiteAxis axis;
            if (letter == Pauli::X)
                axis = QiteAxis::x_on_zero;
            else if (letter == Pauli::Z)
                axis = QiteAxis::z_on_plus;
            else
                throw std::invalid_argument("bracket: analytic QITE needs an X or Z operator");
            state = analytic_single_qubit_qite(state, axis, site, tau);
            break;
        }
        case QiteVariant::unitary: {
            QiteConfig cfg = qite_cfg;
            cfg.total_tau = tau;
            state = qite_evolve_unitary(state, op, cfg);
            break;
        }
        case QiteVariant::projective:
            throw std::invalid_argument(
                "bracket: the projective variant has no finite-shift realization");
    }
}

double circuit_expectation(const BracketSpec& spec, const std::vector<double>& taus) {
    validate(spec);
    std::size_t n = spec.times.size();
    if (taus.size() != n - 1) throw std::invalid_argument("circuit_expectation: bad tau tuple");

    StateVector state = spec.initial_state;
    double t_cur = 0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        spec.backend->evolve(state, t_cur, spec.times[j]);
        t_cur = spec.times[j];
        apply_shift_gate(state, spec.inner_ops[j], spec.signs[j], taus[j], spec.variant,
                         spec.qite);
    }
    spec.backend->evolve(state, t_cur, spec.times[n - 1]);

    if (!spec.composite) {
        if (spec.shots)
            return shot_sample_observable(state, spec.final_op, spec.shots->n_shot,
                                          *spec.shots->rng);
        return state.expectation(spec.final_op);
    }

    StateVector r = state;
    r.apply_pauli(spec.composite->w);
    spec.backend->evolve(r, spec.times[n - 1], 0.0);
    r.apply_pauli(spec.composite->v);
    spec.backend->evolve(r, 0.0, spec.times[n - 1]);
    r.apply_pauli(spec.composite->w);
    double value = state.inner(r).real();
    // The sandwich is a product of unitaries, so the value sits in [-1, 1].
    if (spec.shots) return shot_sample(value, spec.shots->n_shot, *spec.shots->rng);
    return value;
}

double correction_factor(const BracketSpec& spec, const std::vector<double>& tau_prefix) {
    validate(spec);
    long last_plus = -1;
    for (std::size_t j = 0; j < spec.signs.size(); ++j)
        if (spec.signs[j] == BracketSign::plus) last_plus = long(j);
    if (last_plus < 0) return 1.0;
    auto i = std::size_t(last_plus);
    if (tau_prefix.size() != i + 1)
        throw std::invalid_argument("correction_factor: tau prefix must cover indices 0..i");

    // Euler expansion of every propagator: factor f = alpha + beta * O_j(t_j),
    // laid out left to right as P_0^dag .. P_{i-1}^dag, e^{-2 tau_i O_i},
    // P_{i-1} .. P_0.
    struct Factor {
        std::size_t j;
        cplx alpha, beta;
    };
    std::vector<Factor> factors;
    for (std::size_t j = 0; j < i; ++j) {
        double tau = tau_prefix[j];
        if (spec.signs[j] == BracketSign::minus)
            factors.push_back({j, std::cos(tau), cplx(0, 1) * std::sin(tau)});
        else
            factors.push_back({j, std::cosh(tau), -std::sinh(tau)});
    }
    factors.push_back({i, std::cosh(2 * tau_prefix[i]), -std::sinh(2 * tau_prefix[i])});
    for (std::size_t j = i; j-- > 0;) {
        double tau = tau_prefix[j];
        if (spec.signs[j] == BracketSign::minus)
            factors.push_back({j, std::cos(tau), cplx(0, -1) * std::sin(tau)});
        else
            factors.push_back({j, std::cosh(tau), -std::sinh(tau)});
    }

    cplx total = 0;
    std::size_t m = factors.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
        cplx coeff = 1;
        for (std::size_t f = 0; f < m; ++f)
            coeff *= (mask >> f) & 1 ? factors[f].beta : factors[f].alpha;
        if (std::abs(coeff) < 1e-300) continue;
        // Heisenberg product of the selected operators, rightmost first.
        StateVector r = spec.initial_state;
        double t_cur = 0;
        for (std::size_t f = m; f-- > 0;) {
            if (!((mask >> f) & 1)) continue;
            std::size_t j = factors[f].j;
            spec.backend->evolve(r, t_cur, spec.times[j]);
            t_cur = spec.times[j];
            r.apply_pauli(spec.inner_ops[j]);
        }
        spec.backend->evolve(r, t_cur, 0.0);
        total += coeff * spec.initial_state.inner(r);
    }
    return total.real();
}

cplx nested_bracket(const BracketSpec& spec) {
    validate(spec);
    std::size_t n = spec.times.size();
    std::size_t n_plus = 0, n_minus = 0;
    long last_plus = -1;
    for (std::size_t j = 0; j < spec.signs.size(); ++j) {
        if (spec.signs[j] == BracketSign::plus) {
            ++n_plus;
            last_plus = long(j);
        } else {
            ++n_minus;
        }
    }
    cplx prefactor = 1;
    for (std::size_t j = 0; j < n_plus; ++j) prefactor *= -1.0 / std::sinh(2 * spec.tau_plus);
    for (std::size_t j = 0; j < n_minus; ++j)
        prefactor *= cplx(0, 1) / std::sin(2 * spec.tau_minus);

    cplx sum = 0;
    std::vector<double> taus(n - 1);
    for (std::size_t mask = 0; mask < (std::size_t(1) << (n - 1)); ++mask) {
        for (std::size_t j = 0; j + 1 < n; ++j) {
            double base = spec.signs[j] == BracketSign::plus ? spec.tau_plus : spec.tau_minus;
            taus[j] = ((mask >> j) & 1) ? -base : base;
        }
        double corr = 1.0;
        if (last_plus >= 0) {
            std::vector<double> prefix(taus.begin(), taus.begin() + last_plus + 1);
            corr = correction_factor(spec, prefix);
        }
        double parity = std::popcount(mask) % 2 == 0 ? 1.0 : -1.0;
        sum += parity * corr * circuit_expectation(spec, taus);
    }
    return prefactor * sum;
}

cplx nested_bracket_general(const std::vector<PauliSum>& inner_ops, const PauliSum& final_op,
                            const std::vector<double>& times,
                            const std::vector<BracketSign>& signs, const StateVector& state,
                            const EvolutionBackend& backend, double tau_plus, double tau_minus,
                            QiteVariant variant, std::optional<BracketSpec::ShotNoise> shots) {
    if (inner_ops.empty()) throw std::invalid_argument("nested_bracket_general: empty bracket");
    BracketSpec spec;
    spec.final_op = final_op;
    spec.times = times;
    spec.signs = signs;
    spec.initial_state = state;
    spec.backend = &backend;
    spec.tau_plus = tau_plus;
    spec.tau_minus = tau_minus;
    spec.variant = variant;
    spec.shots = shots;
    spec.inner_ops.assign(inner_ops.size(), PauliString(state.n_qubits()));

    cplx total = 0;
    std::vector<std::size_t> pick(inner_ops.size(), 0);
    while (true) {
        cplx coeff = 1;
        for (std::size_t j = 0; j < inner_ops.size(); ++j) {
            const auto& [c, p] = inner_ops[j].terms()[pick[j]];
            coeff *= c;
            spec.inner_ops[j] = p;
        }
        total += coeff * nested_bracket(spec);
        std::size_t j = 0;
        for (; j < pick.size(); ++j) {
            if (++pick[j] < inner_ops[j].terms().size()) break;
            pick[j] = 0;
        }
        if (j == pick.size()) break;
    }
    return total;
}

cplx n_time_correlation(const std::vector<PauliSum>& operators, const std::vector<double>& times,
                        const StateVector& state, const EvolutionBackend& backend,
                        double tau_plus, double tau_minus, QiteVariant variant) {
    if (operators.size() < 2)
        throw std::invalid_argument("n_time_correlation: need at least two operators");
    std::size_t n = operators.size();
    std::vector<PauliSum> inner(operators.begin(), operators.end() - 1);
    const PauliSum& final_op = operators.back();

    cplx total = 0;
    std::vector<BracketSign> signs(n - 1);
    for (std::size_t mask = 0; mask < (std::size_t(1) << (n - 1)); ++mask) {
        for (std::size_t j = 0; j + 1 < n; ++j)
            signs[j] = (mask >> j) & 1 ? BracketSign::plus : BracketSign::minus;
        total += nested_bracket_general(inner, final_op, times, signs, state, backend, tau_plus,
                                        tau_minus, variant);
    }
    return total / std::pow(2.0, double(n - 1));
}

cplx otoc(const PauliString& w, const PauliString& v, double t, const StateVector& state,
          const EvolutionBackend& backend, double tau_plus, double tau_minus,
          QiteVariant variant, std::optional<BracketSpec::ShotNoise> shots) {
    BracketSpec spec;
    spec.inner_ops = {v};
    spec.composite = CompositeFinal{w, v};
    spec.times = {0.0, t};
    spec.initial_state = state;
    spec.backend = &backend;
    spec.tau_plus = tau_plus;
    spec.tau_minus = tau_minus;
    spec.variant = variant;
    spec.shots = shots;

    spec.signs = {BracketSign::minus};
    cplx c_minus = nested_bracket(spec);
    spec.signs = {BracketSign::plus};
    cplx c_plus = nested_bracket(spec);
    return 0.5 * (c_minus + c_plus);
}

}  // namespace ntcorr
