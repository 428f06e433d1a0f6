#include <benchmark/benchmark.h>

#include "ntcorr/bracket.hpp"
#include "ntcorr/evolution.hpp"
#include "ntcorr/models.hpp"
#include "ntcorr/pauli.hpp"
#include "ntcorr/statevector.hpp"

namespace {

void bm_pauli_apply(benchmark::State& state) {
    auto n = std::size_t(state.range(0));
    ntcorr::StateVector psi = ntcorr::StateVector::plus_state(n);
    ntcorr::PauliString p = ntcorr::PauliString::single(n, n / 2, ntcorr::Pauli::Y);
    for (auto _ : state) {
        psi.apply_pauli(p);
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
}
BENCHMARK(bm_pauli_apply)->Arg(10)->Arg(14)->Arg(18);

void bm_trotter_step(benchmark::State& state) {
    auto L = std::size_t(state.range(0));
    ntcorr::PauliSum h = ntcorr::build_tim(L);
    ntcorr::EvolutionBackend backend = ntcorr::EvolutionBackend::trotter(h, 1, 0.2);
    ntcorr::StateVector psi = ntcorr::StateVector::plus_state(L);
    double t = 0;
    for (auto _ : state) {
        backend.evolve(psi, t, t + 0.2);
        t += 0.2;
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
}
BENCHMARK(bm_trotter_step)->Arg(8)->Arg(12)->Arg(16);

void bm_nested_bracket(benchmark::State& state) {
    std::size_t L = 6;
    ntcorr::PauliSum h = ntcorr::build_tim(L);
    ntcorr::EvolutionBackend backend = ntcorr::EvolutionBackend::trotter(h, 1, 0.2);
    ntcorr::BracketSpec spec;
    spec.inner_ops = {ntcorr::PauliString::single(L, 0, ntcorr::Pauli::Z)};
    spec.final_op = ntcorr::PauliSum(L, 1.0, ntcorr::PauliString::single(L, L - 1, ntcorr::Pauli::X));
    spec.times = {0.0, 2.0};
    spec.signs = {ntcorr::BracketSign::plus};
    spec.initial_state = ntcorr::StateVector::plus_state(L);
    spec.backend = &backend;
    for (auto _ : state) {
        ntcorr::cplx c = ntcorr::nested_bracket(spec);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(bm_nested_bracket);

}  // namespace

BENCHMARK_MAIN();
