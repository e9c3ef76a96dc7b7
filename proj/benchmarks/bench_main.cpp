#include <benchmark/benchmark.h>

#include <random>

#include "pwhs/melnikov.hpp"
#include "pwhs/pwsim.hpp"
#include "pwhs/quadrature.hpp"
#include "pwhs/rootkit.hpp"

using namespace pwhs;

namespace {

PerturbationSpec sample_spec(int m) {
    std::mt19937 rng(2024 + m);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PerturbationSpec s(m);
    for (int l = 0; l <= m; ++l)
        for (int k = 0; k <= l; ++k) {
            s.set_plus(k, l, {u(rng), u(rng)});
            s.set_minus(k, l, {u(rng), u(rng)});
        }
    return s;
}

void BM_ClosedFormEval(benchmark::State& state) {
    const MelnikovParams p = melnikov_params(sample_spec(3));
    double r = 0.05;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_M1(p, r));
        r += 1e-4;
        if (r > 0.95) r = 0.05;
    }
}
BENCHMARK(BM_ClosedFormEval);

void BM_QuadratureEval(benchmark::State& state) {
    const PerturbationSpec s = sample_spec(static_cast<int>(state.range(0)));
    const auto& left = builtin_system("half-i-z2-minus-1-left");
    for (auto _ : state)
        benchmark::DoNotOptimize(melnikov_quadrature(left, s, 0.6).m1);
}
BENCHMARK(BM_QuadratureEval)->Arg(1)->Arg(3);

void BM_SturmCount(benchmark::State& state) {
    const RationalPolynomial p = RationalPolynomial::from_doubles(
        {0.125, -0.75, 1.0, 0.3, -1.1});
    for (auto _ : state)
        benchmark::DoNotOptimize(sturm_count(p, Rational(0), Rational(1)));
}
BENCHMARK(BM_SturmCount);

void BM_IsolateZeros(benchmark::State& state) {
    const MelnikovParams p = melnikov_params(sample_spec(3));
    const SpanFunction f = span_from_params(p, Which::M1);
    for (auto _ : state) benchmark::DoNotOptimize(isolate_zeros(f));
}
BENCHMARK(BM_IsolateZeros);

void BM_PoincareMap(benchmark::State& state) {
    MelnikovParams p;
    p.a = 1;
    p.b = -0.5;
    p.c = -1;
    const PerturbationSpec spec = params_to_perturbation(p, 0, false);
    SimConfig cfg;
    cfg.epsilon = 1e-3;
    for (auto _ : state)
        benchmark::DoNotOptimize(poincare_map(spec, cfg, -0.123));
}
BENCHMARK(BM_PoincareMap);

}  // namespace

BENCHMARK_MAIN();
