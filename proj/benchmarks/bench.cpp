#include <benchmark/benchmark.h>

#include "cb/monopole.hpp"
#include "cb/trace.hpp"
#include "examples.hpp"
#include "parse.hpp"

using namespace cb;

static void BM_LogGamma(benchmark::State& st) {
  ComplexF z(0.3, -4.2);
  for (auto _ : st) {
    benchmark::DoNotOptimize(log_gamma(z));
    z += ComplexF(1e-9, 0);
  }
}
BENCHMARK(BM_LogGamma);

static void BM_PolyMul(benchmark::State& st) {
  int n = 4;
  MultiPoly a = MultiPoly::constant(n, GQ(1)), b = a;
  for (int k = 0; k < n; ++k) {
    a = a * (MultiPoly::var(n, k) + MultiPoly::constant(n, GQ(Q(k + 1, 3))));
    b = b * (MultiPoly::var(n, k).scaled(GQ::I()) - MultiPoly::constant(n, GQ(Q(1, k + 2))));
  }
  for (auto _ : st) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PolyMul);

static void BM_ShiftWord(benchmark::State& st) {
  auto t = csxc_theory(0);
  auto one = ground_state(t);
  OperatorWord w;
  for (int k = 0; k < st.range(0); ++k) {
    w.factors.push_back(Generator::X(0));
    w.factors.push_back(Generator::P(0));
  }
  for (auto _ : st) benchmark::DoNotOptimize(apply_word(w, one));
}
BENCHMARK(BM_ShiftWord)->Arg(2)->Arg(8)->Arg(32);

static void BM_GL2Product(benchmark::State& st) {
  auto t = gl2_theory();
  auto v = ground_state(t);
  auto e = parse_expr("V[0,-1] V[1,0]", 2);
  for (auto _ : st) benchmark::DoNotOptimize(apply_expr(t, e, v));
}
BENCHMARK(BM_GL2Product);

static void BM_TraceAbelian(benchmark::State& st) {
  auto t = csxc_theory(Q(1, 4));
  auto p = parse_poly("(i s1)^2", 1);
  TraceOptions opt;
  opt.tol = 1e-10;
  for (auto _ : st) benchmark::DoNotOptimize(trace_polynomial(t, p, opt));
}
BENCHMARK(BM_TraceAbelian);

static void BM_TraceRank2(benchmark::State& st) {
  auto t = gl2_3flav_theory();
  auto e = parse_expr("V[0,-1] V[1,0]", 2);
  TraceOptions opt;
  opt.tol = 1e-8;
  for (auto _ : st) benchmark::DoNotOptimize(trace_word(t, e, opt));
}
BENCHMARK(BM_TraceRank2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
