#include <benchmark/benchmark.h>

#include "birat/certify.hpp"
#include "birat/engine.hpp"
#include "birat/text.hpp"

using namespace birat;

namespace {

const char* kEx1U = "x^4y^2 - 2x^3y + x^2 + xy";
const char* kEx1V = "x^6y^3 - 3x^5y^2 + 3x^4y + 2x^3y^2 - x^3 - 3x^2y + x + y";

void BM_DecideNoRoots(benchmark::State& state) {
  const auto u = parse_poly(kEx1U), v = parse_poly(kEx1V);
  for (auto _ : state) benchmark::DoNotOptimize(decide(u, v, FieldMode::Closure));
}
BENCHMARK(BM_DecideNoRoots);

void BM_DecideOverTower(benchmark::State& state) {
  const auto u = parse_poly("x"), v = parse_poly("y x^2 + y");
  for (auto _ : state) benchmark::DoNotOptimize(decide(u, v, FieldMode::Closure));
}
BENCHMARK(BM_DecideOverTower);

// (x, y) pushed through n copies of y -> y*(x^2 + 1) and a shear
void BM_DecideDeepChain(benchmark::State& state) {
  auto u = parse_poly("x"), v = parse_poly("y");
  const auto p = parse_poly("x^2 + 1");
  for (int i = 0; i < state.range(0); ++i) {
    v = v * p;
    u = u + v;
  }
  for (auto _ : state) benchmark::DoNotOptimize(decide(u, v, FieldMode::Closure));
  state.SetLabel("degree sum " + std::to_string(u.total_degree().value() + v.total_degree().value()));
}
BENCHMARK(BM_DecideDeepChain)->DenseRange(1, 3);

void BM_DivideBy(benchmark::State& state) {
  const auto d = parse_poly("x^3 y - 2 x y^2 + 5");
  const auto p = parse_poly("(x + y + 1)^8") * d + parse_poly("x^2 - 7 y");
  for (auto _ : state) benchmark::DoNotOptimize(divide_by(p, d));
}
BENCHMARK(BM_DivideBy);

void BM_TowerInverse(benchmark::State& state) {
  FieldCtx ctx(FieldMode::Closure);
  ctx = adjoin_or_split(ctx, parse_unipoly("b^3 - 2", ctx, Var::b));
  ctx = adjoin_or_split(ctx, parse_unipoly("b^2 - b1", ctx, Var::b));
  const Elem e = parse_elem("b1^2 b2 + 3 b1 - b2 + 1", ctx);
  for (auto _ : state) benchmark::DoNotOptimize(invert(ctx, e));
}
BENCHMARK(BM_TowerInverse);

void BM_CertificateVerify(benchmark::State& state) {
  const Certificate c = make_certificate(decide(parse_poly("x y + 1"), parse_poly("x^2 y + x"), FieldMode::Closure));
  const std::string text = encode(c);
  for (auto _ : state) benchmark::DoNotOptimize(verify(decode(text)));
}
BENCHMARK(BM_CertificateVerify);

}  // namespace

BENCHMARK_MAIN();
