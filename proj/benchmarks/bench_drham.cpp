#include <benchmark/benchmark.h>

#include "drham/parse.hpp"
#include "drham/recursion.hpp"
#include "drham/solutions.hpp"
#include "drham/toda.hpp"

using namespace drham;

static void BM_KdvHierarchy(benchmark::State& state) {
    auto seed = get_seed("kdv");
    int d = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_hierarchy(seed, d));
}
BENCHMARK(BM_KdvHierarchy)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_ThreeSpin(benchmark::State& state) {
    auto seed = get_seed("3spin");
    for (auto _ : state) benchmark::DoNotOptimize(build_hierarchy(seed, 2));
}
BENCHMARK(BM_ThreeSpin)->Unit(benchmark::kMillisecond);

static void BM_Cp1Hierarchy(benchmark::State& state) {
    TruncationConfig t;
    t.eps_max = 4;
    t.q_max = 2;
    t.u_deg_max = static_cast<int>(state.range(0));
    auto seed = get_seed("cp1", t);
    for (auto _ : state) benchmark::DoNotOptimize(build_hierarchy(seed, 1, t));
}
BENCHMARK(BM_Cp1Hierarchy)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_Commutativity(benchmark::State& state) {
    auto h = build_hierarchy(get_seed("kdv"), 3);
    for (auto _ : state) benchmark::DoNotOptimize(commutativity_matrix(h, 3));
}
BENCHMARK(BM_Commutativity)->Unit(benchmark::kMillisecond);

static void BM_Product(benchmark::State& state) {
    auto a = parse_diffpoly("u^3/6 + eps^2*u*u_2/24 + eps^4*u_4/1152 + u_1^2*u", 1);
    auto b = dx(a, 3);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_Product);

static void BM_DxInverse(benchmark::State& state) {
    auto f = dx(parse_diffpoly("u^4*u_2 + eps^2*u_1^2*u_3 + u*u_2^3", 1));
    for (auto _ : state) benchmark::DoNotOptimize(dx_inverse(f));
}
BENCHMARK(BM_DxInverse);

static void BM_TodaOperator(benchmark::State& state) {
    TruncationConfig t;
    t.eps_max = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(toda_operator_in_u(t));
}
BENCHMARK(BM_TodaOperator)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_StringSolution(benchmark::State& state) {
    TruncationConfig t;
    t.eps_max = 2;
    t.q_max = 2;
    t.u_deg_max = 8;
    auto h = build_hierarchy(get_seed("cp1", t), 1, t);
    for (auto _ : state) benchmark::DoNotOptimize(expand_string_solution(h, 2));
}
BENCHMARK(BM_StringSolution)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
