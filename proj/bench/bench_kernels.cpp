#include "rd3/asymptotic3.hpp"
#include "rd3/bvp.hpp"
#include "rd3/kernels.hpp"

#include <benchmark/benchmark.h>

using namespace rd3;

namespace {

struct Fixture {
    CollocationSystem sys;
    Eigen::VectorXd z;
    std::vector<double> F, vals, part;

    explicit Fixture(int N)
        : sys(SystemParams::with_small_bc(0.01, 0.3, 1.0, 0.0, 3.0, 5.0), uniform(N), gauss_tableau(4), false) {
        const auto sol = build_two_pulse_large(0.3, 3.0, 5.0, 0.01);
        z = discretize([&](double x) { return sol.state(x); }, sys.mesh(), sys.tableau(), false, 0.3);
        F.assign(sys.size(), 0.0);
        vals.assign(static_cast<std::size_t>(N) * sys.slots_per_interval(), 0.0);
        part.assign(2 * static_cast<std::size_t>(N), 0.0);
    }
    static std::vector<double> uniform(int N) {
        std::vector<double> m(N + 1);
        for (int i = 0; i <= N; ++i) m[i] = -5.0 + 10.0 * i / N;
        return m;
    }
};

void BM_CollocationSerial(benchmark::State& st) {
    Fixture f(static_cast<int>(st.range(0)));
    for (auto _ : st) {
        kernels::collocation_fill_serial(f.sys, f.z.data(), f.F.data(), f.vals.data(), f.part.data());
        benchmark::DoNotOptimize(f.vals.data());
    }
}

void BM_CollocationOmp(benchmark::State& st) {
    Fixture f(static_cast<int>(st.range(0)));
    for (auto _ : st) {
        kernels::collocation_fill_omp(f.sys, f.z.data(), f.F.data(), f.vals.data(), f.part.data());
        benchmark::DoNotOptimize(f.vals.data());
    }
}

std::vector<double> axis(int n) {
    std::vector<double> a(n);
    for (int i = 0; i < n; ++i) a[i] = -10.0 + 20.0 * (i + 0.5) / n;
    return a;
}

void BM_RegionSerial(benchmark::State& st) {
    const MelnikovGrid grid(3.0, 5.0);
    const BoundarySet bounds(-1.0, 3.0, 5.0);
    const auto ax = axis(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::region_map_serial(grid, bounds, ax, ax, -1.0));
}

void BM_RegionOmp(benchmark::State& st) {
    const MelnikovGrid grid(3.0, 5.0);
    const BoundarySet bounds(-1.0, 3.0, 5.0);
    const auto ax = axis(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::region_map_omp(grid, bounds, ax, ax, -1.0));
}

}  // namespace

BENCHMARK(BM_CollocationSerial)->Arg(300)->Arg(1200)->Arg(4800);
BENCHMARK(BM_CollocationOmp)->Arg(300)->Arg(1200)->Arg(4800);
BENCHMARK(BM_RegionSerial)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RegionOmp)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
