// Benchmark of the OpenMP kernels against their serial reference
// implementations: residual-energy probe batches, (u,v) grid scans and
// multi-chain sampling. The parallel paths are bit-identical to the serial
// ones (verified in tests/test_parallel.cpp); this target measures the
// speedup only.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "jastrow/gridscan.hpp"
#include "jastrow/sampler.hpp"
#include "jastrow/verify.hpp"

using namespace jastrow;

namespace {

double now() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

template <typename F>
double timed(F&& f) {
    const double t0 = now();
    f();
    return now() - t0;
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-28s %10.3f s %10.3f s %8.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    const int scale = quick ? 1 : 8;

    std::printf("threads: %d\n", max_threads());
    std::printf("%-28s %12s %12s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        const auto lat = lattice_from_periods(1.0, 0.5);
        const auto spec = make_circle_model(5, 1.0, make_elliptic(2.0, lat));
        const int points = 24 * scale;
        verify::ResidualReport a, b;
        const double ts = timed([&] {
            a = verify::residual_energy(spec, points, 11, 1e-4, Execution::Serial);
        });
        const double tp = timed([&] {
            b = verify::residual_energy(spec, points, 11, 1e-4, Execution::Parallel);
        });
        report("residual_energy (elliptic)", ts, tp);
    }
    {
        const auto spec = make_line_model(3, 1.0, make_hyperbolic(2.0, 1.0));
        const int n = quick ? 96 : 384;
        std::vector<SurfacePoint> a, b;
        const double ts =
            timed([&] { a = relative_surface(spec, 0.05, 3.0, n, 0.05, 3.0, n, Execution::Serial); });
        const double tp = timed(
            [&] { b = relative_surface(spec, 0.05, 3.0, n, 0.05, 3.0, n, Execution::Parallel); });
        report("relative_surface (hyp)", ts, tp);
    }
    {
        const auto spec = make_circle_model(3, 1.0, make_trigonometric(2.0, 1.0));
        auto params = mc::default_chain_params(spec, 4000L * scale, 3);
        const int chains = 8;
        std::vector<mc::SampleResult> a, b;
        const double ts = timed([&] { a = mc::sample_chains(spec, params, chains, Execution::Serial); });
        const double tp =
            timed([&] { b = mc::sample_chains(spec, params, chains, Execution::Parallel); });
        report("sample_chains (trig, 8)", ts, tp);
    }
    return 0;
}
