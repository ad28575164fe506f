// Benchmarks the OpenMP kernels against their serial reference
// implementations: cycle enumeration, cycle-consistency evaluation, and the
// CHMP iteration. Usage: bench-kernels [m] [iters]

#include <chrono>
#include <cstdlib>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hypersync/chmp.hpp"
#include "hypersync/model.hpp"

using namespace hypersync;

namespace {

template <typename F>
double time_seconds(F&& f) {
    auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-22s serial %8.4fs   parallel %8.4fs   speedup %5.2fx\n", name, serial,
                parallel, parallel > 0.0 ? serial / parallel : 0.0);
}

} // namespace

int main(int argc, char** argv) {
    int m = argc > 1 ? std::atoi(argv[1]) : 30;
    int iters = argc > 2 ? std::atoi(argv[2]) : 20;
    if (m < 4 || iters < 1) {
        std::cerr << "usage: bench-kernels [m >= 4] [iters >= 1]\n";
        return 1;
    }

    ModelParams params;
    params.n = 3;
    params.m = m;
    params.p = 1.0;
    params.q = 0.2;
    params.sigma = 0.05;
    params.seed = 1;
    params.variant = Variant::SO3;
    auto inst = generate_ucmh(params);

#ifdef _OPENMP
    std::printf("m=%d hyperedges=%d threads=%d\n", m, inst.hypergraph.num_hyperedges(),
                omp_get_max_threads());
#else
    std::printf("m=%d hyperedges=%d (OpenMP disabled)\n", m, inst.hypergraph.num_hyperedges());
#endif

    CycleHyperedgeGraph serial_chg, parallel_chg;
    double t_enum_s = time_seconds([&] { serial_chg = enumerate_cycles_serial(inst.hypergraph); });
    double t_enum_p = time_seconds([&] { parallel_chg = enumerate_cycles(inst.hypergraph); });
    report("enumerate_cycles", t_enum_s, t_enum_p);

    double t_cons_s =
        time_seconds([&] { compute_consistency_serial(inst.hypergraph, serial_chg); });
    double t_cons_p = time_seconds([&] { compute_consistency(inst.hypergraph, parallel_chg); });
    report("compute_consistency", t_cons_s, t_cons_p);

    ChmpParams chmp;
    chmp.T = iters;
    auto st_serial = chmp_init(serial_chg);
    auto st_parallel = chmp_init(parallel_chg);
    double t_it_s = time_seconds([&] {
        for (int t = 0; t < iters; ++t) chmp_iterate_serial(serial_chg, st_serial, chmp);
    });
    double t_it_p = time_seconds([&] {
        for (int t = 0; t < iters; ++t) chmp_iterate(parallel_chg, st_parallel, chmp);
    });
    report("chmp_iterate", t_it_s, t_it_p);

    bool match = st_serial.s == st_parallel.s && serial_chg.d_C == parallel_chg.d_C;
    std::printf("serial/parallel results %s\n", match ? "identical" : "DIFFER");
    return match ? 0 : 1;
}
