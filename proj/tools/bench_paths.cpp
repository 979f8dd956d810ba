// Benchmark: serial reference kernel vs the OpenMP path-tracking kernel on
// the full system. Verifies that both kernels produce identical results
// before reporting timings.

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "peculiar/homotopy.hpp"

using namespace peculiar;

namespace {

double wtime() {
    timespec ts;
    clock_gettime(CLOCK_MONOTONIC, &ts);
    return double(ts.tv_sec) + double(ts.tv_nsec) / 1.0e9;
}

bool same_results(const std::vector<PathResult>& a, const std::vector<PathResult>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].status != b[i].status || a[i].steps_taken != b[i].steps_taken) return false;
        if (a[i].endpoint.size() != b[i].endpoint.size()) return false;
        for (std::size_t k = 0; k < a[i].endpoint.size(); ++k) {
            if (a[i].endpoint[k] != b[i].endpoint[k]) return false;
        }
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    int N = 5;
    int reps = 3;
    if (argc > 1) N = std::atoi(argv[1]);
    if (argc > 2) reps = std::atoi(argv[2]);

    AlgebraicSystem target = build_full(N);
    TrackOptions opts;
    auto [start_sys, starts] = start_system(target, opts);

    std::printf("full system N=%d, %lld paths, %d repetition(s)\n", N, target.bezout, reps);

    std::vector<PathResult> serial_results;
    double t_serial = 1e300;
    for (int r = 0; r < reps; ++r) {
        double t0 = wtime();
        serial_results = track_all_serial(target, start_sys, starts, opts);
        t_serial = std::min(t_serial, wtime() - t0);
    }

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    TrackOptions popts = opts;
    popts.workers = threads;
    std::vector<PathResult> parallel_results;
    double t_parallel = 1e300;
    for (int r = 0; r < reps; ++r) {
        double t0 = wtime();
        parallel_results = track_all_parallel(target, start_sys, starts, popts);
        t_parallel = std::min(t_parallel, wtime() - t0);
    }

    if (!same_results(serial_results, parallel_results)) {
        std::printf("MISMATCH: parallel kernel differs from the serial reference\n");
        return 1;
    }

    int converged = 0;
    for (const PathResult& r : serial_results) {
        if (r.status == PathStatus::Converged) ++converged;
    }
    std::printf("converged paths: %d / %zu (identical across kernels)\n", converged,
                serial_results.size());
    std::printf("serial   : %8.3f s\n", t_serial);
    std::printf("parallel : %8.3f s  (%d threads, speedup %.2fx)\n", t_parallel, threads,
                t_serial / t_parallel);
    return 0;
}
