// Benchmark comparing the serial reference kernels against the OpenMP ones:
// a bounds sweep over a log grid and a Monte-Carlo transform estimate.

#include "ssm/fourier.hpp"
#include "ssm/io.hpp"

#ifdef SSM_HAVE_OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <cstring>

using namespace ssm;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Ifs uniform_ifs() {
    FieldPtr q = NumberField::rationals();
    return make_ifs(q, q->from_rational(Rat(1, 2)), {1, 1},
                    {q->from_rational(Rat(0)), q->from_rational(Rat(1))},
                    {Rat(1, 2), Rat(1, 2)});
}

} // namespace

int main(int argc, char** argv) {
    int points = 48;
    long samples = 400000;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--points") && i + 1 < argc) points = std::atoi(argv[++i]);
        if (!std::strcmp(argv[i], "--samples") && i + 1 < argc) samples = std::atol(argv[++i]);
    }

    Ifs ifs = uniform_ifs();
    auto grid = log_grid(1.0, 1e4, points);

#ifdef SSM_HAVE_OPENMP
    int max_threads = omp_get_max_threads();
#else
    int max_threads = 1;
#endif
    std::printf("bench: %d grid points, %ld mc samples, max threads %d\n", points, samples,
                max_threads);

    auto t0 = std::chrono::steady_clock::now();
    auto serial = fourier_scan_serial(ifs, 1, 2, grid, 4.0);
    double ts = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    auto parallel = fourier_scan(ifs, 1, 2, grid, 4.0);
    double tp = seconds_since(t0);

    bool same = serial.size() == parallel.size();
    for (std::size_t i = 0; same && i < serial.size(); ++i)
        same = ball_to_decimal(serial[i].mu_hat_abs) == ball_to_decimal(parallel[i].mu_hat_abs) &&
               ball_to_decimal(serial[i].bound_exp) == ball_to_decimal(parallel[i].bound_exp);
    std::printf("scan:   serial %.3fs  parallel %.3fs  speedup %.2fx  identical: %s\n", ts, tp,
                ts / tp, same ? "yes" : "NO");

#ifdef SSM_HAVE_OPENMP
    omp_set_num_threads(1);
#endif
    t0 = std::chrono::steady_clock::now();
    auto mc1 = mu_hat_mc(ifs, 7.3, samples, 42);
    double tm1 = seconds_since(t0);
#ifdef SSM_HAVE_OPENMP
    omp_set_num_threads(max_threads);
#endif
    t0 = std::chrono::steady_clock::now();
    auto mcN = mu_hat_mc(ifs, 7.3, samples, 42);
    double tmN = seconds_since(t0);
    std::printf("mc:     1-thread %.3fs  %d-thread %.3fs  speedup %.2fx  identical: %s\n", tm1,
                max_threads, tmN, tm1 / tmN,
                (mc1.re == mcN.re && mc1.im == mcN.im) ? "yes" : "NO");
    return 0;
}
