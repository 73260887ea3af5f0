// Compares the serial coupling kernel against the OpenMP version on dense
// networks of growing size, and checks that both produce bit-identical sums.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kuramoto/model.hpp"

using namespace kuramoto;

namespace {

double time_ms(const NetworkModel& model, const std::vector<double>& phases,
               std::vector<double>& out, bool parallel, int reps) {
    const auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) {
        if (parallel) {
            coupling_sums_parallel(phases, model, out);
        } else {
            coupling_sums_serial(phases, model, out);
        }
    }
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel path falls back to serial\n");
#endif
    std::printf("%8s %6s %12s %12s %9s %s\n", "N", "reps", "serial[ms]", "parallel[ms]",
                "speedup", "bitwise");

    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> phase(-3.0, 3.0);
    for (std::size_t n : {64u, 256u, 1024u, 4096u}) {
        std::vector<double> omega(n, 1.0);
        NetworkModel model = NetworkModel::complete(n, omega, 1.0, ControlMode::multiplicative);
        std::vector<double> phases(n);
        for (auto& p : phases) p = phase(gen);

        const int reps = n >= 4096 ? 5 : 50;
        std::vector<double> serial_out(n), parallel_out(n);
        const double t_serial = time_ms(model, phases, serial_out, false, reps);
        const double t_parallel = time_ms(model, phases, parallel_out, true, reps);

        bool identical = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (serial_out[i] != parallel_out[i]) identical = false;
        }
        std::printf("%8zu %6d %12.4f %12.4f %8.2fx %s\n", n, reps, t_serial, t_parallel,
                    t_serial / t_parallel, identical ? "yes" : "NO");
        if (!identical) return 1;
    }
    return 0;
}
