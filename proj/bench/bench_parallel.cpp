// Compares the OpenMP kernels against their serial reference twins: the
// efficiency-curve sweep and the equivalence-check grid scan. Reports
// wall time, speedup, and whether the two paths produced identical bits.

#include <chrono>
#include <cstdio>
#include <vector>

#include "subopt/efficiency.hpp"
#include "subopt/optimality.hpp"
#include "subopt/parallel.hpp"
#include "subopt/solver.hpp"

using namespace subopt;
using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

void print_row(const char* kernel, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-28s %10.1f %12.1f %9.2fx   %s\n", kernel, serial_ms, parallel_ms,
                serial_ms / parallel_ms, identical ? "identical" : "DIFFER");
}

bool same_curve(const std::vector<EfficiencyPoint>& a, const std::vector<EfficiencyPoint>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].efficiency != b[i].efficiency || a[i].logdet != b[i].logdet ||
            a[i].failed != b[i].failed) {
            return false;
        }
    }
    return true;
}

bool same_report(const EquivalenceReport& a, const EquivalenceReport& b) {
    return a.passed == b.passed && a.threshold == b.threshold &&
           a.min_on_support == b.min_on_support && a.max_off_support == b.max_off_support &&
           a.violations.size() == b.violations.size();
}

} // namespace

int main() {
    std::printf("threads: %d\n\n", effective_thread_count());
    std::printf("%-28s %10s %12s %10s\n", "kernel", "serial/ms", "parallel/ms", "speedup");

    // efficiency curve: 99 proportions, one solve each
    {
        CovariateDistribution d = CovariateDistribution::normal(0.0, 1.0);
        std::vector<double> alphas;
        for (int i = 1; i <= 99; ++i) alphas.push_back(i / 100.0);

        auto t0 = clock_type::now();
        auto serial = efficiency_curve(d, 2, ReferenceFamily::iboss_three_piece, alphas, false);
        double serial_ms = ms_since(t0);

        t0 = clock_type::now();
        auto parallel = efficiency_curve(d, 2, ReferenceFamily::iboss_three_piece, alphas, true);
        double parallel_ms = ms_since(t0);

        print_row("efficiency curve (99 pts)", serial_ms, parallel_ms,
                  same_curve(serial, parallel));
    }

    // equivalence scan on a dense grid
    {
        SolveReport rep = solve_quadratic_symmetric(CovariateDistribution::student_t(5), 0.05);
        GridSpec grid{2000001};

        auto t0 = clock_type::now();
        EquivalenceReport serial = check_equivalence(rep.design, 2, grid, false);
        double serial_ms = ms_since(t0);

        t0 = clock_type::now();
        EquivalenceReport parallel = check_equivalence(rep.design, 2, grid, true);
        double parallel_ms = ms_since(t0);

        print_row("equivalence grid (2e6 pts)", serial_ms, parallel_ms,
                  same_report(serial, parallel));
    }

    return 0;
}
