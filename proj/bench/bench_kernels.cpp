// Wall-clock comparison of the OpenMP kernels against their serial references.
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>

#include <omp.h>

#include "blockrip/bases.hpp"
#include "blockrip/kernels.hpp"
#include "blockrip/operators.hpp"

using namespace blockrip;

namespace {

double best_of(int reps, const std::function<void()>& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void report(const std::string& name, double serial, double parallel) {
    std::cout << name << ": serial " << serial << " s, parallel " << parallel << " s, speedup "
              << serial / parallel << "x\n";
}

}  // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
    std::cout << "threads: " << omp_get_max_threads() << "\n";

    {
        const auto u = generic_basis(BlockPartition(64, 16), Seed{1});
        double sink = 0.0;
        const double s = best_of(reps, [&] { sink += kernels::serial::max_reshaped_column_norm(u).value; });
        const double p = best_of(reps, [&] { sink += kernels::max_reshaped_column_norm(u).value; });
        report("block coherence, n_total = 1024", s, p);
        if (sink < 0) std::cout << sink;
    }
    {
        const auto u = generic_basis(BlockPartition(6, 4), Seed{2});
        const auto op = sample_dbd(Ensemble{EnsembleKind::Gaussian, 3, 6}, 4, Seed{3});
        const CMatrix eff = op.times_basis(u);
        const CMatrix gram = eff.adjoint() * eff;
        double sink = 0.0;
        const double s = best_of(reps, [&] { sink += kernels::serial::scan_all_supports(eff, 4).delta; });
        const double p = best_of(reps, [&] { sink += kernels::scan_all_supports(gram, 4).delta; });
        report("exact RIC scan, C(24, 4) supports", s, p);
        if (sink < 0) std::cout << sink;
    }
    return 0;
}
