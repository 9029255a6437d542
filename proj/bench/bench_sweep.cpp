// Serial reference vs OpenMP kernels on the silicon-like Coulomb preset.
//
//   bench_sweep [repeats] [g2_max in (pi/a)^2]

#include <cstdio>
#include <cstdlib>
#include <numbers>

#include <omp.h>

#include "pwbands/bands.hpp"

using namespace pwbands;

template <class F>
double best_of(int repeats, F&& f) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const double t0 = omp_get_wtime();
        f();
        best = std::min(best, omp_get_wtime() - t0);
    }
    return best;
}

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
    const double cutoff_units = argc > 2 ? std::atof(argv[2]) : 108.0;

    const double a = 5.431;
    const RealLattice lattice = make_cubic(LatticeKind::Diamond, a);
    const ReciprocalLattice recip = reciprocal_of(lattice);
    const double unit = std::numbers::pi / a;
    const double g2_max = cutoff_units * unit * unit;
    const PotentialModel model = Coulomb{0.5};
    const auto tour = default_fcc_tour(a);
    const KPath path = make_kpath(tour, 50);
    const PlaneWaveBasis basis(recip, g2_max);

    std::printf("threads=%d dim=%zu points=%zu\n", omp_get_max_threads(), basis.dim(), path.size());

    ComplexMatrix v_serial, v_parallel;
    const double tv_s = best_of(repeats, [&] {
        v_serial = potential_matrix(basis, model, lattice, recip, Execution::Serial);
    });
    const double tv_p = best_of(repeats, [&] {
        v_parallel = potential_matrix(basis, model, lattice, recip, Execution::Parallel);
    });
    std::printf("potential_matrix serial %.4fs parallel %.4fs speedup %.2fx identical=%d\n", tv_s,
                tv_p, tv_s / tv_p, static_cast<int>(v_serial == v_parallel));

    BandStructure bs_serial{path, 0, {}}, bs_parallel{path, 0, {}};
    const double ts = best_of(repeats, [&] {
        bs_serial = sweep(path, model, lattice, recip, g2_max, 8, Execution::Serial);
    });
    const double tp = best_of(repeats, [&] {
        bs_parallel = sweep(path, model, lattice, recip, g2_max, 8, Execution::Parallel);
    });
    std::printf("sweep serial %.4fs parallel %.4fs speedup %.2fx identical=%d\n", ts, tp, ts / tp,
                static_cast<int>(bs_serial.energies == bs_parallel.energies));
    return bs_serial.energies == bs_parallel.energies && v_serial == v_parallel ? 0 : 1;
}
