// Microbenchmark comparing the serial reference paths against the
// production kernels: dense vs particle-number-blocked eigensolves in the
// effective action, serial vs OpenMP tensor quadrature, and the g-integral
// evaluator. Results are printed as a table; no assertions.

#include <chrono>
#include <cstdio>
#include <functional>

#include "gsc/bound.hpp"
#include "gsc/ensemble.hpp"
#include "gsc/rng.hpp"

using namespace gsc;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, double serial_ms, double fast_ms) {
    std::printf("%-44s %10.3f ms %10.3f ms   x%.2f\n", name, serial_ms, fast_ms,
                fast_ms > 0 ? serial_ms / fast_ms : 0.0);
}

}  // namespace

int main() {
    std::printf("%-44s %13s %13s %7s\n", "kernel", "reference", "optimized", "speedup");

    // effective action on the 2x2 lattice (Fock dim 256)
    {
        const Lattice lat(LatticeSpec::box(2, {{0, 1}, {0, 1}}));
        FermionModel model;
        model.U = -2.0;
        const FockBuilder fb(lat, model);
        GaugeCouplings c;
        SplitMix64 rng(7);
        GaugeConfig a(lat);
        for (int b = 0; b < lat.num_bonds(); ++b) a.set(b, rng.uniform(-M_PI, M_PI));

        const double dense = time_ms([&] { effective_action(fb, a, c, Engine::DenseReference); }, 5);
        const double blocked = time_ms([&] { effective_action(fb, a, c, Engine::Blocked); }, 20);
        report("effective_action 2x2 (dense vs blocked)", dense, blocked);
    }

    // exact quadrature on the 3-site chain
    {
        const Lattice lat(LatticeSpec::symmetric(1, 1));
        FermionModel model;
        model.U = -2.0;
        GaugeCouplings c;
        const FockSpace fs(lat.num_sites());
        Coord u{};
        u[0] = 1;
        const SparseOp cooper = cooper_operator(lat, fs, u, u);

        ExactOptions serial;
        serial.order = 12;
        serial.exec = Exec::Serial;
        ExactOptions parallel = serial;
        parallel.exec = Exec::Parallel;
        const double t_serial =
            time_ms([&] { exact_expectation(lat, model, c, std::span<const SparseOp>(&cooper, 1), serial); }, 3);
        const double t_par =
            time_ms([&] { exact_expectation(lat, model, c, std::span<const SparseOp>(&cooper, 1), parallel); }, 3);
        report("exact_expectation 3-chain (serial vs omp)", t_serial, t_par);
    }

    // Monte Carlo chains, serial vs OpenMP
    {
        const Lattice lat(LatticeSpec::symmetric(1, 1));
        FermionModel model;
        model.U = -2.0;
        GaugeCouplings c;
        const FockSpace fs(lat.num_sites());
        Coord u{};
        u[0] = 1;
        std::vector<Observable> obs{Observable{"cooper", cooper_operator(lat, fs, u, u), false}};

        SamplerOptions opt;
        opt.chains = 4;
        opt.sweeps = 200;
        opt.thermalization = 50;
        opt.exec = Exec::Serial;
        SamplerOptions par = opt;
        par.exec = Exec::Parallel;
        const double t_serial = time_ms([&] { run_mc(lat, model, c, obs, opt); }, 1);
        const double t_par = time_ms([&] { run_mc(lat, model, c, obs, par); }, 1);
        report("run_mc 4 chains (serial vs omp)", t_serial, t_par);
    }

    // g integrals: lattice sum vs the separated continuum evaluator
    {
        Coord u{}, v{};
        u[0] = 16;
        v[0] = 15;
        const double t_lattice = time_ms([&] { g_integrals(u, v, 1e-2, M_PI, 3, GMode::LatticeSum, 24); }, 3);
        const double t_cont = time_ms([&] { g_integrals(u, v, 1e-2, M_PI, 3, GMode::Continuum); }, 3);
        report("g_integrals D=3 |u|=16 (lattice L=24 vs cont)", t_lattice, t_cont);
    }

    return 0;
}
