// Gauge-ensemble expectation values: the fermionic trace marginalized over
// gauge configurations, evaluated exactly by tensor-product quadrature on
// small systems and by single-bond Metropolis Monte Carlo otherwise.
//
// Both evaluators come in a plain serial reference flavour and an
// OpenMP-parallel flavour. Per-node (per-chain) results are stored in
// fixed slots and reduced in index order, so the parallel results are
// bitwise identical to the serial ones for any thread count.

#ifndef GSC_ENSEMBLE_HPP
#define GSC_ENSEMBLE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gsc/fock.hpp"
#include "gsc/gauge.hpp"

namespace gsc {

enum class Engine {
    DenseReference,  // full Fock-space eigensolve, kept as the oracle
    Blocked,         // particle-number-sector eigensolves
};

enum class Exec {
    Serial,
    Parallel,  // OpenMP over quadrature nodes / chains
};

// S(A) = beta E_g(A) - log Tr_f exp(-beta (H(A) - mu N)).
double effective_action(const FockBuilder& fb, const GaugeConfig& a, const GaugeCouplings& c,
                        Engine engine = Engine::Blocked);

struct Observable {
    std::string name;
    SparseOp op;
    bool imaginary_part = false;  // MC records Im<op> instead of Re<op>
};

struct ExactOptions {
    int order = 16;           // quadrature nodes per bond; doubled for the convergence check
    double rel_tol = 1e-8;
    Engine engine = Engine::Blocked;
    Exec exec = Exec::Parallel;
};

struct ExactResult {
    std::vector<Complex> values;  // one per observable
    int order = 0;                // finer of the two orders used
    double max_rel_change = 0.0;  // between the two orders, worst observable
    std::uint64_t evaluations = 0;
};

// Tensor-product periodic-trapezoid quadrature over all bond angles.
// Requires <= 6 bonds; throws a quadrature error when doubling the order
// still changes some observable by more than rel_tol.
ExactResult exact_expectation(const Lattice& lat, const FermionModel& model, const GaugeCouplings& c,
                              std::span<const SparseOp> observables, const ExactOptions& opt = {});

struct SamplerOptions {
    int chains = 4;
    std::uint64_t seed = 1;
    int sweeps = 0;           // measurement sweeps per chain (one proposal per bond each)
    int thermalization = 256;
    double delta = M_PI / 2;  // proposal half-width, tuned toward 40% acceptance then frozen
    bool tune_delta = true;
    int measure_every = 1;
    bool flux_frozen = false;  // sample pure-gauge configurations (all fluxes pinned to 0)
    std::vector<std::uint64_t> chain_seeds;  // optional; default derived from (seed, chain)
    Engine engine = Engine::Blocked;
    Exec exec = Exec::Parallel;

    void validate(int num_bonds) const;
};

struct MCEstimate {
    std::string name;
    double mean = 0.0;
    double stderror = 0.0;
    double tau_int = 0.0;      // integrated autocorrelation estimate (binning)
    std::uint64_t proposals = 0;  // measurement-phase proposals, all chains
    double acceptance = 0.0;      // measurement-phase acceptance rate
    int chains = 0;
    std::uint64_t seed = 0;
    bool low_acceptance_warning = false;  // acceptance < 1%
};

// Metropolis with single-bond proposals: uniform shift in [-delta, delta],
// wrapped to (-pi, pi], accepted with min(1, e^{-dS}). Chains are
// independent counter-based streams; pooling sorts chains by seed so the
// estimate does not depend on chain order.
std::vector<MCEstimate> run_mc(const Lattice& lat, const FermionModel& model, const GaugeCouplings& c,
                               std::span<const Observable> observables, const SamplerOptions& opt);

}  // namespace gsc

#endif
