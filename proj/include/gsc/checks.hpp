// Numerical verification of the identities and inequalities the decay
// bounds rest on: the finite-volume twist-bound dominance over exactly
// computed correlations, the trace lemma, the heat-kernel identity, the
// quadratic gauge-fixing functional, the boundary-correction estimates,
// and the (real and complex) gauge-covariance matrix identities.

#ifndef GSC_CHECKS_HPP
#define GSC_CHECKS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gsc/bound.hpp"
#include "gsc/ensemble.hpp"

namespace gsc {

struct CheckReport {
    std::string name;
    std::string params;
    bool pass = false;
    double worst_margin = 0.0;  // signed slack; fail iff worst_margin < -tolerance
    double tolerance = 0.0;
    std::int64_t samples = 0;
    std::string note;
};

// |<cooper>| (exact gauge quadrature) <= finite_volume_twist_bound(phi)
// for every supplied phi.
CheckReport check_twist_dominance(const Lattice& lat, const FermionModel& model, const GaugeCouplings& c,
                                  const Coord& u, const Coord& v, std::span<const ScalarField> phis, int quad_order,
                                  double tol = 1e-9);

// Convenience: the paper twists for the given charges plus uniformly drawn
// random profiles (three amplitude scales).
std::vector<ScalarField> dominance_test_fields(const Lattice& lat, const Coord& u, std::span<const double> charges,
                                               int num_random, std::uint64_t seed, double eps = 0.1,
                                               double K = M_PI);

// Tr (PU)^l (U* P)^l <= Tr P^{2l} for P >= 0 and unitary U; random trials
// plus the exact-equality cases U = identity and l = 1.
CheckReport check_trace_lemma(int dim, int ell, int trials, std::uint64_t seed);

// exp[eta d^2/dxi^2] as Fourier multiplier vs Gaussian convolution, the
// Gaussian width composition sigma^2 -> sigma^2 + 2 eta, the semigroup
// property, and the eta -> 0 limit.
CheckReport check_heat_kernel(double eta, int grid_n = 512, double extent = 40.0);

// w[phi] = (beta/alpha) sum_x (Delta phi)_x^2 + (beta m^2/2) sum_b (d phi)_b^2.
double w_functional(const Lattice& lat, const ScalarField& phi, double beta, double alpha, double m);

// Positivity, monotonicity in m, the exact m = 0 difference, and the
// quadratic lower bound of cosh - 1 on the paper twist.
CheckReport check_w_functional(const Lattice& lat, double beta, double alpha, std::uint64_t seed);

// Boundary gradient sum strictly decreasing along the given L list, plus
// the termwise boundary inequality at every boundary site.
CheckReport check_boundary_vanishing(int dim, std::span<const int> l_list, const Coord& u, double eps, double q);

// Gamma-conjugation identities, real gauge covariance (conjugation and
// spectrum), combined complex-shift hopping invariance, flux invariance,
// the per-site complex-cosine identity, and the c-number factorization of
// the gauge-fixing shift (matrix exponential vs factored evaluation).
CheckReport check_gauge_covariance(const Lattice& lat, const FermionModel& model, std::uint64_t seed);

// The default verification suite at desk scale.
std::vector<CheckReport> default_suite(std::uint64_t seed);

}  // namespace gsc

#endif
