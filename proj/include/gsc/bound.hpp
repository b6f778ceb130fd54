// The analytic side of the correlation bounds: the Fourier-built twist
// field, its extended Laplacian, the constants J and c0, the optimized
// rate function f(beta/alpha), the infrared integrals g_eps(u) and
// g_eps(u,v), the finite-volume twist bound, the theorem-level decay
// envelopes, and the continuum-limit scaling of the bound.

#ifndef GSC_BOUND_HPP
#define GSC_BOUND_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gsc/lattice.hpp"

namespace gsc {

// Wavenumbers k_i = 2 pi n_i / (2L+1), n_i in {-L..L}, with every component
// satisfying eps <= |k_i| <= K. Closed under k -> -k.
struct WavenumberGrid {
    int dim = 0;
    int half_extent = 0;
    std::vector<std::array<double, kMaxDim>> points;
};

WavenumberGrid wavenumber_grid(int L, double eps, double K, int dim);

// The twist profile phi built from the source p_y = delta_{y,u} - delta_{y,-u}:
//   phi_x = (q/|Lambda|) sum_{k in M} (-2i) sin(k.u) e^{ik.x} / S(k)^exponent,
//   S(k) = sum_i (1 - cos k_i);
// exponent 2 for D >= 3 (and the D = 1 desk systems), 3/2 for the D = 2 variant.
struct TwistField {
    double q = 0.0;
    Coord u{};
    double eps = 0.0;
    double cutoff_K = 0.0;
    double exponent = 2.0;
    const Lattice* lattice = nullptr;
    ScalarField phi;
    double imag_residue = 0.0;  // worst |Im| relative to max |Re| in the k-sum
};

TwistField build_twist(double q, const Coord& u, double eps, double K, const Lattice& lat, double exponent = 2.0);

// Closed form of the extended Laplacian of the exponent-2 twist,
//   (tilde Delta phi)_x = (4iq/|Lambda|) sum_k e^{ik.x} sin(k.u) / S(k),
// real after +-k pairing; agrees with the periodic stencil on phi.
ScalarField tilde_laplacian_closed(const TwistField& tw);

// J(D) = 4 (2pi)^-D  int_{[-pi,pi]^D} dk / S(k), finite for D >= 3; computed
// by a midpoint rule at n and 2n cells per axis with Richardson
// extrapolation of the O(h) corner error. Throws for D <= 2.
struct JEstimate {
    double value = 0.0;       // extrapolated
    double coarse = 0.0, fine = 0.0;
    double refinement_change = 0.0;  // |fine - coarse| / fine
};
JEstimate constant_J(int dim, int base_n = 128);

// Largest c0 with 1 - cos k >= c0 k^2 on [-K, K]; equals (1-cos K)/K^2.
double constant_c0(double K);

// f(s) = 2 sup_{q>0} { q - 2 s (cosh qJ - 1)/J^2 }, maximizer from
// sinh(q* J) = J/(2s); cross-checked against a golden-section search.
struct FResult {
    double f = 0.0;
    double q_sup = 0.0;
};
FResult f_function(double s, double J);

enum class GMode {
    LatticeSum,  // finite-L sum over the wavenumber grid
    Continuum,   // infinite-volume integral over the cutoff region
};

struct GResult {
    double g_u = 0.0;
    double g_uv = 0.0;
    double rel_err = 0.0;         // self-error estimate (continuum mode)
    std::uint64_t evaluations = 0;
};

// g_eps(u)  = 4 (2pi)^-D int_M dk sin^2(k.u) / S(k)^2
// g_eps(u,v)= 8 (2pi)^-D int_M dk sin(k.u) sin(k.(u-v)/2) cos(k.(u+v)/2) / S(k)^2
// Continuum mode integrates the exact heat-kernel representation
// 1/S^2 = int_0^inf t e^{-tS} dt, which factorizes the k integral per axis;
// the oscillatory 1D factors are integrated on panels subdivided at the
// oscillation scale. Self-error above 1e-6 relative throws.
GResult g_integrals(const Coord& u, const Coord& v, double eps, double K, int dim, GMode mode, int L = 0);

// RHS of the finite-volume twist bound for an arbitrary real phi:
//   exp(-phi_u - phi_v + phi_{-u} + phi_{-v})
//     * exp[(beta/alpha) sum_x (cosh (Delta phi)_x - 1)],  Delta open.
double finite_volume_twist_bound(const Lattice& lat, const ScalarField& phi, double beta, double alpha,
                                 const Coord& u, const Coord& v);

struct BoundReport {
    int dim = 0;
    double beta = 0.0, alpha = 0.0;
    Coord u{}, v{};
    double eps = 0.0, cutoff_K = 0.0;
    double J = 0.0;
    double f = 0.0, q_sup = 0.0;
    double g_u = 0.0, g_uv = 0.0;
    double exponent = 0.0;  // -f g_u + q_sup |g_uv|
    double bound = 0.0;     // exp(exponent)
    double quantum_exponent = 0.0;  // -(alpha/4beta) g_u + (alpha/4beta) |g_uv|
    double quantum_bound = 0.0;
    double g_rel_err = 0.0;
    std::uint64_t g_evaluations = 0;
};

BoundReport theorem_bounds(const Coord& u, const Coord& v, double beta, double alpha, int dim, double eps = 1e-3,
                           double K = M_PI);

// Continuum-limit scaling exp[-c3t * alpha * ell * r / beta].
struct ScalingPoint {
    double value = 0.0;
    double exponent = 0.0;
};
ScalingPoint continuum_scaling(double ell, double alpha, double beta, double r, double c3_tilde = 1.0);

// Classifies how (alpha, ell) pairs scale: "alpha-ell-fixed" keeps the decay
// rate per crystal distance, "alpha-fixed" sends the bound to zero.
std::string classify_scaling(double alpha1, double ell1, double alpha2, double ell2, double rel_tol = 0.05);

}  // namespace gsc

#endif
