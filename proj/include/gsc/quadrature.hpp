// Small quadrature toolkit: Gauss-Legendre rules, graded/oscillation-aware
// panel decompositions of an interval, and a midpoint rule over the
// Brillouin zone [-pi,pi]^D. Reductions run in fixed cell order so results
// are bitwise reproducible for a given decomposition.

#ifndef GSC_QUADRATURE_HPP
#define GSC_QUADRATURE_HPP

#include <cstdint>
#include <vector>

namespace gsc {

struct GaussRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;
};

// Cached Gauss-Legendre rule of the given order.
const GaussRule& gauss_legendre(int order);

struct Panel {
    double a, b;
};

// Decompose [lo, hi] into panels graded geometrically away from lo (for
// integrands that sharpen toward lo) and capped at a half period of the
// fastest oscillation, width <= pi / (2 * osc_rate) when osc_rate > 0.
std::vector<Panel> graded_panels(double lo, double hi, double grade_ratio, double osc_rate, double max_width);

// Split every panel in two (refinement for self-error estimates).
std::vector<Panel> split_panels(const std::vector<Panel>& panels);

template <typename F>
double integrate_panels(const std::vector<Panel>& panels, int order, F&& f) {
    const GaussRule& rule = gauss_legendre(order);
    double total = 0.0;
    for (const Panel& p : panels) {
        const double mid = 0.5 * (p.a + p.b);
        const double half = 0.5 * (p.b - p.a);
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
        total += half * acc;
    }
    return total;
}

// Midpoint rule on [-pi,pi]^D with n cells per axis (even n keeps the
// origin off the grid). OpenMP-parallel over the first axis; per-slice
// partial sums are reduced in slice order.
double midpoint_bz(int dim, int n, double (*f)(const double* k, int dim, const void* ctx), const void* ctx);

}  // namespace gsc

#endif
