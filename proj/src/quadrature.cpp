#include "gsc/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace gsc {

namespace {
GaussRule compute_gauss_legendre(int n) {
    // Newton iteration on Legendre polynomials, nodes seeded by the Chebyshev
    // approximation; standard Golub-Welsch-free construction.
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}
}  // namespace

const GaussRule& gauss_legendre(int order) {
    if (order < 1 || order > 64) throw std::invalid_argument("gauss_legendre: order must be in 1..64");
    static std::map<int, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gauss_legendre(order)).first;
    return it->second;
}

std::vector<Panel> graded_panels(double lo, double hi, double grade_ratio, double osc_rate, double max_width) {
    if (!(hi > lo)) throw std::invalid_argument("graded_panels: empty interval");
    const double osc_cap = osc_rate > 0.0 ? M_PI / (2.0 * osc_rate) : max_width;
    const double cap = std::min(max_width, osc_cap);

    std::vector<Panel> panels;
    double a = lo;
    double w = std::max(lo * (grade_ratio - 1.0), 1e-3 * cap);  // first panel ~ grade from lo
    while (a < hi) {
        const double b = std::min(hi, a + std::min(w, cap));
        panels.push_back(Panel{a, b});
        a = b;
        w *= grade_ratio;
    }
    return panels;
}

std::vector<Panel> split_panels(const std::vector<Panel>& panels) {
    std::vector<Panel> out;
    out.reserve(2 * panels.size());
    for (const Panel& p : panels) {
        const double m = 0.5 * (p.a + p.b);
        out.push_back(Panel{p.a, m});
        out.push_back(Panel{m, p.b});
    }
    return out;
}

double midpoint_bz(int dim, int n, double (*f)(const double* k, int dim, const void* ctx), const void* ctx) {
    if (n % 2 != 0) throw std::invalid_argument("midpoint_bz: n must be even (keeps k = 0 off the grid)");
    const double h = 2.0 * M_PI / n;
    std::vector<double> slice_sums(static_cast<std::size_t>(n), 0.0);

#pragma omp parallel for schedule(static)
    for (int i0 = 0; i0 < n; ++i0) {
        double k[4] = {0, 0, 0, 0};
        k[0] = -M_PI + (i0 + 0.5) * h;
        double acc = 0.0;
        if (dim == 1) {
            acc = f(k, dim, ctx);
        } else {
            // remaining dim-1 axes as one flat loop
            std::int64_t m = 1;
            for (int d = 1; d < dim; ++d) m *= n;
            for (std::int64_t r = 0; r < m; ++r) {
                std::int64_t rest = r;
                for (int d = 1; d < dim; ++d) {
                    k[d] = -M_PI + (static_cast<double>(rest % n) + 0.5) * h;
                    rest /= n;
                }
                acc += f(k, dim, ctx);
            }
        }
        slice_sums[static_cast<std::size_t>(i0)] = acc;
    }

    double total = 0.0;
    for (int i0 = 0; i0 < n; ++i0) total += slice_sums[static_cast<std::size_t>(i0)];
    double cell = 1.0;
    for (int d = 0; d < dim; ++d) cell *= h;
    return total * cell;
}

}  // namespace gsc
