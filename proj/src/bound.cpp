#include "gsc/bound.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "gsc/quadrature.hpp"

namespace gsc {

WavenumberGrid wavenumber_grid(int L, double eps, double K, int dim) {
    if (L < 1) throw std::invalid_argument("wavenumber_grid: L must be >= 1");
    if (!(eps > 0.0) || !(eps < K) || !(K <= M_PI + 1e-15))
        throw std::invalid_argument("wavenumber_grid: need 0 < eps < K <= pi");
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("wavenumber_grid: dimension must be in 1..4");

    std::vector<double> axis;
    for (int n = -L; n <= L; ++n) {
        const double k = 2.0 * M_PI * n / (2.0 * L + 1.0);
        if (std::abs(k) >= eps && std::abs(k) <= K) axis.push_back(k);
    }
    if (axis.empty()) throw std::runtime_error("wavenumber_grid: cutoffs exclude every mode");

    WavenumberGrid grid;
    grid.dim = dim;
    grid.half_extent = L;
    std::size_t total = 1;
    for (int d = 0; d < dim; ++d) total *= axis.size();
    grid.points.reserve(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::array<double, kMaxDim> k{};
        std::size_t rest = flat;
        for (int d = 0; d < dim; ++d) {
            k[static_cast<std::size_t>(d)] = axis[rest % axis.size()];
            rest /= axis.size();
        }
        grid.points.push_back(k);
    }
    return grid;
}

namespace {

double dot_coord(const std::array<double, kMaxDim>& k, const Coord& x, int dim) {
    double acc = 0.0;
    for (int d = 0; d < dim; ++d) acc += k[static_cast<std::size_t>(d)] * x[static_cast<std::size_t>(d)];
    return acc;
}

double denom_S(const std::array<double, kMaxDim>& k, int dim) {
    double s = 0.0;
    for (int d = 0; d < dim; ++d) s += 1.0 - std::cos(k[static_cast<std::size_t>(d)]);
    return s;
}

}  // namespace

TwistField build_twist(double q, const Coord& u, double eps, double K, const Lattice& lat, double exponent) {
    if (!lat.spec().is_symmetric())
        throw std::invalid_argument("build_twist: requires symmetric {-L..L} lattice");
    if (exponent != 2.0 && exponent != 1.5)
        throw std::invalid_argument("build_twist: exponent must be 2 (D>=3) or 3/2 (D=2 variant)");
    lat.site_index(u);          // throws if outside
    lat.site_index(negate(u));  //
    const int L = lat.spec().half_extent();
    const int dim = lat.dimension();
    const WavenumberGrid grid = wavenumber_grid(L, eps, K, dim);

    TwistField tw;
    tw.q = q;
    tw.u = u;
    tw.eps = eps;
    tw.cutoff_K = K;
    tw.exponent = exponent;
    tw.lattice = &lat;
    tw.phi.assign(static_cast<std::size_t>(lat.num_sites()), 0.0);

    // per-mode weight sin(k.u)/S^exponent: odd under k -> -k
    std::vector<double> w(grid.points.size());
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        const auto& k = grid.points[i];
        const double s = denom_S(k, dim);
        const double d = exponent == 2.0 ? s * s : std::pow(s, exponent);
        w[i] = std::sin(dot_coord(k, u, dim)) / d;
    }

    const double vol = static_cast<double>(lat.num_sites());
    double max_re = 0.0, max_im = 0.0;
    std::vector<double> imag(static_cast<std::size_t>(lat.num_sites()), 0.0);
#pragma omp parallel for schedule(static)
    for (int s = 0; s < lat.num_sites(); ++s) {
        const Coord x = lat.coord(s);
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < grid.points.size(); ++i) {
            const double kx = dot_coord(grid.points[i], x, dim);
            // (-2i) e^{ikx} = -2i cos(kx) + 2 sin(kx)
            re += 2.0 * w[i] * std::sin(kx);
            im += -2.0 * w[i] * std::cos(kx);
        }
        tw.phi[static_cast<std::size_t>(s)] = q * re / vol;
        imag[static_cast<std::size_t>(s)] = q * im / vol;
    }
    for (int s = 0; s < lat.num_sites(); ++s) {
        max_re = std::max(max_re, std::abs(tw.phi[static_cast<std::size_t>(s)]));
        max_im = std::max(max_im, std::abs(imag[static_cast<std::size_t>(s)]));
    }
    tw.imag_residue = max_re > 0.0 ? max_im / max_re : max_im;
    return tw;
}

ScalarField tilde_laplacian_closed(const TwistField& tw) {
    if (tw.exponent != 2.0)
        throw std::invalid_argument("tilde_laplacian_closed: closed form assumes exponent 2");
    const Lattice& lat = *tw.lattice;
    const int dim = lat.dimension();
    const WavenumberGrid grid = wavenumber_grid(lat.spec().half_extent(), tw.eps, tw.cutoff_K, dim);

    std::vector<double> w(grid.points.size());
    for (std::size_t i = 0; i < grid.points.size(); ++i)
        w[i] = std::sin(dot_coord(grid.points[i], tw.u, dim)) / denom_S(grid.points[i], dim);

    ScalarField out(static_cast<std::size_t>(lat.num_sites()), 0.0);
    const double vol = static_cast<double>(lat.num_sites());
#pragma omp parallel for schedule(static)
    for (int s = 0; s < lat.num_sites(); ++s) {
        const Coord x = lat.coord(s);
        double acc = 0.0;
        for (std::size_t i = 0; i < grid.points.size(); ++i)
            acc += w[i] * std::sin(dot_coord(grid.points[i], x, dim));
        out[static_cast<std::size_t>(s)] = -4.0 * tw.q * acc / vol;
    }
    return out;
}

namespace {
double inv_S(const double* k, int dim, const void*) {
    double s = 0.0;
    for (int d = 0; d < dim; ++d) s += 1.0 - std::cos(k[d]);
    return 1.0 / s;
}
}  // namespace

JEstimate constant_J(int dim, int base_n) {
    if (dim < 3 || dim > 4)
        throw std::domain_error("constant_J: the integral diverges for D <= 2 (defined for D = 3, 4)");
    if (base_n <= 0) base_n = dim == 3 ? 128 : 48;
    const double pref = 4.0 / std::pow(2.0 * M_PI, dim);
    JEstimate est;
    est.coarse = pref * midpoint_bz(dim, base_n, &inv_S, nullptr);
    est.fine = pref * midpoint_bz(dim, 2 * base_n, &inv_S, nullptr);
    est.refinement_change = std::abs(est.fine - est.coarse) / est.fine;
    // corner cell of the 1/k^2 singularity gives an O(h) error; one
    // Richardson step removes it
    est.value = 2.0 * est.fine - est.coarse;
    return est;
}

double constant_c0(double K) {
    if (!(K > 0.0) || K > M_PI + 1e-15) throw std::invalid_argument("constant_c0: need 0 < K <= pi");
    // (1 - cos k)/k^2 is even and decreasing on (0, pi], so the minimum over
    // [-K, K] sits at the endpoints
    return (1.0 - std::cos(K)) / (K * K);
}

namespace {
double f_bracket(double q, double s, double J) { return q - 2.0 * s * (std::cosh(q * J) - 1.0) / (J * J); }

double golden_max(double lo, double hi, double s, double J) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f_bracket(c, s, J), fd = f_bracket(d, s, J);
    for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, b); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f_bracket(c, s, J);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f_bracket(d, s, J);
        }
    }
    return 0.5 * (a + b);
}
}  // namespace

FResult f_function(double s, double J) {
    if (!(s > 0.0)) throw std::domain_error("f_function: beta/alpha must be > 0 (f is unbounded otherwise)");
    if (!(J > 0.0)) throw std::invalid_argument("f_function: J must be > 0");
    FResult r;
    // stationarity: sinh(q J) = J/(2s)
    r.q_sup = std::asinh(J / (2.0 * s)) / J;
    r.f = 2.0 * f_bracket(r.q_sup, s, J);

    const double q_search = golden_max(0.0, 4.0 * r.q_sup + 1.0, s, J);
    const double f_search = 2.0 * f_bracket(q_search, s, J);
    if (std::abs(f_search - r.f) > 1e-6 * std::max(std::abs(r.f), 1e-30))
        throw std::runtime_error("f_function: closed form and golden-section search disagree");
    return r;
}

// ---------------------------------------------------------------------------
// g integrals
// ---------------------------------------------------------------------------

namespace {

// One axis factor B(t, w) = 2 int_eps^K e^{-t(1-cos k)} cos(w k) dk of the
// heat-kernel representation 1/S^2 = int_0^inf t e^{-tS} dt. Nodes and the
// w-dependent coefficients are precomputed once; evaluation per t is a
// weighted sum of exponentials.
class AxisFactor {
  public:
    AxisFactor(double eps, double K, double w, double grade_ratio, int gl_order) {
        std::vector<Panel> panels = graded_panels(eps, K, grade_ratio, std::abs(w), 0.35);
        build(panels, gl_order, w);
    }
    AxisFactor(const std::vector<Panel>& panels, int gl_order, double w) { build(panels, gl_order, w); }

    double operator()(double t) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < coeff_.size(); ++i) {
            const double x = t * s_[i];
            if (x < 745.0) acc += coeff_[i] * std::exp(-x);
        }
        return 2.0 * acc;
    }

    std::size_t nodes() const { return coeff_.size(); }

  private:
    void build(const std::vector<Panel>& panels, int gl_order, double w) {
        const GaussRule& rule = gauss_legendre(gl_order);
        coeff_.reserve(panels.size() * rule.nodes.size());
        s_.reserve(panels.size() * rule.nodes.size());
        for (const Panel& p : panels) {
            const double mid = 0.5 * (p.a + p.b), half = 0.5 * (p.b - p.a);
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double k = mid + half * rule.nodes[i];
                coeff_.push_back(half * rule.weights[i] * std::cos(w * k));
                s_.push_back(1.0 - std::cos(k));
            }
        }
    }

    std::vector<double> coeff_;
    std::vector<double> s_;
};

struct GContinuumParams {
    double grade_ratio = 1.3;
    int gl_order = 16;
    double t_first = 0.25;
    double t_ratio = 2.0;
    int t_gl_order = 16;
};

struct GPair {
    double g_u = 0.0, g_uv = 0.0;
    std::uint64_t evals = 0;
};

GPair g_continuum_once(const Coord& u, const Coord& v, double eps, double K, int dim, const GContinuumParams& par,
                       bool refine) {
    // distinct |w| values per product: g_u needs {0, 2u_j}; g_uv adds
    // {u_j + v_j, u_j - v_j}
    std::vector<double> ws;
    const auto add_w = [&ws](double w) {
        w = std::abs(w);
        for (double x : ws)
            if (x == w) return;
        ws.push_back(w);
    };
    add_w(0.0);
    for (int d = 0; d < dim; ++d) {
        add_w(2.0 * u[static_cast<std::size_t>(d)]);
        add_w(static_cast<double>(u[static_cast<std::size_t>(d)] + v[static_cast<std::size_t>(d)]));
        add_w(static_cast<double>(u[static_cast<std::size_t>(d)] - v[static_cast<std::size_t>(d)]));
    }

    std::vector<AxisFactor> factors;
    factors.reserve(ws.size());
    for (double w : ws) {
        std::vector<Panel> panels = graded_panels(eps, K, par.grade_ratio, w, 0.35);
        if (refine) panels = split_panels(panels);
        factors.emplace_back(panels, par.gl_order, w);
    }
    const auto factor_index = [&ws](double w) {
        w = std::abs(w);
        for (std::size_t i = 0; i < ws.size(); ++i)
            if (ws[i] == w) return i;
        throw std::logic_error("g_continuum: missing axis factor");
    };

    std::array<std::size_t, kMaxDim> idx_2u{}, idx_upv{}, idx_umv{};
    for (int d = 0; d < dim; ++d) {
        idx_2u[static_cast<std::size_t>(d)] = factor_index(2.0 * u[static_cast<std::size_t>(d)]);
        idx_upv[static_cast<std::size_t>(d)] = factor_index(static_cast<double>(u[static_cast<std::size_t>(d)] + v[static_cast<std::size_t>(d)]));
        idx_umv[static_cast<std::size_t>(d)] = factor_index(static_cast<double>(u[static_cast<std::size_t>(d)] - v[static_cast<std::size_t>(d)]));
    }

    // integrand of the outer t integral: t * bracket(t)
    std::vector<double> b_val(ws.size());
    const auto brackets = [&](double t, double* out_u, double* out_uv) {
        for (std::size_t i = 0; i < ws.size(); ++i) b_val[i] = factors[i](t);
        const double a = b_val[0];
        double prod_a = 1.0, prod_2u = 1.0, prod_upv = 1.0, prod_umv = 1.0;
        for (int d = 0; d < dim; ++d) {
            prod_a *= a;
            prod_2u *= b_val[idx_2u[static_cast<std::size_t>(d)]];
            prod_upv *= b_val[idx_upv[static_cast<std::size_t>(d)]];
            prod_umv *= b_val[idx_umv[static_cast<std::size_t>(d)]];
        }
        *out_u = prod_a - prod_2u;
        *out_uv = prod_a + prod_upv - prod_umv - prod_2u;
    };

    const GaussRule& rule = gauss_legendre(par.t_gl_order);
    const double t_first = refine ? 0.5 * par.t_first : par.t_first;
    const double t_ratio = refine ? std::sqrt(par.t_ratio) : par.t_ratio;
    const double t_cap = 400.0 / (dim * (1.0 - std::cos(eps)));

    GPair out;
    double acc_u = 0.0, acc_uv = 0.0;
    double a = 0.0, width = t_first;
    int negligible = 0;
    std::uint64_t evals = 0;
    while (a < t_cap) {
        const double b = std::min(t_cap, a + width);
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double pu = 0.0, puv = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double t = mid + half * rule.nodes[i];
            double bu, buv;
            brackets(t, &bu, &buv);
            pu += rule.weights[i] * t * bu;
            puv += rule.weights[i] * t * buv;
            ++evals;
        }
        acc_u += half * pu;
        acc_uv += half * puv;
        const double scale = std::max({std::abs(acc_u), std::abs(acc_uv), 1e-300});
        if (std::max(std::abs(half * pu), std::abs(half * puv)) < 1e-14 * scale) {
            if (++negligible >= 3) break;
        } else {
            negligible = 0;
        }
        a = b;
        width *= t_ratio;
    }

    const double pref = 2.0 / std::pow(2.0 * M_PI, dim);
    out.g_u = pref * acc_u;
    out.g_uv = pref * acc_uv;
    out.evals = evals;
    return out;
}

}  // namespace

GResult g_integrals(const Coord& u, const Coord& v, double eps, double K, int dim, GMode mode, int L) {
    if (!(eps > 0.0) || !(eps < K)) throw std::invalid_argument("g_integrals: need 0 < eps < K");
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("g_integrals: dimension must be in 1..4");

    GResult res;
    if (mode == GMode::LatticeSum) {
        if (L < 1) throw std::invalid_argument("g_integrals: lattice-sum mode needs L >= 1");
        const WavenumberGrid grid = wavenumber_grid(L, eps, K, dim);
        const double vol = std::pow(2.0 * L + 1.0, dim);
        double su = 0.0, suv = 0.0;
        for (const auto& k : grid.points) {
            const double s = denom_S(k, dim);
            const double d2 = s * s;
            const double ku = dot_coord(k, u, dim);
            const double kv = dot_coord(k, v, dim);
            su += std::sin(ku) * std::sin(ku) / d2;
            suv += std::sin(ku) * std::sin(0.5 * (ku - kv)) * std::cos(0.5 * (ku + kv)) / d2;
        }
        res.g_u = 4.0 * su / vol;
        res.g_uv = 8.0 * suv / vol;
        res.evaluations = grid.points.size();
        return res;
    }

    if (dim < 3)
        throw std::invalid_argument("g_integrals: continuum mode is defined for D = 3, 4");
    GContinuumParams par;
    const GPair base = g_continuum_once(u, v, eps, K, dim, par, false);
    const GPair fine = g_continuum_once(u, v, eps, K, dim, par, true);
    res.g_u = fine.g_u;
    res.g_uv = fine.g_uv;
    res.evaluations = base.evals + fine.evals;
    const double scale = std::max({std::abs(fine.g_u), std::abs(fine.g_uv), 1e-300});
    res.rel_err = std::max(std::abs(fine.g_u - base.g_u), std::abs(fine.g_uv - base.g_uv)) / scale;
    if (res.rel_err > 1e-6)
        throw std::runtime_error("g_integrals: quadrature self-error " + std::to_string(res.rel_err) +
                                 " exceeds 1e-6");
    return res;
}

double finite_volume_twist_bound(const Lattice& lat, const ScalarField& phi, double beta, double alpha,
                                 const Coord& u, const Coord& v) {
    const auto at = [&](const Coord& c) { return phi[static_cast<std::size_t>(lat.site_index(c))]; };
    const double source = -at(u) - at(v) + at(negate(u)) + at(negate(v));
    double cosh_sum = 0.0;
    for (int s = 0; s < lat.num_sites(); ++s) {
        const double x = laplacian_open(lat, phi, s);
        const double sh = std::sinh(0.5 * x);
        cosh_sum += 2.0 * sh * sh;  // cosh x - 1, stable near 0
    }
    return std::exp(source) * std::exp(beta / alpha * cosh_sum);
}

namespace {
const JEstimate& cached_J(int dim) {
    static std::map<int, JEstimate> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(dim);
    if (it == cache.end()) it = cache.emplace(dim, constant_J(dim)).first;
    return it->second;
}
}  // namespace

BoundReport theorem_bounds(const Coord& u, const Coord& v, double beta, double alpha, int dim, double eps, double K) {
    if (dim != 3 && dim != 4) throw std::invalid_argument("theorem_bounds: decay envelopes require D = 3 or 4");
    if (!(beta > 0.0) || !(alpha > 0.0)) throw std::invalid_argument("theorem_bounds: beta, alpha must be > 0");

    BoundReport rep;
    rep.dim = dim;
    rep.beta = beta;
    rep.alpha = alpha;
    rep.u = u;
    rep.v = v;
    rep.eps = eps;
    rep.cutoff_K = K;
    rep.J = cached_J(dim).value;

    const FResult fr = f_function(beta / alpha, rep.J);
    rep.f = fr.f;
    rep.q_sup = fr.q_sup;

    const GResult g = g_integrals(u, v, eps, K, dim, GMode::Continuum);
    rep.g_u = g.g_u;
    rep.g_uv = g.g_uv;
    rep.g_rel_err = g.rel_err;
    rep.g_evaluations = g.evaluations;

    rep.exponent = -rep.f * rep.g_u + rep.q_sup * std::abs(rep.g_uv);
    rep.bound = std::exp(rep.exponent);
    rep.quantum_exponent = -(alpha / (4.0 * beta)) * rep.g_u + (alpha / (4.0 * beta)) * std::abs(rep.g_uv);
    rep.quantum_bound = std::exp(rep.quantum_exponent);
    return rep;
}

ScalingPoint continuum_scaling(double ell, double alpha, double beta, double r, double c3_tilde) {
    if (!(ell >= 1.0)) throw std::invalid_argument("continuum_scaling: ell must be >= 1");
    if (!(r >= 0.0)) throw std::invalid_argument("continuum_scaling: r must be >= 0");
    if (!(beta > 0.0) || !(alpha > 0.0)) throw std::invalid_argument("continuum_scaling: beta, alpha must be > 0");
    ScalingPoint p;
    p.exponent = -c3_tilde * alpha * ell * r / beta;
    p.value = std::exp(p.exponent);
    return p;
}

std::string classify_scaling(double alpha1, double ell1, double alpha2, double ell2, double rel_tol) {
    const double p1 = alpha1 * ell1, p2 = alpha2 * ell2;
    if (std::abs(p1 - p2) <= rel_tol * std::max(p1, p2)) return "alpha-ell-fixed";
    if (std::abs(alpha1 - alpha2) <= rel_tol * std::max(alpha1, alpha2)) return "alpha-fixed";
    return "mixed";
}

}  // namespace gsc
