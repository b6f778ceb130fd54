#include "gsc/checks.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "gsc/rng.hpp"

namespace gsc {

namespace {

void fold_margin(CheckReport& rep, double slack) { rep.worst_margin = std::min(rep.worst_margin, slack); }

// identity sub-test: records (tol - deviation) so a clean pass stays positive
void fold_identity(CheckReport& rep, double deviation, double tol) { fold_margin(rep, tol - deviation); }

}  // namespace

CheckReport check_twist_dominance(const Lattice& lat, const FermionModel& model, const GaugeCouplings& c,
                                  const Coord& u, const Coord& v, std::span<const ScalarField> phis, int quad_order,
                                  double tol) {
    CheckReport rep;
    rep.name = "twist-dominance";
    rep.tolerance = tol;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    {
        std::ostringstream os;
        os << "beta=" << c.beta << " alpha=" << c.alpha << " kappa=" << c.kappa << " U=" << model.U
           << " sites=" << lat.num_sites() << " order=" << quad_order;
        rep.params = os.str();
    }

    const FockSpace fs(lat.num_sites());
    const SparseOp cooper = cooper_operator(lat, fs, u, v);
    ExactOptions opt;
    opt.order = quad_order;
    const ExactResult exact = exact_expectation(lat, model, c, std::span<const SparseOp>(&cooper, 1), opt);
    const double lhs = std::abs(exact.values[0]);

    for (const ScalarField& phi : phis) {
        const double rhs = finite_volume_twist_bound(lat, phi, c.beta, c.alpha, u, v);
        fold_margin(rep, rhs - lhs);
        ++rep.samples;
    }
    rep.pass = rep.worst_margin >= -tol;
    {
        std::ostringstream os;
        os << "|<cooper>| = " << lhs;
        rep.note = os.str();
    }
    return rep;
}

std::vector<ScalarField> dominance_test_fields(const Lattice& lat, const Coord& u, std::span<const double> charges,
                                               int num_random, std::uint64_t seed, double eps, double K) {
    std::vector<ScalarField> phis;
    for (double q : charges) phis.push_back(build_twist(q, u, eps, K, lat, 2.0).phi);
    SplitMix64 rng = SplitMix64::stream(seed, 0xD0);
    const double scales[3] = {0.1, 0.5, 2.0};
    for (int r = 0; r < num_random; ++r) {
        const double scale = scales[r % 3];
        ScalarField phi(static_cast<std::size_t>(lat.num_sites()));
        for (double& x : phi) x = scale * rng.uniform(-1.0, 1.0);
        phis.push_back(std::move(phi));
    }
    return phis;
}

CheckReport check_trace_lemma(int dim, int ell, int trials, std::uint64_t seed) {
    if (dim < 1 || dim > 16) throw std::invalid_argument("check_trace_lemma: dim must be in 1..16");
    if (ell < 1 || ell > 6) throw std::invalid_argument("check_trace_lemma: ell must be in 1..6");

    CheckReport rep;
    rep.name = "trace-lemma";
    rep.tolerance = 1e-10;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    {
        std::ostringstream os;
        os << "dim=" << dim << " ell=" << ell << " trials=" << trials;
        rep.params = os.str();
    }

    SplitMix64 rng = SplitMix64::stream(seed, 0x7A);
    const auto gaussian_matrix = [&]() {
        Eigen::MatrixXcd g(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
        return g;
    };

    const auto lemma_sides = [&](const Eigen::MatrixXcd& p, const Eigen::MatrixXcd& un, int l) {
        Eigen::MatrixXcd pu = p * un;
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
        for (int k = 0; k < l; ++k) m = m * pu;
        const double t1 = m.squaredNorm();  // Tr (PU)^l (U* P)^l
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p, Eigen::EigenvaluesOnly);
        double t2 = 0.0;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            t2 += std::pow(std::max(0.0, es.eigenvalues()[i]), 2 * l);
        return std::pair<double, double>(t1, t2);
    };

    for (int t = 0; t < trials; ++t) {
        const Eigen::MatrixXcd g = gaussian_matrix();
        const Eigen::MatrixXcd p = g * g.adjoint();
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gaussian_matrix());
        Eigen::MatrixXcd un = qr.householderQ();
        const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int i = 0; i < dim; ++i) {
            const Complex d = r(i, i);
            if (std::abs(d) > 0.0) un.col(i) *= d / std::abs(d);
        }

        const auto [t1, t2] = lemma_sides(p, un, ell);
        fold_margin(rep, (t2 - t1) / t2);  // relative slack
        ++rep.samples;

        if (t < 8) {
            // exact equality cases
            const auto [i1, i2] = lemma_sides(p, Eigen::MatrixXcd::Identity(dim, dim), ell);
            fold_identity(rep, std::abs(i2 - i1) / i2, 1e-12);
            const auto [o1, o2] = lemma_sides(p, un, 1);
            fold_identity(rep, std::abs(o2 - o1) / o2, 1e-12);
        }
    }
    rep.pass = rep.worst_margin >= -rep.tolerance;
    return rep;
}

CheckReport check_heat_kernel(double eta, int grid_n, double extent) {
    if (!(eta > 0.0)) throw std::invalid_argument("check_heat_kernel: eta must be > 0");
    if (grid_n < 32) throw std::runtime_error("check_heat_kernel: grid too coarse");

    CheckReport rep;
    rep.name = "heat-kernel";
    rep.tolerance = 0.0;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    {
        std::ostringstream os;
        os << "eta=" << eta << " n=" << grid_n << " extent=" << extent;
        rep.params = os.str();
    }

    const int n = grid_n;
    const double h = extent / n;
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = -0.5 * extent + i * h;

    const auto spectral_evolve = [&](const std::vector<double>& f, double et) {
        // forward DFT, multiply by exp(-eta k^2), inverse; O(n^2) is fine here
        std::vector<Complex> fhat(static_cast<std::size_t>(n));
        for (int m = 0; m < n; ++m) {
            const double k = 2.0 * M_PI * (m - n / 2) / extent;
            Complex acc{0.0, 0.0};
            for (int j = 0; j < n; ++j) acc += f[static_cast<std::size_t>(j)] * std::polar(1.0, -k * x[static_cast<std::size_t>(j)]);
            fhat[static_cast<std::size_t>(m)] = acc * h * std::exp(-et * k * k);
        }
        std::vector<double> out(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            Complex acc{0.0, 0.0};
            for (int m = 0; m < n; ++m) {
                const double k = 2.0 * M_PI * (m - n / 2) / extent;
                acc += fhat[static_cast<std::size_t>(m)] * std::polar(1.0, k * x[static_cast<std::size_t>(j)]);
            }
            out[static_cast<std::size_t>(j)] = (acc / extent).real();
        }
        return out;
    };

    const auto convolution_evolve = [&](const std::vector<double>& f, double et) {
        std::vector<double> out(static_cast<std::size_t>(n), 0.0);
        const double norm = 1.0 / std::sqrt(4.0 * M_PI * et);
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) {
                const double d = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
                acc += std::exp(-d * d / (4.0 * et)) * f[static_cast<std::size_t>(j)];
            }
            out[static_cast<std::size_t>(i)] = acc * h * norm;
        }
        return out;
    };

    const auto l2 = [&](const std::vector<double>& a) {
        double acc = 0.0;
        for (double v : a) acc += v * v;
        return std::sqrt(h * acc);
    };
    const auto l2_diff = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double acc = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
        return std::sqrt(h * acc);
    };

    // test functions: unit-width Gaussian and a compactly supported bump
    std::vector<double> gauss(static_cast<std::size_t>(n)), bump(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double xi = x[static_cast<std::size_t>(i)];
        gauss[static_cast<std::size_t>(i)] = std::exp(-0.5 * xi * xi);
        bump[static_cast<std::size_t>(i)] = std::abs(xi) < 5.0 ? std::exp(-1.0 / (1.0 - (xi / 5.0) * (xi / 5.0))) : 0.0;
    }

    // spectral vs convolution, both test functions
    for (const auto* f : {&gauss, &bump}) {
        const auto a = spectral_evolve(*f, eta);
        const auto b = convolution_evolve(*f, eta);
        fold_identity(rep, l2_diff(a, b) / l2(b), 1e-6);
        rep.samples++;
    }

    // Gaussian width composition: sigma^2 -> sigma^2 + 2 eta
    {
        const auto evolved = spectral_evolve(gauss, eta);
        const double s2 = 1.0 + 2.0 * eta;
        std::vector<double> closed(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            closed[static_cast<std::size_t>(i)] =
                std::exp(-0.5 * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)] / s2) / std::sqrt(s2);
        fold_identity(rep, l2_diff(evolved, closed) / l2(closed), 1e-8);
        rep.samples++;
    }

    // semigroup: two half steps equal one full step
    {
        const auto two = spectral_evolve(spectral_evolve(bump, 0.5 * eta), 0.5 * eta);
        const auto one = spectral_evolve(bump, eta);
        fold_identity(rep, l2_diff(two, one) / l2(one), 1e-8);
        rep.samples++;
    }

    // eta -> 0 returns the input
    {
        const auto out = spectral_evolve(gauss, 1e-9);
        fold_identity(rep, l2_diff(out, gauss) / l2(gauss), 1e-6);
        rep.samples++;
    }

    rep.pass = rep.worst_margin >= -rep.tolerance;
    return rep;
}

double w_functional(const Lattice& lat, const ScalarField& phi, double beta, double alpha, double m) {
    double lap_sq = 0.0;
    for (int s = 0; s < lat.num_sites(); ++s) {
        const double l = laplacian_open(lat, phi, s);
        lap_sq += l * l;
    }
    double grad_sq = 0.0;
    for (const Bond& b : lat.bonds()) {
        const double g = gradient(lat, phi, b);
        grad_sq += g * g;
    }
    return beta / alpha * lap_sq + 0.5 * beta * m * m * grad_sq;
}

CheckReport check_w_functional(const Lattice& lat, double beta, double alpha, std::uint64_t seed) {
    CheckReport rep;
    rep.name = "w-functional";
    rep.tolerance = 0.0;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    {
        std::ostringstream os;
        os << "beta=" << beta << " alpha=" << alpha << " sites=" << lat.num_sites();
        rep.params = os.str();
    }

    SplitMix64 rng = SplitMix64::stream(seed, 0x17);
    for (int trial = 0; trial < 25; ++trial) {
        ScalarField phi(static_cast<std::size_t>(lat.num_sites()));
        for (double& v : phi) v = rng.uniform(-1.5, 1.5);

        const double w0 = w_functional(lat, phi, beta, alpha, 0.0);
        const double w_small = w_functional(lat, phi, beta, alpha, 0.25);
        const double w_large = w_functional(lat, phi, beta, alpha, 1.0);
        fold_margin(rep, w0);              // w >= 0
        fold_margin(rep, w_small - w0);    // monotone in m^2
        fold_margin(rep, w_large - w_small);

        // m = 0 difference is exactly the mass term
        double grad_sq = 0.0;
        for (const Bond& b : lat.bonds()) {
            const double g = gradient(lat, phi, b);
            grad_sq += g * g;
        }
        fold_identity(rep, std::abs((w_small - w0) - 0.5 * beta * 0.25 * 0.25 * grad_sq),
                      1e-12 * std::max(1.0, w_small));
        rep.samples++;
    }

    // constant phi gives zero
    fold_identity(rep, std::abs(w_functional(lat, ScalarField(static_cast<std::size_t>(lat.num_sites()), 0.7), beta,
                                             alpha, 1.0)),
                  1e-14);

    // paper twist: quadratic functional below the cosh expansion (cosh x - 1 >= x^2/2)
    if (lat.spec().is_symmetric()) {
        Coord u{};
        u[0] = 1;
        const TwistField tw = build_twist(0.5, u, 1e-3, M_PI, lat, 2.0);
        double cosh_sum = 0.0;
        for (int s = 0; s < lat.num_sites(); ++s) {
            const double x = laplacian_open(lat, tw.phi, s);
            cosh_sum += 2.0 * std::sinh(0.5 * x) * std::sinh(0.5 * x);
        }
        const double quad = w_functional(lat, tw.phi, beta, alpha, 0.0);
        fold_margin(rep, 2.0 * beta / alpha * cosh_sum - quad);
        rep.samples++;
    }

    rep.pass = rep.worst_margin >= -1e-12;
    return rep;
}

CheckReport check_boundary_vanishing(int dim, std::span<const int> l_list, const Coord& u, double eps, double q) {
    if (dim < 3) throw std::invalid_argument("check_boundary_vanishing: needs D >= 3 (J is used)");
    CheckReport rep;
    rep.name = "boundary-vanishing";
    rep.tolerance = 0.0;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    {
        std::ostringstream os;
        os << "D=" << dim << " eps=" << eps << " q=" << q << " L=";
        for (std::size_t i = 0; i < l_list.size(); ++i) os << (i ? "," : "") << l_list[i];
        rep.params = os.str();
    }

    const double j_const = constant_J(dim).value;
    double prev_sum = std::numeric_limits<double>::infinity();
    std::ostringstream note;
    for (int L : l_list) {
        const Lattice lat(LatticeSpec::symmetric(dim, L));
        const TwistField tw = build_twist(q, u, eps, M_PI, lat, 2.0);

        double boundary_sum = 0.0;
        double termwise_worst = std::numeric_limits<double>::infinity();
        for (int s : lat.boundary_sites()) {
            const double lap_open = laplacian_open(lat, tw.phi, s);
            const double lap_ext = laplacian_extended(lat, tw.phi, s);
            const double corr = lap_ext - lap_open;  // wrapped-neighbor gradient terms
            boundary_sum += corr * corr;

            const double qj = q * j_const;
            const double lhs = std::cosh(lap_open) - 1.0;
            const double rhs = (std::cosh(corr) - 1.0) +
                               (std::cosh(qj) - 1.0) / (qj * qj) * lap_ext * lap_ext * std::cosh(corr) +
                               std::sinh(qj) / qj * std::abs(lap_ext) * std::sinh(std::abs(corr));
            termwise_worst = std::min(termwise_worst, rhs - lhs);

            // the uniform bound |tilde Delta phi| <= qJ backs the termwise step
            fold_margin(rep, qj - std::abs(lap_ext));
        }
        fold_margin(rep, termwise_worst);
        fold_margin(rep, prev_sum - boundary_sum);  // strict decrease along L
        note << "L=" << L << ": sum=" << boundary_sum << "  ";
        prev_sum = boundary_sum;
        rep.samples++;
    }
    rep.note = note.str();
    rep.pass = rep.worst_margin >= -1e-12;
    return rep;
}

namespace {

// scaling-and-squaring Taylor exponential; plenty for the dim <= 64 checks
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& m) {
    const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
    int squarings = 0;
    double scale = 1.0;
    while (norm * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    const Eigen::MatrixXcd x = m * scale;
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    Eigen::MatrixXcd sum = term;
    for (int k = 1; k <= 24; ++k) {
        term = term * x / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

double rel_dev(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    const double scale = std::max(1e-300, std::max(a.norm(), b.norm()));
    return (a - b).norm() / scale;
}

}  // namespace

CheckReport check_gauge_covariance(const Lattice& lat, const FermionModel& model, std::uint64_t seed) {
    if (lat.num_sites() > 4)
        throw std::invalid_argument("check_gauge_covariance: dense matrix identities are limited to <= 4 sites");

    CheckReport rep;
    rep.name = "gauge-covariance";
    rep.tolerance = 0.0;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    {
        std::ostringstream os;
        os << "sites=" << lat.num_sites() << " D=" << lat.dimension();
        rep.params = os.str();
    }

    SplitMix64 rng = SplitMix64::stream(seed, 0x33);
    const FockSpace fs(lat.num_sites());
    const FockBuilder fb(lat, model);

    GaugeConfig a(lat);
    for (int b = 0; b < lat.num_bonds(); ++b) a.set(b, rng.uniform(-M_PI, M_PI));
    ScalarField phi(static_cast<std::size_t>(lat.num_sites())), chi(static_cast<std::size_t>(lat.num_sites()));
    for (double& x : phi) x = rng.uniform(-0.8, 0.8);
    for (double& x : chi) x = rng.uniform(-M_PI, M_PI);

    const DenseOp gamma = gamma_transform_dense(fs, phi);
    const DenseOp gamma_inv = gamma_transform_dense(fs, [&] {
        ScalarField neg(phi.size());
        for (std::size_t i = 0; i < phi.size(); ++i) neg[i] = -phi[i];
        return neg;
    }());

    // Gamma c^dag Gamma^{-1} = e^{-phi} c^dag, Gamma c Gamma^{-1} = e^{+phi} c
    for (int site = 0; site < lat.num_sites(); ++site) {
        for (int spin = 0; spin < 2; ++spin) {
            const DenseOp cd = fs.creation_dense(mode_index(site, spin));
            const DenseOp cc = fs.annihilation_dense(mode_index(site, spin));
            fold_identity(rep, rel_dev(gamma * cd * gamma_inv, std::exp(-phi[static_cast<std::size_t>(site)]) * cd),
                          1e-12);
            fold_identity(rep, rel_dev(gamma * cc * gamma_inv, std::exp(+phi[static_cast<std::size_t>(site)]) * cc),
                          1e-12);
            rep.samples += 2;
        }
    }

    // real gauge covariance: H(A + d chi) = G H(A) G^dag, identical spectra
    {
        const DenseOp g = phase_transform_dense(fs, chi);
        const DenseOp h0 = fb.dense_hamiltonian(a);
        const DenseOp h1 = fb.dense_hamiltonian(gauge_transform(a, chi));
        fold_identity(rep, rel_dev(h1, g * h0 * g.adjoint()), 1e-12);

        Eigen::SelfAdjointEigenSolver<DenseOp> e0(h0, Eigen::EigenvaluesOnly), e1(h1, Eigen::EigenvaluesOnly);
        const double scale = std::max(1.0, e0.eigenvalues().cwiseAbs().maxCoeff());
        fold_identity(rep, (e0.eigenvalues() - e1.eigenvalues()).cwiseAbs().maxCoeff() / scale, 1e-10);
        rep.samples += 2;
    }

    // combined complex shift: Gamma Hop(A - i d phi) Gamma^{-1} = Hop(A)
    {
        std::vector<Complex> shifted(static_cast<std::size_t>(lat.num_bonds()));
        std::vector<Complex> plain(static_cast<std::size_t>(lat.num_bonds()));
        for (int b = 0; b < lat.num_bonds(); ++b) {
            const double dphi = gradient(lat, phi, lat.bonds()[static_cast<std::size_t>(b)]);
            shifted[static_cast<std::size_t>(b)] = std::polar(1.0, a.at(b)) * std::exp(dphi);
            plain[static_cast<std::size_t>(b)] = std::polar(1.0, a.at(b));
        }
        const DenseOp hop_shifted = fb.dense_hopping_with_phases(shifted);
        const DenseOp hop_plain = fb.dense_hopping_with_phases(plain);
        fold_identity(rep, rel_dev(gamma * hop_shifted * gamma_inv, hop_plain), 1e-12);
        rep.samples++;
    }

    // fluxes are invariant under the real transform
    if (lat.dimension() >= 2) {
        const GaugeConfig a2 = gauge_transform(a, chi);
        for (const Plaquette& p : lat.plaquettes()) {
            fold_identity(rep, std::abs(std::cos(plaquette_flux(a2, p)) - std::cos(plaquette_flux(a, p))), 1e-12);
            rep.samples++;
        }
    }

    // per-site identity cos(d*A - i Dphi) = cos cosh - i sin sinh
    for (int s = 0; s < lat.num_sites(); ++s) {
        const double dv = divergence(lat, a.angles(), s);
        const double lp = laplacian_open(lat, phi, s);
        const Complex lhs = std::cos(Complex(dv, -lp));
        const Complex rhs = Complex(std::cos(dv) * std::cosh(lp), -std::sin(dv) * std::sinh(lp));
        fold_identity(rep, std::abs(lhs - rhs), 1e-14);
        rep.samples++;
    }

    // c-number factorization: the gauge-fixing shift is a multiple of the
    // identity, so it factors out of the trace
    {
        Complex delta{0.0, 0.0};
        GaugeCouplings c;
        for (int s = 0; s < lat.num_sites(); ++s) {
            const double dv = divergence(lat, a.angles(), s);
            const double lp = laplacian_open(lat, phi, s);
            delta += -(1.0 / c.alpha) *
                     Complex(std::cos(dv) * (std::cosh(lp) - 1.0), -std::sin(dv) * std::sinh(lp));
        }
        const double beta = 0.7;
        const DenseOp h = fb.dense_hamiltonian(a);
        const SparseOp number_op = mode_monomial(fs, {{true, 0}, {false, 0}});
        const DenseOp op = number_op.to_dense();

        const Eigen::MatrixXcd shifted =
            expm(-beta * (h + delta * DenseOp::Identity(h.rows(), h.cols())));
        const Complex unfactored = (op * shifted).trace();
        const Complex factored = std::exp(-beta * delta) * (op * expm((-beta * h).eval())).trace();
        fold_identity(rep, std::abs(unfactored - factored) / std::max(1e-300, std::abs(factored)), 1e-12);
        rep.samples++;
    }

    // Cooper prefactor: Gamma O Gamma^{-1} = e^{-phi_u - phi_v + phi_{-u} + phi_{-v}} O
    if (lat.spec().is_symmetric()) {
        Coord u{};
        u[0] = 1;
        const SparseOp cooper = cooper_operator(lat, fs, u, u);
        const DenseOp o = cooper.to_dense();
        const double pref = std::exp(-2.0 * phi[static_cast<std::size_t>(lat.site_index(u))] +
                                     2.0 * phi[static_cast<std::size_t>(lat.site_index(negate(u)))]);
        fold_identity(rep, rel_dev(gamma * o * gamma_inv, pref * o), 1e-12);
        rep.samples++;
    }

    rep.pass = rep.worst_margin >= -1e-12;
    return rep;
}

std::vector<CheckReport> default_suite(std::uint64_t seed) {
    std::vector<CheckReport> reports;

    {
        const Lattice chain(LatticeSpec::symmetric(1, 1));
        FermionModel model;
        model.t = 1.0;
        model.U = -2.0;
        GaugeCouplings c;
        c.kappa = 1.0;
        c.alpha = 1.0;
        c.beta = 1.0;
        Coord u{};
        u[0] = 1;
        const double charges[] = {0.1, 0.3, 1.0};
        const std::vector<ScalarField> phis = dominance_test_fields(chain, u, charges, 10, seed);
        reports.push_back(check_twist_dominance(chain, model, c, u, u, phis, 16));
    }

    reports.push_back(check_trace_lemma(8, 4, 200, seed));
    reports.push_back(check_heat_kernel(0.25));

    {
        const Lattice square(LatticeSpec::symmetric(2, 1));
        reports.push_back(check_w_functional(square, 1.0, 1.0, seed));
    }

    {
        const int ls[] = {2, 3};
        Coord u{};
        u[0] = 1;
        reports.push_back(check_boundary_vanishing(3, ls, u, 1e-3, 0.5));
    }

    {
        const Lattice chain2(LatticeSpec::box(1, {{0, 1}}));
        FermionModel model;
        model.U = -2.0;
        reports.push_back(check_gauge_covariance(chain2, model, seed));
    }

    return reports;
}

}  // namespace gsc
