#include "gsc/fock.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gsc {

void FermionModel::validate() const {
    const double tmax = use_spin_matrix ? spin_hopping.cwiseAbs().maxCoeff() : std::abs(t);
    if (tmax > t_cap) throw std::invalid_argument("FermionModel: |t| exceeds the uniform cap t0");
    if (std::abs(U) > w_cap || std::abs(V) > w_cap)
        throw std::invalid_argument("FermionModel: interaction strength exceeds the uniform cap W0");
}

FockSpace::FockSpace(int num_sites, std::size_t dim_cap) : num_sites_(num_sites) {
    if (num_sites < 1) throw std::invalid_argument("FockSpace: need at least one site");
    if (num_sites > 15) throw std::runtime_error("FockSpace: dimension cap exceeded");
    dim_ = std::size_t{1} << (2 * num_sites);
    if (dim_ > dim_cap) throw std::runtime_error("FockSpace: dimension cap exceeded (4^sites > cap)");
}

namespace {
inline int jw_sign(std::uint32_t b, int m) {
    const std::uint32_t lower = b & ((std::uint32_t{1} << m) - 1);
    return (std::popcount(lower) & 1) ? -1 : +1;
}
}  // namespace

bool FockSpace::apply_annihilation(std::uint32_t b, int m, std::uint32_t* out, int* sign) {
    if (!(b & (std::uint32_t{1} << m))) return false;
    *sign = jw_sign(b, m);
    *out = b ^ (std::uint32_t{1} << m);
    return true;
}

bool FockSpace::apply_creation(std::uint32_t b, int m, std::uint32_t* out, int* sign) {
    if (b & (std::uint32_t{1} << m)) return false;
    *sign = jw_sign(b, m);
    *out = b | (std::uint32_t{1} << m);
    return true;
}

DenseOp FockSpace::annihilation_dense(int m) const {
    DenseOp op = DenseOp::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
    for (std::uint32_t b = 0; b < dim_; ++b) {
        std::uint32_t nb;
        int s;
        if (apply_annihilation(b, m, &nb, &s)) op(nb, b) = static_cast<double>(s);
    }
    return op;
}

DenseOp FockSpace::creation_dense(int m) const {
    DenseOp op = DenseOp::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
    for (std::uint32_t b = 0; b < dim_; ++b) {
        std::uint32_t nb;
        int s;
        if (apply_creation(b, m, &nb, &s)) op(nb, b) = static_cast<double>(s);
    }
    return op;
}

DenseOp FockSpace::number_dense() const {
    DenseOp op = DenseOp::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
    for (std::uint32_t b = 0; b < dim_; ++b) op(b, b) = static_cast<double>(std::popcount(b));
    return op;
}

DenseOp SparseOp::to_dense() const {
    DenseOp m = DenseOp::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (const OpEntry& e : entries) m(e.row, e.col) += e.value;
    return m;
}

SparseOp mode_monomial(const FockSpace& fs, const std::vector<std::pair<bool, int>>& factors) {
    SparseOp op;
    op.dim = fs.dim();
    for (std::uint32_t b = 0; b < fs.dim(); ++b) {
        std::uint32_t cur = b;
        int total_sign = 1;
        bool alive = true;
        for (auto it = factors.rbegin(); it != factors.rend(); ++it) {  // right to left
            std::uint32_t nb;
            int s;
            const bool ok = it->first ? FockSpace::apply_creation(cur, it->second, &nb, &s)
                                      : FockSpace::apply_annihilation(cur, it->second, &nb, &s);
            if (!ok) {
                alive = false;
                break;
            }
            cur = nb;
            total_sign *= s;
        }
        if (alive) op.entries.push_back(OpEntry{cur, b, Complex(static_cast<double>(total_sign), 0.0)});
    }
    std::sort(op.entries.begin(), op.entries.end(),
              [](const OpEntry& a, const OpEntry& b) { return a.col != b.col ? a.col < b.col : a.row < b.row; });
    return op;
}

SparseOp cooper_operator(const Lattice& lat, const FockSpace& fs, const Coord& u, const Coord& v) {
    const int iu = lat.site_index(u);
    const int iv = lat.site_index(v);
    const int inu = lat.site_index(negate(u));
    const int inv = lat.site_index(negate(v));
    return mode_monomial(fs, {{true, mode_index(iu, 0)},
                              {true, mode_index(iv, 1)},
                              {false, mode_index(inv, 1)},
                              {false, mode_index(inu, 0)}});
}

FockBuilder::FockBuilder(const Lattice& lat, const FermionModel& model, std::size_t dim_cap)
    : lattice_(&lat), model_(model), space_(lat.num_sites(), dim_cap) {
    model_.validate();

    const int nm = space_.num_modes();
    sectors_.num_modes = nm;
    sectors_.dim = space_.dim();
    sectors_.states.assign(static_cast<std::size_t>(nm) + 1, {});
    sectors_.pos_in_sector.assign(space_.dim(), 0);
    sectors_.sector_of.assign(space_.dim(), 0);
    for (std::uint32_t b = 0; b < space_.dim(); ++b) {
        const int n = std::popcount(b);
        sectors_.sector_of[b] = static_cast<std::uint8_t>(n);
        sectors_.pos_in_sector[b] = static_cast<std::uint32_t>(sectors_.states[static_cast<std::size_t>(n)].size());
        sectors_.states[static_cast<std::size_t>(n)].push_back(b);
    }

    const Eigen::Matrix2cd amp = model_.bond_amplitude();
    for (int b = 0; b < lat.num_bonds(); ++b) {
        const Bond& bond = lat.bonds()[static_cast<std::size_t>(b)];
        for (int sa = 0; sa < 2; ++sa) {
            for (int sb = 0; sb < 2; ++sb) {
                const Complex a = amp(sa, sb);
                if (a == Complex{0.0, 0.0}) continue;
                // t^{ab}_{x,y} e^{iA_{x,y}} c^dag_{x,a} c_{y,b} plus Hermitian partner
                hops_.push_back(HopTerm{b, mode_index(bond.to, sb), mode_index(bond.from, sa), a});
                hops_.push_back(HopTerm{~b, mode_index(bond.from, sa), mode_index(bond.to, sb), std::conj(a)});
            }
        }
    }

    diagonal_.assign(space_.dim(), 0.0);
    for (std::uint32_t w = 0; w < space_.dim(); ++w) {
        double d = 0.0;
        for (int s = 0; s < lat.num_sites(); ++s) {
            const bool up = w & (std::uint32_t{1} << mode_index(s, 0));
            const bool dn = w & (std::uint32_t{1} << mode_index(s, 1));
            if (up && dn) d += model_.U;
            d -= model_.mu * (static_cast<int>(up) + static_cast<int>(dn));
        }
        if (model_.V != 0.0) {
            for (const Bond& bond : lat.bonds()) {
                const int nf = static_cast<int>(static_cast<bool>(w & (std::uint32_t{1} << mode_index(bond.from, 0)))) +
                               static_cast<int>(static_cast<bool>(w & (std::uint32_t{1} << mode_index(bond.from, 1))));
                const int nt = static_cast<int>(static_cast<bool>(w & (std::uint32_t{1} << mode_index(bond.to, 0)))) +
                               static_cast<int>(static_cast<bool>(w & (std::uint32_t{1} << mode_index(bond.to, 1))));
                d += model_.V * nf * nt;
            }
        }
        diagonal_[w] = d;
    }
}

namespace {
inline Complex hop_phase(const std::vector<Complex>& bond_phase, int encoded_bond) {
    // encoded_bond >= 0: forward e^{iA_b}; ~b (negative) encodes the reverse.
    if (encoded_bond >= 0) return bond_phase[static_cast<std::size_t>(encoded_bond)];
    return Complex{1.0, 0.0} / bond_phase[static_cast<std::size_t>(~encoded_bond)];
}

std::vector<Complex> phases_from_config(const GaugeConfig& a) {
    std::vector<Complex> ph(static_cast<std::size_t>(a.num_bonds()));
    for (int b = 0; b < a.num_bonds(); ++b) ph[static_cast<std::size_t>(b)] = std::polar(1.0, a.at(b));
    return ph;
}
}  // namespace

DenseOp FockBuilder::dense_hopping_with_phases(const std::vector<Complex>& bond_phase) const {
    const std::size_t dim = space_.dim();
    DenseOp h = DenseOp::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (const HopTerm& t : hops_) {
        const Complex amp = t.amp * hop_phase(bond_phase, t.bond);
        for (std::uint32_t w = 0; w < dim; ++w) {
            std::uint32_t w1, w2;
            int s1, s2;
            if (!FockSpace::apply_annihilation(w, t.mode_from, &w1, &s1)) continue;
            if (!FockSpace::apply_creation(w1, t.mode_to, &w2, &s2)) continue;
            h(w2, w) += amp * static_cast<double>(s1 * s2);
        }
    }
    return h;
}

DenseOp FockBuilder::dense_hamiltonian_with_phases(const std::vector<Complex>& bond_phase) const {
    DenseOp h = dense_hopping_with_phases(bond_phase);
    for (std::uint32_t w = 0; w < space_.dim(); ++w) h(w, w) += diagonal_[w];
    return h;
}

DenseOp FockBuilder::dense_hamiltonian(const GaugeConfig& a) const {
    if (&a.lattice() != lattice_) throw std::domain_error("FockBuilder: gauge config lives on a different lattice");
    return dense_hamiltonian_with_phases(phases_from_config(a));
}

std::vector<DenseOp> FockBuilder::blocked_hamiltonian(const GaugeConfig& a) const {
    if (&a.lattice() != lattice_) throw std::domain_error("FockBuilder: gauge config lives on a different lattice");
    const std::vector<Complex> ph = phases_from_config(a);

    std::vector<DenseOp> blocks(sectors_.states.size());
    for (std::size_t n = 0; n < sectors_.states.size(); ++n) {
        const auto& st = sectors_.states[n];
        DenseOp& h = blocks[n];
        h = DenseOp::Zero(static_cast<Eigen::Index>(st.size()), static_cast<Eigen::Index>(st.size()));
        for (std::size_t p = 0; p < st.size(); ++p) {
            const std::uint32_t w = st[p];
            h(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)) += diagonal_[w];
            for (const HopTerm& t : hops_) {
                std::uint32_t w1, w2;
                int s1, s2;
                if (!FockSpace::apply_annihilation(w, t.mode_from, &w1, &s1)) continue;
                if (!FockSpace::apply_creation(w1, t.mode_to, &w2, &s2)) continue;
                h(sectors_.pos_in_sector[w2], static_cast<Eigen::Index>(p)) +=
                    t.amp * hop_phase(ph, t.bond) * static_cast<double>(s1 * s2);
            }
        }
    }
    return blocks;
}

namespace {
void require_hermitian(const DenseOp& h, double tol) {
    const double scale = std::max(1.0, h.norm());
    if ((h - h.adjoint()).norm() > tol * scale)
        throw std::runtime_error("thermal trace: operator is not Hermitian within tolerance");
}
}  // namespace

double log_partition(const Eigen::VectorXd& evals, double beta) {
    if (evals.size() == 0) return 0.0;
    const double e0 = evals.minCoeff();
    double z = 0.0;
    for (Eigen::Index i = 0; i < evals.size(); ++i) z += std::exp(-beta * (evals[i] - e0));
    return -beta * e0 + std::log(z);
}

double log_partition(const DenseOp& h_grand, double beta, double herm_tol) {
    if (beta < 0.0) throw std::invalid_argument("log_partition: beta must be >= 0");
    require_hermitian(h_grand, herm_tol);
    Eigen::SelfAdjointEigenSolver<DenseOp> es(h_grand, Eigen::EigenvaluesOnly);
    return log_partition(es.eigenvalues(), beta);
}

Complex thermal_expectation(const SparseOp& op, const DenseOp& h_grand, double beta, double herm_tol) {
    if (beta < 0.0) throw std::invalid_argument("thermal_expectation: beta must be >= 0");
    require_hermitian(h_grand, herm_tol);
    Eigen::SelfAdjointEigenSolver<DenseOp> es(h_grand);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const DenseOp& v = es.eigenvectors();
    const double e0 = ev.minCoeff();
    double z = 0.0;
    Eigen::VectorXd w(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        w[i] = std::exp(-beta * (ev[i] - e0));
        z += w[i];
    }
    // <O> = sum_e (o_{row,col}) rho_{col,row},  rho = V diag(w/z) V^dag
    Complex acc{0.0, 0.0};
    for (const OpEntry& e : op.entries) {
        Complex rho{0.0, 0.0};
        for (Eigen::Index i = 0; i < ev.size(); ++i) rho += v(e.col, i) * w[i] * std::conj(v(e.row, i));
        acc += e.value * rho;
    }
    return acc / z;
}

BlockedSpectra diagonalize_blocked(const std::vector<DenseOp>& blocks, bool eigenvalues_only) {
    BlockedSpectra sp;
    sp.evals.resize(blocks.size());
    if (!eigenvalues_only) sp.evecs.resize(blocks.size());
    for (std::size_t n = 0; n < blocks.size(); ++n) {
        if (eigenvalues_only) {
            Eigen::SelfAdjointEigenSolver<DenseOp> es(blocks[n], Eigen::EigenvaluesOnly);
            sp.evals[n] = es.eigenvalues();
        } else {
            Eigen::SelfAdjointEigenSolver<DenseOp> es(blocks[n]);
            sp.evals[n] = es.eigenvalues();
            sp.evecs[n] = es.eigenvectors();
        }
    }
    return sp;
}

double log_partition_blocked(const BlockedSpectra& sp, double beta) {
    double e0 = std::numeric_limits<double>::infinity();
    for (const auto& ev : sp.evals)
        if (ev.size() > 0) e0 = std::min(e0, ev.minCoeff());
    double z = 0.0;
    for (const auto& ev : sp.evals)
        for (Eigen::Index i = 0; i < ev.size(); ++i) z += std::exp(-beta * (ev[i] - e0));
    return -beta * e0 + std::log(z);
}

Complex thermal_expectation_blocked(const SparseOp& op, const SectorBasis& sectors, const BlockedSpectra& sp,
                                    double beta) {
    if (sp.evecs.empty()) throw std::invalid_argument("thermal_expectation_blocked: need eigenvectors");
    double e0 = std::numeric_limits<double>::infinity();
    for (const auto& ev : sp.evals)
        if (ev.size() > 0) e0 = std::min(e0, ev.minCoeff());

    double z = 0.0;
    std::vector<Eigen::VectorXd> w(sp.evals.size());
    for (std::size_t n = 0; n < sp.evals.size(); ++n) {
        const auto& ev = sp.evals[n];
        w[n].resize(ev.size());
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            w[n][i] = std::exp(-beta * (ev[i] - e0));
            z += w[n][i];
        }
    }

    Complex acc{0.0, 0.0};
    for (const OpEntry& e : op.entries) {
        const int n = sectors.sector_of[e.col];
        if (sectors.sector_of[e.row] != n)
            throw std::runtime_error("thermal_expectation_blocked: operator is not sector-diagonal");
        const auto& v = sp.evecs[static_cast<std::size_t>(n)];
        const Eigen::Index r = sectors.pos_in_sector[e.row];
        const Eigen::Index c = sectors.pos_in_sector[e.col];
        Complex rho{0.0, 0.0};
        for (Eigen::Index i = 0; i < v.cols(); ++i) rho += v(c, i) * w[static_cast<std::size_t>(n)][i] * std::conj(v(r, i));
        acc += e.value * rho;
    }
    return acc / z;
}

Eigen::MatrixXcd one_body_matrix(const Lattice& lat, const FermionModel& model, const GaugeConfig& a) {
    if (model.use_spin_matrix) throw std::invalid_argument("one_body_matrix: requires spin-diagonal hopping");
    const int n = lat.num_sites();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    const Complex amp = -model.t;
    for (int b = 0; b < lat.num_bonds(); ++b) {
        const Bond& bond = lat.bonds()[static_cast<std::size_t>(b)];
        const Complex ph = std::polar(1.0, a.at(b));
        h(bond.from, bond.to) += amp * ph;
        h(bond.to, bond.from) += std::conj(amp * ph);
    }
    for (int s = 0; s < n; ++s) h(s, s) -= model.mu;
    return h;
}

Complex wick_oracle(const Lattice& lat, const FermionModel& model, const GaugeConfig& a, double beta, const Coord& u,
                    const Coord& v) {
    if (model.U != 0.0 || model.V != 0.0)
        throw std::invalid_argument("wick_oracle: only supports a free model (U = V = 0)");
    const Eigen::MatrixXcd h = one_body_matrix(lat, model, a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const Eigen::MatrixXcd& vv = es.eigenvectors();
    Eigen::VectorXd occ(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) occ[i] = 1.0 / (1.0 + std::exp(beta * ev[i]));
    const Eigen::MatrixXcd f = vv * occ.asDiagonal() * vv.adjoint();  // <c^dag_a c_b> = f_{b,a}
    const int iu = lat.site_index(u);
    const int iv = lat.site_index(v);
    const int inu = lat.site_index(negate(u));
    const int inv = lat.site_index(negate(v));
    return f(inu, iu) * f(inv, iv);
}

DenseOp gamma_transform_dense(const FockSpace& fs, const ScalarField& phi) {
    DenseOp g = DenseOp::Zero(static_cast<Eigen::Index>(fs.dim()), static_cast<Eigen::Index>(fs.dim()));
    for (std::uint32_t w = 0; w < fs.dim(); ++w) {
        double s = 0.0;
        for (int site = 0; site < fs.num_sites(); ++site)
            for (int spin = 0; spin < 2; ++spin)
                if (w & (std::uint32_t{1} << mode_index(site, spin))) s += phi[static_cast<std::size_t>(site)];
        g(w, w) = std::exp(-s);
    }
    return g;
}

DenseOp phase_transform_dense(const FockSpace& fs, const ScalarField& chi) {
    DenseOp g = DenseOp::Zero(static_cast<Eigen::Index>(fs.dim()), static_cast<Eigen::Index>(fs.dim()));
    for (std::uint32_t w = 0; w < fs.dim(); ++w) {
        double s = 0.0;
        for (int site = 0; site < fs.num_sites(); ++site)
            for (int spin = 0; spin < 2; ++spin)
                if (w & (std::uint32_t{1} << mode_index(site, spin))) s += chi[static_cast<std::size_t>(site)];
        g(w, w) = std::polar(1.0, s);
    }
    return g;
}

}  // namespace gsc
