// Exact many-body machinery: the fermionic Fock space over a lattice,
// Hamiltonian construction (dense and particle-number blocked), thermal
// traces, the Cooper pair operator, and a free-fermion Wick oracle.
//
// Mode order: m = 2*site + spin with spin 0 = up, 1 = down. Basis states
// are occupation words b with bit m set iff mode m is occupied,
//   |b> = (c^dag_0)^{b_0} (c^dag_1)^{b_1} ... |vac>,
// so applying c^dag_m / c_m from the left picks up (-1)^{popcount of lower
// occupied modes}.

#ifndef GSC_FOCK_HPP
#define GSC_FOCK_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "gsc/gauge.hpp"
#include "gsc/lattice.hpp"

namespace gsc {

using Complex = std::complex<double>;
using DenseOp = Eigen::MatrixXcd;

struct FermionModel {
    // Nearest-neighbor hopping amplitude: the bond matrix element is -t e^{iA}
    // (spin diagonal). A general 2x2 spin structure replaces -t * Id when set.
    Complex t{1.0, 0.0};
    bool use_spin_matrix = false;
    Eigen::Matrix2cd spin_hopping = Eigen::Matrix2cd::Zero();

    double U = 0.0;   // on-site n_up n_dn coefficient (attractive: U < 0)
    double V = 0.0;   // nearest-neighbor n_x n_y coefficient
    double mu = 0.0;  // chemical potential

    double t_cap = 10.0;  // uniform bounds t0, W0
    double w_cap = 10.0;

    // 2x2 spin matrix of hopping amplitudes for a canonical bond (x, x+e).
    Eigen::Matrix2cd bond_amplitude() const {
        if (use_spin_matrix) return spin_hopping;
        return -t * Eigen::Matrix2cd::Identity();
    }

    void validate() const;  // throws std::invalid_argument on cap violations
};

inline int mode_index(int site, int spin) { return 2 * site + spin; }

// Mode operator algebra on occupation words.
class FockSpace {
  public:
    FockSpace(int num_sites, std::size_t dim_cap = 4096);

    int num_sites() const { return num_sites_; }
    int num_modes() const { return 2 * num_sites_; }
    std::size_t dim() const { return dim_; }

    // c_m |b>: sign into *sign, returns new word; false if the mode is empty.
    static bool apply_annihilation(std::uint32_t b, int m, std::uint32_t* out, int* sign);
    static bool apply_creation(std::uint32_t b, int m, std::uint32_t* out, int* sign);

    DenseOp annihilation_dense(int m) const;
    DenseOp creation_dense(int m) const;
    DenseOp number_dense() const;  // total N

  private:
    int num_sites_;
    std::size_t dim_;
};

// Sparse operator as an explicit entry list over the full Fock basis.
struct OpEntry {
    std::uint32_t row, col;
    Complex value;
};

struct SparseOp {
    std::size_t dim = 0;
    std::vector<OpEntry> entries;  // sorted by (col, row), unique

    DenseOp to_dense() const;
};

// Product of mode operators applied right to left, e.g. the Cooper operator.
// each factor: {create?, mode}.
SparseOp mode_monomial(const FockSpace& fs, const std::vector<std::pair<bool, int>>& factors);

// c^dag_{u,up} c^dag_{v,dn} c_{-v,dn} c_{-u,up}; u, v, -u, -v must be sites.
SparseOp cooper_operator(const Lattice& lat, const FockSpace& fs, const Coord& u, const Coord& v);

// Particle-number sector decomposition of the Fock basis.
struct SectorBasis {
    int num_modes = 0;
    std::size_t dim = 0;
    std::vector<std::vector<std::uint32_t>> states;  // [N] -> ascending words
    std::vector<std::uint32_t> pos_in_sector;        // word -> position
    std::vector<std::uint8_t> sector_of;             // word -> N
};

// Builds grand-canonical Hamiltonians H(A) - mu N for one (lattice, model)
// pair; the A-independent diagonal is cached, only hopping phases change
// between gauge configurations.
class FockBuilder {
  public:
    FockBuilder(const Lattice& lat, const FermionModel& model, std::size_t dim_cap = 4096);

    const Lattice& lattice() const { return *lattice_; }
    const FermionModel& model() const { return model_; }
    const FockSpace& space() const { return space_; }
    const SectorBasis& sectors() const { return sectors_; }

    DenseOp dense_hamiltonian(const GaugeConfig& a) const;
    std::vector<DenseOp> blocked_hamiltonian(const GaugeConfig& a) const;

    // Hopping phase multiplier per bond supplied directly; used by the
    // complex-gauge-covariance checks where e^{iA} picks up a real factor.
    DenseOp dense_hamiltonian_with_phases(const std::vector<Complex>& bond_phase) const;
    DenseOp dense_hopping_with_phases(const std::vector<Complex>& bond_phase) const;

  private:
    struct HopTerm {
        int bond;         // canonical bond index (phase e^{iA_bond})
        int mode_from;    // c_{mode_from} then c^dag_{mode_to}
        int mode_to;
        Complex amp;      // amplitude for c^dag_to c_from
    };

    const Lattice* lattice_;
    FermionModel model_;
    FockSpace space_;
    SectorBasis sectors_;
    std::vector<HopTerm> hops_;       // both orientations, Hermitian pairs
    std::vector<double> diagonal_;    // U, V, -mu N part per basis word
};

// Thermal machinery. All take the grand Hamiltonian (mu already inside).
double log_partition(const Eigen::VectorXd& evals, double beta);
double log_partition(const DenseOp& h_grand, double beta, double herm_tol = 1e-12);

Complex thermal_expectation(const SparseOp& op, const DenseOp& h_grand, double beta, double herm_tol = 1e-12);

// Blocked paths: spectra per particle-number sector.
struct BlockedSpectra {
    std::vector<Eigen::VectorXd> evals;
    std::vector<Eigen::MatrixXcd> evecs;  // empty when eigenvalues_only
};

BlockedSpectra diagonalize_blocked(const std::vector<DenseOp>& blocks, bool eigenvalues_only);
double log_partition_blocked(const BlockedSpectra& sp, double beta);
// op must be sector-diagonal (the Cooper operator is); throws otherwise.
Complex thermal_expectation_blocked(const SparseOp& op, const SectorBasis& sectors, const BlockedSpectra& sp,
                                    double beta);

// Free-fermion (U = V = 0, spin-diagonal) Cooper correlation from the
// one-body Fermi function:
//   <c^dag_{u,up} c^dag_{v,dn} c_{-v,dn} c_{-u,up}> = f_{-u,u} f_{-v,v},
//   f = (Id + e^{beta (h - mu)})^{-1}.
// Moving c_{-u,up} left past the two down-spin operators costs two
// transpositions, so no net sign; cross contractions vanish because the
// Hamiltonian never mixes spins.
Complex wick_oracle(const Lattice& lat, const FermionModel& model, const GaugeConfig& a, double beta, const Coord& u,
                    const Coord& v);

// One-body hopping matrix h (site basis, one spin), h_{x,y} = amp e^{iA_{x,y}}.
Eigen::MatrixXcd one_body_matrix(const Lattice& lat, const FermionModel& model, const GaugeConfig& a);

// Diagonal transforms for the gauge-covariance checks.
DenseOp gamma_transform_dense(const FockSpace& fs, const ScalarField& phi);      // prod e^{-phi_x n_{x,s}}
DenseOp phase_transform_dense(const FockSpace& fs, const ScalarField& chi);      // prod e^{ i chi_x n_{x,s}}

}  // namespace gsc

#endif
