// Finite hypercubic lattices with open boundaries and the discrete vector
// calculus (gradient, divergence, open/extended Laplacian) used everywhere
// else in this project.
//
// Conventions:
//   - sites are ordered lexicographically by coordinate tuple (axis 0 most
//     significant); bonds are grouped by axis, then by site order;
//   - the canonical bond (x, x+e_i) stores one value, the reversed bond
//     reads as its negation;
//   - a field value on a bond outside the lattice is zero, which fixes the
//     boundary behaviour of divergence and the open Laplacian.

#ifndef GSC_LATTICE_HPP
#define GSC_LATTICE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsc {

inline constexpr int kMaxDim = 4;

// Site coordinate; axes >= dimension are zero.
using Coord = std::array<int, kMaxDim>;

inline Coord make_coord(std::initializer_list<int> xs) {
    Coord c{};
    int i = 0;
    for (int x : xs) c[static_cast<std::size_t>(i++)] = x;
    return c;
}

inline Coord negate(const Coord& c) {
    return Coord{-c[0], -c[1], -c[2], -c[3]};
}

struct LatticeSpec {
    int dimension = 1;
    std::array<int, kMaxDim> lo{};  // inclusive
    std::array<int, kMaxDim> hi{};  // inclusive

    static LatticeSpec symmetric(int dimension, int half_extent);
    static LatticeSpec box(int dimension, const std::vector<std::pair<int, int>>& ranges);

    int extent(int axis) const { return hi[static_cast<std::size_t>(axis)] - lo[static_cast<std::size_t>(axis)] + 1; }
    bool is_symmetric() const;
    // L such that sites run over {-L..L} per axis; throws for general boxes.
    int half_extent() const;
    void validate() const;  // throws std::invalid_argument
};

struct Bond {
    int from = 0;  // canonical orientation: to = from + e_axis
    int to = 0;
    int axis = 0;
};

struct Plaquette {
    int corner = 0;  // sites: corner, corner+e_a, corner+e_a+e_b, corner+e_b
    int axis_a = 0;
    int axis_b = 0;
};

using ScalarField = std::vector<double>;  // one value per site
using BondField = std::vector<double>;    // one value per canonical bond

class Lattice {
  public:
    explicit Lattice(LatticeSpec spec);

    const LatticeSpec& spec() const { return spec_; }
    int dimension() const { return spec_.dimension; }
    int num_sites() const { return static_cast<int>(num_sites_); }
    int num_bonds() const { return static_cast<int>(bonds_.size()); }
    int num_plaquettes() const { return static_cast<int>(plaquettes_.size()); }

    const std::vector<Bond>& bonds() const { return bonds_; }
    const std::vector<Plaquette>& plaquettes() const { return plaquettes_; }
    const std::vector<int>& boundary_sites() const { return boundary_sites_; }
    bool is_boundary(int site) const { return is_boundary_[static_cast<std::size_t>(site)]; }

    Coord coord(int site) const;
    int site_index(const Coord& c) const;  // throws std::domain_error if outside
    std::optional<int> try_site_index(const Coord& c) const;
    bool contains(const Coord& c) const { return try_site_index(c).has_value(); }

    // Neighbor site in direction dir*e_axis, or nullopt past the open boundary.
    std::optional<int> neighbor(int site, int axis, int dir) const;
    // Periodic neighbor on the symmetric lattice (period 2L+1 per axis).
    int wrapped_neighbor(int site, int axis, int dir) const;

    // Canonical bond (site, site+e_axis); nullopt if it leaves the lattice.
    std::optional<int> bond_at(int site, int axis) const;

  private:
    LatticeSpec spec_;
    std::size_t num_sites_ = 0;
    std::array<std::size_t, kMaxDim> stride_{};
    std::vector<Bond> bonds_;
    std::vector<std::vector<int>> bond_lookup_;  // [axis][site] -> bond index or -1
    std::vector<Plaquette> plaquettes_;
    std::vector<int> boundary_sites_;
    std::vector<bool> is_boundary_;
};

// (d phi)_{x,y} = phi_x - phi_y on the canonical bond (x, y = x+e_i).
double gradient(const Lattice& lat, const ScalarField& phi, const Bond& b);
double gradient(const Lattice& lat, const ScalarField& phi, int bond_index);

// (d* A)_x = sum_i (A_{x+e_i,x} - A_{x,x-e_i}), missing bonds contribute 0.
double divergence(const Lattice& lat, const BondField& a, int site);

// Open-boundary Laplacian d* d: neighbors outside the lattice are dropped.
double laplacian_open(const Lattice& lat, const ScalarField& phi, int site);

// Extended Laplacian: periodic wraparound on the symmetric lattice.
// Throws std::invalid_argument on non-symmetric geometry.
double laplacian_extended(const Lattice& lat, const ScalarField& phi, int site);

// Oriented circulation of a bond field around a plaquette (d of the field);
// identically zero for gradients.
double plaquette_circulation(const Lattice& lat, const BondField& a, const Plaquette& p);

}  // namespace gsc

#endif
