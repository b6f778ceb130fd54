// Classical compact U(1) gauge configurations on a lattice: plaquette
// fluxes, the gauge + gauge-fixing energy, and real gauge transformations.

#ifndef GSC_GAUGE_HPP
#define GSC_GAUGE_HPP

#include "gsc/lattice.hpp"

namespace gsc {

// Wrap an angle into (-pi, pi].
double wrap_angle(double theta);

struct GaugeCouplings {
    double kappa = 1.0;  // magnetic stiffness, >= 0
    double alpha = 1.0;  // gauge parameter, > 0 strictly
    double beta = 1.0;   // inverse temperature, > 0

    void validate() const;  // throws std::invalid_argument
};

// One compact gauge configuration: an angle in (-pi, pi] per canonical bond.
class GaugeConfig {
  public:
    explicit GaugeConfig(const Lattice& lat) : lattice_(&lat), angles_(static_cast<std::size_t>(lat.num_bonds()), 0.0) {}

    const Lattice& lattice() const { return *lattice_; }
    int num_bonds() const { return static_cast<int>(angles_.size()); }
    double at(int bond) const { return angles_[static_cast<std::size_t>(bond)]; }
    void set(int bond, double theta) { angles_[static_cast<std::size_t>(bond)] = wrap_angle(theta); }
    const BondField& angles() const { return angles_; }

  private:
    const Lattice* lattice_;
    BondField angles_;
};

// Oriented sum of the four bond angles, reduced to (-pi, pi].
double plaquette_flux(const GaugeConfig& a, const Plaquette& p);

// E_g(A) = -kappa sum_p cos B_p - (1/alpha) sum_x cos (d*A)_x.
double gauge_energy(const GaugeConfig& a, const GaugeCouplings& c);

// A'_b = A_b + (d chi)_b, wrapped. Fluxes are invariant mod 2pi.
GaugeConfig gauge_transform(const GaugeConfig& a, const ScalarField& chi);

// A = d chi: every plaquette flux is 0 (the kappa -> infinity flux-frozen
// sector is sampled through these).
GaugeConfig pure_gauge(const Lattice& lat, const ScalarField& chi);

}  // namespace gsc

#endif
