#include "gsc/gauge.hpp"

#include <cmath>

namespace gsc {

double wrap_angle(double theta) {
    double w = std::remainder(theta, 2.0 * M_PI);  // in [-pi, pi]
    if (w <= -M_PI) w = M_PI;
    return w;
}

void GaugeCouplings::validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("GaugeCouplings: alpha must be > 0");
    if (!(kappa >= 0.0)) throw std::invalid_argument("GaugeCouplings: kappa must be >= 0");
    if (!(beta > 0.0)) throw std::invalid_argument("GaugeCouplings: beta must be > 0");
}

double plaquette_flux(const GaugeConfig& a, const Plaquette& p) {
    return wrap_angle(plaquette_circulation(a.lattice(), a.angles(), p));
}

double gauge_energy(const GaugeConfig& a, const GaugeCouplings& c) {
    c.validate();
    const Lattice& lat = a.lattice();
    double e = 0.0;
    for (const Plaquette& p : lat.plaquettes()) e -= c.kappa * std::cos(plaquette_flux(a, p));
    for (int s = 0; s < lat.num_sites(); ++s) e -= std::cos(divergence(lat, a.angles(), s)) / c.alpha;
    return e;
}

GaugeConfig gauge_transform(const GaugeConfig& a, const ScalarField& chi) {
    const Lattice& lat = a.lattice();
    GaugeConfig out(lat);
    for (int b = 0; b < lat.num_bonds(); ++b)
        out.set(b, a.at(b) + gradient(lat, chi, lat.bonds()[static_cast<std::size_t>(b)]));
    return out;
}

GaugeConfig pure_gauge(const Lattice& lat, const ScalarField& chi) {
    return gauge_transform(GaugeConfig(lat), chi);
}

}  // namespace gsc
