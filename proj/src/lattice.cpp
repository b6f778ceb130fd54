#include "gsc/lattice.hpp"

namespace gsc {

LatticeSpec LatticeSpec::symmetric(int dimension, int half_extent) {
    LatticeSpec s;
    s.dimension = dimension;
    for (int i = 0; i < dimension; ++i) {
        s.lo[static_cast<std::size_t>(i)] = -half_extent;
        s.hi[static_cast<std::size_t>(i)] = half_extent;
    }
    s.validate();
    return s;
}

LatticeSpec LatticeSpec::box(int dimension, const std::vector<std::pair<int, int>>& ranges) {
    if (static_cast<int>(ranges.size()) != dimension)
        throw std::invalid_argument("LatticeSpec::box: need one range per axis");
    LatticeSpec s;
    s.dimension = dimension;
    for (int i = 0; i < dimension; ++i) {
        s.lo[static_cast<std::size_t>(i)] = ranges[static_cast<std::size_t>(i)].first;
        s.hi[static_cast<std::size_t>(i)] = ranges[static_cast<std::size_t>(i)].second;
    }
    s.validate();
    return s;
}

bool LatticeSpec::is_symmetric() const {
    for (int i = 0; i < dimension; ++i)
        if (lo[static_cast<std::size_t>(i)] != -hi[static_cast<std::size_t>(i)] || hi[static_cast<std::size_t>(i)] < 1)
            return false;
    return true;
}

int LatticeSpec::half_extent() const {
    if (!is_symmetric()) throw std::invalid_argument("half_extent: lattice is not of symmetric {-L..L} form");
    int L = hi[0];
    for (int i = 1; i < dimension; ++i)
        if (hi[static_cast<std::size_t>(i)] != L) throw std::invalid_argument("half_extent: anisotropic symmetric lattice");
    return L;
}

void LatticeSpec::validate() const {
    if (dimension < 1 || dimension > kMaxDim)
        throw std::invalid_argument("LatticeSpec: dimension must be in 1..4, got " + std::to_string(dimension));
    for (int i = 0; i < dimension; ++i) {
        if (extent(i) < 2)
            throw std::invalid_argument("LatticeSpec: axis " + std::to_string(i) + " needs at least 2 sites");
    }
}

Lattice::Lattice(LatticeSpec spec) : spec_(spec) {
    spec_.validate();
    const int D = spec_.dimension;

    num_sites_ = 1;
    for (int i = D - 1; i >= 0; --i) {
        stride_[static_cast<std::size_t>(i)] = num_sites_;
        num_sites_ *= static_cast<std::size_t>(spec_.extent(i));
    }

    // bonds grouped by axis, sites in index order within each axis
    bond_lookup_.assign(static_cast<std::size_t>(D), std::vector<int>(num_sites_, -1));
    for (int axis = 0; axis < D; ++axis) {
        for (int s = 0; s < static_cast<int>(num_sites_); ++s) {
            Coord c = coord(s);
            ++c[static_cast<std::size_t>(axis)];
            if (auto to = try_site_index(c)) {
                bond_lookup_[static_cast<std::size_t>(axis)][static_cast<std::size_t>(s)] =
                    static_cast<int>(bonds_.size());
                bonds_.push_back(Bond{s, *to, axis});
            }
        }
    }

    for (int a = 0; a < D; ++a) {
        for (int b = a + 1; b < D; ++b) {
            for (int s = 0; s < static_cast<int>(num_sites_); ++s) {
                Coord c = coord(s);
                Coord ca = c, cb = c, cab = c;
                ++ca[static_cast<std::size_t>(a)];
                ++cb[static_cast<std::size_t>(b)];
                ++cab[static_cast<std::size_t>(a)];
                ++cab[static_cast<std::size_t>(b)];
                if (contains(ca) && contains(cb) && contains(cab)) plaquettes_.push_back(Plaquette{s, a, b});
            }
        }
    }

    is_boundary_.assign(num_sites_, false);
    for (int s = 0; s < static_cast<int>(num_sites_); ++s) {
        const Coord c = coord(s);
        for (int i = 0; i < D; ++i) {
            if (c[static_cast<std::size_t>(i)] == spec_.lo[static_cast<std::size_t>(i)] ||
                c[static_cast<std::size_t>(i)] == spec_.hi[static_cast<std::size_t>(i)]) {
                is_boundary_[static_cast<std::size_t>(s)] = true;
                boundary_sites_.push_back(s);
                break;
            }
        }
    }
}

Coord Lattice::coord(int site) const {
    Coord c{};
    auto rest = static_cast<std::size_t>(site);
    for (int i = 0; i < spec_.dimension; ++i) {
        const std::size_t q = rest / stride_[static_cast<std::size_t>(i)];
        rest %= stride_[static_cast<std::size_t>(i)];
        c[static_cast<std::size_t>(i)] = spec_.lo[static_cast<std::size_t>(i)] + static_cast<int>(q);
    }
    return c;
}

std::optional<int> Lattice::try_site_index(const Coord& c) const {
    std::size_t idx = 0;
    for (int i = 0; i < spec_.dimension; ++i) {
        const int x = c[static_cast<std::size_t>(i)];
        if (x < spec_.lo[static_cast<std::size_t>(i)] || x > spec_.hi[static_cast<std::size_t>(i)]) return std::nullopt;
        idx += static_cast<std::size_t>(x - spec_.lo[static_cast<std::size_t>(i)]) * stride_[static_cast<std::size_t>(i)];
    }
    for (int i = spec_.dimension; i < kMaxDim; ++i)
        if (c[static_cast<std::size_t>(i)] != 0) return std::nullopt;
    return static_cast<int>(idx);
}

int Lattice::site_index(const Coord& c) const {
    if (auto s = try_site_index(c)) return *s;
    throw std::domain_error("site outside lattice");
}

std::optional<int> Lattice::neighbor(int site, int axis, int dir) const {
    Coord c = coord(site);
    c[static_cast<std::size_t>(axis)] += dir;
    return try_site_index(c);
}

int Lattice::wrapped_neighbor(int site, int axis, int dir) const {
    if (!spec_.is_symmetric())
        throw std::invalid_argument("wrapped_neighbor: requires symmetric {-L..L} lattice");
    const int L = spec_.hi[static_cast<std::size_t>(axis)];
    const int period = 2 * L + 1;
    Coord c = coord(site);
    int& x = c[static_cast<std::size_t>(axis)];
    x += dir;
    if (x > L) x -= period;
    if (x < -L) x += period;
    return site_index(c);
}

std::optional<int> Lattice::bond_at(int site, int axis) const {
    const int b = bond_lookup_[static_cast<std::size_t>(axis)][static_cast<std::size_t>(site)];
    if (b < 0) return std::nullopt;
    return b;
}

double gradient(const Lattice& lat, const ScalarField& phi, const Bond& b) {
    return phi[static_cast<std::size_t>(b.from)] - phi[static_cast<std::size_t>(b.to)];
}

double gradient(const Lattice& lat, const ScalarField& phi, int bond_index) {
    if (bond_index < 0 || bond_index >= lat.num_bonds()) throw std::domain_error("bond outside lattice");
    return gradient(lat, phi, lat.bonds()[static_cast<std::size_t>(bond_index)]);
}

double divergence(const Lattice& lat, const BondField& a, int site) {
    if (site < 0 || site >= lat.num_sites()) throw std::domain_error("site outside lattice");
    double acc = 0.0;
    for (int axis = 0; axis < lat.dimension(); ++axis) {
        // A_{x+e_i,x} = -(canonical value on (x, x+e_i))
        if (auto b = lat.bond_at(site, axis)) acc -= a[static_cast<std::size_t>(*b)];
        // A_{x,x-e_i} = -(canonical value on (x-e_i, x))
        if (auto n = lat.neighbor(site, axis, -1)) {
            if (auto b = lat.bond_at(*n, axis)) acc += a[static_cast<std::size_t>(*b)];
        }
    }
    return acc;
}

double laplacian_open(const Lattice& lat, const ScalarField& phi, int site) {
    if (site < 0 || site >= lat.num_sites()) throw std::domain_error("site outside lattice");
    double acc = 0.0;
    const double center = phi[static_cast<std::size_t>(site)];
    for (int axis = 0; axis < lat.dimension(); ++axis) {
        for (int dir : {+1, -1}) {
            if (auto n = lat.neighbor(site, axis, dir)) acc += phi[static_cast<std::size_t>(*n)] - center;
        }
    }
    return acc;
}

double laplacian_extended(const Lattice& lat, const ScalarField& phi, int site) {
    if (!lat.spec().is_symmetric())
        throw std::invalid_argument("laplacian_extended: requires symmetric {-L..L} lattice");
    if (site < 0 || site >= lat.num_sites()) throw std::domain_error("site outside lattice");
    double acc = 0.0;
    const double center = phi[static_cast<std::size_t>(site)];
    for (int axis = 0; axis < lat.dimension(); ++axis) {
        for (int dir : {+1, -1}) {
            const int n = lat.wrapped_neighbor(site, axis, dir);
            acc += phi[static_cast<std::size_t>(n)] - center;
        }
    }
    return acc;
}

double plaquette_circulation(const Lattice& lat, const BondField& a, const Plaquette& p) {
    const Coord c = lat.coord(p.corner);
    Coord ca = c, cb = c;
    ++ca[static_cast<std::size_t>(p.axis_a)];
    ++cb[static_cast<std::size_t>(p.axis_b)];
    const int sa = lat.site_index(ca);
    const int sb = lat.site_index(cb);
    const int b1 = *lat.bond_at(p.corner, p.axis_a);  // x -> x+ea
    const int b2 = *lat.bond_at(sa, p.axis_b);        // x+ea -> x+ea+eb
    const int b3 = *lat.bond_at(sb, p.axis_a);        // x+eb -> x+ea+eb (traversed backwards)
    const int b4 = *lat.bond_at(p.corner, p.axis_b);  // x -> x+eb (traversed backwards)
    return a[static_cast<std::size_t>(b1)] + a[static_cast<std::size_t>(b2)] - a[static_cast<std::size_t>(b3)] -
           a[static_cast<std::size_t>(b4)];
}

}  // namespace gsc
