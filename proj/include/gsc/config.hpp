// Flat key = value sectioned experiment configs. Every key has a default;
// unknown sections or keys are rejected with the offending location, and
// emit(parse(text)) round-trips.

#ifndef GSC_CONFIG_HPP
#define GSC_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gsc/lattice.hpp"

namespace gsc {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunSection {
    std::uint64_t seed = 1;
    std::string out = ".";
    friend bool operator==(const RunSection&, const RunSection&) = default;
};

struct LatticeSection {
    int dimension = 1;
    int half_extent = 1;      // symmetric {-L..L} form
    std::string box;          // "lo:hi,lo:hi" overrides the symmetric form
    friend bool operator==(const LatticeSection&, const LatticeSection&) = default;
};

struct ModelSection {
    double t = 1.0;
    double U = 0.0;
    double V = 0.0;
    double mu = 0.0;
    double t_cap = 10.0;
    double w_cap = 10.0;
    friend bool operator==(const ModelSection&, const ModelSection&) = default;
};

struct CouplingsSection {
    double kappa = 1.0;
    double alpha = 1.0;
    double beta = 1.0;
    friend bool operator==(const CouplingsSection&, const CouplingsSection&) = default;
};

struct SamplerSection {
    int chains = 4;
    int sweeps = 1024;
    int thermalization = 256;
    double delta = M_PI / 2;
    int measure_every = 1;
    bool flux_frozen = false;
    bool tune_delta = true;
    friend bool operator==(const SamplerSection&, const SamplerSection&) = default;
};

struct QuadratureSection {
    int order = 16;
    friend bool operator==(const QuadratureSection&, const QuadratureSection&) = default;
};

struct ObservableSection {
    std::string u = "1";  // site coordinates, comma separated
    std::string v = "1";
    bool include_imag = false;
    friend bool operator==(const ObservableSection&, const ObservableSection&) = default;
};

struct BoundSection {
    int dimension = 3;
    double beta = 1.0;
    double alpha = 1.0;
    double eps = 1e-3;
    double cutoff_k = M_PI;
    std::vector<int> u_values{8, 16, 32, 64};
    int v_offset = 1;
    double c3_tilde = 1.0;
    friend bool operator==(const BoundSection&, const BoundSection&) = default;
};

struct ScanSection {
    std::string parameter = "u";  // u | beta | alpha | ell
    std::vector<double> values;
    double r = 1.0;  // crystal distance for ell scans
    friend bool operator==(const ScanSection&, const ScanSection&) = default;
};

struct VerifySection {
    int trials = 200;
    friend bool operator==(const VerifySection&, const VerifySection&) = default;
};

struct RunConfig {
    std::string subcommand;  // set by the CLI, not by the file
    RunSection run;
    LatticeSection lattice;
    ModelSection model;
    CouplingsSection couplings;
    SamplerSection sampler;
    QuadratureSection quadrature;
    ObservableSection observable;
    BoundSection bound;
    ScanSection scan;
    VerifySection verify;
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(const std::string& text);
std::string emit_config(const RunConfig& cfg);

// Helpers realized from the parsed sections.
LatticeSpec lattice_spec_from(const LatticeSection& s);
Coord parse_coord(const std::string& text, int dimension);

}  // namespace gsc

#endif
