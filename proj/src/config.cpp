#include "gsc/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

namespace gsc {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw ConfigError(where + ": expected a number, got '" + v + "'");
    }
}

std::int64_t to_int(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const std::int64_t x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw ConfigError(where + ": expected an integer, got '" + v + "'");
    }
}

bool to_bool(const std::string& v, const std::string& where) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(where + ": expected a boolean, got '" + v + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

using Setter = std::function<void(RunConfig&, const std::string& value, const std::string& where)>;

const std::map<std::string, std::map<std::string, Setter>>& schema() {
    static const std::map<std::string, std::map<std::string, Setter>> s = {
        {"run",
         {
             {"seed", [](RunConfig& c, const std::string& v, const std::string& w) { c.run.seed = static_cast<std::uint64_t>(to_int(v, w)); }},
             {"out", [](RunConfig& c, const std::string& v, const std::string&) { c.run.out = v; }},
         }},
        {"lattice",
         {
             {"dimension",
              [](RunConfig& c, const std::string& v, const std::string& w) {
                  c.lattice.dimension = static_cast<int>(to_int(v, w));
                  if (c.lattice.dimension < 1 || c.lattice.dimension > 4)
                      throw ConfigError(w + ": dimension must be in 1..4");
              }},
             {"L",
              [](RunConfig& c, const std::string& v, const std::string& w) {
                  c.lattice.half_extent = static_cast<int>(to_int(v, w));
                  if (c.lattice.half_extent < 1) throw ConfigError(w + ": L must be >= 1");
              }},
             {"box", [](RunConfig& c, const std::string& v, const std::string&) { c.lattice.box = v; }},
         }},
        {"model",
         {
             {"t", [](RunConfig& c, const std::string& v, const std::string& w) { c.model.t = to_double(v, w); }},
             {"U", [](RunConfig& c, const std::string& v, const std::string& w) { c.model.U = to_double(v, w); }},
             {"V", [](RunConfig& c, const std::string& v, const std::string& w) { c.model.V = to_double(v, w); }},
             {"mu", [](RunConfig& c, const std::string& v, const std::string& w) { c.model.mu = to_double(v, w); }},
             {"t_cap", [](RunConfig& c, const std::string& v, const std::string& w) { c.model.t_cap = to_double(v, w); }},
             {"w_cap", [](RunConfig& c, const std::string& v, const std::string& w) { c.model.w_cap = to_double(v, w); }},
         }},
        {"couplings",
         {
             {"kappa",
              [](RunConfig& c, const std::string& v, const std::string& w) {
                  c.couplings.kappa = to_double(v, w);
                  if (c.couplings.kappa < 0) throw ConfigError(w + ": kappa must be >= 0");
              }},
             {"alpha",
              [](RunConfig& c, const std::string& v, const std::string& w) {
                  c.couplings.alpha = to_double(v, w);
                  if (!(c.couplings.alpha > 0)) throw ConfigError(w + ": alpha must be > 0");
              }},
             {"beta",
              [](RunConfig& c, const std::string& v, const std::string& w) {
                  c.couplings.beta = to_double(v, w);
                  if (!(c.couplings.beta > 0)) throw ConfigError(w + ": beta must be > 0");
              }},
         }},
        {"sampler",
         {
             {"chains", [](RunConfig& c, const std::string& v, const std::string& w) { c.sampler.chains = static_cast<int>(to_int(v, w)); }},
             {"sweeps", [](RunConfig& c, const std::string& v, const std::string& w) { c.sampler.sweeps = static_cast<int>(to_int(v, w)); }},
             {"thermalization",
              [](RunConfig& c, const std::string& v, const std::string& w) { c.sampler.thermalization = static_cast<int>(to_int(v, w)); }},
             {"delta",
              [](RunConfig& c, const std::string& v, const std::string& w) {
                  c.sampler.delta = to_double(v, w);
                  if (!(c.sampler.delta > 0) || c.sampler.delta > M_PI)
                      throw ConfigError(w + ": delta must be in (0, pi]");
              }},
             {"measure_every",
              [](RunConfig& c, const std::string& v, const std::string& w) { c.sampler.measure_every = static_cast<int>(to_int(v, w)); }},
             {"flux_frozen",
              [](RunConfig& c, const std::string& v, const std::string& w) { c.sampler.flux_frozen = to_bool(v, w); }},
             {"tune_delta",
              [](RunConfig& c, const std::string& v, const std::string& w) { c.sampler.tune_delta = to_bool(v, w); }},
         }},
        {"quadrature",
         {
             {"order",
              [](RunConfig& c, const std::string& v, const std::string& w) {
                  c.quadrature.order = static_cast<int>(to_int(v, w));
                  if (c.quadrature.order < 2) throw ConfigError(w + ": order must be >= 2");
              }},
         }},
        {"observable",
         {
             {"u", [](RunConfig& c, const std::string& v, const std::string&) { c.observable.u = v; }},
             {"v", [](RunConfig& c, const std::string& v, const std::string&) { c.observable.v = v; }},
             {"include_imag",
              [](RunConfig& c, const std::string& v, const std::string& w) { c.observable.include_imag = to_bool(v, w); }},
         }},
        {"bound",
         {
             {"dimension",
              [](RunConfig& c, const std::string& v, const std::string& w) {
                  c.bound.dimension = static_cast<int>(to_int(v, w));
                  if (c.bound.dimension != 3 && c.bound.dimension != 4)
                      throw ConfigError(w + ": bound dimension must be 3 or 4");
              }},
             {"beta",
              [](RunConfig& c, const std::string& v, const std::string& w) {
                  c.bound.beta = to_double(v, w);
                  if (!(c.bound.beta > 0)) throw ConfigError(w + ": beta must be > 0");
              }},
             {"alpha",
              [](RunConfig& c, const std::string& v, const std::string& w) {
                  c.bound.alpha = to_double(v, w);
                  if (!(c.bound.alpha > 0)) throw ConfigError(w + ": alpha must be > 0");
              }},
             {"eps",
              [](RunConfig& c, const std::string& v, const std::string& w) {
                  c.bound.eps = to_double(v, w);
                  if (!(c.bound.eps > 0)) throw ConfigError(w + ": eps must be > 0");
              }},
             {"K",
              [](RunConfig& c, const std::string& v, const std::string& w) {
                  c.bound.cutoff_k = to_double(v, w);
                  if (!(c.bound.cutoff_k > 0) || c.bound.cutoff_k > M_PI + 1e-12)
                      throw ConfigError(w + ": K must be in (0, pi]");
              }},
             {"u_values",
              [](RunConfig& c, const std::string& v, const std::string& w) {
                  c.bound.u_values.clear();
                  for (const std::string& item : split(v, ','))
                      c.bound.u_values.push_back(static_cast<int>(to_int(item, w)));
              }},
             {"v_offset",
              [](RunConfig& c, const std::string& v, const std::string& w) { c.bound.v_offset = static_cast<int>(to_int(v, w)); }},
             {"c3_tilde",
              [](RunConfig& c, const std::string& v, const std::string& w) { c.bound.c3_tilde = to_double(v, w); }},
         }},
        {"scan",
         {
             {"parameter",
              [](RunConfig& c, const std::string& v, const std::string& w) {
                  if (v != "u" && v != "beta" && v != "alpha" && v != "ell")
                      throw ConfigError(w + ": parameter must be one of u, beta, alpha, ell");
                  c.scan.parameter = v;
              }},
             {"values",
              [](RunConfig& c, const std::string& v, const std::string& w) {
                  c.scan.values.clear();
                  for (const std::string& item : split(v, ',')) c.scan.values.push_back(to_double(item, w));
              }},
             {"r", [](RunConfig& c, const std::string& v, const std::string& w) { c.scan.r = to_double(v, w); }},
         }},
        {"verify",
         {
             {"trials",
              [](RunConfig& c, const std::string& v, const std::string& w) {
                  c.verify.trials = static_cast<int>(to_int(v, w));
                  if (c.verify.trials < 1) throw ConfigError(w + ": trials must be >= 1");
              }},
         }},
    };
    return s;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (schema().find(section) == schema().end())
                throw ConfigError("line " + std::to_string(lineno) + ": unknown section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        if (section.empty()) throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto& sec = schema().at(section);
        const auto it = sec.find(key);
        if (it == sec.end())
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + section + "." + key + "'");
        it->second(cfg, value, section + "." + key);
    }
    return cfg;
}

std::string emit_config(const RunConfig& c) {
    std::ostringstream os;
    os << "[run]\n";
    os << "seed = " << c.run.seed << "\n";
    os << "out = " << c.run.out << "\n";
    os << "[lattice]\n";
    os << "dimension = " << c.lattice.dimension << "\n";
    os << "L = " << c.lattice.half_extent << "\n";
    if (!c.lattice.box.empty()) os << "box = " << c.lattice.box << "\n";
    os << "[model]\n";
    os << "t = " << fmt_double(c.model.t) << "\n";
    os << "U = " << fmt_double(c.model.U) << "\n";
    os << "V = " << fmt_double(c.model.V) << "\n";
    os << "mu = " << fmt_double(c.model.mu) << "\n";
    os << "t_cap = " << fmt_double(c.model.t_cap) << "\n";
    os << "w_cap = " << fmt_double(c.model.w_cap) << "\n";
    os << "[couplings]\n";
    os << "kappa = " << fmt_double(c.couplings.kappa) << "\n";
    os << "alpha = " << fmt_double(c.couplings.alpha) << "\n";
    os << "beta = " << fmt_double(c.couplings.beta) << "\n";
    os << "[sampler]\n";
    os << "chains = " << c.sampler.chains << "\n";
    os << "sweeps = " << c.sampler.sweeps << "\n";
    os << "thermalization = " << c.sampler.thermalization << "\n";
    os << "delta = " << fmt_double(c.sampler.delta) << "\n";
    os << "measure_every = " << c.sampler.measure_every << "\n";
    os << "flux_frozen = " << (c.sampler.flux_frozen ? "true" : "false") << "\n";
    os << "tune_delta = " << (c.sampler.tune_delta ? "true" : "false") << "\n";
    os << "[quadrature]\n";
    os << "order = " << c.quadrature.order << "\n";
    os << "[observable]\n";
    os << "u = " << c.observable.u << "\n";
    os << "v = " << c.observable.v << "\n";
    os << "include_imag = " << (c.observable.include_imag ? "true" : "false") << "\n";
    os << "[bound]\n";
    os << "dimension = " << c.bound.dimension << "\n";
    os << "beta = " << fmt_double(c.bound.beta) << "\n";
    os << "alpha = " << fmt_double(c.bound.alpha) << "\n";
    os << "eps = " << fmt_double(c.bound.eps) << "\n";
    os << "K = " << fmt_double(c.bound.cutoff_k) << "\n";
    os << "u_values = ";
    for (std::size_t i = 0; i < c.bound.u_values.size(); ++i) os << (i ? "," : "") << c.bound.u_values[i];
    os << "\n";
    os << "v_offset = " << c.bound.v_offset << "\n";
    os << "c3_tilde = " << fmt_double(c.bound.c3_tilde) << "\n";
    os << "[scan]\n";
    os << "parameter = " << c.scan.parameter << "\n";
    if (!c.scan.values.empty()) {
        os << "values = ";
        for (std::size_t i = 0; i < c.scan.values.size(); ++i) os << (i ? "," : "") << fmt_double(c.scan.values[i]);
        os << "\n";
    }
    os << "r = " << fmt_double(c.scan.r) << "\n";
    os << "[verify]\n";
    os << "trials = " << c.verify.trials << "\n";
    return os.str();
}

LatticeSpec lattice_spec_from(const LatticeSection& s) {
    if (!s.box.empty()) {
        std::vector<std::pair<int, int>> ranges;
        for (const std::string& axis : split(s.box, ',')) {
            const auto parts = split(axis, ':');
            if (parts.size() != 2) throw ConfigError("lattice.box: expected lo:hi per axis");
            ranges.emplace_back(static_cast<int>(to_int(parts[0], "lattice.box")),
                                static_cast<int>(to_int(parts[1], "lattice.box")));
        }
        if (static_cast<int>(ranges.size()) != s.dimension)
            throw ConfigError("lattice.box: axis count must match lattice.dimension");
        return LatticeSpec::box(s.dimension, ranges);
    }
    return LatticeSpec::symmetric(s.dimension, s.half_extent);
}

Coord parse_coord(const std::string& text, int dimension) {
    const auto parts = split(text, ',');
    if (static_cast<int>(parts.size()) != dimension)
        throw ConfigError("coordinate '" + text + "': expected " + std::to_string(dimension) + " components");
    Coord c{};
    for (int d = 0; d < dimension; ++d) c[static_cast<std::size_t>(d)] = static_cast<int>(to_int(parts[static_cast<std::size_t>(d)], "coordinate"));
    return c;
}

}  // namespace gsc
