#include "gsc/records.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>

namespace gsc {

Json to_json(const CheckReport& r) {
    return Json{{"type", "check"},        {"name", r.name},       {"params", r.params},
                {"pass", r.pass},         {"worst_margin", r.worst_margin},
                {"tolerance", r.tolerance}, {"samples", r.samples}, {"note", r.note}};
}

Json to_json(const MCEstimate& e) {
    return Json{{"type", "mc_estimate"},
                {"name", e.name},
                {"mean", e.mean},
                {"stderr", e.stderror},
                {"tau_int", e.tau_int},
                {"proposals", e.proposals},
                {"acceptance", e.acceptance},
                {"chains", e.chains},
                {"seed", e.seed},
                {"low_acceptance_warning", e.low_acceptance_warning}};
}

namespace {
Json coord_json(const Coord& c, int dim) {
    Json arr = Json::array();
    for (int d = 0; d < dim; ++d) arr.push_back(c[static_cast<std::size_t>(d)]);
    return arr;
}
}  // namespace

Json to_json(const BoundReport& r) {
    return Json{{"type", "bound_report"},
                {"dimension", r.dim},
                {"beta", r.beta},
                {"alpha", r.alpha},
                {"u", coord_json(r.u, r.dim)},
                {"v", coord_json(r.v, r.dim)},
                {"eps", r.eps},
                {"K", r.cutoff_K},
                {"J", r.J},
                {"f", r.f},
                {"q_sup", r.q_sup},
                {"g_u", r.g_u},
                {"g_uv", r.g_uv},
                {"exponent", r.exponent},
                {"bound", r.bound},
                {"quantum_exponent", r.quantum_exponent},
                {"quantum_bound", r.quantum_bound},
                {"g_rel_err", r.g_rel_err},
                {"g_evaluations", r.g_evaluations}};
}

Json to_json(const ExactResult& r) {
    Json values = Json::array();
    for (const Complex& v : r.values) values.push_back(Json::array({v.real(), v.imag()}));
    return Json{{"type", "exact_expectation"},
                {"values", values},
                {"order", r.order},
                {"max_rel_change", r.max_rel_change},
                {"evaluations", r.evaluations}};
}

Json to_json(const RunConfig& c) {
    Json j;
    j["run"] = {{"seed", c.run.seed}, {"out", c.run.out}};
    j["lattice"] = {{"dimension", c.lattice.dimension}, {"L", c.lattice.half_extent}, {"box", c.lattice.box}};
    j["model"] = {{"t", c.model.t}, {"U", c.model.U},         {"V", c.model.V},
                  {"mu", c.model.mu}, {"t_cap", c.model.t_cap}, {"w_cap", c.model.w_cap}};
    j["couplings"] = {{"kappa", c.couplings.kappa}, {"alpha", c.couplings.alpha}, {"beta", c.couplings.beta}};
    j["sampler"] = {{"chains", c.sampler.chains},
                    {"sweeps", c.sampler.sweeps},
                    {"thermalization", c.sampler.thermalization},
                    {"delta", c.sampler.delta},
                    {"measure_every", c.sampler.measure_every},
                    {"flux_frozen", c.sampler.flux_frozen},
                    {"tune_delta", c.sampler.tune_delta}};
    j["quadrature"] = {{"order", c.quadrature.order}};
    j["observable"] = {{"u", c.observable.u}, {"v", c.observable.v}, {"include_imag", c.observable.include_imag}};
    Json uvals = Json::array();
    for (int u : c.bound.u_values) uvals.push_back(u);
    j["bound"] = {{"dimension", c.bound.dimension}, {"beta", c.bound.beta},     {"alpha", c.bound.alpha},
                  {"eps", c.bound.eps},             {"K", c.bound.cutoff_k},    {"u_values", uvals},
                  {"v_offset", c.bound.v_offset},   {"c3_tilde", c.bound.c3_tilde}};
    Json svals = Json::array();
    for (double v : c.scan.values) svals.push_back(v);
    j["scan"] = {{"parameter", c.scan.parameter}, {"values", svals}, {"r", c.scan.r}};
    j["verify"] = {{"trials", c.verify.trials}};
    return j;
}

Json make_run_record(const RunConfig& cfg, const Json& results, double wall_ms) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));

    Json rec;
    rec["timestamp"] = stamp;
    rec["tool_version"] = kToolVersion;
    rec["subcommand"] = cfg.subcommand;
    rec["seed"] = cfg.run.seed;
    rec["config"] = to_json(cfg);
    rec["results"] = results;
    rec["wall_ms"] = wall_ms;
    return rec;
}

void append_record(const std::string& out_dir, const Json& record) {
    std::filesystem::create_directories(out_dir);
    std::ofstream out(std::filesystem::path(out_dir) / "runs.jsonl", std::ios::app);
    if (!out) throw std::runtime_error("cannot open runs.jsonl for append in " + out_dir);
    out << record.dump() << "\n";
}

void write_csv(const std::string& path, const std::string& header, const std::vector<std::string>& rows) {
    std::filesystem::create_directories(std::filesystem::path(path).parent_path().string().empty()
                                            ? "."
                                            : std::filesystem::path(path).parent_path().string());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << header << "\n";
    for (const std::string& r : rows) out << r << "\n";
}

}  // namespace gsc
