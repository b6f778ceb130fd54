// JSON-lines run records: one object per run with a full config echo and
// deterministic result payloads (timestamp and wall time excluded from the
// determinism contract).

#ifndef GSC_RECORDS_HPP
#define GSC_RECORDS_HPP

#include <json.hpp>
#include <string>
#include <vector>

#include "gsc/bound.hpp"
#include "gsc/checks.hpp"
#include "gsc/config.hpp"
#include "gsc/ensemble.hpp"

namespace gsc {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "gsc 0.1.0";

Json to_json(const CheckReport& r);
Json to_json(const MCEstimate& e);
Json to_json(const BoundReport& r);
Json to_json(const ExactResult& r);
Json to_json(const RunConfig& c);

// {"timestamp":..., "tool_version":..., "subcommand":..., "seed":...,
//  "config": {...}, "results": [...], "wall_ms": ...}
Json make_run_record(const RunConfig& cfg, const Json& results, double wall_ms);

// Append one record per line to <dir>/runs.jsonl.
void append_record(const std::string& out_dir, const Json& record);

// scan.csv writer; header first, then one row per entry.
void write_csv(const std::string& path, const std::string& header, const std::vector<std::string>& rows);

}  // namespace gsc

#endif
