#pragma once

#include <optional>
#include <string>

#include "redundalloc/costs.hpp"
#include "redundalloc/model.hpp"

namespace rda {

// A parsed run specification: the system under study plus its economics.
// JSON schema:
//   {"system":   {"source": "table" | "k_out_of_n" | "series_parallel"
//                            | "paths", ...},
//    "copula":   {"family": "independence" | "gumbel" | "clayton",
//                 "alpha": ...},
//    "marginals":[{"family": "exponential" | "weibull" | "pareto_linear",
//                  "params": {...}}, ...],
//    "costs":    {"c": [...], "c_star": [...], "c_fixed": ...,
//                 "M": [...], "tau": ...}}
// Signature table values may be given as "a/b" rational strings. Component
// and type indices in "paths" systems are 1-based, matching the usual
// block-diagram labels.
struct RunSpec {
  SystemModel model;
  CostModel costs;
};

RunSpec parse_spec(const std::string& json_text);
RunSpec parse_spec_file(const std::string& path);

// Execute a CLI-level command against a spec. `options_json` may be empty
// or a JSON object; recognized keys depend on the command (v, tau, t_max,
// points, objective, accounting, N, seed, threads, precision, quantity).
// Returns the rendered CSV or JSON payload.
std::string run_command(const RunSpec& spec, const std::string& command,
                        const std::string& options_json);

// Signature (de)serialization used by the table source and the CLI.
std::string signature_to_json(const SystemStructure& st);
std::string signature_to_csv(const SystemStructure& st);

}  // namespace rda
