#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "sand/estimator.hpp"
#include "sand/eval.hpp"

namespace sand {

using Json = nlohmann::ordered_json;

// {node, mode, budgets, seed, orbits: [{id, estimate, estimate_clamped,
// variance, source}], covariances: [{i, j, value}]}
Json to_json(const OrbitDegreeReport& report);
// Throws kParse on a document that does not follow the schema.
OrbitDegreeReport report_from_json(const Json& doc);

// One row per orbit: node,mode,seed,id,estimate,estimate_clamped,variance,source
// followed by one row per covariance with kind "cov".
void write_csv(std::ostream& out, const OrbitDegreeReport& report);

Json to_json(const EvalReport& report, bool with_timing = false);
void write_csv(std::ostream& out, const EvalReport& report);

// Shortest text that reads back as the same double.
std::string format_number(double x);

}  // namespace sand
