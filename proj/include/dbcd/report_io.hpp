// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>

#include "dbcd/solver.hpp"

namespace dbcd {

// CSV schema: k,objective,metric,virtual_time,wall_seconds,bytes
// (17-significant-digit decimals).
void write_report_csv(const RunReport& report, std::ostream& out);

// JSON document with the run configuration, the ESO scalars, the audit
// summary, the record stream, and the final iterate.
void write_report_json(const RunReport& report, const SolverConfig& config,
                       std::ostream& out);

// The deterministic part of the record stream (everything except wall
// time), one line per record. Equal strings mean bitwise-equal metrics.
std::string metric_fingerprint(const RunReport& report);

const char* strategy_name(Strategy strategy);
const char* overlap_name(Overlap overlap);

}  // namespace dbcd
