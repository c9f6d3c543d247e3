// SPDX-License-Identifier: Apache-2.0

#include "dbcd/report_io.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace dbcd {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const char* strategy_name(Strategy strategy) {
  switch (strategy) {
    case Strategy::ra:
      return "ra";
    case Strategy::asl:
      return "asl";
    case Strategy::ast:
      return "ast";
  }
  return "unknown";
}

const char* overlap_name(Overlap overlap) {
  return overlap == Overlap::ps ? "ps" : "fp";
}

void write_report_csv(const RunReport& report, std::ostream& out) {
  out << "k,objective,metric,virtual_time,wall_seconds,bytes\n";
  for (const auto& r : report.records)
    out << r.k << ',' << g17(r.objective) << ',' << g17(r.metric) << ','
        << g17(r.virtual_time) << ',' << g17(r.wall_seconds) << ',' << r.bytes
        << '\n';
}

void write_report_json(const RunReport& report, const SolverConfig& config,
                       std::ostream& out) {
  nlohmann::json doc;
  doc["problem"] = report.kind == ProblemKind::lasso ? "lasso" : "svm";
  doc["config"] = {
      {"C", config.nodes},
      {"tau", config.tau},
      {"strategy", strategy_name(config.strategy)},
      {"torus_width", config.torus_width},
      {"overlap", overlap_name(config.overlap)},
      {"beta", report.beta},
      {"max_iterations", config.max_iterations},
      {"epsilon", config.epsilon},
      {"seed", config.seed},
      {"audit_period", config.audit_period},
      {"workers", config.workers},
      {"cost", {{"t1", config.cost.t1}, {"t2", config.cost.t2}, {"tp2p", config.cost.tp2p}}},
  };
  doc["eso"] = {{"beta", report.beta}, {"xi", report.xi}, {"omega", report.omega}};
  doc["regime"] = report.regime;
  doc["stop"] = report.stop_detail;
  doc["iterations"] = report.iterations;
  doc["final_objective"] = report.final_objective;
  doc["final_metric"] = report.final_metric;
  doc["audits"] = {{"count", report.audits},
                   {"repairs", report.audit_repairs},
                   {"max_drift", report.max_drift}};
  auto& records = doc["records"] = nlohmann::json::array();
  for (const auto& r : report.records)
    records.push_back({{"k", r.k},
                       {"objective", r.objective},
                       {"metric", r.metric},
                       {"virtual_time", r.virtual_time},
                       {"wall_seconds", r.wall_seconds},
                       {"bytes", r.bytes}});
  doc["x"] = report.x;
  out << doc.dump(2) << '\n';
}

std::string metric_fingerprint(const RunReport& report) {
  std::ostringstream out;
  for (const auto& r : report.records)
    out << r.k << ',' << g17(r.objective) << ',' << g17(r.metric) << ','
        << g17(r.virtual_time) << ',' << r.bytes << '\n';
  return out.str();
}

}  // namespace dbcd
