#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rowguard/run_config.hpp"
#include "rowguard/simulator.hpp"
#include "rowguard/workloads.hpp"

namespace rowguard {

using Json = nlohmann::ordered_json;

struct RunReport {
  RunConfig cfg;
  RunResult result;
  std::string workload;  // generator spec or trace path
  std::string error;     // non-empty: the run failed before/while simulating
};

inline constexpr int kReportSchemaVersion = 1;

Json report_json(const RunReport& report);
Json matrix_json(const std::vector<RunReport>& reports);

// CSV carries the same numeric values as the JSON (cells are serialized from
// the same document). One row per run.
std::string reports_csv(const std::vector<RunReport>& reports);

void write_report_file(const std::vector<RunReport>& reports, const std::string& path,
                       const std::string& format);

Json sibling_locality_json(const SiblingLocalityReport& report);

// Experiment driver: builds the trace source (file or generator) and runs
// one fully-configured simulation.
RunReport run_one(const RunConfig& cfg);
GenContext make_gen_context(const RunConfig& cfg);

struct MatrixSpec {
  RunConfig base;
  std::vector<std::string> mitigations;
  std::vector<long> nrhs;
  std::vector<std::string> workloads;  // --gen specs or @path for trace files
  std::vector<std::uint64_t> seeds{1};
};

// Runs every (workload, mitigation, nrh[, seed]) cell; failures are recorded
// per cell and do not stop the matrix. Seeds multiply only seeded mechanisms.
std::vector<RunReport> run_matrix(const MatrixSpec& spec);

int aggregate_exit_status(const std::vector<RunReport>& reports);

}  // namespace rowguard
