#include "rowguard/report.hpp"

#include <chrono>
#include <fstream>
#include <numeric>

#include "rowguard/errors.hpp"

namespace rowguard {

GenContext make_gen_context(const RunConfig& cfg) {
  const TimingParams eff = cfg.effective_timing();
  GenContext ctx{MappingScheme(cfg.mapping, cfg.geometry)};
  ctx.nrh = cfg.nrh;
  ctx.seed = cfg.seed;
  ctx.default_length = eff.tREFW / ns(5.25);  // one request per tFAW-bound ACT slot
  ctx.usable_rows = cfg.geometry.rows_per_bank - 64;
  if (cfg.nrh >= 4) {
    ctx.abacus_entries =
        abacus_configure(cfg.nrh, eff, cfg.geometry, cfg.blast_radius, false,
                         cfg.n_entries_override, cfg.scope)
            .n_entries;
    HydraConfig hc = hydra_configure(cfg.nrh, cfg.geometry, cfg.blast_radius,
                                     cfg.hydra_gct_threshold.value_or(0),
                                     cfg.hydra_tracking_threshold.value_or(0),
                                     cfg.hydra_rcc_entries.value_or(0),
                                     cfg.hydra_group_size.value_or(0));
    ctx.hydra_gct_threshold = hc.gct_threshold;
    ctx.hydra_rcc_entries = hc.rcc_entries;
    ctx.hydra_group_size = hc.group_size;
  }
  return ctx;
}

RunReport run_one(const RunConfig& cfg) {
  RunReport report;
  report.cfg = cfg;
  report.workload = !cfg.trace_path.empty() ? cfg.trace_path : cfg.gen;
  const auto start = std::chrono::steady_clock::now();
  try {
    cfg.validate();
    if (cfg.trace_path.empty() && cfg.gen.empty())
      throw ConfigError("a run needs --trace or --gen");
    std::unique_ptr<TraceSource> source;
    if (!cfg.trace_path.empty()) {
      source = std::make_unique<FileTraceSource>(cfg.trace_path);
    } else {
      source = make_generator(parse_gen_spec(cfg.gen), make_gen_context(cfg));
    }
    Simulator sim(cfg);
    report.result = sim.run(*source);
  } catch (const std::exception& e) {
    report.error = e.what();
    report.result.exit_status = 1;
  }
  if (cfg.include_wall_clock) {
    report.result.stats.wall_clock_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
  }
  return report;
}

Json report_json(const RunReport& r) {
  const SimStats& s = r.result.stats;
  Json j;
  j["workload"] = r.workload;
  j["mitigation"] = r.cfg.mitigation;
  j["nrh"] = r.cfg.nrh;
  j["mapping"] = to_string(r.cfg.mapping);
  j["blast_radius"] = r.cfg.blast_radius;
  j["seed"] = r.cfg.seed;
  j["window_ns"] = to_ns(r.cfg.effective_window());
  if (!r.error.empty()) {
    j["error"] = r.error;
    j["exit_status"] = r.result.exit_status;
    return j;
  }
  j["trace_requests"] = s.trace_requests;
  j["demand_reads"] = s.demand_reads;
  j["demand_writes"] = s.demand_writes;
  j["completed_requests"] = s.completed_requests;
  j["commands"] = Json{{"act", s.commands_by_kind[0]},
                       {"pre", s.commands_by_kind[1]},
                       {"rd", s.commands_by_kind[2]},
                       {"wr", s.commands_by_kind[3]},
                       {"ref", s.commands_by_kind[4]}};
  j["acts_by_cause"] = Json{{"demand", s.acts_by_cause[0]},
                            {"periodic_refresh", s.acts_by_cause[1]},
                            {"preventive_refresh", s.acts_by_cause[2]},
                            {"mitigation_traffic", s.acts_by_cause[3]}};
  j["preventive_refresh_bursts"] = s.preventive_refresh_bursts;
  j["preventive_refresh_acts"] = s.preventive_refresh_acts;
  j["refresh_cycles"] = s.refresh_cycles;
  j["mitigation_traffic_commands"] = s.mitigation_traffic_commands;
  j["rcc_fills"] = s.rcc_fills;
  j["rcc_evictions"] = s.rcc_evictions;
  const LatencySummary lat = s.latency_summary();
  j["demand_latency_ns"] = Json{{"count", lat.count}, {"mean", lat.mean_ns},
                                {"max", lat.max_ns},  {"p50", lat.p50_ns},
                                {"p95", lat.p95_ns},  {"p99", lat.p99_ns}};
  const double busy_total =
      std::accumulate(s.bank_busy_preventive.begin(), s.bank_busy_preventive.end(), 0.0);
  j["bank_busy_preventive_ns_total"] = busy_total / 1e3;
  j["energy_proxy_pj"] = s.energy_pj;
  j["end_time_ns"] = to_ns(s.end_time);
  Json oracle;
  oracle["mode"] = r.cfg.oracle_mode == OracleMode::off
                       ? "off"
                       : (r.cfg.oracle_mode == OracleMode::on ? "on" : "sampled");
  oracle["violations"] = static_cast<long>(r.result.violations.size());
  Json first = Json::array();
  for (std::size_t i = 0; i < r.result.violations.size() && i < 8; ++i) {
    const Violation& v = r.result.violations[i];
    first.push_back(Json{{"time_ns", to_ns(v.time)},
                         {"bank", v.flat_bank},
                         {"aggressor_row", v.aggressor_row},
                         {"victim_row", v.victim_row},
                         {"count", v.count}});
  }
  oracle["first_violations"] = first;
  oracle["invariant_failure"] = r.result.invariant_failure.value_or("");
  oracle["legality_failure"] = r.result.legality_failure.value_or("");
  j["oracle"] = oracle;
  j["exit_status"] = r.result.exit_status;
  if (r.cfg.include_wall_clock) j["wall_clock_ms"] = s.wall_clock_ms;
  return j;
}

Json matrix_json(const std::vector<RunReport>& reports) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  Json runs = Json::array();
  for (const RunReport& r : reports) runs.push_back(report_json(r));
  j["runs"] = runs;
  return j;
}

namespace {
const std::vector<std::string> kCsvColumns = {
    "workload", "mitigation", "nrh", "mapping", "blast_radius", "seed", "window_ns",
    "trace_requests", "demand_reads", "demand_writes", "completed_requests",
    "commands.act", "commands.pre", "commands.rd", "commands.wr", "commands.ref",
    "acts_by_cause.demand", "acts_by_cause.periodic_refresh",
    "acts_by_cause.preventive_refresh", "acts_by_cause.mitigation_traffic",
    "preventive_refresh_bursts", "preventive_refresh_acts", "refresh_cycles",
    "mitigation_traffic_commands", "rcc_fills", "rcc_evictions",
    "demand_latency_ns.count", "demand_latency_ns.mean", "demand_latency_ns.max",
    "demand_latency_ns.p50", "demand_latency_ns.p95", "demand_latency_ns.p99",
    "bank_busy_preventive_ns_total", "energy_proxy_pj", "end_time_ns",
    "oracle.violations", "exit_status"};

Json lookup(const Json& j, const std::string& dotted) {
  const std::size_t dot = dotted.find('.');
  if (dot == std::string::npos) {
    return j.contains(dotted) ? j.at(dotted) : Json();
  }
  const std::string head = dotted.substr(0, dot);
  if (!j.contains(head)) return Json();
  return lookup(j.at(head), dotted.substr(dot + 1));
}
}  // namespace

std::string reports_csv(const std::vector<RunReport>& reports) {
  std::string out = "schema_version," + std::to_string(kReportSchemaVersion) + "\n";
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i)
    out += (i ? "," : "") + kCsvColumns[i];
  out += "\n";
  for (const RunReport& r : reports) {
    const Json j = report_json(r);
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
      if (i) out += ",";
      const Json v = lookup(j, kCsvColumns[i]);
      if (v.is_string()) {
        out += v.get<std::string>();
      } else if (!v.is_null()) {
        out += v.dump();  // identical numeric text as the JSON document
      }
    }
    out += "\n";
  }
  return out;
}

void write_report_file(const std::vector<RunReport>& reports, const std::string& path,
                       const std::string& format) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write report to '" + path + "'");
  if (format == "json") {
    out << matrix_json(reports).dump(2) << "\n";
  } else if (format == "csv") {
    out << reports_csv(reports);
  } else {
    throw ConfigError("unknown report format '" + format + "'");
  }
}

Json sibling_locality_json(const SiblingLocalityReport& r) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["act_events"] = r.act_events;
  j["repeat_events"] = r.repeat_events;
  j["repeat_sibling_mean"] = r.repeat_sibling_mean;
  Json at = Json::array();
  for (const auto& [nrh, d] : r.at_threshold) {
    at.push_back(Json{{"nrh", nrh},
                      {"samples", d.samples},
                      {"mean", d.mean},
                      {"min", d.min},
                      {"max", d.max}});
  }
  j["at_threshold"] = at;
  return j;
}

std::vector<RunReport> run_matrix(const MatrixSpec& spec) {
  std::vector<RunReport> out;
  for (const std::string& workload : spec.workloads) {
    for (const std::string& mit : spec.mitigations) {
      for (long nrh : spec.nrhs) {
        const bool seeded = mit == "para";
        const std::vector<std::uint64_t> seeds =
            seeded ? spec.seeds : std::vector<std::uint64_t>{spec.seeds.front()};
        for (std::uint64_t seed : seeds) {
          RunConfig cfg = spec.base;
          cfg.mitigation = mit;
          cfg.nrh = nrh;
          cfg.seed = seed;
          if (!workload.empty() && workload[0] == '@') {
            cfg.trace_path = workload.substr(1);
            cfg.gen.clear();
          } else {
            cfg.gen = workload;
            cfg.trace_path.clear();
          }
          out.push_back(run_one(cfg));
        }
      }
    }
  }
  return out;
}

int aggregate_exit_status(const std::vector<RunReport>& reports) {
  int status = 0;
  for (const RunReport& r : reports) {
    if (r.result.exit_status == 2) return 2;
    if (r.result.exit_status != 0) status = 1;
  }
  return status;
}

}  // namespace rowguard
