#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rowguard/errors.hpp"
#include "rowguard/report.hpp"
#include "rowguard/trace.hpp"
#include "rowguard/workloads.hpp"

namespace {

using namespace rowguard;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct CommonOpts {
  std::string config_file;
  std::string mapping = "mop1";
  std::string oracle = "on";
  std::string scale_window;
  bool full_window = false;
  bool dense_oracle = false;
  bool no_command_log = false;
  bool row_histogram = false;
  bool timings = false;
  std::string scope = "channel";
};

void add_common(CLI::App* app, CommonOpts& o, RunConfig& cfg) {
  app->add_option("--config", o.config_file, "key = value config file");
  app->add_option("--mapping", o.mapping, "mop1|mop2|mop4|mop8|mop64");
  app->add_option("--nrh", cfg.nrh, "RowHammer threshold");
  app->add_option("--blast-radius", cfg.blast_radius, "victim distance");
  app->add_option("--n-entries", cfg.n_entries_override, "counter table size override");
  app->add_option("--seed", cfg.seed, "RNG seed");
  app->add_option("--oracle", o.oracle, "on|off|sampled:N");
  app->add_flag("--full-window", o.full_window, "true 64 ms refresh window");
  app->add_option("--scale-window", o.scale_window, "window length, e.g. 640us");
  app->add_flag("--dense-oracle", o.dense_oracle, "dense oracle arrays (fast for full windows)");
  app->add_flag("--no-command-log", o.no_command_log, "do not retain the command log");
  app->add_flag("--row-histogram", o.row_histogram, "collect per-row-id ACT totals");
  app->add_flag("--timings", o.timings, "include wall clock in reports");
  app->add_option("--scope", o.scope, "counter sharing scope: channel|rank");
}

void finish_common(const CommonOpts& o, RunConfig& cfg) {
  if (!o.config_file.empty()) apply_config_file(cfg, o.config_file);
  cfg.mapping = mapping_from_string(o.mapping);
  cfg.full_window = o.full_window;
  if (!o.scale_window.empty()) cfg.window = parse_time_ns(o.scale_window);
  if (o.oracle == "on") {
    cfg.oracle_mode = OracleMode::on;
  } else if (o.oracle == "off") {
    cfg.oracle_mode = OracleMode::off;
  } else if (o.oracle.rfind("sampled:", 0) == 0) {
    cfg.oracle_mode = OracleMode::sampled;
    cfg.oracle_sample_every = std::stol(o.oracle.substr(8));
  } else {
    throw ConfigError("bad --oracle value '" + o.oracle + "'");
  }
  cfg.dense_oracle = o.dense_oracle;
  cfg.keep_command_log = !o.no_command_log;
  cfg.collect_row_histogram = o.row_histogram;
  cfg.include_wall_clock = o.timings;
  if (o.scope == "channel") cfg.scope = CounterScope::channel;
  else if (o.scope == "rank") cfg.scope = CounterScope::rank;
  else throw ConfigError("bad --scope value '" + o.scope + "'");
}

void print_summary(const RunReport& r) {
  const Json j = report_json(r);
  std::cout << j.dump(2) << "\n";
}

int cmd_run(RunConfig cfg, const std::string& report_path, const std::string& format) {
  RunReport report = run_one(cfg);
  if (!report.error.empty()) {
    std::cerr << "error: " << report.error << "\n";
    return 1;
  }
  if (!report_path.empty()) {
    write_report_file({report}, report_path, format);
  }
  print_summary(report);
  return report.result.exit_status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rowguard-sim: trace-driven DRAM read-disturbance mitigation simulator"};
  app.require_subcommand(1);

  RunConfig cfg;
  CommonOpts common;
  std::string report_path, format = "json";

  // run
  auto* run = app.add_subcommand("run", "simulate one (trace, mitigation) pair");
  std::string trace_path, gen_spec, mitigation = "none";
  run->add_option("--trace", trace_path, "trace file");
  run->add_option("--gen", gen_spec, "generator spec, e.g. ms:rows=8,prefetch=p32");
  run->add_option("--mitigation", mitigation,
                  "none|abacus|abacus-big|graphene|hydra|para|rega");
  run->add_option("--report", report_path, "report file");
  run->add_option("--format", format, "json|csv");
  add_common(run, common, cfg);

  // matrix
  auto* matrix = app.add_subcommand("matrix", "run a (workload x mitigation x nrh) matrix");
  std::string mitigations = "abacus", nrhs = "1000", gens, seeds = "1";
  matrix->add_option("--mitigations", mitigations, "comma list");
  matrix->add_option("--nrhs", nrhs, "comma list");
  matrix->add_option("--gens", gens, "comma list of generator specs (@path for trace files)");
  matrix->add_option("--seeds", seeds, "comma list (seeded mechanisms only)");
  matrix->add_option("--report", report_path, "report file");
  matrix->add_option("--format", format, "json|csv");
  add_common(matrix, common, cfg);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "trace analyses without simulation");
  std::string analysis = "sibling-locality", a_trace, a_gen, a_nrhs = "500,250,125";
  analyze->add_option("--analyze", analysis, "analysis name (sibling-locality)");
  analyze->add_option("--trace", a_trace, "trace file");
  analyze->add_option("--gen", a_gen, "generator spec");
  analyze->add_option("--nrh-values", a_nrhs, "thresholds for the distribution metric");
  analyze->add_option("--report", report_path, "report file");
  add_common(analyze, common, cfg);

  // gen
  auto* gen = app.add_subcommand("gen", "write a synthetic trace to a file");
  std::string g_spec, g_out;
  gen->add_option("--gen", g_spec, "generator spec")->required();
  gen->add_option("--out", g_out, "output trace file")->required();
  add_common(gen, common, cfg);

  CLI11_PARSE(app, argc, argv);

  try {
    finish_common(common, cfg);
    if (run->parsed()) {
      cfg.trace_path = trace_path;
      cfg.gen = gen_spec;
      cfg.mitigation = mitigation;
      cfg.report_format = format;
      return cmd_run(cfg, report_path, format);
    }
    if (matrix->parsed()) {
      MatrixSpec spec;
      spec.base = cfg;
      spec.mitigations = split_list(mitigations);
      for (const std::string& n : split_list(nrhs)) spec.nrhs.push_back(std::stol(n));
      spec.workloads = split_list(gens);
      spec.seeds.clear();
      for (const std::string& s : split_list(seeds)) spec.seeds.push_back(std::stoull(s));
      if (spec.workloads.empty()) throw ConfigError("matrix needs --gens");
      if (spec.seeds.empty()) spec.seeds.push_back(1);
      const std::vector<RunReport> reports = run_matrix(spec);
      if (!report_path.empty()) write_report_file(reports, report_path, format);
      long bad = 0;
      for (const RunReport& r : reports)
        if (r.result.exit_status != 0) bad++;
      std::cout << matrix_json(reports)["runs"].size() << " cells, " << bad << " failed\n";
      return aggregate_exit_status(reports);
    }
    if (analyze->parsed()) {
      if (analysis != "sibling-locality")
        throw ConfigError("unknown analysis '" + analysis + "'");
      std::unique_ptr<TraceSource> source;
      if (!a_trace.empty()) {
        source = std::make_unique<FileTraceSource>(a_trace);
      } else if (!a_gen.empty()) {
        cfg.gen = a_gen;
        source = make_generator(parse_gen_spec(a_gen), make_gen_context(cfg));
      } else {
        throw ConfigError("analyze needs --trace or --gen");
      }
      std::vector<long> nrh_values;
      for (const std::string& n : split_list(a_nrhs)) nrh_values.push_back(std::stol(n));
      const MappingScheme mapping(cfg.mapping, cfg.geometry);
      const SiblingLocalityReport rep = sibling_locality(*source, mapping, nrh_values);
      const Json j = sibling_locality_json(rep);
      if (!report_path.empty()) {
        std::ofstream out(report_path);
        out << j.dump(2) << "\n";
      }
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (gen->parsed()) {
      cfg.gen = g_spec;
      auto source = make_generator(parse_gen_spec(g_spec), make_gen_context(cfg));
      TraceHeader header;
      header.capacity = cfg.geometry.capacity_bytes();
      header.comment = " " + g_spec;
      write_trace(g_out, *source, header);
      std::cout << "wrote " << g_out << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
