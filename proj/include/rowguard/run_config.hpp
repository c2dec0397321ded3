#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rowguard/address_map.hpp"
#include "rowguard/geometry.hpp"
#include "rowguard/mitigation.hpp"
#include "rowguard/oracle.hpp"
#include "rowguard/stats.hpp"
#include "rowguard/timing.hpp"

namespace rowguard {

struct RunConfig {
  DeviceGeometry geometry;
  TimingParams timing;     // full-window values; see effective_timing()
  Picos window = us(640);  // desk-scale default; --full-window restores 64 ms
  bool full_window = false;
  MappingKind mapping = MappingKind::MOP_1CL;
  std::string mitigation = "none";  // none|abacus|abacus-big|graphene|hydra|para|rega
  long nrh = 1000;
  int blast_radius = 1;
  int n_entries_override = 0;
  CounterScope scope = CounterScope::channel;
  std::uint64_t seed = 1;

  OracleMode oracle_mode = OracleMode::on;
  long oracle_sample_every = 4096;  // full invariant scan cadence, in ACTs
  bool dense_oracle = false;
  bool keep_command_log = true;
  bool collect_row_histogram = false;
  bool include_wall_clock = false;  // wall clock breaks byte-identical reruns

  EnergyWeights energy;

  std::string trace_path;  // exactly one of trace_path / gen for a run
  std::string gen;
  std::string report_path;
  std::string report_format = "json";  // json|csv

  // Table-3 value overrides
  std::optional<long> graphene_threshold;
  std::optional<long> hydra_gct_threshold;
  std::optional<long> hydra_tracking_threshold;
  std::optional<int> hydra_rcc_entries;
  std::optional<int> hydra_group_size;
  std::optional<double> para_p;
  std::optional<Picos> rega_trc;

  // Window scaling plus REGA's tRC substitution. All threshold-derived
  // quantities downstream (n_entries, rct) are computed from this.
  TimingParams effective_timing() const;
  Picos effective_window() const { return full_window ? timing.tREFW : window; }
  void validate() const;
};

// key = value lines; '#' comments. Times in ns (suffixes ns/us/ms accepted).
void apply_config_file(RunConfig& cfg, const std::string& path);
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

}  // namespace rowguard
