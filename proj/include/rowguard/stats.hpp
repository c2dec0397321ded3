#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rowguard/command.hpp"

namespace rowguard {

// pJ per command; a labeled proxy (weighted command counts), not a
// DRAMPower-equivalent model.
struct EnergyWeights {
  double act_pj = 250.0;
  double pre_pj = 150.0;
  double rd_pj = 150.0;
  double wr_pj = 150.0;
  double ref_pj = 2500.0;

  double of(CommandKind k) const {
    switch (k) {
      case CommandKind::ACT: return act_pj;
      case CommandKind::PRE: return pre_pj;
      case CommandKind::RD: return rd_pj;
      case CommandKind::WR: return wr_pj;
      case CommandKind::REF: return ref_pj;
    }
    return 0.0;
  }
};

struct LatencySummary {
  long count = 0;
  double mean_ns = 0, max_ns = 0, p50_ns = 0, p95_ns = 0, p99_ns = 0;
};

struct SimStats {
  long trace_requests = 0;
  long demand_reads = 0;
  long demand_writes = 0;
  long completed_requests = 0;

  std::array<long, 5> commands_by_kind{};  // indexed by CommandKind
  std::array<long, 4> acts_by_cause{};     // indexed by Cause

  long preventive_refresh_bursts = 0;
  long preventive_refresh_acts = 0;
  long refresh_cycles = 0;
  long mitigation_traffic_commands = 0;  // ACT+RD / ACT+WR counter ops
  long rcc_fills = 0;
  long rcc_evictions = 0;

  std::vector<Picos> bank_busy_preventive;  // per flat bank
  std::vector<Picos> latencies;             // demand latencies, raw
  std::vector<std::uint32_t> row_act_histogram;  // per row id, optional

  double energy_pj = 0;
  Picos end_time = 0;
  double wall_clock_ms = 0;

  long total_acts() const { return commands_by_kind[static_cast<int>(CommandKind::ACT)]; }
  LatencySummary latency_summary() const;
};

}  // namespace rowguard
