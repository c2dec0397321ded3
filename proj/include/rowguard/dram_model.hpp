#pragma once

#include <optional>
#include <vector>

#include "rowguard/command.hpp"
#include "rowguard/geometry.hpp"
#include "rowguard/timing.hpp"

namespace rowguard {

struct BankState {
  int open_row = -1;           // -1: precharged
  Picos last_act_time = -1;    // tRC reference; -1: never activated
  Picos last_pre_time = -1;
  Picos busy_until = 0;        // REF / refresh-cycle / mitigation occupancy
};

// Per-rank ACT history for tRRD and the tFAW sliding window.
struct RankState {
  Picos last_act_time = -1;
  Picos act_window[4] = {-1, -1, -1, -1};  // ring of the last 4 ACT times
  int ring_pos = 0;
  int acts_seen = 0;
  Picos refresh_cycle_until = 0;
  std::int64_t ref_count = 0;  // drives the refresh slice index
};

/// Maximum ACT commands a rank can issue in one refresh window under tFAW:
/// floor(tREFW / tFAW) * 4.
std::int64_t max_acts_per_refresh_window(const TimingParams& timing);

// Bank state, command legality, and periodic refresh for one machine. All
// mutation goes through issue(); legality_check is const and answers the
// earliest time >= cmd.issue_time at which cmd satisfies tRC, tRRD, tFAW and
// REF blocking.
class DramModel {
 public:
  DramModel(const DeviceGeometry& geometry, const TimingParams& timing);

  Picos legality_check(const DramCommand& cmd) const;

  // Moves cmd to its earliest legal time, applies its effects and returns the
  // issued command. REF commands are schedule-driven and are not issued here.
  DramCommand issue(DramCommand cmd);

  // Emits one REF per rank for every tREFI boundary crossed in
  // (last_tick, now]. Boundaries falling inside a rank's refresh-cycle busy
  // window are skipped (those rows were just refreshed).
  std::vector<DramCommand> periodic_refresh_tick(Picos now);

  // Full-rank refresh burst: refreshes_per_window REF commands per rank of
  // the channel, back to back; every bank is busy until the burst ends.
  std::vector<DramCommand> refresh_cycle(int channel, Picos now);

  // Rows covered by the k-th REF of a window: [k*R/N, (k+1)*R/N).
  std::pair<int, int> slice_rows(std::int64_t slice_index) const;

  const BankState& bank(int flat_bank) const { return banks_[flat_bank]; }
  const RankState& rank(int global_rank) const { return ranks_[global_rank]; }
  const DeviceGeometry& geometry() const { return geometry_; }
  const TimingParams& timing() const { return timing_; }
  Picos next_refresh_boundary() const { return next_boundary_; }

  void set_bank_busy_until(int flat_bank, Picos t);
  void force_precharge(int flat_bank);  // refresh-cycle side effect

 private:
  Picos defer_for_refresh(int global_rank, Picos t) const;
  void record_act(int flat_bank, int row, Picos t);

  DeviceGeometry geometry_;
  TimingParams timing_;
  std::vector<BankState> banks_;
  std::vector<RankState> ranks_;
  Picos next_boundary_;
};

}  // namespace rowguard
