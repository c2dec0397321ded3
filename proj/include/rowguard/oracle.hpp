#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rowguard/command.hpp"
#include "rowguard/geometry.hpp"
#include "rowguard/timing.hpp"

namespace rowguard {

struct Violation {
  Picos time = 0;
  int flat_bank = 0;
  int aggressor_row = 0;
  int victim_row = 0;
  long count = 0;
};

enum class OracleMode { off, on, sampled };

// Brute-force ground truth. Counts every activation twice over:
//  - per (bank, aggressor, victim) pair, reset when the victim is refreshed
//    (periodic slice, preventive refresh, or refresh cycle) — this drives the
//    security check;
//  - per (bank, row) since the last tracker reset — this is the reference
//    for the shared-counter invariant.
// A security violation is any pair whose count reaches nrh.
class OracleLedger {
 public:
  OracleLedger(const DeviceGeometry& geometry, const TimingParams& timing, long nrh,
               int blast_radius, bool dense = false);

  // Commands must arrive in nondecreasing time order.
  void observe(const DramCommand& cmd);

  // Counter tables were cleared (periodic tREFW reset or refresh cycle);
  // window counts restart. Pair counts are untouched: a counter reset
  // refreshes no rows.
  void note_tracker_reset();

  long window_count(int flat_bank, int row) const;
  long pair_count(int flat_bank, int aggressor_row, int victim_row) const;
  long max_pair_count(int flat_bank, int aggressor_row) const;
  const std::vector<int>& touched_rows() const { return touched_list_; }
  const std::vector<Violation>& violations() const { return violations_; }
  long total_acts() const { return total_acts_; }
  Picos last_time() const { return last_time_; }
  long nrh() const { return nrh_; }

 private:
  void count_activation(int flat_bank, int row, Picos t);
  void refresh_victim(int flat_bank, int victim_row);
  std::int32_t& pair_slot(int flat_bank, int aggressor_row, int slot);
  std::int32_t* find_pair_slot(int flat_bank, int aggressor_row, int slot);
  std::int32_t& win_ref(int flat_bank, int row);

  DeviceGeometry geometry_;
  long nrh_;  // 0: record nothing (unbounded threshold)
  int radius_;
  bool dense_;
  std::int64_t slice_count_;
  int rows_;

  // dense storage
  std::vector<std::int32_t> dense_pairs_;  // [bank][row][slot]
  std::vector<std::int32_t> dense_win_;    // [bank][row]
  // sparse storage
  std::unordered_map<std::uint64_t, std::int32_t> sparse_pairs_;
  std::unordered_map<std::uint64_t, std::int32_t> sparse_win_;

  std::vector<std::int64_t> ref_seen_;  // per rank, drives the slice index
  std::vector<bool> touched_flag_;      // per row id, any bank
  std::vector<int> touched_list_;
  std::vector<Violation> violations_;
  long total_acts_ = 0;
  Picos last_time_ = 0;
};

// Replays a command log against the raw timing rules (tRC, tRRD, tFAW,
// REF blocking, ACT/PRE alternation, ordering); independent of DramModel.
// Returns a description of the first violation, or nullopt.
std::optional<std::string> recheck_command_log(const std::vector<DramCommand>& log,
                                               const DeviceGeometry& geometry,
                                               const TimingParams& timing);

}  // namespace rowguard
