#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "rowguard/geometry.hpp"
#include "rowguard/mitigation.hpp"
#include "rowguard/timing.hpp"

namespace rowguard {

struct AbacusConfig {
  long nrh = 1000;       // RowHammer threshold
  long prt = 500;        // preventive refresh threshold, floor(nrh/2)
  long rct = 498;        // refresh cycle threshold, prt - 2
  int n_entries = 2720;  // counters per table
  int s_rac = 10;        // RAC bits incl. the overflow bit
  int s_sav = 32;        // one bit per bank sharing the table
  int s_rid = 17;
  int blast_radius = 1;
  bool big_variant = false;
  CounterScope scope = CounterScope::channel;

  // Per-entry storage in bits. The big variant is statically indexed by row
  // id and never replaces, so it stores no row id and no overflow bit.
  long storage_bits_per_entry() const {
    return big_variant ? (s_rac - 1 + s_sav) : (s_rac + s_sav + s_rid);
  }
};

/// Activations one bank can receive in a reset window while not blocked by
/// periodic refresh: tREFW * (1 - tRFC/tREFI) / tRC.
double achievable_acts_per_window(const TimingParams& timing);

/// Derives the table configuration for a RowHammer threshold. n_entries is
/// ceil(N_ACT / (nrh/2)) rounded up to a multiple of 32, which yields
/// 2720/5440/10880/21760 for nrh 1000/500/250/125 at the default timing.
AbacusConfig abacus_configure(long nrh, const TimingParams& timing, const DeviceGeometry& geometry,
                              int blast_radius = 1, bool big_variant = false,
                              int n_entries_override = 0,
                              CounterScope scope = CounterScope::channel);

struct AbacusEntry {
  int row_id = -1;  // -1: unassigned
  long rac = 0;     // wraps to 0 at prt; overflow counts the wraps
  std::uint64_t sav = 0;
  long overflow = 0;

  long cumulative(long prt) const { return overflow * prt + rac; }
};

// One shared-counter table plus its spillover counter, covering the banks of
// one scope unit (channel by default).
struct AbacusTable {
  std::vector<AbacusEntry> entries;
  std::unordered_map<int, int> row_index;  // row id -> entry index
  long spillover = 0;
  Picos last_reset_time = 0;
};

class Abacus final : public Mitigation {
 public:
  Abacus(const AbacusConfig& cfg, const DeviceGeometry& geometry);

  std::string_view name() const override { return cfg_.big_variant ? "abacus-big" : "abacus"; }
  MitigationAction on_activate(int flat_bank, int row, Picos now, Cause cause) override;
  void reset(Picos now) override;

  const AbacusConfig& config() const { return cfg_; }
  int table_count() const { return static_cast<int>(tables_.size()); }
  const AbacusTable& table(int i) const { return tables_[i]; }
  int table_of_bank(int flat_bank) const;
  int sav_bit_of_bank(int flat_bank) const;
  // Banks covered by table `i`, in sav-bit order.
  std::vector<int> banks_of_table(int i) const;

  long cumulative_count(int table_idx, int row) const;  // -1 if untracked

 private:
  MitigationAction refresh_burst(int table_idx, int row) const;

  AbacusConfig cfg_;
  DeviceGeometry geometry_;
  std::vector<AbacusTable> tables_;
  int banks_per_table_;
};

}  // namespace rowguard
