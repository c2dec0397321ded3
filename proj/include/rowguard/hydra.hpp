#pragma once

#include <cstdint>
#include <list>
#include <unordered_map>
#include <vector>

#include "rowguard/geometry.hpp"
#include "rowguard/mitigation.hpp"

namespace rowguard {

struct HydraConfig {
  long nrh = 1000;
  long gct_threshold = 400;       // group count threshold
  long tracking_threshold = 500;  // per-row threshold
  int group_size = 128;           // rows per group
  int rcc_entries = 4096;         // row count cache entries per rank
  int counter_bytes = 2;          // row count table entry size
  int reserved_rows_per_bank = 64;  // high region holding the row count table
  int blast_radius = 1;
};

HydraConfig hydra_configure(long nrh, const DeviceGeometry& geometry, int blast_radius = 1,
                            long gct_override = 0, long tracking_override = 0,
                            int rcc_entries_override = 0, int group_size_override = 0);

// Group counters filter per-row tracking; per-row counters live in a reserved
// high region of DRAM and are cached in a per-rank fully-associative LRU row
// count cache. Cache fills and evictions surface as real ACT+RD / ACT+WR
// traffic via pre_activate. Rows of the reserved region itself are tracked in
// a dedicated on-chip table so counter traffic cannot recurse.
class Hydra final : public Mitigation {
 public:
  Hydra(const HydraConfig& cfg, const DeviceGeometry& geometry);

  std::string_view name() const override { return "hydra"; }
  MitigationAction pre_activate(int flat_bank, int row, Picos now) override;
  MitigationAction on_activate(int flat_bank, int row, Picos now, Cause cause) override;
  void reset(Picos now) override;

  const HydraConfig& config() const { return cfg_; }
  int bank_count() const { return static_cast<int>(gct_.size()); }
  bool is_reserved_row(int row) const { return row >= reserved_base_; }
  int counter_row(int row) const;  // reserved row holding `row`'s counter
  // Current tracked value for (bank, row): group count before
  // initialization, the per-row counter after. Never underestimates the true
  // activation count since the row's victims were last refreshed.
  long effective_count(int flat_bank, int row) const;

  long rcc_evictions() const { return evictions_; }
  long rcc_fills() const { return fills_; }
  bool rcc_cached(int flat_bank, int row) const;

 private:
  struct GctEntry {
    long count = 0;
    bool initialized = false;
  };

  std::uint64_t rcc_key(int flat_bank, int row) const {
    return (static_cast<std::uint64_t>(flat_bank) << 32) | static_cast<std::uint32_t>(row);
  }

  HydraConfig cfg_;
  DeviceGeometry geometry_;
  int reserved_base_;
  int counters_per_row_;
  std::vector<std::vector<GctEntry>> gct_;            // [flat bank][group]
  std::vector<std::vector<std::int32_t>> row_count_;  // [flat bank][row], backing store value
  // per-rank LRU: front = most recent
  std::vector<std::list<std::uint64_t>> rcc_lru_;
  std::vector<std::unordered_map<std::uint64_t, std::list<std::uint64_t>::iterator>> rcc_pos_;
  std::vector<std::unordered_map<int, long>> reserved_counts_;  // [flat bank][row]
  long evictions_ = 0;
  long fills_ = 0;
};

}  // namespace rowguard
