#pragma once

#include <unordered_map>
#include <vector>

#include "rowguard/geometry.hpp"
#include "rowguard/mitigation.hpp"
#include "rowguard/timing.hpp"

namespace rowguard {

struct GrapheneConfig {
  long nrh = 1000;
  long threshold = 500;  // aggressor tracking threshold, ceil(nrh/2)
  int n_entries = 2720;  // per bank
  int blast_radius = 1;
};

GrapheneConfig graphene_configure(long nrh, const TimingParams& timing,
                                  const DeviceGeometry& geometry, int blast_radius = 1,
                                  long threshold_override = 0, int n_entries_override = 0);

// Per-bank Misra-Gries aggressor tracking. Same counter discipline as the
// shared-counter table (wrap at the threshold, overflow excluded from
// replacement) but one table per bank and bank-local refreshes.
class Graphene final : public Mitigation {
 public:
  Graphene(const GrapheneConfig& cfg, const DeviceGeometry& geometry);

  std::string_view name() const override { return "graphene"; }
  MitigationAction on_activate(int flat_bank, int row, Picos now, Cause cause) override;
  void reset(Picos now) override;

  const GrapheneConfig& config() const { return cfg_; }
  int bank_count() const { return static_cast<int>(banks_.size()); }
  long count_of(int flat_bank, int row) const;  // cumulative; -1 if untracked
  long spillover(int flat_bank) const { return banks_[flat_bank].spillover; }

  struct Entry {
    int row_id = -1;
    long count = 0;
    long overflow = 0;
  };
  struct BankTable {
    std::vector<Entry> entries;
    std::unordered_map<int, int> row_index;
    long spillover = 0;
  };
  const BankTable& bank_table(int flat_bank) const { return banks_[flat_bank]; }

 private:
  GrapheneConfig cfg_;
  DeviceGeometry geometry_;
  std::vector<BankTable> banks_;
};

}  // namespace rowguard
