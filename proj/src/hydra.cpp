#include "rowguard/hydra.hpp"

#include <cmath>

#include "rowguard/errors.hpp"

namespace rowguard {

HydraConfig hydra_configure(long nrh, const DeviceGeometry& geometry, int blast_radius,
                            long gct_override, long tracking_override, int rcc_entries_override,
                            int group_size_override) {
  if (nrh < 4) throw ConfigError("nrh must be >= 4");
  geometry.validate();
  HydraConfig cfg;
  cfg.nrh = nrh;
  cfg.tracking_threshold = tracking_override > 0
                               ? tracking_override
                               : static_cast<long>(std::ceil(static_cast<double>(nrh) / 2.0));
  cfg.gct_threshold = gct_override > 0
                          ? gct_override
                          : static_cast<long>(0.8 * static_cast<double>(cfg.tracking_threshold));
  cfg.counter_bytes = cfg.tracking_threshold > 255 ? 2 : 1;
  if (rcc_entries_override > 0) cfg.rcc_entries = rcc_entries_override;
  if (group_size_override > 0) cfg.group_size = group_size_override;
  cfg.blast_radius = blast_radius;

  // One counter per row, stored in the top rows of the same bank; 64 rows is
  // enough for 2-byte counters at the default geometry and is also what the
  // shipped trace generators keep clear.
  const int row_bytes = geometry.columns_per_row * 64;
  const int needed =
      (geometry.rows_per_bank * cfg.counter_bytes + row_bytes - 1) / row_bytes;
  if (needed > cfg.reserved_rows_per_bank)
    throw ConfigError("row count table does not fit the reserved region");
  return cfg;
}

Hydra::Hydra(const HydraConfig& cfg, const DeviceGeometry& geometry)
    : cfg_(cfg), geometry_(geometry) {
  reserved_base_ = geometry.rows_per_bank - cfg.reserved_rows_per_bank;
  counters_per_row_ = geometry.columns_per_row * 64 / cfg.counter_bytes;
  const int banks = geometry.total_banks();
  const int groups = (geometry.rows_per_bank + cfg.group_size - 1) / cfg.group_size;
  gct_.assign(banks, std::vector<GctEntry>(groups));
  row_count_.assign(banks, std::vector<std::int32_t>(geometry.rows_per_bank, 0));
  rcc_lru_.resize(geometry.total_ranks());
  rcc_pos_.resize(geometry.total_ranks());
  reserved_counts_.resize(banks);
}

int Hydra::counter_row(int row) const { return reserved_base_ + row / counters_per_row_; }

bool Hydra::rcc_cached(int flat_bank, int row) const {
  const int rank = rank_of_flat_bank(geometry_, flat_bank);
  return rcc_pos_[rank].count(rcc_key(flat_bank, row)) > 0;
}

long Hydra::effective_count(int flat_bank, int row) const {
  if (is_reserved_row(row)) {
    auto it = reserved_counts_[flat_bank].find(row);
    return it == reserved_counts_[flat_bank].end() ? 0 : it->second;
  }
  const GctEntry& g = gct_[flat_bank][row / cfg_.group_size];
  return g.initialized ? row_count_[flat_bank][row] : g.count;
}

MitigationAction Hydra::pre_activate(int flat_bank, int row, Picos /*now*/) {
  if (is_reserved_row(row)) return {};
  if (!gct_[flat_bank][row / cfg_.group_size].initialized) return {};

  const int rank = rank_of_flat_bank(geometry_, flat_bank);
  auto& lru = rcc_lru_[rank];
  auto& pos = rcc_pos_[rank];
  const std::uint64_t key = rcc_key(flat_bank, row);
  auto it = pos.find(key);
  if (it != pos.end()) {
    lru.splice(lru.begin(), lru, it->second);
    return {};
  }

  MitigationAction action;
  if (static_cast<int>(lru.size()) == cfg_.rcc_entries) {
    const std::uint64_t victim_key = lru.back();
    const int vbank = static_cast<int>(victim_key >> 32);
    const int vrow = static_cast<int>(victim_key & 0xffffffffu);
    action.traffic.push_back({vbank, counter_row(vrow), true});  // write back
    pos.erase(victim_key);
    lru.pop_back();
    evictions_++;
  }
  action.traffic.push_back({flat_bank, counter_row(row), false});  // fill
  lru.push_front(key);
  pos[key] = lru.begin();
  fills_++;
  return action;
}

MitigationAction Hydra::on_activate(int flat_bank, int row, Picos /*now*/, Cause /*cause*/) {
  if (is_reserved_row(row)) {
    long& c = reserved_counts_[flat_bank][row];
    c += 1;
    if (c >= cfg_.tracking_threshold) {
      c = 0;
      MitigationAction action;
      for (int v : victim_rows(row, cfg_.blast_radius, geometry_.rows_per_bank))
        action.refreshes.push_back({flat_bank, v});
      return action;
    }
    return {};
  }

  GctEntry& g = gct_[flat_bank][row / cfg_.group_size];
  if (!g.initialized) {
    g.count += 1;
    if (g.count >= cfg_.gct_threshold) {
      // Every row in the group inherits the group value; counters become
      // individually tracked (and fetched through the cache) from here on.
      g.initialized = true;
      const int lo = (row / cfg_.group_size) * cfg_.group_size;
      const int hi = std::min(lo + cfg_.group_size, reserved_base_);
      for (int r = lo; r < hi; ++r)
        row_count_[flat_bank][r] = static_cast<std::int32_t>(g.count);
    }
    return {};
  }

  std::int32_t& c = row_count_[flat_bank][row];
  c += 1;
  if (c >= cfg_.tracking_threshold) {
    c = 0;
    MitigationAction action;
    for (int v : victim_rows(row, cfg_.blast_radius, geometry_.rows_per_bank))
      action.refreshes.push_back({flat_bank, v});
    return action;
  }
  return {};
}

void Hydra::reset(Picos /*now*/) {
  for (auto& bank : gct_)
    for (auto& g : bank) g = GctEntry{};
  for (auto& bank : row_count_) std::fill(bank.begin(), bank.end(), 0);
  for (auto& lru : rcc_lru_) lru.clear();
  for (auto& pos : rcc_pos_) pos.clear();
  for (auto& m : reserved_counts_) m.clear();
}

}  // namespace rowguard
