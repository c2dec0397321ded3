#include "rowguard/abacus.hpp"

#include <bit>
#include <cmath>

#include "rowguard/errors.hpp"

namespace rowguard {

double achievable_acts_per_window(const TimingParams& timing) {
  const double refi = static_cast<double>(timing.tREFI);
  return static_cast<double>(timing.tREFW) * (1.0 - static_cast<double>(timing.tRFC) / refi) /
         static_cast<double>(timing.tRC);
}

static int round_up_to_32(long v) { return static_cast<int>((v + 31) / 32 * 32); }

AbacusConfig abacus_configure(long nrh, const TimingParams& timing, const DeviceGeometry& geometry,
                              int blast_radius, bool big_variant, int n_entries_override,
                              CounterScope scope) {
  if (nrh < 4) throw ConfigError("nrh must be >= 4 (prt would fall below 2)");
  if (blast_radius < 1) throw ConfigError("blast radius must be >= 1");
  timing.validate();
  geometry.validate();

  AbacusConfig cfg;
  cfg.nrh = nrh;
  cfg.prt = nrh / 2;
  cfg.rct = cfg.prt - 2;
  cfg.blast_radius = blast_radius;
  cfg.big_variant = big_variant;
  cfg.scope = scope;
  cfg.s_sav =
      scope == CounterScope::channel ? geometry.banks_per_channel() : geometry.banks_per_rank();
  if (cfg.s_sav > 64) throw ConfigError("at most 64 banks may share a counter table");
  cfg.s_rid = std::bit_width(static_cast<unsigned>(geometry.rows_per_bank - 1));
  cfg.s_rac = std::bit_width(static_cast<unsigned long>(cfg.prt - 1)) + 1;

  if (big_variant) {
    cfg.n_entries = geometry.rows_per_bank;
  } else if (n_entries_override > 0) {
    cfg.n_entries = n_entries_override;
  } else {
    const double n_act = achievable_acts_per_window(timing);
    const long needed = static_cast<long>(std::ceil(n_act / (static_cast<double>(nrh) / 2.0)));
    cfg.n_entries = round_up_to_32(std::max<long>(needed, 1));
  }
  return cfg;
}

Abacus::Abacus(const AbacusConfig& cfg, const DeviceGeometry& geometry)
    : cfg_(cfg), geometry_(geometry) {
  banks_per_table_ = cfg.scope == CounterScope::channel ? geometry.banks_per_channel()
                                                        : geometry.banks_per_rank();
  const int tables = geometry.total_banks() / banks_per_table_;
  tables_.resize(tables);
  for (auto& t : tables_) t.entries.resize(cfg_.n_entries);
}

int Abacus::table_of_bank(int flat_bank) const { return flat_bank / banks_per_table_; }
int Abacus::sav_bit_of_bank(int flat_bank) const { return flat_bank % banks_per_table_; }

std::vector<int> Abacus::banks_of_table(int i) const {
  std::vector<int> out(banks_per_table_);
  for (int b = 0; b < banks_per_table_; ++b) out[b] = i * banks_per_table_ + b;
  return out;
}

long Abacus::cumulative_count(int table_idx, int row) const {
  const AbacusTable& t = tables_[table_idx];
  if (cfg_.big_variant) {
    const AbacusEntry& e = t.entries[row];
    return e.row_id == -1 ? -1 : e.cumulative(cfg_.prt);
  }
  auto it = t.row_index.find(row);
  return it == t.row_index.end() ? -1 : t.entries[it->second].cumulative(cfg_.prt);
}

MitigationAction Abacus::refresh_burst(int table_idx, int row) const {
  MitigationAction action;
  const std::vector<int> victims = victim_rows(row, cfg_.blast_radius, geometry_.rows_per_bank);
  action.refreshes.reserve(static_cast<std::size_t>(banks_per_table_) * victims.size());
  for (int b = 0; b < banks_per_table_; ++b) {
    const int flat = table_idx * banks_per_table_ + b;
    for (int v : victims) action.refreshes.push_back({flat, v});
  }
  return action;
}

MitigationAction Abacus::on_activate(int flat_bank, int row, Picos /*now*/, Cause /*cause*/) {
  const int ti = table_of_bank(flat_bank);
  const int bit = sav_bit_of_bank(flat_bank);
  const std::uint64_t mask = std::uint64_t{1} << bit;
  AbacusTable& t = tables_[ti];

  AbacusEntry* entry = nullptr;
  if (cfg_.big_variant) {
    AbacusEntry& e = t.entries[row];
    if (e.row_id == -1) {  // first touch since reset; no spillover exists
      e.row_id = row;
      e.rac = 1;
      e.sav = mask;
      return {};
    }
    entry = &e;
  } else {
    auto it = t.row_index.find(row);
    if (it != t.row_index.end()) {
      entry = &t.entries[it->second];
    } else {
      // Not tracked: replace the lowest-indexed non-overflowed entry whose
      // RAC equals the spillover counter, else bump the spillover counter.
      int found = -1;
      for (int i = 0; i < static_cast<int>(t.entries.size()); ++i) {
        const AbacusEntry& e = t.entries[i];
        if (e.overflow == 0 && e.rac == t.spillover) {
          found = i;
          break;
        }
      }
      if (found >= 0) {
        AbacusEntry& e = t.entries[found];
        if (e.row_id != -1) t.row_index.erase(e.row_id);
        e.row_id = row;
        e.rac = t.spillover + 1;
        e.sav = mask;
        e.overflow = 0;
        t.row_index[row] = found;
        return {};
      }
      t.spillover += 1;
      if (t.spillover == cfg_.rct) {
        MitigationAction action;
        action.refresh_cycle = true;
        return action;
      }
      return {};
    }
  }

  // Tracked row: the sibling activation vector decides whether this sibling
  // activation raises the shared count.
  if ((entry->sav & mask) == 0) {
    entry->sav |= mask;
    return {};
  }
  entry->rac += 1;
  entry->sav = mask;
  if (entry->rac == cfg_.prt) {
    entry->overflow += 1;
    entry->rac = 0;
    return refresh_burst(ti, row);
  }
  return {};
}

void Abacus::reset(Picos now) {
  for (auto& t : tables_) {
    for (auto& e : t.entries) e = AbacusEntry{};
    t.row_index.clear();
    t.spillover = 0;
    t.last_reset_time = now;
  }
}

}  // namespace rowguard
