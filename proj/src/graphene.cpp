#include "rowguard/graphene.hpp"

#include <cmath>

#include "rowguard/abacus.hpp"
#include "rowguard/errors.hpp"

namespace rowguard {

GrapheneConfig graphene_configure(long nrh, const TimingParams& timing,
                                  const DeviceGeometry& geometry, int blast_radius,
                                  long threshold_override, int n_entries_override) {
  if (nrh < 4) throw ConfigError("nrh must be >= 4");
  timing.validate();
  geometry.validate();
  GrapheneConfig cfg;
  cfg.nrh = nrh;
  cfg.threshold = threshold_override > 0
                      ? threshold_override
                      : static_cast<long>(std::ceil(static_cast<double>(nrh) / 2.0));
  cfg.blast_radius = blast_radius;
  if (n_entries_override > 0) {
    cfg.n_entries = n_entries_override;
  } else {
    const double n_act = achievable_acts_per_window(timing);
    const long needed = static_cast<long>(std::ceil(n_act / (static_cast<double>(nrh) / 2.0)));
    cfg.n_entries = static_cast<int>((std::max<long>(needed, 1) + 31) / 32 * 32);
  }
  return cfg;
}

Graphene::Graphene(const GrapheneConfig& cfg, const DeviceGeometry& geometry)
    : cfg_(cfg), geometry_(geometry) {
  banks_.resize(geometry.total_banks());
  for (auto& b : banks_) b.entries.resize(cfg_.n_entries);
}

long Graphene::count_of(int flat_bank, int row) const {
  const BankTable& t = banks_[flat_bank];
  auto it = t.row_index.find(row);
  if (it == t.row_index.end()) return -1;
  const Entry& e = t.entries[it->second];
  return e.overflow * cfg_.threshold + e.count;
}

MitigationAction Graphene::on_activate(int flat_bank, int row, Picos /*now*/, Cause /*cause*/) {
  BankTable& t = banks_[flat_bank];
  auto it = t.row_index.find(row);
  if (it != t.row_index.end()) {
    Entry& e = t.entries[it->second];
    e.count += 1;
    if (e.count == cfg_.threshold) {
      e.overflow += 1;
      e.count = 0;
      MitigationAction action;
      for (int v : victim_rows(row, cfg_.blast_radius, geometry_.rows_per_bank))
        action.refreshes.push_back({flat_bank, v});
      return action;
    }
    return {};
  }
  for (int i = 0; i < static_cast<int>(t.entries.size()); ++i) {
    Entry& e = t.entries[i];
    if (e.overflow == 0 && e.count == t.spillover) {
      if (e.row_id != -1) t.row_index.erase(e.row_id);
      e.row_id = row;
      e.count = t.spillover + 1;
      e.overflow = 0;
      t.row_index[row] = i;
      if (e.count == cfg_.threshold) {  // reachable only if spillover outgrew the table sizing
        e.overflow += 1;
        e.count = 0;
        MitigationAction action;
        for (int v : victim_rows(row, cfg_.blast_radius, geometry_.rows_per_bank))
          action.refreshes.push_back({flat_bank, v});
        return action;
      }
      return {};
    }
  }
  t.spillover += 1;  // no refresh-cycle mechanism; the table is sized so this stays low
  return {};
}

void Graphene::reset(Picos /*now*/) {
  for (auto& t : banks_) {
    for (auto& e : t.entries) e = Entry{};
    t.row_index.clear();
    t.spillover = 0;
  }
}

}  // namespace rowguard
