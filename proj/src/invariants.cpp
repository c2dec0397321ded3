#include "rowguard/invariants.hpp"

#include <algorithm>

namespace rowguard {

std::vector<TrackerSnapshot> snapshot_tables(const Abacus& abacus) {
  std::vector<TrackerSnapshot> out;
  const AbacusConfig& cfg = abacus.config();
  for (int ti = 0; ti < abacus.table_count(); ++ti) {
    TrackerSnapshot s;
    s.banks = abacus.banks_of_table(ti);
    s.has_spillover = !cfg.big_variant;
    const AbacusTable& t = abacus.table(ti);
    s.spillover = t.spillover;
    if (cfg.big_variant) {
      for (int r = 0; r < static_cast<int>(t.entries.size()); ++r) {
        const AbacusEntry& e = t.entries[r];
        if (e.row_id != -1) s.tracked[r] = e.cumulative(cfg.prt);
      }
    } else {
      for (const AbacusEntry& e : t.entries)
        if (e.row_id != -1) s.tracked[e.row_id] = e.cumulative(cfg.prt);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<TrackerSnapshot> snapshot_tables(const Graphene& graphene) {
  std::vector<TrackerSnapshot> out;
  const long threshold = graphene.config().threshold;
  for (int b = 0; b < graphene.bank_count(); ++b) {
    TrackerSnapshot s;
    s.banks = {b};
    const Graphene::BankTable& t = graphene.bank_table(b);
    s.spillover = t.spillover;
    for (const Graphene::Entry& e : t.entries)
      if (e.row_id != -1) s.tracked[e.row_id] = e.overflow * threshold + e.count;
    out.push_back(std::move(s));
  }
  return out;
}

std::optional<std::string> check_tracker_invariant(const std::vector<TrackerSnapshot>& tables,
                                                   const OracleLedger& ledger) {
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const TrackerSnapshot& t = tables[i];
    for (const auto& [row, cum] : t.tracked) {
      for (int b : t.banks) {
        const long true_count = ledger.window_count(b, row);
        if (cum < true_count)
          return "table " + std::to_string(i) + ": tracked row " + std::to_string(row) +
                 " cumulative " + std::to_string(cum) + " < true count " +
                 std::to_string(true_count) + " in bank " + std::to_string(b);
      }
    }
    if (!t.has_spillover) continue;
    for (int row : ledger.touched_rows()) {
      if (t.tracked.count(row)) continue;
      for (int b : t.banks) {
        const long true_count = ledger.window_count(b, row);
        if (t.spillover < true_count)
          return "table " + std::to_string(i) + ": untracked row " + std::to_string(row) +
                 " spillover " + std::to_string(t.spillover) + " < true count " +
                 std::to_string(true_count) + " in bank " + std::to_string(b);
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_mg_floor(const Abacus& abacus) {
  for (int ti = 0; ti < abacus.table_count(); ++ti) {
    const AbacusTable& t = abacus.table(ti);
    for (const AbacusEntry& e : t.entries) {
      if (e.overflow == 0 && t.spillover > e.rac)
        return "table " + std::to_string(ti) + ": spillover " + std::to_string(t.spillover) +
               " > rac " + std::to_string(e.rac);
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_mg_floor(const Graphene& graphene) {
  for (int b = 0; b < graphene.bank_count(); ++b) {
    const Graphene::BankTable& t = graphene.bank_table(b);
    for (const Graphene::Entry& e : t.entries) {
      if (e.overflow == 0 && t.spillover > e.count)
        return "bank " + std::to_string(b) + ": spillover " + std::to_string(t.spillover) +
               " > count " + std::to_string(e.count);
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_hydra_estimate(const Hydra& hydra, const OracleLedger& ledger) {
  for (int row : ledger.touched_rows()) {
    for (int b = 0; b < hydra.bank_count(); ++b) {
      const long window = ledger.window_count(b, row);
      if (window == 0) continue;
      // count since the later of the window reset and the victim's refresh
      const long since_protection = std::min<long>(window, ledger.max_pair_count(b, row));
      const long tracked = hydra.effective_count(b, row);
      if (tracked < since_protection)
        return "bank " + std::to_string(b) + " row " + std::to_string(row) + ": tracked " +
               std::to_string(tracked) + " < true count " + std::to_string(since_protection);
    }
  }
  return std::nullopt;
}

}  // namespace rowguard
