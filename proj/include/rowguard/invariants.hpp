#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rowguard/abacus.hpp"
#include "rowguard/graphene.hpp"
#include "rowguard/hydra.hpp"
#include "rowguard/oracle.hpp"

namespace rowguard {

// Read-only view of one counter table for checking against the oracle.
struct TrackerSnapshot {
  std::vector<int> banks;                  // flat banks sharing this table
  std::unordered_map<int, long> tracked;   // row id -> cumulative count
  long spillover = 0;
  bool has_spillover = true;
};

std::vector<TrackerSnapshot> snapshot_tables(const Abacus& abacus);
std::vector<TrackerSnapshot> snapshot_tables(const Graphene& graphene);

// Tracked rows: cumulative count >= the true count of every sibling since the
// last tracker reset. Untracked rows: spillover >= their true count.
std::optional<std::string> check_tracker_invariant(const std::vector<TrackerSnapshot>& tables,
                                                   const OracleLedger& ledger);

// Misra-Gries floor: spillover never exceeds any non-overflowed counter.
std::optional<std::string> check_mg_floor(const Abacus& abacus);
std::optional<std::string> check_mg_floor(const Graphene& graphene);

// Hydra never underestimates: its tracked value for (bank, row) is at least
// the oracle count since the later of the last window reset and the last
// refresh of the corresponding victim.
std::optional<std::string> check_hydra_estimate(const Hydra& hydra, const OracleLedger& ledger);

}  // namespace rowguard
