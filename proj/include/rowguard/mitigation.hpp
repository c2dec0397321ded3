#pragma once

#include <string_view>
#include <vector>

#include "rowguard/command.hpp"
#include "rowguard/geometry.hpp"

namespace rowguard {

struct VictimRef {
  int flat_bank = 0;
  int row = 0;
};

struct CounterAccess {
  int flat_bank = 0;
  int row = 0;
  bool is_write = false;
};

// What a mitigation wants done in response to one command event.
struct MitigationAction {
  std::vector<VictimRef> refreshes;     // preventive ACT+PRE per target
  std::vector<CounterAccess> traffic;   // counter fills/evictions (Hydra)
  bool refresh_cycle = false;           // refresh the whole rank set, reset state

  bool empty() const { return refreshes.empty() && traffic.empty() && !refresh_cycle; }
};

// Victim rows of `row` within the blast radius, clipped to [0, rows_per_bank).
std::vector<int> victim_rows(int row, int blast_radius, int rows_per_bank);

// One tracking mechanism instance. The simulator routes every ACT through
// on_activate (demand, preventive refresh, and counter traffic alike) and
// every demand PRE through on_precharge; a mechanism's own refresh closures
// are not fed back into on_precharge.
class Mitigation {
 public:
  virtual ~Mitigation() = default;
  virtual std::string_view name() const = 0;

  // Counter traffic that must complete before this ACT can be served.
  virtual MitigationAction pre_activate(int /*flat_bank*/, int /*row*/, Picos /*now*/) {
    return {};
  }
  virtual MitigationAction on_activate(int flat_bank, int row, Picos now, Cause cause) = 0;
  virtual MitigationAction on_precharge(int /*flat_bank*/, int /*closed_row*/, Picos /*now*/) {
    return {};
  }
  // Periodic tREFW reset; also invoked right after a refresh cycle.
  virtual void reset(Picos /*now*/) {}
};

class NullMitigation final : public Mitigation {
 public:
  std::string_view name() const override { return "none"; }
  MitigationAction on_activate(int, int, Picos, Cause) override { return {}; }
};

// Which banks share one counter table.
enum class CounterScope { channel, rank };

}  // namespace rowguard
