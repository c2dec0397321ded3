#pragma once

#include <cstdint>
#include <string_view>

#include "rowguard/time.hpp"

namespace rowguard {

enum class CommandKind : std::uint8_t { ACT, PRE, RD, WR, REF };

// Why a command was issued. Immutable after creation; statistics and the
// oracle key off this tag.
enum class Cause : std::uint8_t {
  demand,
  periodic_refresh,
  preventive_refresh,
  mitigation_traffic,
};

struct DramCommand {
  CommandKind kind = CommandKind::ACT;
  int rank = 0;        // global rank index
  int bank = -1;       // flat bank index; -1 for rank-scope commands (REF)
  int row = -1;        // ACT only
  Picos issue_time = 0;
  Cause cause = Cause::demand;
};

constexpr std::string_view to_string(CommandKind k) {
  switch (k) {
    case CommandKind::ACT: return "ACT";
    case CommandKind::PRE: return "PRE";
    case CommandKind::RD: return "RD";
    case CommandKind::WR: return "WR";
    case CommandKind::REF: return "REF";
  }
  return "?";
}

constexpr std::string_view to_string(Cause c) {
  switch (c) {
    case Cause::demand: return "demand";
    case Cause::periodic_refresh: return "periodic_refresh";
    case Cause::preventive_refresh: return "preventive_refresh";
    case Cause::mitigation_traffic: return "mitigation_traffic";
  }
  return "?";
}

}  // namespace rowguard
