#pragma once

#include <cstdint>

#include "rowguard/time.hpp"

namespace rowguard {

/// DDR4-style timing constants governing command legality. Exact CAS timings
/// (tCL, tRCD, tRP) are collapsed into tRC; only ACT/PRE/REF timing affects
/// disturbance accounting.
struct TimingParams {
  Picos tRC = ns(45.0);        ///< ACT-to-ACT, same bank
  Picos tRRD = ns(2.5);        ///< ACT-to-ACT, same rank
  Picos tFAW = ns(21.0);       ///< at most 4 ACTs per rank per tFAW window
  Picos tREFI = us(7.9);       ///< periodic refresh command interval
  Picos tREFW = ms(64.0);      ///< refresh window (every row refreshed once)
  Picos tRFC = ns(350.0);      ///< rank busy time per REF
  Picos clock_period = ps(625);  ///< memory-controller clock (1.6 GHz)

  int refreshes_per_window() const { return static_cast<int>(tREFW / tREFI); }

  /// Data transfer interval for one RD/WR burst (4 controller clocks).
  Picos burst_time() const { return 4 * clock_period; }

  void validate() const;

  /// Shrinks the refresh window to `target_trefw`, scaling tREFI and tRFC by
  /// the same factor so tRFC/tREFI and refreshes_per_window stay fixed.
  /// Per-command timings (tRC, tRRD, tFAW, clock) are untouched.
  TimingParams scaled_window(Picos target_trefw) const;
};

}  // namespace rowguard
