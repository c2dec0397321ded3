#pragma once

#include <random>
#include <vector>

#include "rowguard/report.hpp"
#include "rowguard/run_config.hpp"
#include "rowguard/simulator.hpp"
#include "rowguard/trace.hpp"

namespace rowguard::testsupport {

inline DeviceGeometry default_geometry() { return DeviceGeometry{}; }

inline TimingParams default_timing() { return TimingParams{}; }

// Small geometry for exhaustive checks: 2 ranks x 16 banks, 1024 rows.
inline DeviceGeometry small_geometry() {
  DeviceGeometry g;
  g.rows_per_bank = 1024;
  g.columns_per_row = 16;
  return g;
}

inline RunConfig desk_config(const std::string& mitigation, long nrh,
                             const std::string& gen_spec) {
  RunConfig cfg;
  cfg.mitigation = mitigation;
  cfg.nrh = nrh;
  cfg.gen = gen_spec;
  cfg.window = us(640);
  return cfg;
}

// Closed-form count of the tFAW/tRRD-greedy ACT schedule in [0, window):
// bursts of 4 ACTs spaced tRRD, one burst per tFAW window.
inline std::int64_t greedy_act_bound(const TimingParams& t, Picos window) {
  const std::int64_t full = window / t.tFAW;
  const Picos rem = window - full * t.tFAW;
  std::int64_t extra = 0;
  if (rem > 0) extra = std::min<std::int64_t>(4, (rem + t.tRRD - 1) / t.tRRD);
  return 4 * full + extra;
}

}  // namespace rowguard::testsupport
