#pragma once

#include "rowguard/errors.hpp"
#include "rowguard/timing.hpp"

namespace rowguard {

// In-DRAM refresh concurrent with activation: protection is bought purely by
// lengthening tRC, so there is no tracking state and no command-stream
// footprint. Tuned values exist only for the four design-point thresholds.
inline Picos rega_effective_trc(long nrh) {
  switch (nrh) {
    case 1000: return ns(45.0);
    case 500: return ns(62.5);
    case 250: return ns(97.5);
    case 125: return ns(167.5);
    default:
      throw ConfigError("rega has no tuned tRC for nrh=" + std::to_string(nrh) +
                        " (supported: 1000, 500, 250, 125)");
  }
}

inline TimingParams rega_apply(const TimingParams& timing, long nrh) {
  TimingParams adjusted = timing;
  adjusted.tRC = rega_effective_trc(nrh);
  adjusted.validate();
  return adjusted;
}

}  // namespace rowguard
