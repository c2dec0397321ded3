#include "rowguard/timing.hpp"

#include "rowguard/errors.hpp"

namespace rowguard {

void TimingParams::validate() const {
  if (tRC <= 0 || tRRD <= 0 || tFAW <= 0 || tREFI <= 0 || tREFW <= 0 || clock_period <= 0)
    throw ConfigError("timing parameters must be positive");
  if (tRFC < 0) throw ConfigError("tRFC must be non-negative");
  if (tFAW < tRRD) throw ConfigError("tFAW must be >= tRRD");
  if (tRC <= tRRD) throw ConfigError("tRC must be > tRRD");
  if (tRFC >= tREFI) throw ConfigError("tRFC must be < tREFI");
  if (tREFW < tREFI) throw ConfigError("tREFW must be >= tREFI");
}

TimingParams TimingParams::scaled_window(Picos target_trefw) const {
  if (target_trefw <= 0 || target_trefw > tREFW)
    throw ConfigError("scaled window must be in (0, tREFW]");
  const double factor = static_cast<double>(target_trefw) / static_cast<double>(tREFW);
  TimingParams scaled = *this;
  scaled.tREFW = target_trefw;
  scaled.tREFI = static_cast<Picos>(static_cast<double>(tREFI) * factor + 0.5);
  scaled.tRFC = static_cast<Picos>(static_cast<double>(tRFC) * factor + 0.5);
  scaled.validate();
  return scaled;
}

}  // namespace rowguard
