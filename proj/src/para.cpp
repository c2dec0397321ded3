#include "rowguard/para.hpp"

#include <cmath>

#include "rowguard/errors.hpp"

namespace rowguard {

double para_probability(long nrh) {
  if (nrh < 4) throw ConfigError("nrh must be >= 4");
  const double p = 1.0 - std::pow(10.0, -15.0 / static_cast<double>(nrh));
  return std::round(p * 1000.0) / 1000.0;
}

Para::Para(const ParaConfig& cfg, const DeviceGeometry& geometry)
    : cfg_(cfg), geometry_(geometry), rng_(cfg.seed) {
  if (cfg_.p <= 0.0 || cfg_.p >= 1.0) throw ConfigError("PARA probability must be in (0,1)");
}

MitigationAction Para::on_precharge(int flat_bank, int closed_row, Picos /*now*/) {
  if (dist_(rng_) >= cfg_.p) return {};
  MitigationAction action;
  for (int v : victim_rows(closed_row, cfg_.blast_radius, geometry_.rows_per_bank))
    action.refreshes.push_back({flat_bank, v});
  return action;
}

}  // namespace rowguard
