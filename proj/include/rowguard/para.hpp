#pragma once

#include <cstdint>
#include <random>

#include "rowguard/geometry.hpp"
#include "rowguard/mitigation.hpp"

namespace rowguard {

/// Probability that a row close triggers a neighbor refresh, tuned for a
/// 1e-15 failure target per refresh window: 1 - 10^(-15/nrh), rounded to
/// three decimals (0.034 / 0.067 / 0.129 / 0.241 for nrh 1000/500/250/125).
double para_probability(long nrh);

struct ParaConfig {
  long nrh = 1000;
  double p = 0.034;
  std::uint64_t seed = 1;
  int blast_radius = 1;
};

class Para final : public Mitigation {
 public:
  Para(const ParaConfig& cfg, const DeviceGeometry& geometry);

  std::string_view name() const override { return "para"; }
  MitigationAction on_activate(int, int, Picos, Cause) override { return {}; }
  MitigationAction on_precharge(int flat_bank, int closed_row, Picos now) override;
  void reset(Picos) override {}  // stateless; the RNG stream is the state

  const ParaConfig& config() const { return cfg_; }

 private:
  ParaConfig cfg_;
  DeviceGeometry geometry_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> dist_{0.0, 1.0};
};

}  // namespace rowguard
