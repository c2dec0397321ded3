#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "rowguard/address_map.hpp"
#include "rowguard/trace.hpp"

namespace rowguard {

// "name:key=value,key=value" CLI generator spec.
struct GenSpec {
  std::string name;
  std::unordered_map<std::string, std::string> params;

  long get(const std::string& key, long fallback) const;
  std::string get(const std::string& key, const std::string& fallback) const;
};

GenSpec parse_gen_spec(const std::string& spec);

// Everything a generator may need that depends on the run configuration.
struct GenContext {
  MappingScheme mapping;
  long nrh = 1000;
  std::uint64_t seed = 1;
  long default_length = 100000;  // sized by the harness from the window
  int usable_rows = 0;           // rows_per_bank minus the reserved high region
  // adversarial targets
  int abacus_entries = 0;
  long hydra_gct_threshold = 0;
  int hydra_rcc_entries = 4096;
  int hydra_group_size = 128;
};

// Shipped generators: ds, ms, rh-attack, hydra-adv, abacus-adv, gups,
// roundrobin. Deterministic given (spec, context).
std::unique_ptr<TraceSource> make_generator(const GenSpec& spec, const GenContext& ctx);

std::vector<std::string> shipped_generators();

struct DistributionStats {
  long samples = 0;
  double mean = 0;
  long min = 0;
  long max = 0;
};

struct SiblingLocalityReport {
  // mean number of distinct sibling banks that activated a row id between two
  // consecutive activations from the same bank (recorded at each repeat)
  double repeat_sibling_mean = 0;
  long repeat_events = 0;
  long act_events = 0;
  // per nrh: distribution of sibling activation counts at the moment any
  // sibling first reaches nrh
  std::map<long, DistributionStats> at_threshold;
};

SiblingLocalityReport sibling_locality(TraceSource& trace, const MappingScheme& mapping,
                                       const std::vector<long>& nrh_values);

}  // namespace rowguard
