#include "rowguard/workloads.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "rowguard/errors.hpp"

namespace rowguard {

long GenSpec::get(const std::string& key, long fallback) const {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  return std::stol(it->second);
}

std::string GenSpec::get(const std::string& key, const std::string& fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

GenSpec parse_gen_spec(const std::string& spec) {
  GenSpec out;
  const std::size_t colon = spec.find(':');
  out.name = spec.substr(0, colon);
  if (colon == std::string::npos) return out;
  std::string rest = spec.substr(colon + 1);
  std::size_t pos = 0;
  while (pos < rest.size()) {
    std::size_t comma = rest.find(',', pos);
    if (comma == std::string::npos) comma = rest.size();
    const std::string kv = rest.substr(pos, comma - pos);
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("bad generator parameter '" + kv + "' in '" + spec + "'");
    out.params[kv.substr(0, eq)] = kv.substr(eq + 1);
    pos = comma + 1;
  }
  return out;
}

std::vector<std::string> shipped_generators() {
  return {"ds", "ms", "rh-attack", "hydra-adv", "abacus-adv", "gups", "roundrobin"};
}

namespace {

std::uint64_t addr_of(const MappingScheme& m, int flat_bank, int row, int column) {
  const DeviceGeometry& g = m.geometry();
  const BankId id = unflatten_bank(g, flat_bank);
  return m.encode({id.channel, id.rank, id.bankgroup, id.bank, row, column});
}

int prefetch_degree(const std::string& p) {
  if (p == "none") return 0;
  if (p == "p1") return 1;
  if (p == "p8") return 8;
  if (p == "p32") return 32;
  throw ConfigError("unknown prefetch variant '" + p + "' (none|p1|p8|p32)");
}

// Many-sided hammering: `length` base reads alternating over the aggressor
// rows, each followed by `degree` consecutive-cacheline prefetch reads.
std::vector<MemRequest> gen_manysided(const GenSpec& spec, const GenContext& ctx, int rows) {
  rows = static_cast<int>(spec.get("rows", rows));
  const int degree = prefetch_degree(spec.get("prefetch", "none"));
  const long length = spec.get("length", std::min<long>(ctx.default_length / (degree + 1), 50000));
  const int base_row = static_cast<int>(spec.get("row", 100));
  if (rows < 1 || length < 1) throw ConfigError("generator parameters must be positive");
  if (base_row + 2 * rows >= ctx.usable_rows) throw ConfigError("aggressor rows out of range");

  // per-group gap: one tRC per same-bank reactivation, or the per-rank ACT
  // budget of the prefetch fan-out, whichever binds
  const long per_rank_acts = std::min(degree + 1, 17);
  const long gap_ticks = std::max<long>(72, (per_rank_acts * 84 + 9) / 10);  // 5.25ns/ACT, 0.625ns ticks

  std::vector<MemRequest> out;
  out.reserve(static_cast<std::size_t>(length) * (degree + 1));
  for (long i = 0; i < length; ++i) {
    const int row = base_row + 2 * static_cast<int>(i % rows);
    const std::uint64_t base = addr_of(ctx.mapping, 0, row, 0);
    out.push_back({i == 0 ? 0 : gap_ticks, false, base});
    for (int j = 1; j <= degree; ++j) out.push_back({1, false, base + 64ull * j});
  }
  return out;
}

// Classic multi-bank hammering: 32 rows activated in every bank,
// bank-interleaved, paced at one request per 20 ns.
std::vector<MemRequest> gen_rowhammer_attack(const GenSpec& spec, const GenContext& ctx) {
  const long length = spec.get("length", ctx.default_length / 32);
  const int n_rows = static_cast<int>(spec.get("rows", 32));
  const int base_row = static_cast<int>(spec.get("row", 100));
  const int banks = ctx.mapping.geometry().total_banks();
  if (length < 1 || n_rows < 1) throw ConfigError("generator parameters must be positive");
  std::vector<MemRequest> out;
  out.reserve(length);
  for (long n = 0; n < length; ++n) {
    const long idx = n % (static_cast<long>(n_rows) * banks);
    const int bank = static_cast<int>(idx % banks);
    const int row = base_row + 2 * static_cast<int>(idx / banks);
    out.push_back({n == 0 ? 0 : 32, false, addr_of(ctx.mapping, bank, row, 0)});
  }
  return out;
}

// Thrashes the row count cache: push enough groups past the group-count
// threshold to materialize more per-row counters than the cache holds, then
// touch them round-robin so nearly every access misses.
std::vector<MemRequest> gen_hydra_adversarial(const GenSpec& spec, const GenContext& ctx) {
  const int banks = ctx.mapping.geometry().total_banks();
  const int group_size = ctx.hydra_group_size;
  const long groups_needed = (2L * ctx.hydra_rcc_entries) / group_size + banks;
  const int n_groups = static_cast<int>(spec.get("groups", groups_needed));
  const long length = spec.get("length", ctx.default_length / 2);
  const long gct = ctx.hydra_gct_threshold > 0 ? ctx.hydra_gct_threshold : 400;

  auto group_home = [&](int i) {  // (bank, first row) of the i-th target group
    const int bank = i % banks;
    const int group = i / banks;
    return std::pair<int, int>{bank, group * group_size};
  };

  std::vector<MemRequest> out;
  // phase 1: drive each group's counter to the threshold (two alternating
  // rows per group so every access is a row conflict)
  for (long v = 0; v < gct; ++v) {
    for (int i = 0; i < n_groups; ++i) {
      auto [bank, lo] = group_home(i);
      out.push_back({out.empty() ? 0 : 8, false,
                     addr_of(ctx.mapping, bank, lo + static_cast<int>(v % 2), 0)});
    }
  }
  // phase 2: round-robin over every materialized counter
  for (long n = 0; n < length; ++n) {
    const int r = static_cast<int>((n / n_groups) % group_size);
    auto [bank, lo] = group_home(static_cast<int>(n % n_groups));
    out.push_back({8, false, addr_of(ctx.mapping, bank, lo + r, 0)});
  }
  return out;
}

// Sweeps more distinct row ids than the counter table has entries so most
// activations either replace an entry or raise the spillover counter.
std::vector<MemRequest> gen_abacus_adversarial(const GenSpec& spec, const GenContext& ctx) {
  const int banks = ctx.mapping.geometry().total_banks();
  const int entries = ctx.abacus_entries > 0 ? ctx.abacus_entries : 2720;
  long sweep = spec.get("sweep", 4L * entries);
  sweep = std::min<long>(std::max(sweep, 2L * banks), ctx.usable_rows);
  sweep = (sweep / banks) * banks;  // keep bank/row cycles aligned
  const long length = spec.get("length", ctx.default_length / 2);
  std::vector<MemRequest> out;
  out.reserve(length);
  for (long n = 0; n < length; ++n) {
    const int bank = static_cast<int>(n % banks);
    const int row = static_cast<int>(n % sweep);  // sweep is a multiple of banks
    out.push_back({n == 0 ? 0 : 8, false, addr_of(ctx.mapping, bank, row, 0)});
  }
  return out;
}

// Round-robin sibling stream: each round activates `row` once in every bank,
// with a fresh filler row per round forcing the conflicts.
std::vector<MemRequest> gen_roundrobin(const GenSpec& spec, const GenContext& ctx) {
  const int banks_all = ctx.mapping.geometry().total_banks();
  const int banks = static_cast<int>(spec.get("banks", banks_all));
  const long k = spec.get("k", std::max<long>(ctx.nrh / 2, 1));
  const int row = static_cast<int>(spec.get("row", 9));
  const int filler_base = static_cast<int>(spec.get("filler", row + 1000));
  if (banks < 1 || banks > banks_all || k < 1) throw ConfigError("bad roundrobin parameters");
  if (filler_base + k >= ctx.usable_rows) throw ConfigError("filler rows out of range");
  std::vector<MemRequest> out;
  out.reserve(2 * k * banks);
  for (long j = 0; j < k; ++j) {
    for (int b = 0; b < banks; ++b) {
      out.push_back({out.empty() ? 0 : 5, false, addr_of(ctx.mapping, b, row, 0)});
      out.push_back({5, false, addr_of(ctx.mapping, b, filler_base + static_cast<int>(j), 0)});
    }
  }
  return out;
}

// Uniform random access evenly distributed over all rows: permutation sweeps
// of the row-id space with a random bank per visit, paced at one request per
// 5.25 ns (the tFAW-bound activation rate).
class GupsSource final : public TraceSource {
 public:
  GupsSource(const GenContext& ctx, long length)
      : mapping_(ctx.mapping),
        banks_(ctx.mapping.geometry().total_banks()),
        rows_(ctx.usable_rows),
        seed_(ctx.seed),
        length_(length) {
    rewind();
  }

  bool next(MemRequest& out) override {
    if (emitted_ >= length_) return false;
    if (pos_ >= static_cast<long>(perm_.size())) reshuffle();
    const int row = perm_[pos_++];
    const int bank = static_cast<int>(rng_() % static_cast<std::uint64_t>(banks_));
    static constexpr int kPattern[5] = {8, 8, 9, 8, 9};  // mean 8.4 ticks = 5.25 ns
    out.tick_delta = emitted_ == 0 ? 0 : kPattern[emitted_ % 5];
    out.is_write = false;
    out.addr = addr_of(mapping_, bank, row, 0);
    emitted_++;
    return true;
  }

  void rewind() override {
    rng_.seed(seed_);
    emitted_ = 0;
    perm_.resize(rows_);
    std::iota(perm_.begin(), perm_.end(), 0);
    pos_ = perm_.size();  // forces a shuffle on first use
  }

 private:
  void reshuffle() {
    std::shuffle(perm_.begin(), perm_.end(), rng_);
    pos_ = 0;
  }

  MappingScheme mapping_;
  int banks_;
  int rows_;
  std::uint64_t seed_;
  long length_;
  std::mt19937_64 rng_;
  std::vector<int> perm_;
  long pos_ = 0;
  long emitted_ = 0;
};

}  // namespace

std::unique_ptr<TraceSource> make_generator(const GenSpec& spec, const GenContext& ctx) {
  if (ctx.usable_rows < 2048) throw ConfigError("generator row space too small");
  if (spec.name == "ds") {
    return std::make_unique<VectorTraceSource>(gen_manysided(spec, ctx, 2));
  } else if (spec.name == "ms") {
    return std::make_unique<VectorTraceSource>(gen_manysided(spec, ctx, 8));
  } else if (spec.name == "rh-attack") {
    return std::make_unique<VectorTraceSource>(gen_rowhammer_attack(spec, ctx));
  } else if (spec.name == "hydra-adv") {
    return std::make_unique<VectorTraceSource>(gen_hydra_adversarial(spec, ctx));
  } else if (spec.name == "abacus-adv") {
    return std::make_unique<VectorTraceSource>(gen_abacus_adversarial(spec, ctx));
  } else if (spec.name == "gups") {
    return std::make_unique<GupsSource>(ctx, spec.get("length", ctx.default_length));
  } else if (spec.name == "roundrobin") {
    return std::make_unique<VectorTraceSource>(gen_roundrobin(spec, ctx));
  }
  throw ConfigError("unknown generator '" + spec.name + "'");
}

SiblingLocalityReport sibling_locality(TraceSource& trace, const MappingScheme& mapping,
                                       const std::vector<long>& nrh_values) {
  const DeviceGeometry& g = mapping.geometry();
  const int banks = g.total_banks();
  if (banks > 64) throw ConfigError("sibling locality analysis supports up to 64 banks");

  SiblingLocalityReport report;
  std::vector<int> open_row(banks, -1);
  std::unordered_map<int, std::uint64_t> sav;           // row id -> banks seen since repeat
  std::unordered_map<int, std::vector<long>> counts;    // row id -> per-bank counts
  struct Acc {
    long samples = 0;
    double sum = 0;
    long min = 0, max = 0;
  };
  std::map<long, Acc> acc;
  std::map<long, std::unordered_map<int, bool>> fired;  // nrh -> row -> recorded
  double repeat_sum = 0;

  MemRequest req;
  while (trace.next(req)) {
    const Coordinates c = mapping.decode(req.addr);
    const int fb = mapping.flat_bank(c);
    if (open_row[fb] == c.row) continue;  // row hit: no activation
    open_row[fb] = c.row;
    report.act_events++;

    std::uint64_t& bits = sav[c.row];
    const std::uint64_t mask = std::uint64_t{1} << fb;
    if (bits & mask) {
      report.repeat_events++;
      repeat_sum += static_cast<double>(std::popcount(bits) - 1);
      bits = mask;
    } else {
      bits |= mask;
    }

    auto& per_bank = counts[c.row];
    if (per_bank.empty()) per_bank.assign(banks, 0);
    per_bank[fb] += 1;
    for (long nrh : nrh_values) {
      if (per_bank[fb] != nrh) continue;
      auto& seen = fired[nrh];
      if (seen[c.row]) continue;
      seen[c.row] = true;
      Acc& a = acc[nrh];
      for (int b = 0; b < banks; ++b) {
        if (b == fb) continue;  // the sibling that reached nrh is the reference
        const long v = per_bank[b];
        if (a.samples == 0) {
          a.min = a.max = v;
        } else {
          a.min = std::min(a.min, v);
          a.max = std::max(a.max, v);
        }
        a.samples++;
        a.sum += static_cast<double>(v);
      }
    }
  }

  report.repeat_sibling_mean =
      report.repeat_events ? repeat_sum / static_cast<double>(report.repeat_events) : 0.0;
  for (const auto& [nrh, a] : acc) {
    DistributionStats d;
    d.samples = a.samples;
    d.mean = a.samples ? a.sum / static_cast<double>(a.samples) : 0.0;
    d.min = a.min;
    d.max = a.max;
    report.at_threshold[nrh] = d;
  }
  return report;
}

}  // namespace rowguard
