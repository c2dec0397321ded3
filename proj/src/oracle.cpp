#include "rowguard/oracle.hpp"

#include <algorithm>

#include "rowguard/errors.hpp"

namespace rowguard {

namespace {
constexpr int kMaxRadius = 8;

// slot encodes (distance, direction): victim = aggressor - d at slot 2(d-1),
// victim = aggressor + d at slot 2(d-1)+1
inline int victim_of_slot(int aggressor, int slot) {
  const int d = slot / 2 + 1;
  return (slot % 2 == 0) ? aggressor - d : aggressor + d;
}
inline std::uint64_t pack3(int bank, int row, int slot) {
  return (static_cast<std::uint64_t>(bank) << 40) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(row)) << 8) |
         static_cast<std::uint64_t>(slot);
}
inline std::uint64_t pack2(int bank, int row) {
  return (static_cast<std::uint64_t>(bank) << 32) | static_cast<std::uint32_t>(row);
}
}  // namespace

OracleLedger::OracleLedger(const DeviceGeometry& geometry, const TimingParams& timing, long nrh,
                           int blast_radius, bool dense)
    : geometry_(geometry), nrh_(nrh), radius_(blast_radius), dense_(dense) {
  if (blast_radius < 1 || blast_radius > kMaxRadius)
    throw ConfigError("blast radius must be in [1, 8]");
  rows_ = geometry.rows_per_bank;
  slice_count_ = timing.refreshes_per_window();
  if (dense_) {
    dense_pairs_.assign(static_cast<std::size_t>(geometry.total_banks()) * rows_ * 2 * radius_, 0);
    dense_win_.assign(static_cast<std::size_t>(geometry.total_banks()) * rows_, 0);
  }
  ref_seen_.assign(geometry.total_ranks(), 0);
  touched_flag_.assign(rows_, false);
}

std::int32_t& OracleLedger::pair_slot(int bank, int row, int slot) {
  if (dense_) {
    return dense_pairs_[(static_cast<std::size_t>(bank) * rows_ + row) * (2 * radius_) + slot];
  }
  return sparse_pairs_[pack3(bank, row, slot)];
}

std::int32_t* OracleLedger::find_pair_slot(int bank, int row, int slot) {
  if (dense_) return &pair_slot(bank, row, slot);
  auto it = sparse_pairs_.find(pack3(bank, row, slot));
  return it == sparse_pairs_.end() ? nullptr : &it->second;
}

std::int32_t& OracleLedger::win_ref(int bank, int row) {
  if (dense_) return dense_win_[static_cast<std::size_t>(bank) * rows_ + row];
  return sparse_win_[pack2(bank, row)];
}

long OracleLedger::window_count(int bank, int row) const {
  if (dense_) return dense_win_[static_cast<std::size_t>(bank) * rows_ + row];
  auto it = sparse_win_.find(pack2(bank, row));
  return it == sparse_win_.end() ? 0 : it->second;
}

long OracleLedger::pair_count(int bank, int aggressor, int victim) const {
  const int d = victim > aggressor ? victim - aggressor : aggressor - victim;
  if (d < 1 || d > radius_) return 0;
  const int slot = 2 * (d - 1) + (victim > aggressor ? 1 : 0);
  auto* self = const_cast<OracleLedger*>(this);
  std::int32_t* p = self->find_pair_slot(bank, aggressor, slot);
  return p ? *p : 0;
}

long OracleLedger::max_pair_count(int bank, int aggressor) const {
  long best = 0;
  for (int slot = 0; slot < 2 * radius_; ++slot) {
    const int v = victim_of_slot(aggressor, slot);
    if (v < 0 || v >= rows_) continue;
    auto* self = const_cast<OracleLedger*>(this);
    std::int32_t* p = self->find_pair_slot(bank, aggressor, slot);
    if (p && *p > best) best = *p;
  }
  return best;
}

void OracleLedger::count_activation(int bank, int row, Picos t) {
  total_acts_++;
  win_ref(bank, row) += 1;
  if (!touched_flag_[row]) {
    touched_flag_[row] = true;
    touched_list_.push_back(row);
  }
  for (int slot = 0; slot < 2 * radius_; ++slot) {
    const int v = victim_of_slot(row, slot);
    if (v < 0 || v >= rows_) continue;
    std::int32_t& c = pair_slot(bank, row, slot);
    c += 1;
    if (nrh_ > 0 && c == nrh_) violations_.push_back({t, bank, row, v, c});
  }
}

void OracleLedger::refresh_victim(int bank, int victim) {
  // reset every aggressor's count toward this victim
  for (int d = 1; d <= radius_; ++d) {
    const int above = victim + d;  // its victim at -d is `victim`
    if (above < rows_) {
      if (std::int32_t* p = find_pair_slot(bank, above, 2 * (d - 1))) *p = 0;
    }
    const int below = victim - d;
    if (below >= 0) {
      if (std::int32_t* p = find_pair_slot(bank, below, 2 * (d - 1) + 1)) *p = 0;
    }
  }
}

void OracleLedger::observe(const DramCommand& cmd) {
  if (cmd.issue_time < last_time_)
    throw StructuralError("oracle saw commands out of time order");
  last_time_ = cmd.issue_time;

  switch (cmd.kind) {
    case CommandKind::ACT: {
      if (cmd.row < 0 || cmd.row >= rows_) throw StructuralError("oracle: ACT row out of range");
      if (cmd.cause == Cause::preventive_refresh) {
        // the access restores the row first, then disturbs its neighbors
        refresh_victim(cmd.bank, cmd.row);
      }
      count_activation(cmd.bank, cmd.row, cmd.issue_time);
      break;
    }
    case CommandKind::REF: {
      const std::int64_t slice = ref_seen_[cmd.rank]++ % slice_count_;
      const std::int64_t lo = slice * rows_ / slice_count_;
      const std::int64_t hi = (slice + 1) * rows_ / slice_count_;
      const int base = cmd.rank * geometry_.banks_per_rank();
      for (int b = 0; b < geometry_.banks_per_rank(); ++b)
        for (std::int64_t v = lo; v < hi; ++v)
          refresh_victim(base + b, static_cast<int>(v));
      break;
    }
    default:
      break;  // PRE/RD/WR carry no disturbance information
  }
}

void OracleLedger::note_tracker_reset() {
  if (dense_) {
    for (int row : touched_list_)
      for (int b = 0; b < geometry_.total_banks(); ++b)
        dense_win_[static_cast<std::size_t>(b) * rows_ + row] = 0;
  } else {
    sparse_win_.clear();
  }
  for (int row : touched_list_) touched_flag_[row] = false;
  touched_list_.clear();
}

std::optional<std::string> recheck_command_log(const std::vector<DramCommand>& log,
                                               const DeviceGeometry& geometry,
                                               const TimingParams& timing) {
  struct Bank {
    Picos last_act = -1;
    bool open = false;
  };
  struct Rank {
    Picos last_act = -1;
    Picos window[4] = {-1, -1, -1, -1};
    int pos = 0;
    int seen = 0;
    Picos ref_busy_until = -1;
  };
  std::vector<Bank> banks(geometry.total_banks());
  std::vector<Rank> ranks(geometry.total_ranks());
  Picos prev = 0;
  auto fail = [](std::size_t i, const std::string& what) {
    return "command " + std::to_string(i) + ": " + what;
  };

  for (std::size_t i = 0; i < log.size(); ++i) {
    const DramCommand& c = log[i];
    if (c.issue_time < prev) return fail(i, "out of time order");
    prev = c.issue_time;

    if (c.kind == CommandKind::REF) {
      if (c.rank < 0 || c.rank >= geometry.total_ranks()) return fail(i, "REF rank out of range");
      ranks[c.rank].ref_busy_until =
          std::max(ranks[c.rank].ref_busy_until, c.issue_time + timing.tRFC);
      continue;
    }
    if (c.bank < 0 || c.bank >= geometry.total_banks()) return fail(i, "bank out of range");
    const int gr = rank_of_flat_bank(geometry, c.bank);
    Bank& b = banks[c.bank];
    Rank& r = ranks[gr];
    if (c.issue_time < r.ref_busy_until) return fail(i, "command during REF busy window");

    switch (c.kind) {
      case CommandKind::ACT: {
        if (c.row < 0 || c.row >= geometry.rows_per_bank) return fail(i, "ACT row out of range");
        if (b.open) return fail(i, "ACT with row already open");
        if (b.last_act >= 0 && c.issue_time < b.last_act + timing.tRC)
          return fail(i, "tRC violation");
        if (r.last_act >= 0 && c.issue_time < r.last_act + timing.tRRD)
          return fail(i, "tRRD violation");
        if (r.seen >= 4 && c.issue_time < r.window[r.pos] + timing.tFAW)
          return fail(i, "tFAW violation");
        b.open = true;
        b.last_act = c.issue_time;
        r.last_act = c.issue_time;
        r.window[r.pos] = c.issue_time;
        r.pos = (r.pos + 1) % 4;
        r.seen++;
        break;
      }
      case CommandKind::PRE:
        if (!b.open) return fail(i, "PRE with no open row");
        b.open = false;
        break;
      case CommandKind::RD:
      case CommandKind::WR:
        if (!b.open) return fail(i, "column access with no open row");
        break;
      default:
        break;
    }
  }
  return std::nullopt;
}

}  // namespace rowguard
