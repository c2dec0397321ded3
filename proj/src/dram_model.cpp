#include "rowguard/dram_model.hpp"

#include <algorithm>

#include "rowguard/errors.hpp"

namespace rowguard {

std::int64_t max_acts_per_refresh_window(const TimingParams& timing) {
  timing.validate();
  return (timing.tREFW / timing.tFAW) * 4;
}

DramModel::DramModel(const DeviceGeometry& geometry, const TimingParams& timing)
    : geometry_(geometry), timing_(timing) {
  geometry_.validate();
  timing_.validate();
  banks_.resize(geometry_.total_banks());
  ranks_.resize(geometry_.total_ranks());
  next_boundary_ = timing_.tREFI;
}

Picos DramModel::defer_for_refresh(int global_rank, Picos t) const {
  const RankState& r = ranks_[global_rank];
  if (t < r.refresh_cycle_until) t = r.refresh_cycle_until;
  if (timing_.tRFC == 0) return t;
  // Periodic REF windows are schedule-driven: [k*tREFI, k*tREFI + tRFC), k >= 1.
  Picos k = t / timing_.tREFI;
  if (k >= 1 && t < k * timing_.tREFI + timing_.tRFC) t = k * timing_.tREFI + timing_.tRFC;
  return t;
}

Picos DramModel::legality_check(const DramCommand& cmd) const {
  if (cmd.kind == CommandKind::REF) {
    if (cmd.rank < 0 || cmd.rank >= geometry_.total_ranks())
      throw StructuralError("REF rank out of range");
    return cmd.issue_time;
  }
  if (cmd.bank < 0 || cmd.bank >= geometry_.total_banks())
    throw StructuralError("bank out of range");
  if (cmd.kind == CommandKind::ACT && (cmd.row < 0 || cmd.row >= geometry_.rows_per_bank))
    throw StructuralError("ACT row out of range");

  const int grank = rank_of_flat_bank(geometry_, cmd.bank);
  const BankState& b = banks_[cmd.bank];
  const RankState& r = ranks_[grank];
  Picos t = std::max(cmd.issue_time, b.busy_until);

  if (cmd.kind == CommandKind::ACT) {
    if (b.last_act_time >= 0) t = std::max(t, b.last_act_time + timing_.tRC);
    if (r.last_act_time >= 0) t = std::max(t, r.last_act_time + timing_.tRRD);
    if (r.acts_seen >= 4) {
      // fourth-most-recent ACT bounds the sliding tFAW window
      Picos oldest = r.act_window[r.ring_pos];
      t = std::max(t, oldest + timing_.tFAW);
    }
  }
  return defer_for_refresh(grank, t);
}

void DramModel::record_act(int flat_bank, int row, Picos t) {
  BankState& b = banks_[flat_bank];
  RankState& r = ranks_[rank_of_flat_bank(geometry_, flat_bank)];
  b.open_row = row;
  b.last_act_time = t;
  r.last_act_time = t;
  r.act_window[r.ring_pos] = t;
  r.ring_pos = (r.ring_pos + 1) % 4;
  r.acts_seen++;
}

DramCommand DramModel::issue(DramCommand cmd) {
  if (cmd.kind == CommandKind::REF)
    throw StructuralError("REF commands are emitted by the refresh schedule, not issue()");
  Picos t = legality_check(cmd);
  BankState& b = banks_[cmd.bank];
  switch (cmd.kind) {
    case CommandKind::ACT:
      if (b.open_row != -1) throw StructuralError("ACT to a bank with an open row");
      record_act(cmd.bank, cmd.row, t);
      break;
    case CommandKind::PRE:
      if (b.open_row == -1) throw StructuralError("PRE to a precharged bank");
      b.open_row = -1;
      b.last_pre_time = t;
      break;
    case CommandKind::RD:
    case CommandKind::WR:
      if (b.open_row == -1) throw StructuralError("column access to a precharged bank");
      break;
    case CommandKind::REF:
      break;
  }
  cmd.issue_time = t;
  return cmd;
}

std::vector<DramCommand> DramModel::periodic_refresh_tick(Picos now) {
  std::vector<DramCommand> out;
  while (next_boundary_ <= now) {
    for (int gr = 0; gr < geometry_.total_ranks(); ++gr) {
      RankState& r = ranks_[gr];
      if (next_boundary_ < r.refresh_cycle_until) continue;
      DramCommand ref{CommandKind::REF, gr, -1, -1, next_boundary_, Cause::periodic_refresh};
      out.push_back(ref);
      r.ref_count++;
      const int base = gr * geometry_.banks_per_rank();
      for (int i = 0; i < geometry_.banks_per_rank(); ++i) {
        BankState& b = banks_[base + i];
        b.busy_until = std::max(b.busy_until, next_boundary_ + timing_.tRFC);
      }
    }
    next_boundary_ += timing_.tREFI;
  }
  return out;
}

std::vector<DramCommand> DramModel::refresh_cycle(int channel, Picos now) {
  const int n = timing_.refreshes_per_window();
  std::vector<DramCommand> out;
  out.reserve(static_cast<std::size_t>(n) * geometry_.ranks_per_channel);
  const Picos end = now + static_cast<Picos>(n) * std::max<Picos>(timing_.tRFC, 1);
  for (int cr = 0; cr < geometry_.ranks_per_channel; ++cr) {
    const int gr = channel * geometry_.ranks_per_channel + cr;
    RankState& r = ranks_[gr];
    for (int i = 0; i < n; ++i) {
      out.push_back(DramCommand{CommandKind::REF, gr, -1, -1,
                                now + static_cast<Picos>(i) * timing_.tRFC,
                                Cause::preventive_refresh});
    }
    r.ref_count += n;
    r.refresh_cycle_until = end;
    const int base = gr * geometry_.banks_per_rank();
    for (int i = 0; i < geometry_.banks_per_rank(); ++i) {
      BankState& b = banks_[base + i];
      b.busy_until = std::max(b.busy_until, end);
    }
  }
  return out;
}

std::pair<int, int> DramModel::slice_rows(std::int64_t slice_index) const {
  const std::int64_t n = timing_.refreshes_per_window();
  const std::int64_t rows = geometry_.rows_per_bank;
  const std::int64_t s = slice_index % n;
  const int lo = static_cast<int>((s * rows) / n);
  const int hi = static_cast<int>(((s + 1) * rows) / n);
  return {lo, hi};
}

void DramModel::set_bank_busy_until(int flat_bank, Picos t) {
  BankState& b = banks_[flat_bank];
  b.busy_until = std::max(b.busy_until, t);
}

void DramModel::force_precharge(int flat_bank) { banks_[flat_bank].open_row = -1; }

}  // namespace rowguard
