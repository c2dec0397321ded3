#include "rowguard/simulator.hpp"

#include <algorithm>

#include "rowguard/errors.hpp"
#include "rowguard/invariants.hpp"

namespace rowguard {

std::unique_ptr<Mitigation> make_mitigation(const RunConfig& cfg, const TimingParams& effective) {
  const DeviceGeometry& g = cfg.geometry;
  if (cfg.mitigation == "none" || cfg.mitigation == "rega") {
    return std::make_unique<NullMitigation>();
  }
  if (cfg.mitigation == "abacus" || cfg.mitigation == "abacus-big") {
    AbacusConfig ac =
        abacus_configure(cfg.nrh, effective, g, cfg.blast_radius,
                         cfg.mitigation == "abacus-big", cfg.n_entries_override, cfg.scope);
    return std::make_unique<Abacus>(ac, g);
  }
  if (cfg.mitigation == "graphene") {
    GrapheneConfig gc =
        graphene_configure(cfg.nrh, effective, g, cfg.blast_radius,
                           cfg.graphene_threshold.value_or(0), cfg.n_entries_override);
    return std::make_unique<Graphene>(gc, g);
  }
  if (cfg.mitigation == "hydra") {
    HydraConfig hc = hydra_configure(cfg.nrh, g, cfg.blast_radius,
                                     cfg.hydra_gct_threshold.value_or(0),
                                     cfg.hydra_tracking_threshold.value_or(0),
                                     cfg.hydra_rcc_entries.value_or(0),
                                     cfg.hydra_group_size.value_or(0));
    return std::make_unique<Hydra>(hc, g);
  }
  if (cfg.mitigation == "para") {
    ParaConfig pc;
    pc.nrh = cfg.nrh;
    pc.p = cfg.para_p.value_or(para_probability(cfg.nrh));
    pc.seed = cfg.seed;
    pc.blast_radius = cfg.blast_radius;
    return std::make_unique<Para>(pc, g);
  }
  throw ConfigError("unknown mitigation '" + cfg.mitigation + "'");
}

Simulator::Simulator(const RunConfig& cfg)
    : cfg_(cfg),
      timing_(cfg.effective_timing()),
      mapping_(cfg.mapping, cfg.geometry),
      model_(cfg.geometry, timing_) {
  cfg_.validate();
  mit_ = make_mitigation(cfg_, timing_);
  abacus_ = dynamic_cast<Abacus*>(mit_.get());
  graphene_ = dynamic_cast<Graphene*>(mit_.get());
  hydra_ = dynamic_cast<Hydra*>(mit_.get());
  if (cfg_.oracle_mode != OracleMode::off) {
    oracle_ = std::make_unique<OracleLedger>(cfg_.geometry, timing_, cfg_.nrh, cfg_.blast_radius,
                                             cfg_.dense_oracle);
  }
  stats_.bank_busy_preventive.assign(cfg_.geometry.total_banks(), 0);
  if (cfg_.collect_row_histogram)
    stats_.row_act_histogram.assign(cfg_.geometry.rows_per_bank, 0);
  col_streak_.assign(cfg_.geometry.total_banks(), 0);
  next_window_reset_ = timing_.tREFW;
}

void Simulator::record_command(const DramCommand& cmd) {
  stats_.commands_by_kind[static_cast<int>(cmd.kind)]++;
  stats_.energy_pj += cfg_.energy.of(cmd.kind);
  if (cmd.kind == CommandKind::ACT) {
    stats_.acts_by_cause[static_cast<int>(cmd.cause)]++;
    if (!stats_.row_act_histogram.empty()) stats_.row_act_histogram[cmd.row]++;
  }
  if (cmd.cause == Cause::mitigation_traffic) stats_.mitigation_traffic_commands++;
  if (cfg_.keep_command_log) log_.push_back(cmd);
  if (oracle_) oracle_->observe(cmd);
  stats_.end_time = std::max(stats_.end_time, cmd.issue_time);
}

void Simulator::fire_events_up_to(Picos t) {
  while (true) {
    const Picos b = model_.next_refresh_boundary();
    if (b <= t && b <= next_window_reset_) {
      for (const DramCommand& ref : model_.periodic_refresh_tick(b)) record_command(ref);
      continue;
    }
    if (next_window_reset_ <= t) {
      do_window_reset(next_window_reset_);
      continue;
    }
    break;
  }
}

Picos Simulator::do_issue(DramCommand cmd) {
  cmd.issue_time = std::max(cmd.issue_time, now_);
  Picos t = model_.legality_check(cmd);
  while (true) {
    fire_events_up_to(t);
    const Picos t2 = model_.legality_check(cmd);
    if (t2 == t) break;
    t = t2;
  }
  DramCommand issued = model_.issue(cmd);
  now_ = issued.issue_time;
  record_command(issued);
  return issued.issue_time;
}

void Simulator::do_window_reset(Picos when) {
  mit_->reset(when);
  if (oracle_) oracle_->note_tracker_reset();
  next_window_reset_ += timing_.tREFW;
}

void Simulator::do_refresh_cycle(int channel) {
  stats_.refresh_cycles++;
  std::vector<DramCommand> refs = model_.refresh_cycle(channel, now_);
  std::stable_sort(refs.begin(), refs.end(),
                   [](const DramCommand& a, const DramCommand& b) {
                     return a.issue_time < b.issue_time;
                   });
  for (const DramCommand& r : refs) {
    fire_events_up_to(r.issue_time);
    record_command(r);
    now_ = r.issue_time;
  }
  mit_->reset(now_);
  if (oracle_) oracle_->note_tracker_reset();
}

void Simulator::queue_action(MitigationAction&& action) {
  if (!action.empty()) actions_.push_back(std::move(action));
}

void Simulator::drain_actions() {
  while (!actions_.empty()) {
    MitigationAction a = std::move(actions_.front());
    actions_.pop_front();
    execute_action(a);
  }
}

void Simulator::execute_action(const MitigationAction& action) {
  for (const CounterAccess& c : action.traffic) serve_counter_access(c);
  if (action.refresh_cycle) {
    do_refresh_cycle(0);
    return;
  }
  if (!action.refreshes.empty()) {
    stats_.preventive_refresh_bursts++;
    for (const VictimRef& v : action.refreshes) preventive_refresh(v);
  }
}

void Simulator::preventive_refresh(const VictimRef& v) {
  const int gr = rank_of_flat_bank(cfg_.geometry, v.flat_bank);
  // counter traffic for the victim's own tracking state (Hydra)
  MitigationAction pre = mit_->pre_activate(v.flat_bank, v.row, now_);
  for (const CounterAccess& c : pre.traffic) serve_counter_access(c);

  if (model_.bank(v.flat_bank).open_row != -1) {
    do_issue({CommandKind::PRE, gr, v.flat_bank, -1, now_, Cause::preventive_refresh});
  }
  const Picos t =
      do_issue({CommandKind::ACT, gr, v.flat_bank, v.row, now_, Cause::preventive_refresh});
  do_issue({CommandKind::PRE, gr, v.flat_bank, -1, t + timing_.burst_time(),
            Cause::preventive_refresh});
  model_.set_bank_busy_until(v.flat_bank, t + timing_.tRC);
  stats_.preventive_refresh_acts++;
  stats_.bank_busy_preventive[v.flat_bank] += timing_.tRC;
  // the refresh access is itself an activation of the victim row
  queue_action(mit_->on_activate(v.flat_bank, v.row, t, Cause::preventive_refresh));
}

void Simulator::serve_counter_access(const CounterAccess& c) {
  const int gr = rank_of_flat_bank(cfg_.geometry, c.flat_bank);
  const BankState& b = model_.bank(c.flat_bank);
  if (b.open_row != -1 && b.open_row != c.row) {
    do_issue({CommandKind::PRE, gr, c.flat_bank, -1, now_, Cause::mitigation_traffic});
  }
  if (model_.bank(c.flat_bank).open_row == -1) {
    const Picos t =
        do_issue({CommandKind::ACT, gr, c.flat_bank, c.row, now_, Cause::mitigation_traffic});
    stats_.bank_busy_preventive[c.flat_bank] += timing_.tRC;
    queue_action(mit_->on_activate(c.flat_bank, c.row, t, Cause::mitigation_traffic));
  }
  const Picos t = do_issue({c.is_write ? CommandKind::WR : CommandKind::RD, gr, c.flat_bank, -1,
                            now_, Cause::mitigation_traffic});
  model_.set_bank_busy_until(c.flat_bank, t + timing_.burst_time());
}

void Simulator::serve_demand(PendingReq& p) {
  const int fb = p.flat_bank;
  const int gr = rank_of_flat_bank(cfg_.geometry, fb);
  while (true) {
    const BankState& b = model_.bank(fb);
    if (b.open_row == p.coord.row) {
      const Picos t = do_issue({p.req.is_write ? CommandKind::WR : CommandKind::RD, gr, fb, -1,
                                std::max(p.arrival, now_), Cause::demand});
      const Picos done = t + timing_.burst_time();
      model_.set_bank_busy_until(fb, done);
      col_streak_[fb]++;
      stats_.latencies.push_back(done - p.arrival);
      stats_.completed_requests++;
      return;
    }
    if (b.open_row != -1) {
      const int closed = b.open_row;
      do_issue({CommandKind::PRE, gr, fb, -1, std::max(p.arrival, now_), Cause::demand});
      queue_action(mit_->on_precharge(fb, closed, now_));
      drain_actions();
      continue;
    }
    MitigationAction pre = mit_->pre_activate(fb, p.coord.row, now_);
    if (!pre.empty()) {
      execute_action(pre);
      continue;  // re-evaluate: counter traffic may have used this bank
    }
    const Picos t =
        do_issue({CommandKind::ACT, gr, fb, p.coord.row, std::max(p.arrival, now_), Cause::demand});
    col_streak_[fb] = 0;
    queue_action(mit_->on_activate(fb, p.coord.row, t, Cause::demand));
    drain_actions();
  }
}

void Simulator::maybe_check_invariants(bool force) {
  if (!oracle_ || invariant_failure_) return;
  if (cfg_.oracle_mode == OracleMode::off) return;
  const long every = std::max<long>(cfg_.oracle_sample_every, 1);
  const long acts = stats_.total_acts();
  if (!force && acts - acts_at_last_check_ < every) return;
  acts_at_last_check_ = acts;
  std::optional<std::string> failure;
  if (abacus_) {
    failure = check_tracker_invariant(snapshot_tables(*abacus_), *oracle_);
    if (!failure) failure = check_mg_floor(*abacus_);
  } else if (graphene_) {
    failure = check_tracker_invariant(snapshot_tables(*graphene_), *oracle_);
    if (!failure) failure = check_mg_floor(*graphene_);
  } else if (hydra_) {
    failure = check_hydra_estimate(*hydra_, *oracle_);
  }
  if (failure) invariant_failure_ = failure;
}

int Simulator::pick_next() {
  if (queue_.empty()) return -1;
  int best = -1, best_hit = -1;
  for (int i = 0; i < static_cast<int>(queue_.size()); ++i) {
    const PendingReq& p = queue_[i];
    if (best == -1 || p.seq < queue_[best].seq) best = i;
    const BankState& b = model_.bank(p.flat_bank);
    const bool hit = b.open_row == p.coord.row && col_streak_[p.flat_bank] < 16;
    if (hit && (best_hit == -1 || p.seq < queue_[best_hit].seq)) best_hit = i;
  }
  return best_hit != -1 ? best_hit : best;
}

RunResult Simulator::run(TraceSource& trace) {
  bool trace_done = false, have_next = false;
  MemRequest staged;
  Picos next_arrival = 0;
  long seq = 0;

  auto pull = [&] {
    if (have_next || trace_done) return;
    MemRequest r;
    if (!trace.next(r)) {
      trace_done = true;
      return;
    }
    if (r.tick_delta < 0) throw ParseError("negative tick delta in trace");
    next_arrival += r.tick_delta * timing_.clock_period;
    staged = r;
    have_next = true;
  };
  auto intake = [&](Picos up_to) {
    while (true) {
      pull();
      if (!have_next || next_arrival > up_to) return;
      const long cap = staged.is_write ? writes_queued_ : reads_queued_;
      if (cap >= 64) return;  // queue backpressure
      PendingReq p;
      p.req = staged;
      p.coord = mapping_.decode(staged.addr);
      p.flat_bank = mapping_.flat_bank(p.coord);
      p.arrival = next_arrival;
      p.seq = seq++;
      (staged.is_write ? writes_queued_ : reads_queued_)++;
      queue_.push_back(p);
      stats_.trace_requests++;
      (staged.is_write ? stats_.demand_writes : stats_.demand_reads)++;
      have_next = false;
    }
  };

  while (true) {
    intake(now_);
    if (queue_.empty()) {
      pull();
      if (!have_next) break;
      const Picos target = std::max(next_arrival, now_);
      fire_events_up_to(target);
      if (target > now_) now_ = target;
      continue;
    }
    const int idx = pick_next();
    PendingReq p = queue_[idx];
    queue_.erase(queue_.begin() + idx);
    (p.req.is_write ? writes_queued_ : reads_queued_)--;
    serve_demand(p);
    maybe_check_invariants(false);
  }
  maybe_check_invariants(true);

  RunResult result;
  result.stats = std::move(stats_);
  result.command_log = std::move(log_);
  if (oracle_) result.violations = oracle_->violations();
  result.invariant_failure = invariant_failure_;
  if (cfg_.keep_command_log) {
    result.legality_failure = recheck_command_log(result.command_log, cfg_.geometry, timing_);
  }
  const bool bad = !result.violations.empty() || result.invariant_failure.has_value() ||
                   result.legality_failure.has_value();
  result.exit_status = bad ? 2 : 0;
  return result;
}

}  // namespace rowguard
