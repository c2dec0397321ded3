#pragma once

#include <deque>
#include <memory>
#include <optional>

#include "rowguard/abacus.hpp"
#include "rowguard/dram_model.hpp"
#include "rowguard/graphene.hpp"
#include "rowguard/hydra.hpp"
#include "rowguard/oracle.hpp"
#include "rowguard/para.hpp"
#include "rowguard/run_config.hpp"
#include "rowguard/stats.hpp"
#include "rowguard/trace.hpp"

namespace rowguard {

struct RunResult {
  SimStats stats;
  std::vector<DramCommand> command_log;  // empty when disabled
  std::vector<Violation> violations;
  std::optional<std::string> invariant_failure;
  std::optional<std::string> legality_failure;
  int exit_status = 0;  // 0 clean, 2 oracle violation / failed self-check
};

// Single-threaded, deterministic given (config, trace, seed). Commands are
// issued in nondecreasing time order (one command bus); banks overlap through
// the timing constraints, not through reordered issue.
class Simulator {
 public:
  explicit Simulator(const RunConfig& cfg);

  RunResult run(TraceSource& trace);

  const DramModel& model() const { return model_; }
  const TimingParams& effective_timing() const { return timing_; }
  Mitigation& mitigation() { return *mit_; }
  const OracleLedger* oracle() const { return oracle_.get(); }
  const Abacus* abacus() const { return abacus_; }

 private:
  struct PendingReq {
    MemRequest req;
    Coordinates coord;
    int flat_bank = 0;
    Picos arrival = 0;
    long seq = 0;
  };

  void record_command(const DramCommand& cmd);
  void fire_events_up_to(Picos t);
  Picos do_issue(DramCommand cmd);
  void do_window_reset(Picos when);
  void do_refresh_cycle(int channel);
  void queue_action(MitigationAction&& action);
  void drain_actions();
  void execute_action(const MitigationAction& action);
  void preventive_refresh(const VictimRef& v);
  void serve_counter_access(const CounterAccess& c);
  void serve_demand(PendingReq& p);
  void maybe_check_invariants(bool force);
  int pick_next();  // index into queue_, -1 if empty

  RunConfig cfg_;
  TimingParams timing_;
  MappingScheme mapping_;
  DramModel model_;
  std::unique_ptr<Mitigation> mit_;
  Abacus* abacus_ = nullptr;
  Graphene* graphene_ = nullptr;
  Hydra* hydra_ = nullptr;
  std::unique_ptr<OracleLedger> oracle_;

  SimStats stats_;
  std::vector<DramCommand> log_;
  std::deque<PendingReq> queue_;  // unified; reads and writes share FR-FCFS
  long reads_queued_ = 0, writes_queued_ = 0;
  std::deque<MitigationAction> actions_;
  std::vector<int> col_streak_;
  Picos now_ = 0;
  Picos next_window_reset_;
  long acts_at_last_check_ = 0;
  std::optional<std::string> invariant_failure_;
};

std::unique_ptr<Mitigation> make_mitigation(const RunConfig& cfg, const TimingParams& effective);

}  // namespace rowguard
