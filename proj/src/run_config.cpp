#include "rowguard/run_config.hpp"

#include <fstream>

#include "rowguard/errors.hpp"
#include "rowguard/rega.hpp"

namespace rowguard {

TimingParams RunConfig::effective_timing() const {
  TimingParams t = timing;
  if (!full_window && window < timing.tREFW) t = t.scaled_window(window);
  if (mitigation == "rega") t.tRC = rega_trc ? *rega_trc : rega_effective_trc(nrh);
  t.validate();
  return t;
}

void RunConfig::validate() const {
  geometry.validate();
  timing.validate();
  effective_timing();
  static const char* kMitigations[] = {"none", "abacus", "abacus-big", "graphene",
                                       "hydra", "para",   "rega"};
  bool known = false;
  for (const char* m : kMitigations) known = known || mitigation == m;
  if (!known) throw ConfigError("unknown mitigation '" + mitigation + "'");
  if (mitigation != "none" && nrh < 4) throw ConfigError("nrh must be >= 4");
  if (blast_radius < 1 || blast_radius > 8) throw ConfigError("blast radius must be in [1, 8]");
  if (mitigation == "rega" && blast_radius != 1)
    throw ConfigError("rega refreshes in-DRAM at its design point; blast radius must be 1");
  if (para_p && (*para_p <= 0.0 || *para_p >= 1.0))
    throw ConfigError("para_p must be in (0,1)");
  if (report_format != "json" && report_format != "csv")
    throw ConfigError("report format must be json or csv");
  if (!trace_path.empty() && !gen.empty())
    throw ConfigError("give either --trace or --gen, not both");
}

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
  auto to_int = [&](const std::string& v) { return std::stoll(v); };
  if (key == "channels") cfg.geometry.channels = static_cast<int>(to_int(value));
  else if (key == "ranks_per_channel") cfg.geometry.ranks_per_channel = static_cast<int>(to_int(value));
  else if (key == "bankgroups_per_rank") cfg.geometry.bankgroups_per_rank = static_cast<int>(to_int(value));
  else if (key == "banks_per_bankgroup") cfg.geometry.banks_per_bankgroup = static_cast<int>(to_int(value));
  else if (key == "rows_per_bank") cfg.geometry.rows_per_bank = static_cast<int>(to_int(value));
  else if (key == "columns_per_row") cfg.geometry.columns_per_row = static_cast<int>(to_int(value));
  else if (key == "tRC") cfg.timing.tRC = parse_time_ns(value);
  else if (key == "tRRD") cfg.timing.tRRD = parse_time_ns(value);
  else if (key == "tFAW") cfg.timing.tFAW = parse_time_ns(value);
  else if (key == "tREFI") cfg.timing.tREFI = parse_time_ns(value);
  else if (key == "tREFW") cfg.timing.tREFW = parse_time_ns(value);
  else if (key == "tRFC") cfg.timing.tRFC = parse_time_ns(value);
  else if (key == "clock_period") cfg.timing.clock_period = parse_time_ns(value);
  else if (key == "graphene_threshold") cfg.graphene_threshold = to_int(value);
  else if (key == "hydra_gct_threshold") cfg.hydra_gct_threshold = to_int(value);
  else if (key == "hydra_tracking_threshold") cfg.hydra_tracking_threshold = to_int(value);
  else if (key == "hydra_rcc_entries") cfg.hydra_rcc_entries = static_cast<int>(to_int(value));
  else if (key == "hydra_group_size") cfg.hydra_group_size = static_cast<int>(to_int(value));
  else if (key == "para_p") cfg.para_p = std::stod(value);
  else if (key == "rega_trc") cfg.rega_trc = parse_time_ns(value);
  else if (key == "energy_act_pj") cfg.energy.act_pj = std::stod(value);
  else if (key == "energy_pre_pj") cfg.energy.pre_pj = std::stod(value);
  else if (key == "energy_rd_pj") cfg.energy.rd_pj = std::stod(value);
  else if (key == "energy_wr_pj") cfg.energy.wr_pj = std::stod(value);
  else if (key == "energy_ref_pj") cfg.energy.ref_pj = std::stod(value);
  else throw ConfigError("unknown config key '" + key + "'");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::size_t eq = line.find('=');
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      const auto b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    if (eq == std::string::npos) {
      if (!trim(line).empty())
        throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
    try {
      apply_config_entry(cfg, key, value);
    } catch (const std::exception& e) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

}  // namespace rowguard
