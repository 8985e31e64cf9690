#include "fhtp/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fhtp/fhtp.hpp"

namespace fhtp::cli {

namespace {

using nlohmann::json;

template <class Tag>
json to_json(const Vec<Tag>& v) {
  json out = json::array();
  for (double x : v) out.push_back(round6(x));
  return out;
}

template <class T>
json to_json(const std::vector<T>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

json to_json(const SearchStats& s) {
  return {
      {"expanded", s.expanded},
      {"generated", s.generated},
      {"pruned", s.pruned},
      {"duplicates", s.duplicates},
      {"actions", s.action_count},
      {"ebf", s.ebf ? json(round6(*s.ebf)) : json(nullptr)},
      {"wall_ms", round6(s.wall_time.count())},
  };
}

json to_json(const Solution& s) {
  return {
      {"status", s.optimal() ? "optimal" : "exceeds_depth_cap"},
      {"p_star", s.optimal() ? json(s.optimal_slots) : json(nullptr)},
      {"lower_bound", s.lower_bound},
      {"actions", to_json(s.actions)},
      {"queue_trajectory", to_json(s.queue_trajectory)},
      {"stats", to_json(s.stats)},
  };
}

json to_json(const Policy& p) {
  json slots = json::array();
  for (std::size_t t = 0; t < p.slots.size(); ++t) {
    slots.push_back({{"slot", t + 1}, {"rate", to_json(p.slots[t].rate)},
                     {"power", to_json(p.slots[t].power)}});
  }
  return {{"horizon", p.horizon},
          {"target", to_json(p.target)},
          {"average_rate", to_json(p.average_rate())},
          {"slots", slots}};
}

json to_json(const PolicyVerification& v) {
  json out = {{"ok", v.ok}, {"max_average_error", v.max_average_error}};
  if (v.first_violation) out["violation"] = describe(*v.first_violation);
  return out;
}

json to_json(const AchievabilityReport& r, const ChannelModel& channel, int horizon) {
  json out = {
      {"achievable", r.achievable},
      {"p_star", r.p_star ? json(*r.p_star) : json(nullptr)},
      {"lower_bound", r.lower_bound},
      {"horizon", horizon},
      {"stats", to_json(r.solution.stats)},
  };
  if (r.policy) {
    out["policy"] = to_json(*r.policy);
    out["verification"] = to_json(verify_policy(channel, *r.policy));
  } else {
    out["policy"] = nullptr;
  }
  return out;
}

std::string fmt6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

template <class Tag>
std::string bracket(const Vec<Tag>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt6(v[i]);
  return s + "]";
}

void write_policy_table(std::ostream& out, const ChannelModel& channel, const AchievabilityReport& r,
                        int horizon) {
  out << "achievable: " << (r.achievable ? "yes" : "no");
  if (r.p_star) {
    out << "  p* = " << *r.p_star;
  } else {
    out << "  p* > " << horizon << " (lower bound " << r.lower_bound << ")";
  }
  out << "  T = " << horizon << "\n";
  if (!r.policy) return;
  out << std::left << std::setw(6) << "slot" << std::setw(28) << "power" << std::setw(34) << "rate"
      << "capacity\n";
  for (std::size_t t = 0; t < r.policy->slots.size(); ++t) {
    const auto& slot = r.policy->slots[t];
    out << std::left << std::setw(6) << t + 1 << std::setw(28) << bracket(slot.power)
        << std::setw(34) << bracket(slot.rate) << bracket(capacity_vector(channel, slot.power))
        << "\n";
  }
  out << "average " << bracket(r.policy->average_rate()) << "\n";
}

// Writes to --out when given, else to the command's stream.
class Sink {
 public:
  Sink(std::ostream& fallback, const std::string& path) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ostream& fallback_;
  std::ofstream file_;
};

struct Args {
  std::string scenario;
  std::string out;
  bool no_pruning = false;
  bool literal_heuristic = false;
  bool zero_heuristic = false;
  bool full_actions = false;
  bool cutoff = false;
  std::optional<int> depth_cap;
  std::string format = "json";
  std::size_t enum_cap = kDefaultEnumerationCap;
  std::vector<double> m_values{1, 2, 3, 4, 5};
  int trials = 500;
  std::uint64_t seed = 1;
  double omega_direct = 0.6;
  double omega_cross = 0.2;
  unsigned threads = 0;
};

void add_search_flags(CLI::App* cmd, Args& a) {
  cmd->add_flag("--no-pruning", a.no_pruning, "Disable dominance pruning");
  cmd->add_flag("--literal-heuristic", a.literal_heuristic,
                "Use the real-valued heuristic without rounding up");
  cmd->add_flag("--zero-heuristic", a.zero_heuristic, "Uniform-cost search (heuristic = 0)");
  cmd->add_flag("--full-actions", a.full_actions, "Search the full power-vector set");
}

SolverOptions solver_options(const Args& a) {
  SolverOptions o;
  o.pruning = !a.no_pruning;
  o.integer_heuristic = !a.literal_heuristic;
  if (a.zero_heuristic) o.heuristic = HeuristicMode::kZero;
  if (a.full_actions) o.actions = ActionSet::kFull;
  return o;
}

QueueState initial_queue(const Scenario& s) {
  QueueState q0(s.num_pairs);
  for (std::size_t n = 0; n < s.num_pairs; ++n) q0[n] = s.slot_duration * s.horizon * s.target_rate[n];
  return q0;
}

int run_region(const Args& a, std::ostream& out) {
  const ChannelModel channel = load_scenario(a.scenario).channel();
  const auto points = capacity_set(channel, a.enum_cap);
  std::vector<RateVector> rates;
  for (const auto& p : points) rates.push_back(p.rate);
  const auto pareto = pareto_frontier_indices(rates);
  const std::size_t n = channel.num_pairs();

  Sink sink(out, a.out);
  auto& os = sink.stream();
  for (std::size_t i = 0; i < n; ++i) os << "s" << i + 1 << ",";
  for (std::size_t i = 0; i < n; ++i) os << "c" << i + 1 << ",";
  os << "weak_pareto,pareto\n";
  for (std::size_t k = 0; k < points.size(); ++k) {
    bool weak = true;
    for (const auto& other : rates) weak = weak && !strictly_dominates(other, rates[k]);
    const bool strong = std::find(pareto.begin(), pareto.end(), k) != pareto.end();
    for (double v : points[k].power) os << fmt6(v) << ",";
    for (double v : points[k].rate) os << fmt6(v) << ",";
    os << (weak ? 1 : 0) << "," << (strong ? 1 : 0) << "\n";
  }
  return kExitOk;
}

int run_solve(const Args& a, std::ostream& out) {
  const Scenario s = load_scenario(a.scenario);
  const ChannelModel channel = s.channel();
  SolverOptions o = solver_options(a);
  o.horizon = s.horizon;
  if (a.cutoff) o.depth_cap = s.horizon;
  if (a.depth_cap) o.depth_cap = a.depth_cap;
  const Solution solution = solve(channel, initial_queue(s), o);
  Sink sink(out, a.out);
  sink.stream() << to_json(solution).dump(2) << "\n";
  return kExitOk;
}

int run_check(const Args& a, std::ostream& out) {
  const Scenario s = load_scenario(a.scenario);
  const ChannelModel channel = s.channel();
  AchievabilityOptions o;
  o.cutoff = a.cutoff;
  o.solver = solver_options(a);
  const auto report = check_achievability(channel, s.target(), s.horizon, o);
  Sink sink(out, a.out);
  if (a.format == "table") {
    write_policy_table(sink.stream(), channel, report, s.horizon);
  } else {
    sink.stream() << to_json(report, channel, s.horizon).dump(2) << "\n";
  }
  return report.achievable ? kExitOk : kExitUnachievable;
}

int run_oracle(const Args& a, std::ostream& out) {
  const Scenario s = load_scenario(a.scenario);
  const ChannelModel channel = s.channel();
  const int cap = a.depth_cap.value_or(s.horizon);
  const OracleResult r = brute_force_min_time(channel, initial_queue(s), cap, !a.full_actions);
  json doc = {
      {"p_star", r.p_star ? json(*r.p_star) : json(nullptr)},
      {"depth_cap", r.depth_cap},
      {"action_set", a.full_actions ? "full" : "refined"},
      {"witness_actions", to_json(r.witness_actions)},
      {"explored_nodes", r.explored_nodes},
  };
  Sink sink(out, a.out);
  sink.stream() << doc.dump(2) << "\n";
  return kExitOk;
}

int run_counterexample(const Args& a, std::ostream& out) {
  const Scenario s = a.scenario.empty() ? counterexample_scenario() : load_scenario(a.scenario);
  const ChannelModel channel = s.channel();
  const IncompletenessReport r = incompleteness_demo(channel, s.target(), s.horizon);
  json doc = {
      {"quadrant", to_string(r.quadrant)},
      {"horizon", s.horizon},
      {"target", to_json(s.target())},
      {"astar", to_json(r.search, channel, s.horizon)},
      {"max_weight",
       {{"success", r.max_weight.success},
        {"policy", to_json(r.max_weight.policy)},
        {"queue_trajectory", to_json(r.max_weight.queue_trajectory)}}},
  };
  Sink sink(out, a.out);
  sink.stream() << doc.dump(2) << "\n";
  return kExitOk;
}

int run_montecarlo(const Args& a, std::ostream& out) {
  FadingConfig config;
  if (!a.scenario.empty()) config.base = load_scenario(a.scenario);
  config.trials = a.trials;
  config.seed = a.seed;
  if (const char* env = std::getenv("FHTP_SEED"); env && *env) {
    try {
      config.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("FHTP_SEED is not an unsigned integer: ") + env);
    }
  }
  config.mean_power_direct = a.omega_direct;
  config.mean_power_cross = a.omega_cross;
  config.threads = a.threads;
  config.pruning = !a.no_pruning;
  if (a.zero_heuristic) config.heuristic = HeuristicMode::kZero;

  Sink sink(out, a.out);
  write_ebf_csv_header(sink.stream());
  for (double m : a.m_values) {
    config.m = m;
    write_ebf_csv_row(sink.stream(), ebf_experiment(config));
  }
  return kExitOk;
}

}  // namespace

double round6(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  return std::stod(fmt6(x));
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-horizon throughput region: achievability and rate-achieving policies", "fhtp"};
  app.require_subcommand(1);
  Args a;

  auto* region = app.add_subcommand("region", "One-slot capacity set and Pareto frontier as CSV");
  region->add_option("scenario", a.scenario, "Scenario JSON file")->required();
  region->add_option("--out", a.out, "Write CSV to this file");
  region->add_option("--cap", a.enum_cap, "Enumeration cap on |S|");

  auto* solve_cmd = app.add_subcommand("solve", "Minimum clearing time by A* search");
  solve_cmd->add_option("scenario", a.scenario, "Scenario JSON file")->required();
  solve_cmd->add_option("--out", a.out, "Write JSON to this file");
  solve_cmd->add_flag("--cutoff", a.cutoff, "Stop once p* > horizon is certified");
  solve_cmd->add_option("--depth-cap", a.depth_cap, "Stop once p* > this is certified");
  add_search_flags(solve_cmd, a);

  auto* check = app.add_subcommand("check", "Achievability of the target rate within the horizon");
  check->add_option("scenario", a.scenario, "Scenario JSON file")->required();
  check->add_option("--out", a.out, "Write the report to this file");
  check->add_flag("--cutoff", a.cutoff, "Only certify p* > T instead of computing p*");
  check->add_option("--format", a.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  add_search_flags(check, a);

  auto* oracle = app.add_subcommand("oracle", "Brute-force minimum clearing time");
  oracle->add_option("scenario", a.scenario, "Scenario JSON file")->required();
  oracle->add_option("--out", a.out, "Write JSON to this file");
  oracle->add_option("--depth-cap", a.depth_cap, "Deepest sequence length tried (default T)");
  oracle->add_flag("--full-actions", a.full_actions, "Search the full power-vector set");

  auto* counter = app.add_subcommand("counterexample", "Compare A* with the max-weight scheduler");
  counter->add_option("scenario", a.scenario, "Scenario JSON file (default: built-in 2-pair case)");
  counter->add_option("--out", a.out, "Write JSON to this file");

  auto* mc = app.add_subcommand("montecarlo", "Average EBF under Nakagami-m fading");
  mc->add_option("scenario", a.scenario, "Base scenario JSON file (default: example 1)");
  mc->add_option("--out", a.out, "Write CSV to this file");
  mc->add_option("--m", a.m_values, "Nakagami shape values")->delimiter(',');
  mc->add_option("--trials", a.trials, "Trials per m");
  mc->add_option("--seed", a.seed, "RNG seed (FHTP_SEED overrides)");
  mc->add_option("--omega-direct", a.omega_direct, "Mean power of direct links");
  mc->add_option("--omega-cross", a.omega_cross, "Mean power of cross links");
  mc->add_option("--threads", a.threads, "Worker threads (0 = all cores)");
  mc->add_flag("--no-pruning", a.no_pruning, "Disable dominance pruning");
  mc->add_flag("--zero-heuristic", a.zero_heuristic, "Uniform-cost search");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (region->parsed()) return run_region(a, out);
    if (solve_cmd->parsed()) return run_solve(a, out);
    if (check->parsed()) return run_check(a, out);
    if (oracle->parsed()) return run_oracle(a, out);
    if (counter->parsed()) return run_counterexample(a, out);
    if (mc->parsed()) return run_montecarlo(a, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SizeError& e) {
    err << "size guard: " << e.what() << "\n";
    return kExitGuard;
  } catch (const GuardExceededError& e) {
    err << "search guard: " << e.what() << "\n";
    return kExitGuard;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitUnachievable;
  } catch (const DegenerateTransmitterError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitUnachievable;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace fhtp::cli
