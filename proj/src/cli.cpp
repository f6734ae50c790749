// Copyright 2026 The costshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "costshare/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "costshare/experiments.hpp"
#include "costshare/opt_oracle.hpp"

namespace costshare {

namespace {

using Row = std::vector<std::string>;

std::string str(int v) { return std::to_string(v); }
std::string str(std::size_t v) { return std::to_string(v); }
std::string str(std::int64_t v) { return std::to_string(v); }
std::string str(bool v) { return v ? "true" : "false"; }
std::string str(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}
std::string machine_label(int j) { return std::to_string(j + 1); }

std::string share_macro(const ShareValue& s) { return s.is_infinite() ? "inf" : to_string(s.macro()); }
std::string share_micro(const ShareValue& s) { return s.is_infinite() ? "0" : std::to_string(s.micro()); }

// Jobs for the allocation commands: --n, then the scenario's n, then |agents|.
int job_count(const Scenario& sc, const CommandOptions& opt) {
  if (opt.n) return *opt.n;
  if (sc.n) return *sc.n;
  return static_cast<int>(sc.agents.size());
}

// Present agents for the game commands. An agent-count override keeps the
// disruptor pair under cap2/step2 and takes the highest-priority regulars;
// under the stochastic mechanism it takes the first n agents.
std::vector<int> present_agents(const Scenario& sc, const AgentUniverse& u, const CommandOptions& opt) {
  const std::optional<int> n = opt.n ? opt.n : sc.n;
  if (!n) return u.agents;
  if (*n < 0 || *n > static_cast<int>(u.agents.size())) {
    throw Error(ErrorCode::InvalidArgument, "agent count " + std::to_string(*n) + " outside 0.." +
                                                std::to_string(u.agents.size()));
  }
  if (sc.mechanism == MechanismKind::Stochastic) {
    return {u.agents.begin(), u.agents.begin() + *n};
  }
  if (*n < static_cast<int>(u.disruptors.size())) {
    throw Error(ErrorCode::InvalidArgument, "agent count must cover both disruptors");
  }
  std::vector<int> present = u.disruptors;
  for (int a : u.agents) {
    if (static_cast<int>(present.size()) >= *n) break;
    if (!u.is_disruptor(a)) present.push_back(a);
  }
  return present;
}

std::shared_ptr<const Mechanism> make_mechanism(const Scenario& sc) {
  return std::make_shared<const Mechanism>(sc.mechanism, sc.instance);
}

Game make_game(const Scenario& sc, const CommandOptions& opt) {
  const AgentUniverse u = make_universe(sc);
  return Game(make_mechanism(sc), u, present_agents(sc, u, opt));
}

EnumerateOptions enumerate_options(const CommandOptions& opt) {
  EnumerateOptions e;
  e.workers = opt.workers;
  return e;
}

Table profile_table(const Game& game, const Profile& profile, const std::string& name) {
  Table t{name, {"agent", "role", "machine", "share_macro", "share_micro"}, {}, false};
  const auto shares = profile_shares(game, profile);
  for (int i = 0; i < game.agent_count(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    t.rows.push_back({str(game.agent_id(i)), game.is_disruptor(i) ? "disruptor" : "regular",
                      machine_label(profile[k]), share_macro(shares[k]), share_micro(shares[k])});
  }
  return t;
}

Report delayed_opt_cmd(const Scenario& sc, const CommandOptions& opt) {
  const int n = job_count(sc, opt);
  DelayedOpt run(sc.instance);
  const AssignmentTrace tr = run.trace(n);
  Report rep;
  Table trace{"trace", {"job", "machine"}, {}, false};
  for (std::size_t q = 0; q < tr.per_job.size(); ++q) trace.rows.push_back({str(q + 1), machine_label(tr.per_job[q])});
  Table loads{"loads", {"machine", "load", "cost"}, {}, false};
  for (std::size_t j = 0; j < tr.final_loads.size(); ++j) {
    loads.rows.push_back({machine_label(static_cast<int>(j)), str(tr.final_loads[j]),
                          to_string(eval_cost(sc.instance.machine(j), tr.final_loads[j]))});
  }
  rep.tables = {trace, loads};
  if (n > 0) {
    const RatioBounds b = ratio_bounds(run, n);
    rep.tables.push_back({"bounds",
                          {"n", "k", "online_cost", "opt_cost", "online_limit", "opt_floor", "scale"},
                          {{str(b.n), str(b.k), to_string(b.online_cost), to_string(b.opt_cost),
                            to_string(b.online_limit), to_string(b.opt_floor), to_string(run.scale())}},
                          false});
  }
  return rep;
}

Report opt_cmd(const Scenario& sc, const CommandOptions& opt) {
  const int n = job_count(sc, opt);
  const Allocation a = opt_allocation(sc.instance, n);
  Table alloc{"allocation", {"machine", "load", "cost"}, {}, false};
  for (std::size_t j = 0; j < a.loads.size(); ++j) {
    alloc.rows.push_back({machine_label(static_cast<int>(j)), str(a.loads[j]),
                          to_string(eval_cost(sc.instance.machine(j), a.loads[j]))});
  }
  Report rep;
  rep.tables = {alloc, {"summary", {"n", "cost"}, {{str(n), to_string(a.cost)}}, false}};
  return rep;
}

Report thresholds_cmd(const Scenario& sc, const CommandOptions& opt) {
  const ThresholdTable table = thresholds(sc.instance, job_count(sc, opt));
  Table t{"thresholds", {"k", "a"}, {}, false};
  for (std::size_t j = 0; j < sc.instance.size(); ++j) t.header.push_back("target_" + machine_label(static_cast<int>(j)));
  for (const auto& e : table.entries) {
    Row row{str(e.k), str(e.a)};
    for (int l : e.targets) row.push_back(str(l));
    t.rows.push_back(std::move(row));
  }
  Report rep;
  rep.tables = {t, {"scale", {"scale"}, {{to_string(table.scale)}}, false}};
  return rep;
}

Table cost_summary(const Game& game, const Profile& profile, const std::string& name) {
  const Charged ch = total_charged(game, profile);
  const bool nash = is_nash(game, profile).stable;
  return {name,
          {"social_cost", "charged_macro", "charged_micro", "online_cost", "is_nash"},
          {{to_string(social_cost(game, profile)), to_string(ch.macro), str(ch.micro),
            to_string(social_cost(game.mechanism().instance(), game.mechanism().online_loads(game.agent_count()))),
            str(nash)}},
          false};
}

Report shares_cmd(const Scenario& sc, const CommandOptions&) {
  if (!sc.profile) throw Error(ErrorCode::SchemaError, "$.profile: required by the shares command");
  const AgentUniverse u = make_universe(sc);
  const Game game(make_mechanism(sc), u, u.agents);
  Profile profile(sc.profile->size());
  // Game indices follow priority order, which is the listed order.
  for (std::size_t i = 0; i < profile.size(); ++i) profile[i] = (*sc.profile)[i] - 1;
  Report rep;
  rep.tables = {profile_table(game, profile, "shares"), cost_summary(game, profile, "summary")};
  return rep;
}

Report equilibria_cmd(const Scenario& sc, const CommandOptions& opt) {
  const Game game = make_game(sc, opt);
  const auto all = enumerate_pne(game, enumerate_options(opt));
  Table rows{"equilibria", {"pne", "agent", "role", "machine", "share_macro", "share_micro"}, {}, false};
  Table costs{"costs", {"pne", "social_cost", "charged_macro", "charged_micro"}, {}, false};
  for (std::size_t p = 0; p < all.size(); ++p) {
    const Table t = profile_table(game, all[p], "");
    for (const auto& r : t.rows) {
      Row row{str(p + 1)};
      row.insert(row.end(), r.begin(), r.end());
      rows.rows.push_back(std::move(row));
    }
    const Charged ch = total_charged(game, all[p]);
    costs.rows.push_back({str(p + 1), to_string(social_cost(game, all[p])), to_string(ch.macro), str(ch.micro)});
  }
  Report rep;
  rep.tables = {rows, costs};
  rep.status = all.empty() && game.agent_count() > 0 ? exit_code(ErrorCode::NoEquilibrium) : 0;
  return rep;
}

Report stable_cmd(const Scenario& sc, const CommandOptions& opt) {
  const Game game = make_game(sc, opt);
  const Profile profile = construct_stable_profile(game);
  Report rep;
  rep.tables = {profile_table(game, profile, "profile"), cost_summary(game, profile, "summary")};
  return rep;
}

Report poa_cmd(const Scenario& sc, const CommandOptions& opt) {
  const Game game = make_game(sc, opt);
  const PoAReport r = poa(game, enumerate_options(opt));
  Report rep;
  rep.tables = {{"poa",
                 {"digest", "mechanism", "agents", "disruptors", "pne_count", "worst_charged", "worst_micro",
                  "opt_cost", "poa", "online_loads_only"},
                 {{r.digest, std::string(to_string(r.kind)), str(r.agents), str(r.disruptors), str(r.pne_count),
                   to_string(r.worst_charged), str(r.worst_micro), to_string(r.opt_cost), to_string(r.poa),
                   str(r.online_loads_only)}},
                 false}};
  return rep;
}

Report expected_poa_cmd(const Scenario& sc, const CommandOptions& opt) {
  if (sc.mechanism != MechanismKind::Stochastic) {
    throw Error(ErrorCode::WrongMechanism, "expected-poa runs the stochastic mechanism");
  }
  ExpectedPoAOptions eo;
  eo.enumerate = enumerate_options(opt);
  const auto r = expected_poa(make_mechanism(sc), make_universe(sc), opt.samples.value_or(sc.samples),
                              opt.seed.value_or(sc.seed), eo);
  Table summary{"summary",
                {"digest", "samples", "seed", "expected_agents", "disruptor_set", "mean_poa", "std_error", "bound",
                 "low_quantity", "low_quantity_error", "low_count", "low_mean_poa", "high_count", "high_mean_poa",
                 "exact_samples", "structural_samples", "empty_samples"},
                {{instance_digest(sc.instance), str(r.samples), std::to_string(r.seed), str(r.expected_agents),
                  str(r.disruptor_set), str(r.mean_poa), str(r.std_error), str(r.bound), str(r.low_quantity),
                  str(r.low_quantity_error), str(r.low_count), str(r.low_mean_poa), str(r.high_count),
                  str(r.high_mean_poa), str(r.exact_samples), str(r.structural_samples), str(r.empty_samples)}},
                false};
  Table samples{"samples", {"index", "agents", "disruptors", "poa", "exact", "empty"}, {}, true};
  for (const auto& row : r.rows) {
    samples.rows.push_back(
        {str(row.index), str(row.agents), str(row.disruptors), str(row.poa), str(row.exact), str(row.empty)});
  }
  Report rep;
  rep.tables = {summary, samples};
  return rep;
}

Report sweep_cmd(const Scenario& sc, const CommandOptions& opt) {
  const int n_max = opt.n ? *opt.n : sc.n ? *sc.n : sc.instance.total_capacity();
  const SweepReport r = competitive_sweep(sc.instance, n_max);
  Table rows{"sweep", {"n", "online_cost", "opt_cost", "ratio"}, {}, false};
  for (const auto& row : r.rows) {
    rows.rows.push_back({str(row.n), to_string(row.online_cost), to_string(row.opt_cost), to_string(row.ratio)});
  }
  Report rep;
  rep.tables = {rows,
                {"summary",
                 {"max_ratio", "argmax", "all_below_four"},
                 {{to_string(r.max_ratio), str(r.argmax), str(r.all_below_four)}},
                 false}};
  return rep;
}

Report diagnostic_cmd(const Scenario& sc, const CommandOptions& opt) {
  const DiagnosticReport r = capacity_diagnostic(sc.instance, job_count(sc, opt), enumerate_options(opt));
  Table cases{"cases", {"agents", "disruptors", "pne_count"}, {}, false};
  for (const auto& c : r.cases) cases.rows.push_back({str(c.agents), str(c.disruptors), str(c.pne_count)});
  Report rep;
  rep.tables = {cases, {"summary", {"any_empty"}, {{str(r.any_empty)}}, false}};
  return rep;
}

using Handler = std::function<Report(const Scenario&, const CommandOptions&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"delayed-opt", delayed_opt_cmd}, {"opt", opt_cmd},     {"thresholds", thresholds_cmd},
      {"shares", shares_cmd},           {"equilibria", equilibria_cmd}, {"stable", stable_cmd},
      {"poa", poa_cmd},                 {"expected-poa", expected_poa_cmd}, {"sweep", sweep_cmd},
      {"diagnostic", diagnostic_cmd},
  };
  return table;
}

void write_csv(std::ostream& out, const Table& t) {
  auto line = [&](const Row& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"delayed-opt", "opt",  "thresholds",   "shares", "equilibria",
                                                 "stable",      "poa",  "expected-poa", "sweep",  "diagnostic"};
  return names;
}

Report run_command(const std::string& command, const Scenario& scenario, const CommandOptions& options) {
  const auto it = handlers().find(command);
  if (it == handlers().end()) throw Error(ErrorCode::InvalidArgument, "unknown command '" + command + "'");
  return it->second(scenario, options);
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoEquilibrium:
      return 3;
    case ErrorCode::TooLarge:
    case ErrorCode::InfeasibleDemand:
      return 4;
    case ErrorCode::InvariantViolated:
    case ErrorCode::ConstructionNotStable:
    case ErrorCode::UnrankedSegment:
      return 1;
    default:
      return 2;
  }
}

void write_tables(std::ostream& out, const Report& report) {
  bool first = true;
  for (const auto& t : report.tables) {
    if (t.raw) continue;
    if (!first) out << '\n';
    first = false;
    out << "# " << t.name << '\n';
    write_csv(out, t);
  }
}

void write_report_dir(const std::string& dir, const std::string& command, const Report& report) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  nlohmann::ordered_json summary;
  summary["command"] = command;
  for (const auto& t : report.tables) {
    std::ofstream csv(fs::path(dir) / (t.name + ".csv"));
    if (!csv) throw Error(ErrorCode::InvalidArgument, "cannot write to " + dir);
    write_csv(csv, t);
    if (t.raw) continue;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
      nlohmann::ordered_json obj;
      for (std::size_t i = 0; i < t.header.size() && i < r.size(); ++i) obj[t.header[i]] = r[i];
      rows.push_back(std::move(obj));
    }
    summary[t.name] = std::move(rows);
  }
  std::ofstream js(fs::path(dir) / "summary.json");
  js << summary.dump(2) << '\n';
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cost-sharing mechanisms for online scheduling: allocations, equilibria and experiments"};
  std::string command;
  std::string scenario_path;
  std::string out_dir;
  CommandOptions opt;
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(command_names()));
  app.add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  app.add_option("--out", out_dir, "Write <table>.csv files and summary.json here instead of stdout");
  app.add_option("--n", opt.n, "Job count, or agent count for game commands");
  app.add_option("--samples", opt.samples, "Monte Carlo samples (expected-poa)")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Seed override (expected-poa)");
  app.add_option("--workers", opt.workers, "Enumeration threads; output does not depend on it")
      ->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }
  try {
    const Scenario sc = load_scenario(scenario_path);
    const Report rep = run_command(command, sc, opt);
    if (out_dir.empty()) {
      write_tables(out, rep);
    } else {
      write_report_dir(out_dir, command, rep);
    }
    if (rep.status != 0) err << "no pure Nash equilibrium\n";
    return rep.status;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return 1;
  }
}

}  // namespace costshare
