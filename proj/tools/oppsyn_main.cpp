// oppsyn — opportunistic synthesis from the command line.
//
//   oppsyn compile FORMULA [--ap A,B] [-o FILE]
//   oppsyn solve SCENARIO
//   oppsyn plan SCENARIO [--out PREFIX] [--explain STATE]
//   oppsyn simulate SCENARIO --policy FILE [-n N] [--start STATE] [--traces FILE]
//
// Exit status: 0 ok, 1 usage or input error, 2 model inconsistency
// (region containment violated, checksum mismatch), 3 value iteration did
// not converge.

#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "oppsyn/error.hpp"
#include "oppsyn/pipeline.hpp"

namespace {

using namespace oppsyn;

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<double> discount;
  std::optional<double> tol;
  bool quiet = false;
};

std::string format(const char* fmt, ...) {
  va_list args;
  va_start(args, fmt);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << text;
}

Scenario scenario_with_overrides(const std::string& path, const Globals& g) {
  Scenario sc = load_scenario(path);
  if (g.discount) sc.value_iteration.discount = *g.discount;
  if (g.tol) sc.value_iteration.tol = *g.tol;
  if (g.seed) sc.sim_seed = *g.seed;
  return sc;
}

int cmd_compile(const std::string& formula, const std::string& ap_list, const std::string& out,
                const Globals& g) {
  std::vector<std::string> ap;
  if (ap_list.empty()) {
    const Formula f = parse_formula(formula);
    const auto atoms = f.atoms();
    ap.assign(atoms.begin(), atoms.end());
  } else {
    std::stringstream ss(ap_list);
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) ap.push_back(item);
  }
  const std::string text = write_dfa(complete_dfa(compile_formula(formula, ap)));
  if (!out.empty()) write_text(out, text);
  if (!g.quiet && out.empty()) std::cout << text;
  return 0;
}

void print_solution(const Solution& s) {
  std::cout << format("arena states:     %zu\n", s.world.ts().num_states())
            << format("automaton states: %zu x %zu\n", s.dfa1().num_states(), s.dfa2().num_states())
            << format("hypergame states: %zu\n", s.hts.num_states())
            << format("final states:     F1 %zu, F2 %zu, F12 %zu\n", s.hts.final1().count(),
                      s.hts.final2().count(), s.hts.final12().count())
            << format("|Win(phi1)|       %zu\n", s.regions.win1.winning.count())
            << format("|Win(phi2)|       %zu\n", s.regions.win2.winning.count())
            << format("|Win(phi)|        %zu\n", s.regions.win12.winning.count())
            << "initial state:    " << state_name(s, s.hts.initial()) << ' '
            << s.labels[s.hts.initial()].to_string() << "\n\n"
            << "label      count\n";
  for (const WinLabel& l : all_win_labels())
    std::cout << format("%-9s %6zu\n", l.to_string().c_str(), s.partition.count(l));
  std::cout << format("%-9s %6zu\n", "total", s.partition.total);
}

int cmd_solve(const std::string& path, const Globals& g) {
  const Solution s = solve_scenario(scenario_with_overrides(path, g));
  if (!g.quiet) print_solution(s);
  return 0;
}

void explain(const Solution& s, const Plan& p, StateId h) {
  const auto& mdp = p.mdp;
  const std::uint32_t m = mdp.index_of(h);
  const auto& V = p.result.value;
  if (mdp.absorbing[m]) {
    std::cout << state_name(s, h) << ' ' << mdp.label[m].to_string()
              << format(" is absorbing, value = reward = %.6f\n", mdp.reward[m]);
    return;
  }
  const auto& a = p.result.policy[m];
  std::cout << "decision table for " << state_name(s, h) << ' ' << mdp.label[m].to_string()
            << format(", value %.6f, policy %s\n", V[m],
                      a ? mdp.action_name(*a).c_str() : "(none)")
            << format("%-5s %-28s %-10s %-9s %s\n", "Act", "Next State", "Partition", "Prob",
                      "Value");
  for (const DecisionRow& r : decision_table(mdp, V, m)) {
    const std::string label = mdp.is_sink(r.successor) ? "-" : mdp.label[r.successor].to_string();
    std::cout << format("%-5s %-28s %-10s %.6f  %.6f\n", mdp.action_name(r.action).c_str(),
                        mdp_state_name(s, mdp, r.successor).c_str(), label.c_str(), r.prob,
                        r.value);
  }
}

int cmd_plan(const std::string& path, const std::string& out, const std::string& explain_state,
             const Globals& g) {
  const Solution s = solve_scenario(scenario_with_overrides(path, g));
  const Plan p = plan_scenario(s);
  if (!out.empty()) {
    write_text(out + ".values.csv", write_state_table(value_table(s, p)));
    write_text(out + ".policy.csv", write_state_table(policy_table(s, p)));
  }
  if (g.quiet) return 0;
  const auto counts = count_opportunities(p.mdp, p.result.value);
  const std::uint32_t m0 = p.mdp.index_of(s.hts.initial());
  const auto& a0 = p.result.policy[m0];
  std::cout << format("decision states:  %zu\n", p.mdp.num_decision_states())
            << format("sweeps:           %zu (residual %.3g)\n", p.result.sweeps,
                      p.result.residual)
            << format("absorbing:        %zu\n", counts.absorbing)
            << format("opportunity:      %zu\n", counts.opportunity)
            << format("no opportunity:   %zu\n", counts.dead)
            << "initial state:    " << state_name(s, s.hts.initial()) << ' '
            << p.mdp.label[m0].to_string()
            << format(" value %.6f policy %s\n", p.result.value[m0],
                      a0 ? p.mdp.action_name(*a0).c_str() : "-")
            << "checksum:         " << s.checksum << '\n';
  if (!explain_state.empty()) {
    std::cout << '\n';
    explain(s, p, parse_state_name(s, explain_state));
  }
  return 0;
}

std::string trace_line(const Solution& s, const OpportunisticMdp& mdp, std::size_t i,
                       const Trace& t) {
  std::string line = format("episode=%zu outcome=%s termination=%s payoff=%.6f steps=%zu playout=%zu path=",
                            i, to_string(t.outcome), to_string(t.termination), t.payoff, t.steps,
                            t.playout_steps);
  for (const TraceStep& st : t.path) {
    line += state_name(s, st.state) + st.label.to_string() +
            (st.actor == Player::Robot ? " R:" : " E:") + mdp.action_name(st.action) + "; ";
  }
  line += "final=" + state_name(s, t.final_state) + s.labels[t.final_state].to_string();
  return line;
}

int cmd_simulate(const std::string& path, const std::string& policy_path, std::size_t n,
                 const std::string& start_text, const std::string& traces_path,
                 std::optional<std::size_t> max_steps, bool no_playout, const Globals& g) {
  const Scenario sc = scenario_with_overrides(path, g);
  const Solution s = solve_scenario(sc);
  const AdversaryModel adv =
      build_adversary_model(s.hts, s.labels, sc.adversary_mode, sc.adversary_seed);
  const OpportunisticMdp mdp = build_mdp(s.hts, s.labels, adv, sc.payoff);
  const LoadedPolicy loaded = load_policy(s, mdp, read_state_table(read_file(policy_path)));

  const StateId start = start_text.empty() ? s.hts.initial() : parse_state_name(s, start_text);
  const SimContext ctx{s.hts, s.labels, s.regions, adv, mdp, loaded.policy, loaded.value};
  SimOptions opt;
  opt.max_steps = max_steps.value_or(sc.max_steps);
  opt.playout = !no_playout;
  opt.record_path = !traces_path.empty();
  const std::size_t episodes = n ? n : sc.episodes;
  std::vector<Trace> traces;
  const RunStats st = batch_simulate(ctx, start, episodes, sc.sim_seed, opt,
                                     traces_path.empty() ? nullptr : &traces);
  if (!traces_path.empty()) {
    std::string text;
    for (std::size_t i = 0; i < traces.size(); ++i) text += trace_line(s, mdp, i, traces[i]) + '\n';
    write_text(traces_path, text);
  }
  if (g.quiet) return 0;
  const std::uint32_t m = mdp.index_of(start);
  std::cout << format("episodes:         %zu (seed %llu)\n", st.episodes,
                      static_cast<unsigned long long>(sc.sim_seed))
            << "start:            " << state_name(s, start) << ' ' << s.labels[start].to_string()
            << format(" value %.6f\n", loaded.value[m]);
  std::cout << "outcomes:        ";
  for (Outcome o : {Outcome::SatisfiedPhi, Outcome::SatisfiedPhi1Only, Outcome::SatisfiedPhi2Only,
                    Outcome::None})
    std::cout << ' ' << to_string(o) << ' ' << st.outcomes[static_cast<std::size_t>(o)];
  std::cout << '\n'
            << format("payoff:           mean %.6f stderr %.6f min %.6f max %.6f\n", st.mean_payoff,
                      st.payoff_stderr, st.min_payoff, st.max_payoff)
            << format("steps:            mean %.3f max %zu\n", st.mean_steps, st.max_steps)
            << format("step-budget hits: %zu\n", st.budget_hits);
  return 0;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InconsistentRegionError*>(&e) ||
      dynamic_cast<const ChecksumMismatchError*>(&e) ||
      dynamic_cast<const EmptySafeSetError*>(&e))
    return 2;
  if (dynamic_cast<const NonConvergenceError*>(&e)) return 3;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Opportunistic synthesis for turn-based games with a misinformed adversary"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Simulation seed (overrides [sim] seed)");
  app.add_option("--discount", g.discount, "Value-iteration discount in (0,1]");
  app.add_option("--tol", g.tol, "Value-iteration stopping tolerance");
  app.add_flag("--quiet", g.quiet, "Print nothing on success");

  std::string formula, ap, out_file;
  auto* compile = app.add_subcommand("compile", "Translate a co-safe LTL formula to a DFA");
  compile->add_option("formula", formula, "Formula text")->required();
  compile->add_option("--ap", ap, "Comma-separated propositions (default: the formula's atoms)");
  compile->add_option("-o,--out", out_file, "Write the DFA here instead of stdout");

  std::string scenario;
  auto* solve = app.add_subcommand("solve", "Winning regions and win-label partition");
  solve->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);

  std::string prefix, explain_state;
  auto* plan = app.add_subcommand("plan", "Build and solve the opportunistic MDP");
  plan->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  plan->add_option("--out", prefix, "Write PREFIX.values.csv and PREFIX.policy.csv");
  plan->add_option("--explain", explain_state, "Print the decision table of a state (or 'init')");

  std::string policy_path, start, traces;
  std::size_t n = 0;
  std::optional<std::size_t> max_steps;
  bool no_playout = false;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo episodes under a policy file");
  simulate->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  simulate->add_option("--policy", policy_path, "Policy file written by plan")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("-n,--episodes", n, "Episode count (default: [sim] episodes)");
  simulate->add_option("--start", start, "Start state (default: the initial state)");
  simulate->add_option("--traces", traces, "Write one trace per line to this file");
  simulate->add_option("--max-steps", max_steps, "Decision budget per episode");
  simulate->add_flag("--no-playout", no_playout, "Stop traces at absorption");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*compile) return cmd_compile(formula, ap, out_file, g);
    if (*solve) return cmd_solve(scenario, g);
    if (*plan) return cmd_plan(scenario, prefix, explain_state, g);
    return cmd_simulate(scenario, policy_path, n, start, traces, max_steps, no_playout, g);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}
