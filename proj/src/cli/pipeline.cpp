#include "oppsyn/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "oppsyn/error.hpp"

namespace oppsyn {

Dfa compile_formula(std::string_view text, const std::vector<std::string>& ap) {
  const Formula f = parse_formula(text, std::set<std::string>(ap.begin(), ap.end()));
  const CosafeFormula cf = check_cosafe(f);
  const auto atoms = f.atoms();
  std::vector<std::string> props;
  for (const auto& a : ap)
    if (atoms.contains(a)) props.push_back(a);
  return to_dfa(cf, props);
}

namespace {

// Distinct automaton symbols the arena can emit.
std::vector<Symbol> emitted_symbols(const TransitionSystem& ts, const Dfa& d) {
  std::set<Symbol> out;
  for (LabelMask l : ts.occurring_labels()) {
    std::set<std::string> names;
    for (std::size_t i = 0; i < ts.ap().size(); ++i)
      if ((l & (LabelMask{1} << i)) &&
          std::find(d.props().begin(), d.props().end(), ts.ap()[i]) != d.props().end())
        names.insert(ts.ap()[i]);
    out.insert(d.symbol_of(names));
  }
  return {out.begin(), out.end()};
}

Dfa load_task(const TaskSpec& task, const TransitionSystem& ts, bool prune) {
  Dfa d = task.formula ? compile_formula(*task.formula, ts.ap())
                       : read_dfa(read_file(*task.dfa_path));
  if (prune) d = trim_to_symbols(d, emitted_symbols(ts, d));
  return d;
}

std::string canonical_text(const Scenario& sc, const Dfa& d1, const Dfa& d2) {
  std::ostringstream os;
  os.precision(17);
  const auto& g = sc.grid;
  auto cell = [](Cell c) { return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"; };
  os << "grid " << g.width << ' ' << g.height << "\nobstacles";
  for (Cell c : g.obstacles) os << ' ' << cell(c);
  for (const auto& [name, cells] : g.goal_labels) {
    os << "\ngoal " << name;
    for (Cell c : cells) os << ' ' << cell(c);
  }
  os << "\nstarts " << cell(g.robot_start) << ' ' << cell(g.adversary_start) << "\nrobot";
  for (Direction d : g.robot_actions) os << ' ' << to_string(d);
  os << "\nadversary";
  for (Direction d : g.adversary_actions) os << ' ' << to_string(d);
  os << "\ninteraction " << (g.interaction == Interaction::Block ? "block" : "none")
     << " corner_cutting " << g.corner_cutting << '\n'
     << write_dfa(d1) << write_dfa(d2) << "payoff " << sc.payoff.r1 << ' ' << sc.payoff.r2
     << ' ' << sc.payoff.r << "\nadversary " << to_string(sc.adversary_mode) << ' '
     << sc.adversary_seed << "\nplanner " << sc.value_iteration.discount << ' '
     << sc.value_iteration.tol << ' ' << sc.value_iteration.max_sweeps << '\n';
  return os.str();
}

}  // namespace

Solution solve_scenario(const Scenario& scenario) {
  Gridworld world(scenario.grid);
  Dfa d1 = load_task(scenario.phi1, world.ts(), scenario.prune_automata);
  Dfa d2 = load_task(scenario.phi2, world.ts(), scenario.prune_automata);
  HypergameTS hts = build_hypergame_ts(world.ts(), d1, d2);
  HypergameRegions regions = solve_hypergame(hts);
  std::vector<WinLabel> labels = win_label_all(hts, regions);
  PartitionSummary partition = partition_summary(labels);
  std::string checksum = hex64(fnv1a64(canonical_text(scenario, d1, d2)));
  return Solution{scenario,          std::move(world),  std::move(hts),     std::move(regions),
                  std::move(labels), partition,         std::move(checksum)};
}

Plan plan_scenario(const Solution& s) {
  AdversaryModel adv = build_adversary_model(s.hts, s.labels, s.scenario.adversary_mode,
                                             s.scenario.adversary_seed);
  OpportunisticMdp mdp = build_mdp(s.hts, s.labels, adv, s.scenario.payoff);
  ValueIterationResult result = value_iteration(mdp, s.scenario.value_iteration);
  return Plan{std::move(adv), std::move(mdp), std::move(result)};
}

std::string state_name(const Solution& s, StateId h) {
  const GridState& g = s.world.decode(s.hts.ts_state(h));
  return "(" + to_string(g) + "," + std::to_string(s.hts.q1(h)) + "," +
         std::to_string(s.hts.q2(h)) + ")";
}

StateId parse_state_name(const Solution& s, std::string_view text) {
  const std::string t(text);
  if (t == "init" || t == "h0") return s.hts.initial();
  int rx, ry, ex, ey, turn;
  unsigned q1, q2;
  char tail = 0;
  if (std::sscanf(t.c_str(), " ( ( ( %d , %d ) , ( %d , %d ) , %d ) , %u , %u ) %c", &rx, &ry,
                  &ex, &ey, &turn, &q1, &q2, &tail) != 7 ||
      (turn != 0 && turn != 1))
    throw UnknownStateError("cannot read state '" + t + "'; expected (((rx,ry),(ex,ey),turn),q1,q2)");
  const auto st = s.world.find({{rx, ry}, {ex, ey}, turn == 0 ? Player::Robot : Player::Adversary});
  if (!st || q1 >= s.dfa1().num_states() || q2 >= s.dfa2().num_states())
    throw UnknownStateError("state '" + t + "' does not exist in this scenario");
  return s.hts.id(*st, q1, q2);
}

std::string mdp_state_name(const Solution& s, const OpportunisticMdp& mdp, std::uint32_t m) {
  if (m == mdp.sink1) return "sink1";
  if (m == mdp.sink) return "sink";
  return state_name(s, mdp.hts_state.at(m));
}

StateTable value_table(const Solution& s, const Plan& plan) {
  const auto& mdp = plan.mdp;
  StateTable t;
  t.checksum = s.checksum;
  for (std::uint32_t m = 0; m < mdp.num_states(); ++m) {
    StateRow r;
    if (!mdp.is_sink(m)) {
      r.state_id = mdp.hts_state[m];
      r.label = mdp.label[m].to_string();
    }
    r.state = mdp_state_name(s, mdp, m);
    r.value = plan.result.value[m];
    if (const auto& a = plan.result.policy[m]) r.action = mdp.action_name(*a);
    t.rows.push_back(std::move(r));
  }
  return t;
}

StateTable policy_table(const Solution& s, const Plan& plan) {
  StateTable t = value_table(s, plan);
  std::erase_if(t.rows, [](const StateRow& r) { return r.action.empty(); });
  return t;
}

LoadedPolicy load_policy(const Solution& s, const OpportunisticMdp& mdp, const StateTable& table) {
  if (table.checksum != s.checksum)
    throw ChecksumMismatchError("policy file checksum " + table.checksum +
                                " does not match the scenario (" + s.checksum + ")");
  LoadedPolicy out{Policy(mdp.num_states()), std::vector<double>(mdp.reward)};
  for (const StateRow& r : table.rows) {
    if (!r.state_id) continue;
    const std::uint32_t m = mdp.index_of(*r.state_id);
    if (r.state != state_name(s, *r.state_id))
      throw FormatError("state id " + std::to_string(*r.state_id) + " does not name " + r.state);
    out.value[m] = r.value;
    if (r.action.empty()) continue;
    const auto& choices = mdp.choices[m];
    auto it = std::find_if(choices.begin(), choices.end(), [&](const MdpChoice& c) {
      return mdp.action_name(c.action) == r.action;
    });
    if (it == choices.end())
      throw FormatError("action " + r.action + " is not enabled in " + r.state);
    const ActionId a = it->action;
    out.policy[m] = a;
  }
  return out;
}

}  // namespace oppsyn
