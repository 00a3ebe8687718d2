// Co-safe LTL to DFA by formula progression.
//
// Subformulas are hash-consed in a pool. A residual is kept in disjunctive
// normal form over the temporal subformulas (next, until, eventually) and
// literals: a sorted list of clauses, each a sorted set of pool ids, with
// contradictory and subsumed clauses removed. Every residual is a boolean
// combination of subformulas of the input, so there are finitely many.
//
// A residual is accepting when every infinite continuation satisfies it,
// i.e. when all paths from it reach the residual "true". Residuals that can
// never reach "true" are merged into the sink.

#include <algorithm>
#include <map>
#include <unordered_map>

#include "oppsyn/dfa.hpp"
#include "oppsyn/error.hpp"

namespace oppsyn {
namespace {

using Id = std::uint32_t;

enum class NodeKind : std::uint8_t { True, False, Lit, And, Or, Next, Until, Eventually };

struct Node {
  NodeKind kind;
  std::uint32_t prop = 0;
  bool positive = true;
  std::vector<Id> kids;

  auto key() const { return std::tie(kind, prop, positive, kids); }
  friend bool operator<(const Node& a, const Node& b) { return a.key() < b.key(); }
};

class Pool {
 public:
  static constexpr Id kTrue = 0;
  static constexpr Id kFalse = 1;

  Pool() {
    intern({NodeKind::True, 0, true, {}});
    intern({NodeKind::False, 0, true, {}});
  }

  const Node& at(Id id) const { return nodes_[id]; }

  Id literal(std::uint32_t prop, bool positive) {
    return intern({NodeKind::Lit, prop, positive, {}});
  }

  Id next(Id c) {
    if (c == kTrue || c == kFalse) return c;
    return intern({NodeKind::Next, 0, true, {c}});
  }

  Id eventually(Id c) {
    if (c == kTrue || c == kFalse) return c;
    if (at(c).kind == NodeKind::Eventually) return c;
    return intern({NodeKind::Eventually, 0, true, {c}});
  }

  Id until(Id a, Id b) {
    if (b == kTrue || b == kFalse) return b;
    if (a == kFalse) return b;
    if (a == kTrue) return eventually(b);
    return intern({NodeKind::Until, 0, true, {a, b}});
  }

  Id conj(std::vector<Id> items) { return junction(NodeKind::And, std::move(items)); }
  Id disj(std::vector<Id> items) { return junction(NodeKind::Or, std::move(items)); }

  // Id of an existing literal, or an id that cannot occur in any list.
  Id literal_lookup(std::uint32_t prop, bool positive) const {
    auto it = index_.find(Node{NodeKind::Lit, prop, positive, {}});
    return it == index_.end() ? static_cast<Id>(-1) : it->second;
  }

 private:
  Id intern(Node n) {
    auto [it, inserted] = index_.try_emplace(n, static_cast<Id>(nodes_.size()));
    if (inserted) nodes_.push_back(std::move(n));
    return it->second;
  }

  // Operand list of `id` viewed as a `kind` junction.
  std::vector<Id> operands(NodeKind kind, Id id) const {
    if (at(id).kind == kind) return at(id).kids;
    return {id};
  }

  Id junction(NodeKind kind, std::vector<Id> items) {
    const bool is_and = kind == NodeKind::And;
    const Id unit = is_and ? kTrue : kFalse;
    const Id zero = is_and ? kFalse : kTrue;
    const NodeKind dual = is_and ? NodeKind::Or : NodeKind::And;

    std::vector<Id> flat;
    for (Id i : items) {
      if (i == zero) return zero;
      if (i == unit) continue;
      if (at(i).kind == kind) {
        flat.insert(flat.end(), at(i).kids.begin(), at(i).kids.end());
      } else {
        flat.push_back(i);
      }
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());

    for (Id i : flat) {
      const Node& n = at(i);
      if (n.kind == NodeKind::Lit &&
          std::binary_search(flat.begin(), flat.end(), literal_lookup(n.prop, !n.positive)))
        return zero;
    }

    // Absorption: x & (x | y) = x and x | (x & y) = x, generalised to
    // operand-list inclusion.
    std::vector<Id> kept;
    for (Id c : flat) {
      const auto c_ops = operands(dual, c);
      bool absorbed = false;
      for (Id d : flat) {
        if (d == c) continue;
        const auto d_ops = operands(dual, d);
        if (d_ops.size() < c_ops.size() &&
            std::includes(c_ops.begin(), c_ops.end(), d_ops.begin(), d_ops.end())) {
          absorbed = true;
          break;
        }
      }
      if (!absorbed) kept.push_back(c);
    }

    if (kept.empty()) return unit;
    if (kept.size() == 1) return kept[0];
    return intern({kind, 0, true, std::move(kept)});
  }

  std::vector<Node> nodes_;
  std::map<Node, Id> index_;
};


// Sorted, subsumption-free list of clauses; {} is false, {{}} is true.
using Clause = std::vector<Id>;
using Dnf = std::vector<Clause>;

class Progression {
 public:
  explicit Progression(Pool& pool) : pool_(pool) {}

  static Dnf truth() { return {Clause{}}; }

  Dnf of(Id id) {
    const Node n = pool_.at(id);
    switch (n.kind) {
      case NodeKind::True: return truth();
      case NodeKind::False: return {};
      case NodeKind::And: {
        Dnf out = truth();
        for (Id k : n.kids) out = product(out, of(k));
        return out;
      }
      case NodeKind::Or: {
        Dnf out;
        for (Id k : n.kids) out = sum(std::move(out), of(k));
        return out;
      }
      default: return {Clause{id}};
    }
  }

  Dnf progress(const Dnf& d, Symbol a) {
    Dnf out;
    for (const Clause& c : d) {
      Dnf term = truth();
      for (Id x : c) {
        term = product(term, progress_node(x, a));
        if (term.empty()) break;
      }
      out = sum(std::move(out), term);
    }
    return out;
  }

 private:
  const Dnf& progress_node(Id id, Symbol a) {
    const std::uint64_t key = (std::uint64_t{id} << 32) | a;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const Node n = pool_.at(id);
    Dnf r;
    switch (n.kind) {
      case NodeKind::True: r = truth(); break;
      case NodeKind::False: break;
      case NodeKind::Lit:
        if ((((a >> n.prop) & 1U) != 0) == n.positive) r = truth();
        break;
      case NodeKind::And:
        r = truth();
        for (Id k : n.kids) r = product(r, progress_node(k, a));
        break;
      case NodeKind::Or:
        for (Id k : n.kids) r = sum(std::move(r), progress_node(k, a));
        break;
      case NodeKind::Next: r = of(n.kids[0]); break;
      case NodeKind::Until:
        r = sum(progress_node(n.kids[1], a), product(progress_node(n.kids[0], a), {Clause{id}}));
        break;
      case NodeKind::Eventually: r = sum(progress_node(n.kids[0], a), {Clause{id}}); break;
    }
    return memo_.emplace(key, std::move(r)).first->second;
  }

  bool contradictory(const Clause& c) const {
    for (Id x : c) {
      const Node& n = pool_.at(x);
      if (n.kind == NodeKind::Lit && n.positive &&
          std::binary_search(c.begin(), c.end(), pool_.literal_lookup(n.prop, false)))
        return true;
    }
    return false;
  }

  Dnf normalize(Dnf d) const {
    for (Clause& c : d) {
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    std::erase_if(d, [&](const Clause& c) { return contradictory(c); });
    std::sort(d.begin(), d.end(),
              [](const Clause& x, const Clause& y) { return x.size() != y.size() ? x.size() < y.size() : x < y; });
    d.erase(std::unique(d.begin(), d.end()), d.end());
    Dnf out;
    for (Clause& c : d) {
      const bool subsumed = std::any_of(out.begin(), out.end(), [&](const Clause& k) {
        return std::includes(c.begin(), c.end(), k.begin(), k.end());
      });
      if (!subsumed) out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  Dnf sum(Dnf x, const Dnf& y) const {
    x.insert(x.end(), y.begin(), y.end());
    return normalize(std::move(x));
  }

  Dnf product(const Dnf& x, const Dnf& y) const {
    Dnf out;
    for (const Clause& c : x)
      for (const Clause& k : y) {
        Clause m = c;
        m.insert(m.end(), k.begin(), k.end());
        out.push_back(std::move(m));
      }
    return normalize(std::move(out));
  }

  Pool& pool_;
  std::unordered_map<std::uint64_t, Dnf> memo_;
};

Id lower(const Formula& f, const std::vector<std::string>& ap, Pool& pool) {
  using K = Formula::Kind;
  auto prop_index = [&](const std::string& name) {
    auto it = std::find(ap.begin(), ap.end(), name);
    if (it == ap.end()) throw UnknownAtomError(name);
    return static_cast<std::uint32_t>(it - ap.begin());
  };
  switch (f.kind()) {
    case K::True:
      return Pool::kTrue;
    case K::False:
      return Pool::kFalse;
    case K::Atom:
      return pool.literal(prop_index(f.atom_name()), true);
    case K::Not:
      if (f.operand().kind() != K::Atom)
        throw NotCosafeError(f.to_string());  // unreachable for CosafeFormula
      return pool.literal(prop_index(f.operand().atom_name()), false);
    case K::And:
      return pool.conj({lower(f.lhs(), ap, pool), lower(f.rhs(), ap, pool)});
    case K::Or:
      return pool.disj({lower(f.lhs(), ap, pool), lower(f.rhs(), ap, pool)});
    case K::Next:
      return pool.next(lower(f.operand(), ap, pool));
    case K::Until:
      return pool.until(lower(f.lhs(), ap, pool), lower(f.rhs(), ap, pool));
    case K::Eventually:
      return pool.eventually(lower(f.operand(), ap, pool));
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Dfa to_dfa(const CosafeFormula& f, const std::vector<std::string>& ap,
           const TranslateOptions& options) {
  if (ap.size() > Dfa::kMaxProps) throw Error("too many atomic propositions");
  const Symbol symbols = Symbol{1} << ap.size();

  Pool pool;
  Progression prog(pool);
  const Dnf init = prog.of(lower(f.formula(), ap, pool));

  // Explore residuals reachable from the initial formula.
  std::vector<Dnf> residuals{init};
  std::map<Dnf, std::uint32_t> slot{{init, 0}};
  std::vector<std::vector<std::uint32_t>> succ;
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    std::vector<std::uint32_t> row(symbols);
    for (Symbol a = 0; a < symbols; ++a) {
      Dnf r = prog.progress(residuals[i], a);
      auto [it, inserted] = slot.try_emplace(r, static_cast<std::uint32_t>(residuals.size()));
      if (inserted) {
        if (residuals.size() >= options.max_states)
          throw StateBudgetError("DFA construction exceeded " +
                                 std::to_string(options.max_states) + " states");
        residuals.push_back(r);
      }
      row[a] = it->second;
    }
    succ.push_back(std::move(row));
  }
  const std::size_t n = residuals.size();

  // valid = least fixpoint of {true} ∪ {q : every successor valid}.
  std::vector<bool> valid(n, false);
  for (std::size_t q = 0; q < n; ++q) valid[q] = residuals[q] == Progression::truth();
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t q = 0; q < n; ++q) {
      if (valid[q]) continue;
      if (std::all_of(succ[q].begin(), succ[q].end(), [&](auto d) { return valid[d]; })) {
        valid[q] = true;
        changed = true;
      }
    }
  }
  // live = can reach a valid residual.
  std::vector<bool> live = valid;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t q = 0; q < n; ++q) {
      if (live[q]) continue;
      if (std::any_of(succ[q].begin(), succ[q].end(), [&](auto d) { return live[d]; })) {
        live[q] = true;
        changed = true;
      }
    }
  }

  // Quotient: all valid residuals collapse to "true", all dead ones to "false".
  constexpr std::int64_t kTrueClass = -1;
  constexpr std::int64_t kFalseClass = -2;
  auto cls = [&](std::uint32_t q) -> std::int64_t {
    if (valid[q]) return kTrueClass;
    if (!live[q]) return kFalseClass;
    return q;
  };

  std::vector<std::int64_t> order{cls(0)};
  std::map<std::int64_t, std::size_t> seen{{cls(0), 0}};
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] < 0) continue;
    for (auto d : succ[static_cast<std::size_t>(order[i])]) {
      if (seen.try_emplace(cls(d), order.size()).second) order.push_back(cls(d));
    }
  }

  // Number "true" first, the sink last, the rest in discovery order.
  std::map<std::int64_t, DfaState> number;
  DfaState next_id = 0;
  if (seen.contains(kTrueClass)) number[kTrueClass] = next_id++;
  for (auto c : order)
    if (c >= 0) number[c] = next_id++;
  if (seen.contains(kFalseClass)) number[kFalseClass] = next_id++;

  Dfa out(ap, number.size(), number.at(cls(0)));
  for (auto [c, q] : number) {
    out.set_accepting(q, c == kTrueClass);
    for (Symbol a = 0; a < symbols; ++a) {
      DfaState dst = c < 0 ? q : number.at(cls(succ[static_cast<std::size_t>(c)][a]));
      out.set_transition(q, a, dst);
    }
  }
  if (seen.contains(kFalseClass)) out.set_sink(number.at(kFalseClass));
  return out;
}

}  // namespace oppsyn
