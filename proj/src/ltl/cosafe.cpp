#include "oppsyn/error.hpp"
#include "oppsyn/formula.hpp"

namespace oppsyn {
namespace {

using K = Formula::Kind;

Formula pnf(const Formula& f);

// Positive normal form of !g.
Formula negated_pnf(const Formula& g, const Formula& whole) {
  switch (g.kind()) {
    case K::True:
      return Formula::bottom();
    case K::False:
      return Formula::top();
    case K::Atom:
      return Formula::negation(g);
    case K::Not:
      return pnf(g.operand());
    case K::And:
      return Formula::disjunction(negated_pnf(g.lhs(), Formula::negation(g.lhs())),
                                  negated_pnf(g.rhs(), Formula::negation(g.rhs())));
    case K::Or:
      return Formula::conjunction(negated_pnf(g.lhs(), Formula::negation(g.lhs())),
                                  negated_pnf(g.rhs(), Formula::negation(g.rhs())));
    case K::Next:
      return Formula::next(negated_pnf(g.operand(), Formula::negation(g.operand())));
    case K::Until:
    case K::Eventually:
      throw NotCosafeError(whole.to_string());
  }
  throw std::logic_error("unreachable");
}

Formula pnf(const Formula& f) {
  switch (f.kind()) {
    case K::True:
    case K::False:
    case K::Atom:
      return f;
    case K::Not:
      return negated_pnf(f.operand(), f);
    case K::And:
      return Formula::conjunction(pnf(f.lhs()), pnf(f.rhs()));
    case K::Or:
      return Formula::disjunction(pnf(f.lhs()), pnf(f.rhs()));
    case K::Next:
      return Formula::next(pnf(f.operand()));
    case K::Until:
      return Formula::until(pnf(f.lhs()), pnf(f.rhs()));
    case K::Eventually:
      return Formula::eventually(pnf(f.operand()));
  }
  throw std::logic_error("unreachable");
}

}  // namespace

CosafeFormula check_cosafe(const Formula& f) { return CosafeFormula(pnf(f)); }

}  // namespace oppsyn
