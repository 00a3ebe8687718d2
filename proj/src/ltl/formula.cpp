#include "oppsyn/formula.hpp"

#include <stdexcept>
#include <vector>

#include "oppsyn/error.hpp"

namespace oppsyn {

struct Formula::Node {
  Kind kind;
  std::string atom;
  // One child for unary nodes, two for binary ones.
  std::vector<Formula> children;
};

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula Formula::top() {
  static const Formula f(std::make_shared<const Node>(Node{Kind::True, {}, {}}));
  return f;
}

Formula Formula::bottom() {
  static const Formula f(
      std::make_shared<const Node>(Node{Kind::False, {}, {}}));
  return f;
}

Formula Formula::atom(std::string name) {
  if (name.empty()) throw Error("atom name must be nonempty");
  return Formula(
      std::make_shared<const Node>(Node{Kind::Atom, std::move(name), {}}));
}

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, {std::move(f)}}));
}

Formula Formula::next(Formula f) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::Next, {}, {std::move(f)}}));
}

Formula Formula::eventually(Formula f) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::Eventually, {}, {std::move(f)}}));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::And, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Or, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::until(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Until, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

const std::string& Formula::atom_name() const {
  if (node_->kind != Kind::Atom) throw std::logic_error("not an atom");
  return node_->atom;
}

bool Formula::is_unary() const {
  return node_->kind == Kind::Not || node_->kind == Kind::Next ||
         node_->kind == Kind::Eventually;
}

bool Formula::is_binary() const {
  return node_->kind == Kind::And || node_->kind == Kind::Or ||
         node_->kind == Kind::Until;
}

const Formula& Formula::operand() const {
  if (!is_unary()) throw std::logic_error("not a unary formula");
  return node_->children[0];
}

const Formula& Formula::lhs() const {
  if (!is_binary()) throw std::logic_error("not a binary formula");
  return node_->children[0];
}

const Formula& Formula::rhs() const {
  if (!is_binary()) throw std::logic_error("not a binary formula");
  return node_->children[1];
}

std::set<std::string> Formula::atoms() const {
  std::set<std::string> out;
  if (kind() == Kind::Atom) {
    out.insert(atom_name());
  } else if (is_unary()) {
    out = operand().atoms();
  } else if (is_binary()) {
    out = lhs().atoms();
    out.merge(rhs().atoms());
  }
  return out;
}

std::size_t Formula::size() const {
  if (is_unary()) return 1 + operand().size();
  if (is_binary()) return 1 + lhs().size() + rhs().size();
  return 1;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return true;
    case Formula::Kind::Atom:
      return a.atom_name() == b.atom_name();
    case Formula::Kind::Not:
    case Formula::Kind::Next:
    case Formula::Kind::Eventually:
      return a.operand() == b.operand();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

namespace {

// Binding strength used when printing; mirrors the parser.
int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Or:
      return 1;
    case Formula::Kind::And:
      return 2;
    case Formula::Kind::Until:
      return 3;
    case Formula::Kind::Not:
    case Formula::Kind::Next:
    case Formula::Kind::Eventually:
      return 4;
    default:
      return 5;
  }
}

void print(const Formula& f, std::string& out);

void print_child(const Formula& child, int min_prec, std::string& out) {
  if (precedence(child.kind()) < min_prec) {
    out += '(';
    print(child, out);
    out += ')';
  } else {
    print(child, out);
  }
}

void print(const Formula& f, std::string& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
      out += "true";
      return;
    case K::False:
      out += "false";
      return;
    case K::Atom:
      out += f.atom_name();
      return;
    case K::Not:
    case K::Next:
    case K::Eventually:
      out += f.kind() == K::Not ? "!" : f.kind() == K::Next ? "X " : "F ";
      print_child(f.operand(), 4, out);
      return;
    case K::Until:
      // Right-associative: the left side needs strictly tighter binding.
      print_child(f.lhs(), 4, out);
      out += " U ";
      print_child(f.rhs(), 3, out);
      return;
    case K::And:
    case K::Or: {
      const int p = precedence(f.kind());
      print_child(f.lhs(), p, out);
      out += f.kind() == K::And ? " & " : " | ";
      // Left-associative: a right child of equal precedence needs parens.
      print_child(f.rhs(), p + 1, out);
      return;
    }
  }
}

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

}  // namespace oppsyn
