#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace oppsyn {

/// Immutable LTL syntax tree. Copies share structure.
class Formula {
 public:
  enum class Kind { True, False, Atom, Not, And, Or, Next, Until, Eventually };

  static Formula top();
  static Formula bottom();
  static Formula atom(std::string name);
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula next(Formula f);
  static Formula until(Formula lhs, Formula rhs);
  static Formula eventually(Formula f);

  Kind kind() const;
  /// Only valid for Kind::Atom.
  const std::string& atom_name() const;
  /// Operand of a unary node (Not, Next, Eventually).
  const Formula& operand() const;
  const Formula& lhs() const;
  const Formula& rhs() const;

  bool is_unary() const;
  bool is_binary() const;

  /// Every atom name occurring in the formula.
  std::set<std::string> atoms() const;
  /// Number of nodes.
  std::size_t size() const;

  /// ASCII rendering that parses back to an equal formula.
  std::string to_string() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// A formula in positive normal form that only uses next, until and
/// eventually. Obtainable only through check_cosafe().
class CosafeFormula {
 public:
  const Formula& formula() const { return formula_; }

 private:
  friend CosafeFormula check_cosafe(const Formula& f);
  explicit CosafeFormula(Formula f) : formula_(std::move(f)) {}
  Formula formula_;
};

/// Parses `text` with precedence (tightest first) unary ! X F, then U
/// (right-associative), then &, then |. Unicode spellings of the
/// operators are accepted too. Every atom must be a member of `ap`.
Formula parse_formula(std::string_view text, const std::set<std::string>& ap);
/// As above with every identifier accepted as an atom.
Formula parse_formula(std::string_view text);

/// Pushes negations down to the atoms. Throws NotCosafeError when the
/// negation-free form would need always or release.
CosafeFormula check_cosafe(const Formula& f);

}  // namespace oppsyn
