#include <cctype>
#include <string>
#include <vector>

#include "oppsyn/error.hpp"
#include "oppsyn/formula.hpp"

namespace oppsyn {
namespace {

enum class Tok { LParen, RParen, Not, And, Or, Until, Next, Eventually, True, False, Ident, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

struct Spelling {
  std::string_view text;
  Tok kind;
};

// Multi-byte spellings are tried before single characters.
constexpr Spelling kSymbols[] = {
    {"¬", Tok::Not},        {"∧", Tok::And},   {"∨", Tok::Or},
    {"◯", Tok::Next},       {"○", Tok::Next},  {"◇", Tok::Eventually},
    {"⊤", Tok::True},       {"⊥", Tok::False}, {"\U0001D4B0", Tok::Until},
    {"&&", Tok::And},            {"||", Tok::Or},        {"(", Tok::LParen},
    {")", Tok::RParen},          {"!", Tok::Not},        {"~", Tok::Not},
    {"&", Tok::And},             {"|", Tok::Or},
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    bool matched = false;
    for (const auto& s : kSymbols) {
      if (text.substr(i, s.text.size()) == s.text) {
        out.push_back({s.kind, i, std::string(s.text)});
        i += s.text.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      std::string word(text.substr(i, j - i));
      Tok kind = Tok::Ident;
      if (word == "X") kind = Tok::Next;
      else if (word == "F") kind = Tok::Eventually;
      else if (word == "U") kind = Tok::Until;
      else if (word == "true") kind = Tok::True;
      else if (word == "false") kind = Tok::False;
      out.push_back({kind, i, std::move(word)});
      i = j;
      continue;
    }
    throw ParseError("unexpected character '" + std::string(1, text[i]) + "'", i);
  }
  out.push_back({Tok::End, text.size(), ""});
  return out;
}

class Parser {
 public:
  // A null `ap` accepts every identifier.
  Parser(std::vector<Token> tokens, const std::set<std::string>* ap)
      : tokens_(std::move(tokens)), ap_(ap) {}

  Formula parse() {
    Formula f = parse_or();
    if (peek().kind != Tok::End)
      throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept(Tok::Or)) f = Formula::disjunction(f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_until();
    while (accept(Tok::And)) f = Formula::conjunction(f, parse_until());
    return f;
  }

  Formula parse_until() {
    Formula lhs = parse_unary();
    if (accept(Tok::Until)) return Formula::until(lhs, parse_until());
    return lhs;
  }

  Formula parse_unary() {
    if (accept(Tok::Not)) return Formula::negation(parse_unary());
    if (accept(Tok::Next)) return Formula::next(parse_unary());
    if (accept(Tok::Eventually)) return Formula::eventually(parse_unary());
    return parse_primary();
  }

  Formula parse_primary() {
    const Token& t = advance();
    switch (t.kind) {
      case Tok::True:
        return Formula::top();
      case Tok::False:
        return Formula::bottom();
      case Tok::Ident:
        if (ap_ && !ap_->contains(t.text)) throw UnknownAtomError(t.text);
        return Formula::atom(t.text);
      case Tok::LParen: {
        Formula f = parse_or();
        if (!accept(Tok::RParen)) throw ParseError("expected ')'", peek().pos);
        return f;
      }
      case Tok::End:
        throw ParseError("unexpected end of formula", t.pos);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> tokens_;
  const std::set<std::string>* ap_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, const std::set<std::string>& ap) {
  return Parser(tokenize(text), &ap).parse();
}

Formula parse_formula(std::string_view text) { return Parser(tokenize(text), nullptr).parse(); }

}  // namespace oppsyn
