#include "topocheck/formula.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <utility>

namespace topocheck {

FormulaRef Formula::atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("atom name must be non-empty");
  return FormulaRef(new Formula(Conn::Atom, std::move(name), nullptr, nullptr));
}

FormulaRef Formula::bottom() {
  static const FormulaRef instance(new Formula(Conn::Bottom, {}, nullptr, nullptr));
  return instance;
}

FormulaRef Formula::conj(FormulaRef lhs, FormulaRef rhs) {
  return FormulaRef(new Formula(Conn::And, {}, std::move(lhs), std::move(rhs)));
}

FormulaRef Formula::disj(FormulaRef lhs, FormulaRef rhs) {
  return FormulaRef(new Formula(Conn::Or, {}, std::move(lhs), std::move(rhs)));
}

FormulaRef Formula::imp(FormulaRef lhs, FormulaRef rhs) {
  return FormulaRef(new Formula(Conn::Imp, {}, std::move(lhs), std::move(rhs)));
}

FormulaRef Formula::neg(FormulaRef inner) { return imp(std::move(inner), bottom()); }

bool equal(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Conn::Atom:
      return a.name() == b.name();
    case Conn::Bottom:
      return true;
    default:
      return equal(*a.left(), *b.left()) && equal(*a.right(), *b.right());
  }
}

ParseError::ParseError(std::string message, std::size_t offset, std::vector<std::string> expected)
    : std::runtime_error(std::move(message)), offset_(offset), expected_(std::move(expected)) {}

namespace {

enum class Tok { Atom, Bottom, Not, And, Or, Imp, Iff, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;   // atom name when kind == Atom
  std::size_t offset; // byte offset into the input
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Atom: return "atom";
    case Tok::Bottom: return "'_|_'";
    case Tok::Not: return "'~'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Imp: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "?";
}

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      std::size_t at = pos_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, {}, at});
        return out;
      }
      char c = text_[pos_];
      if (is_alpha(c)) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_ident(text_[pos_])) ++pos_;
        out.push_back({Tok::Atom, std::string(text_.substr(start, pos_ - start)), at});
      } else if (take("_|_")) {
        out.push_back({Tok::Bottom, {}, at});
      } else if (take("~") || take("\xc2\xac")) {  // ¬
        out.push_back({Tok::Not, {}, at});
      } else if (take("&") || take("\xe2\x88\xa7")) {  // ∧
        out.push_back({Tok::And, {}, at});
      } else if (take("<->") || take("\xe2\x86\x94")) {  // ↔
        out.push_back({Tok::Iff, {}, at});
      } else if (take("->") || take("\xe2\x86\x92")) {  // →
        out.push_back({Tok::Imp, {}, at});
      } else if (take("|") || take("\xe2\x88\xa8")) {  // ∨
        out.push_back({Tok::Or, {}, at});
      } else if (take("\xe2\x8a\xa5")) {  // ⊥
        out.push_back({Tok::Bottom, {}, at});
      } else if (take("(")) {
        out.push_back({Tok::LParen, {}, at});
      } else if (take(")")) {
        out.push_back({Tok::RParen, {}, at});
      } else {
        throw ParseError("syntax error at byte " + std::to_string(at) + ": unrecognized character",
                         at, {});
      }
    }
  }

private:
  static bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
  static bool is_ident(char c) { return is_alpha(c) || (c >= '0' && c <= '9') || c == '_'; }

  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  bool take(std::string_view prefix) {
    if (text_.substr(pos_).substr(0, prefix.size()) != prefix) return false;
    pos_ += prefix.size();
    return true;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  FormulaRef run() {
    if (tokens_.front().kind == Tok::End)
      fail({Tok::Not, Tok::Atom, Tok::Bottom, Tok::LParen});
    FormulaRef f = parse_iff();
    if (peek().kind != Tok::End) fail({Tok::And, Tok::Or, Tok::Imp, Tok::Iff, Tok::End});
    return f;
  }

private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }
  bool accept(Tok t) {
    if (peek().kind != t) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(std::vector<Tok> expected) const {
    std::vector<std::string> names;
    names.reserve(expected.size());
    for (Tok t : expected) names.emplace_back(describe(t));
    std::ostringstream msg;
    msg << "syntax error at byte " << peek().offset << ": expected ";
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i > 0) msg << (i + 1 == names.size() ? " or " : ", ");
      msg << names[i];
    }
    throw ParseError(msg.str(), peek().offset, std::move(names));
  }

  // iff := imp ("<->" imp)*, each step expanding to (a -> b) & (b -> a)
  FormulaRef parse_iff() {
    FormulaRef f = parse_imp();
    while (accept(Tok::Iff)) {
      FormulaRef g = parse_imp();
      f = Formula::conj(Formula::imp(f, g), Formula::imp(g, f));
    }
    return f;
  }

  // imp := or ("->" imp)?
  FormulaRef parse_imp() {
    FormulaRef f = parse_or();
    if (accept(Tok::Imp)) return Formula::imp(std::move(f), parse_imp());
    return f;
  }

  FormulaRef parse_or() {
    FormulaRef f = parse_and();
    while (accept(Tok::Or)) f = Formula::disj(std::move(f), parse_and());
    return f;
  }

  FormulaRef parse_and() {
    FormulaRef f = parse_neg();
    while (accept(Tok::And)) f = Formula::conj(std::move(f), parse_neg());
    return f;
  }

  FormulaRef parse_neg() {
    switch (peek().kind) {
      case Tok::Not:
        advance();
        return Formula::neg(parse_neg());
      case Tok::Atom:
        return Formula::atom(advance().text);
      case Tok::Bottom:
        advance();
        return Formula::bottom();
      case Tok::LParen: {
        advance();
        FormulaRef f = parse_iff();
        if (!accept(Tok::RParen)) fail({Tok::And, Tok::Or, Tok::Imp, Tok::Iff, Tok::RParen});
        return f;
      }
      default:
        fail({Tok::Not, Tok::Atom, Tok::Bottom, Tok::LParen});
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// Binding strength used by the renderer; parenthesize a child whenever its
// level is below what the context requires.
int level(const Formula& f) {
  switch (f.kind()) {
    case Conn::Imp: return f.is_negation() ? 4 : 1;
    case Conn::Or: return 2;
    case Conn::And: return 3;
    default: return 5;
  }
}

void render_rec(const Formula& f, int min_level, std::string& out) {
  bool parens = level(f) < min_level;
  if (parens) out += '(';
  switch (f.kind()) {
    case Conn::Atom:
      out += f.name();
      break;
    case Conn::Bottom:
      out += "_|_";
      break;
    case Conn::And:
      render_rec(*f.left(), 3, out);
      out += " & ";
      render_rec(*f.right(), 4, out);
      break;
    case Conn::Or:
      render_rec(*f.left(), 2, out);
      out += " | ";
      render_rec(*f.right(), 3, out);
      break;
    case Conn::Imp:
      if (f.is_negation()) {
        out += '~';
        render_rec(*f.left(), 4, out);
      } else {
        render_rec(*f.left(), 2, out);
        out += " -> ";
        render_rec(*f.right(), 1, out);
      }
      break;
  }
  if (parens) out += ')';
}

void collect_atoms(const Formula& f, std::vector<std::string>& out) {
  switch (f.kind()) {
    case Conn::Atom:
      if (std::find(out.begin(), out.end(), f.name()) == out.end()) out.push_back(f.name());
      break;
    case Conn::Bottom:
      break;
    default:
      collect_atoms(*f.left(), out);
      collect_atoms(*f.right(), out);
  }
}

}  // namespace

FormulaRef parse(std::string_view text) {
  return Parser(Lexer(text).run()).run();
}

std::string render(const Formula& f) {
  std::string out;
  render_rec(f, 1, out);
  return out;
}

std::vector<std::string> atoms(const Formula& f) {
  std::vector<std::string> out;
  collect_atoms(f, out);
  return out;
}

FormulaRef substitute(const FormulaRef& schema, const std::map<std::string, FormulaRef>& binding) {
  switch (schema->kind()) {
    case Conn::Atom: {
      auto it = binding.find(schema->name());
      if (it == binding.end())
        throw std::invalid_argument("substitute: unbound atom '" + schema->name() + "'");
      return it->second;
    }
    case Conn::Bottom:
      return schema;
    case Conn::And:
      return Formula::conj(substitute(schema->left(), binding), substitute(schema->right(), binding));
    case Conn::Or:
      return Formula::disj(substitute(schema->left(), binding), substitute(schema->right(), binding));
    case Conn::Imp:
      return Formula::imp(substitute(schema->left(), binding), substitute(schema->right(), binding));
  }
  throw std::logic_error("unreachable");
}

}  // namespace topocheck
