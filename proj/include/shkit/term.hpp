#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "shkit/algebra.hpp"

namespace shkit {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Term AST over the signature {\/, /\, ->, ', 0, 1}.  The derived operations
// star (t* = t -> 0) and plus (t+ = t'*') expand at construction, so a tree
// only ever contains the six primitive forms.
struct Term {
  enum class Kind { Var, Zero, One, Meet, Join, Arrow, Neg };

  Kind kind;
  std::string name;    // Var
  TermPtr lhs, rhs;    // binary ops; Neg uses lhs only

  explicit Term(Kind k) : kind(k) {}
};

inline TermPtr var(std::string name) {
  if (name.empty()) throw std::invalid_argument("variable name empty");
  auto t = std::make_shared<Term>(Term::Kind::Var);
  t->name = std::move(name);
  return t;
}
inline TermPtr zero() {
  static const TermPtr t = std::make_shared<Term>(Term::Kind::Zero);
  return t;
}
inline TermPtr one() {
  static const TermPtr t = std::make_shared<Term>(Term::Kind::One);
  return t;
}
inline TermPtr binary(Term::Kind k, TermPtr a, TermPtr b) {
  auto t = std::make_shared<Term>(k);
  t->lhs = std::move(a);
  t->rhs = std::move(b);
  return t;
}
inline TermPtr meet(TermPtr a, TermPtr b) {
  return binary(Term::Kind::Meet, std::move(a), std::move(b));
}
inline TermPtr join(TermPtr a, TermPtr b) {
  return binary(Term::Kind::Join, std::move(a), std::move(b));
}
inline TermPtr arrow(TermPtr a, TermPtr b) {
  return binary(Term::Kind::Arrow, std::move(a), std::move(b));
}
inline TermPtr neg(TermPtr a) {
  auto t = std::make_shared<Term>(Term::Kind::Neg);
  t->lhs = std::move(a);
  return t;
}
inline TermPtr star(TermPtr a) { return arrow(std::move(a), zero()); }
inline TermPtr plus(TermPtr a) { return neg(star(neg(std::move(a)))); }

inline bool equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Var: return a->name == b->name;
    case Term::Kind::Zero:
    case Term::Kind::One: return true;
    case Term::Kind::Neg: return equal(a->lhs, b->lhs);
    default: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
  }
}

inline void collect_variables(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case Term::Kind::Var: out.insert(t->name); break;
    case Term::Kind::Zero:
    case Term::Kind::One: break;
    case Term::Kind::Neg: collect_variables(t->lhs, out); break;
    default:
      collect_variables(t->lhs, out);
      collect_variables(t->rhs, out);
  }
}

// True when every arrow in the term is a pseudocomplement t -> 0.  Such
// terms take the same value under every semi-Heyting arrow on a given
// lattice, since x -> 0 is forced to be the unique pseudocomplement.
inline bool arrow_only_as_star(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var:
    case Term::Kind::Zero:
    case Term::Kind::One: return true;
    case Term::Kind::Neg: return arrow_only_as_star(t->lhs);
    case Term::Kind::Arrow:
      return t->rhs->kind == Term::Kind::Zero && arrow_only_as_star(t->lhs);
    default:
      return arrow_only_as_star(t->lhs) && arrow_only_as_star(t->rhs);
  }
}

// ---------------------------------------------------------------------------
// Printing.  Precedence: postfix ' * + bind tightest, then /\, then \/, then
// the non-associative ->.  Star/plus patterns are printed back in postfix
// sugar; re-parsing yields the identical tree.

namespace detail {

enum Prec { kPrecArrow = 0, kPrecJoin = 1, kPrecMeet = 2, kPrecPostfix = 3 };

// Recognize t -> 0 (star) and (t'->0)' (plus) so printed terms stay close to
// the usual notation.
inline const Term* star_operand(const Term& t) {
  if (t.kind == Term::Kind::Arrow && t.rhs->kind == Term::Kind::Zero)
    return t.lhs.get();
  return nullptr;
}
inline const Term* plus_operand(const Term& t) {
  if (t.kind != Term::Kind::Neg) return nullptr;
  const Term* s = star_operand(*t.lhs);
  if (s && s->kind == Term::Kind::Neg) return s->lhs.get();
  return nullptr;
}

inline void print_rec(const Term& t, int min_prec, std::string& out) {
  auto wrap = [&](int prec, auto&& body) {
    const bool parens = prec < min_prec;
    if (parens) out += '(';
    body();
    if (parens) out += ')';
  };
  if (const Term* p = plus_operand(t)) {
    wrap(kPrecPostfix, [&] {
      print_rec(*p, kPrecPostfix, out);
      out += '+';
    });
    return;
  }
  if (const Term* s = star_operand(t)) {
    wrap(kPrecPostfix, [&] {
      print_rec(*s, kPrecPostfix, out);
      out += '*';
    });
    return;
  }
  switch (t.kind) {
    case Term::Kind::Var: out += t.name; break;
    case Term::Kind::Zero: out += '0'; break;
    case Term::Kind::One: out += '1'; break;
    case Term::Kind::Neg:
      wrap(kPrecPostfix, [&] {
        print_rec(*t.lhs, kPrecPostfix, out);
        out += '\'';
      });
      break;
    case Term::Kind::Meet:
      wrap(kPrecMeet, [&] {
        print_rec(*t.lhs, kPrecMeet, out);
        out += " /\\ ";
        print_rec(*t.rhs, kPrecMeet + 1, out);
      });
      break;
    case Term::Kind::Join:
      wrap(kPrecJoin, [&] {
        print_rec(*t.lhs, kPrecJoin, out);
        out += " \\/ ";
        print_rec(*t.rhs, kPrecJoin + 1, out);
      });
      break;
    case Term::Kind::Arrow:
      wrap(kPrecArrow, [&] {
        print_rec(*t.lhs, kPrecArrow + 1, out);
        out += " -> ";
        print_rec(*t.rhs, kPrecArrow + 1, out);
      });
      break;
  }
}

}  // namespace detail

inline std::string print(const TermPtr& t) {
  std::string out;
  detail::print_rec(*t, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing.

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " +
                           std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  TermPtr parse_term() {
    TermPtr t = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

  // expr := join ('->' join)?   (-> is non-associative)
  TermPtr parse_expr() {
    TermPtr lhs = parse_join();
    skip_ws();
    if (try_consume("->")) {
      TermPtr rhs = parse_join();
      skip_ws();
      if (peek_is("->"))
        fail("-> is non-associative; parenthesize nested arrows");
      return arrow(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

 private:
  TermPtr parse_join() {
    TermPtr t = parse_meet();
    skip_ws();
    while (try_consume("\\/")) {
      t = join(std::move(t), parse_meet());
      skip_ws();
    }
    return t;
  }

  TermPtr parse_meet() {
    TermPtr t = parse_postfix();
    skip_ws();
    while (try_consume("/\\")) {
      t = meet(std::move(t), parse_postfix());
      skip_ws();
    }
    return t;
  }

  TermPtr parse_postfix() {
    TermPtr t = parse_atom();
    for (;;) {
      skip_ws();
      if (try_consume("'")) {
        t = neg(std::move(t));
      } else if (try_consume("*")) {
        t = star(std::move(t));
      } else if (try_consume("+")) {
        t = plus(std::move(t));
      } else {
        return t;
      }
    }
  }

  TermPtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected a term");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      TermPtr t = parse_expr();
      skip_ws();
      if (!try_consume(")")) fail("expected ')'");
      return t;
    }
    if (c == '0') {
      ++pos_;
      return zero();
    }
    if (c == '1') {
      ++pos_;
      return one();
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             ((text_[pos_] >= 'a' && text_[pos_] <= 'z') ||
              (text_[pos_] >= '0' && text_[pos_] <= '9') || text_[pos_] == '_'))
        ++pos_;
      return var(std::string(text_.substr(start, pos_ - start)));
    }
    fail("expected a variable, constant or '('");
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  bool peek_is(std::string_view s) const {
    return text_.substr(pos_, s.size()) == s;
  }
  bool try_consume(std::string_view s) {
    if (!peek_is(s)) return false;
    pos_ += s.size();
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;

 public:
  std::size_t pos() const { return pos_; }
  bool consume_relation(bool& is_leq) {
    skip_ws();
    if (try_consume("<=")) {
      is_leq = true;
      return true;
    }
    if (try_consume("=")) {
      is_leq = false;
      return true;
    }
    return false;
  }
  void expect_end() {
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
  }
};

}  // namespace detail

inline TermPtr parse(std::string_view text) {
  detail::Parser p(text);
  return p.parse_term();
}

// ---------------------------------------------------------------------------
// Identities.

// A named pair of terms.  An inequality l <= r is checked through its meet
// encoding l /\ r = l; the original sides are kept for display.
struct Identity {
  enum class Kind { Equation, Inequality };

  std::string name;
  TermPtr lhs, rhs;
  Kind kind = Kind::Equation;
  std::vector<std::string> variables;  // sorted union of both sides

  // Sides actually compared by a checker.
  TermPtr check_lhs() const {
    return kind == Kind::Inequality ? meet(lhs, rhs) : lhs;
  }
  TermPtr check_rhs() const { return kind == Kind::Inequality ? lhs : rhs; }

  std::string text() const {
    return print(lhs) + (kind == Kind::Inequality ? " <= " : " = ") +
           print(rhs);
  }

  // Arrow-independent given the lattice and negation (see arrow_only_as_star).
  bool star_fragment() const {
    return arrow_only_as_star(lhs) && arrow_only_as_star(rhs);
  }
};

inline Identity make_identity(std::string name, TermPtr lhs, TermPtr rhs,
                              Identity::Kind kind = Identity::Kind::Equation) {
  Identity id;
  id.name = std::move(name);
  id.lhs = std::move(lhs);
  id.rhs = std::move(rhs);
  id.kind = kind;
  std::set<std::string> vars;
  collect_variables(id.lhs, vars);
  collect_variables(id.rhs, vars);
  id.variables.assign(vars.begin(), vars.end());
  return id;
}

inline Identity parse_identity(std::string_view text, std::string name = "") {
  detail::Parser p(text);
  TermPtr lhs = p.parse_expr();
  bool is_leq = false;
  if (!p.consume_relation(is_leq))
    throw SyntaxError("expected '=' or '<='", p.pos());
  TermPtr rhs = p.parse_expr();
  p.expect_end();
  if (name.empty()) name = std::string(text);
  return make_identity(std::move(name), std::move(lhs), std::move(rhs),
                       is_leq ? Identity::Kind::Inequality
                              : Identity::Kind::Equation);
}

// Identity files: one `name : lhs = rhs` per line, '#' starts a comment.
inline std::vector<Identity> parse_identity_lines(std::string_view text) {
  std::vector<Identity> out;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t eol = text.find('\n', line_start);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(line_start, eol - line_start);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b != std::string_view::npos) {
      std::size_t e = line.find_last_not_of(" \t\r");
      line = line.substr(b, e - b + 1);
      std::size_t colon = line.find(':');
      if (colon == std::string_view::npos)
        throw SyntaxError("identity line lacks 'name :'", line_start);
      std::string name(line.substr(0, colon));
      while (!name.empty() && (name.back() == ' ' || name.back() == '\t'))
        name.pop_back();
      if (name.empty()) throw SyntaxError("empty identity name", line_start);
      out.push_back(parse_identity(line.substr(colon + 1), name));
    }
    line_start = eol + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation.

class UnboundVariable : public std::runtime_error {
 public:
  explicit UnboundVariable(const std::string& name)
      : std::runtime_error("unbound variable \"" + name + "\""),
        name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

using Assignment = std::map<std::string, Elem>;

struct EvalStats {
  std::uint64_t table_lookups = 0;
};

namespace detail {

inline Elem eval_rec(const Term& t, const FiniteAlgebra& a,
                     const Assignment& asg,
                     std::unordered_map<const Term*, Elem>& memo,
                     EvalStats* stats) {
  if (auto it = memo.find(&t); it != memo.end()) return it->second;
  Elem v;
  switch (t.kind) {
    case Term::Kind::Var: {
      auto it = asg.find(t.name);
      if (it == asg.end()) throw UnboundVariable(t.name);
      v = it->second;
      break;
    }
    case Term::Kind::Zero: v = a.bottom(); break;
    case Term::Kind::One: v = a.top(); break;
    case Term::Kind::Neg:
      v = a.neg(eval_rec(*t.lhs, a, asg, memo, stats));
      if (stats) ++stats->table_lookups;
      break;
    case Term::Kind::Meet:
      v = a.meet(eval_rec(*t.lhs, a, asg, memo, stats),
                 eval_rec(*t.rhs, a, asg, memo, stats));
      if (stats) ++stats->table_lookups;
      break;
    case Term::Kind::Join:
      v = a.join(eval_rec(*t.lhs, a, asg, memo, stats),
                 eval_rec(*t.rhs, a, asg, memo, stats));
      if (stats) ++stats->table_lookups;
      break;
    case Term::Kind::Arrow:
      v = a.arrow(eval_rec(*t.lhs, a, asg, memo, stats),
                  eval_rec(*t.rhs, a, asg, memo, stats));
      if (stats) ++stats->table_lookups;
      break;
    default: throw std::logic_error("unreachable");
  }
  memo.emplace(&t, v);
  return v;
}

}  // namespace detail

// Structural fold over the algebra's tables.  Shared subtrees are evaluated
// once per call (generated level terms share their iterated-('*) chains).
inline Elem eval(const TermPtr& t, const FiniteAlgebra& a,
                 const Assignment& asg, EvalStats* stats = nullptr) {
  std::unordered_map<const Term*, Elem> memo;
  return detail::eval_rec(*t, a, asg, memo, stats);
}

// ---------------------------------------------------------------------------
// Level terms.

// x^{n('*)}: apply ' then * to the base term, n times.
inline TermPtr iter_prime_star(TermPtr base, int n) {
  if (n < 0) throw std::invalid_argument("iter_prime_star: n must be >= 0");
  TermPtr t = std::move(base);
  for (int i = 0; i < n; ++i) t = star(neg(std::move(t)));
  return t;
}

// t_n(x): t_0 = x, t_{n+1} = t_n /\ x^{(n+1)('*)}.
inline TermPtr t_term(int n) {
  if (n < 0) throw std::invalid_argument("t_term: n must be >= 0");
  TermPtr x = var("x");
  TermPtr t = x;
  TermPtr pow = x;
  for (int i = 1; i <= n; ++i) {
    pow = star(neg(pow));
    t = meet(std::move(t), pow);
  }
  return t;
}

// L_n: t_n(x) = t_{n+1}(x).
inline Identity level_identity(int n) {
  TermPtr x = var("x");
  TermPtr t = x, pow = x;
  for (int i = 1; i <= n; ++i) {
    pow = star(neg(pow));
    t = meet(std::move(t), pow);
  }
  TermPtr t_next = meet(t, star(neg(pow)));
  return make_identity("L_" + std::to_string(n), std::move(t),
                       std::move(t_next));
}

// L'_n: (x /\ x'*)^{n('*)} = (x /\ x'*)^{(n+1)('*)}.
inline Identity level_identity_alt(int n) {
  TermPtr x = var("x");
  TermPtr base = meet(x, star(neg(x)));
  TermPtr lhs = iter_prime_star(base, n);
  TermPtr rhs = star(neg(lhs));
  return make_identity("L'_" + std::to_string(n), std::move(lhs),
                       std::move(rhs));
}

}  // namespace shkit
