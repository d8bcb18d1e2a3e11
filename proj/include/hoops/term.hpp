#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <hoops/hoop.hpp>
#include <hoops/parametric.hpp>
#include <hoops/roots.hpp>

namespace hoops {

// ---------------------------------------------------------------------------
// Term syntax
//
//   atoms       0  1  x y z w  s(t)  rN(t)  (t)
//   postfix     t'   (arrow into the bottom)      t^k  (k-fold product)
//   binary      *    /\    \/    ->
//   precedence  postfix > * > /\ > \/ > ->,  with -> right-associative
//
// `\/` evaluates the standard upper-bound expression
// ((x -> y) -> y) /\ ((y -> x) -> x); on join models this is the least
// upper bound, so statements that rely on joins carry that hypothesis.
// ---------------------------------------------------------------------------

enum class TermKind { Var, Zero, One, Mul, Imp, Meet, Join, Neg, Sqrt, Root, Pow };

struct Term {
  TermKind kind = TermKind::One;
  int aux = 0;                 // variable index, root degree, or power exponent
  std::vector<Term> children;  // 0, 1, or 2 entries

  bool operator==(const Term& o) const {
    return kind == o.kind && aux == o.aux && children == o.children;
  }
  bool operator!=(const Term& o) const { return !(*this == o); }
};

constexpr int kMaxVars = 4;  // x, y, z, w

inline Term t_var(int i) { return Term{TermKind::Var, i, {}}; }
inline Term t_zero() { return Term{TermKind::Zero, 0, {}}; }
inline Term t_one() { return Term{TermKind::One, 0, {}}; }
inline Term t_mul(Term a, Term b) { return Term{TermKind::Mul, 0, {std::move(a), std::move(b)}}; }
inline Term t_imp(Term a, Term b) { return Term{TermKind::Imp, 0, {std::move(a), std::move(b)}}; }
inline Term t_meet(Term a, Term b) { return Term{TermKind::Meet, 0, {std::move(a), std::move(b)}}; }
inline Term t_join(Term a, Term b) { return Term{TermKind::Join, 0, {std::move(a), std::move(b)}}; }
inline Term t_neg(Term a) { return Term{TermKind::Neg, 0, {std::move(a)}}; }
inline Term t_sqrt(Term a) { return Term{TermKind::Sqrt, 0, {std::move(a)}}; }
inline Term t_root(int degree, Term a) { return Term{TermKind::Root, degree, {std::move(a)}}; }
inline Term t_pow(Term a, int k) { return Term{TermKind::Pow, k, {std::move(a)}}; }

inline void collect_vars(const Term& t, std::array<bool, kMaxVars>& used) {
  if (t.kind == TermKind::Var) used[static_cast<std::size_t>(t.aux)] = true;
  for (const Term& c : t.children) collect_vars(c, used);
}

inline bool uses_kind(const Term& t, TermKind k) {
  if (t.kind == k) return true;
  for (const Term& c : t.children)
    if (uses_kind(c, k)) return true;
  return false;
}

inline void collect_root_degrees(const Term& t, std::vector<int>& degrees) {
  if (t.kind == TermKind::Sqrt) degrees.push_back(2);
  if (t.kind == TermKind::Root && t.aux >= 2) degrees.push_back(t.aux);
  for (const Term& c : t.children) collect_root_degrees(c, degrees);
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

template <typename T>
struct Parsed {
  std::optional<T> value;
  std::string error;       // empty on success
  std::size_t offset = 0;  // byte offset of the error in the input
  bool ok() const { return value.has_value(); }
};

namespace detail {

struct TermSyntaxError {
  std::string message;
  std::size_t offset;
};

class TermParser {
 public:
  explicit TermParser(std::string_view src) : src_(src) {}

  Term parse_full() {
    Term t = parse_imp();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return t;
  }

  // Parses one term and stops at the first character that cannot extend it;
  // used for embedded terms inside larger statements.
  Term parse_embedded() { return parse_imp(); }
  std::size_t position() const { return pos_; }

 private:
  Term parse_imp() {
    Term l = parse_join();
    skip_ws();
    if (match("->")) return t_imp(std::move(l), parse_imp());
    return l;
  }

  Term parse_join() {
    Term l = parse_meet();
    while (true) {
      skip_ws();
      if (match("\\/"))
        l = t_join(std::move(l), parse_meet());
      else
        return l;
    }
  }

  Term parse_meet() {
    Term l = parse_mul();
    while (true) {
      skip_ws();
      if (match("/\\"))
        l = t_meet(std::move(l), parse_mul());
      else
        return l;
    }
  }

  Term parse_mul() {
    Term l = parse_postfix();
    while (true) {
      skip_ws();
      if (match("*"))
        l = t_mul(std::move(l), parse_postfix());
      else
        return l;
    }
  }

  Term parse_postfix() {
    Term t = parse_atom();
    while (true) {
      skip_ws();
      if (match("'")) {
        t = t_neg(std::move(t));
      } else if (match("^")) {
        t = t_pow(std::move(t), parse_digits("exponent"));
      } else {
        return t;
      }
    }
  }

  Term parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail("expected a term");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Term t = parse_imp();
      expect(')');
      return t;
    }
    if (c == '0') {
      ++pos_;
      return t_zero();
    }
    if (c == '1') {
      ++pos_;
      return t_one();
    }
    if (c == 'x' || c == 'y' || c == 'z' || c == 'w') {
      ++pos_;
      return t_var(c == 'x' ? 0 : c == 'y' ? 1 : c == 'z' ? 2 : 3);
    }
    if (c == 's') {
      ++pos_;
      expect('(');
      Term t = parse_imp();
      expect(')');
      return t_sqrt(std::move(t));
    }
    if (c == 'r') {
      ++pos_;
      int degree = parse_digits("root degree");
      if (degree < 1) fail("root degree must be at least 1");
      expect('(');
      Term t = parse_imp();
      expect(')');
      return t_root(degree, std::move(t));
    }
    fail("unexpected character");
  }

  int parse_digits(const char* what) {
    skip_ws();
    if (pos_ >= src_.size() || src_[pos_] < '0' || src_[pos_] > '9')
      fail(std::string("expected ") + what);
    long v = 0;
    while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') {
      v = v * 10 + (src_[pos_] - '0');
      if (v > 1000000) fail(std::string(what) + " is too large");
      ++pos_;
    }
    return static_cast<int>(v);
  }

  void skip_ws() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
  }

  bool match(std::string_view tok) {
    if (src_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= src_.size() || src_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(std::string msg) { throw TermSyntaxError{std::move(msg), pos_}; }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Parsed<Term> parse_term(std::string_view src) {
  detail::TermParser p(src);
  try {
    return {p.parse_full(), "", 0};
  } catch (const detail::TermSyntaxError& e) {
    return {std::nullopt, e.message, e.offset};
  }
}

// ---------------------------------------------------------------------------
// Printing (minimal parentheses; parse(print(t)) == t)
// ---------------------------------------------------------------------------

namespace detail {

inline int term_level(const Term& t) {
  switch (t.kind) {
    case TermKind::Imp: return 0;
    case TermKind::Join: return 1;
    case TermKind::Meet: return 2;
    case TermKind::Mul: return 3;
    case TermKind::Neg:
    case TermKind::Pow: return 4;
    default: return 5;
  }
}

inline void print_rec(const Term& t, int context, std::string& out) {
  const int level = term_level(t);
  const bool wrap = level < context;
  if (wrap) out += '(';
  const int inner = wrap ? 0 : context;
  (void)inner;
  switch (t.kind) {
    case TermKind::Var: {
      static constexpr char names[kMaxVars] = {'x', 'y', 'z', 'w'};
      out += names[static_cast<std::size_t>(t.aux)];
      break;
    }
    case TermKind::Zero: out += '0'; break;
    case TermKind::One: out += '1'; break;
    case TermKind::Imp:
      print_rec(t.children[0], 1, out);
      out += " -> ";
      print_rec(t.children[1], 0, out);
      break;
    case TermKind::Join:
      print_rec(t.children[0], 1, out);
      out += " \\/ ";
      print_rec(t.children[1], 2, out);
      break;
    case TermKind::Meet:
      print_rec(t.children[0], 2, out);
      out += " /\\ ";
      print_rec(t.children[1], 3, out);
      break;
    case TermKind::Mul:
      print_rec(t.children[0], 3, out);
      out += " * ";
      print_rec(t.children[1], 4, out);
      break;
    case TermKind::Neg:
      print_rec(t.children[0], 4, out);
      out += '\'';
      break;
    case TermKind::Pow:
      print_rec(t.children[0], 4, out);
      out += '^';
      out += std::to_string(t.aux);
      break;
    case TermKind::Sqrt:
      out += "s(";
      print_rec(t.children[0], 0, out);
      out += ')';
      break;
    case TermKind::Root:
      out += 'r';
      out += std::to_string(t.aux);
      out += '(';
      print_rec(t.children[0], 0, out);
      out += ')';
      break;
  }
  if (wrap) out += ')';
}

}  // namespace detail

inline std::string print_term(const Term& t) {
  std::string out;
  detail::print_rec(t, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

// Root maps available on a finite model, keyed by degree (>= 2).
struct RootEnv {
  std::map<int, RootMap> by_degree;

  const RootMap* find(int degree) const {
    auto it = by_degree.find(degree);
    return it == by_degree.end() ? nullptr : &it->second;
  }
};

// Populates the environment with every root degree the terms mention.
inline RootEnv solve_root_env(const FiniteHoop& h, const std::vector<int>& degrees) {
  RootEnv env;
  for (int d : degrees) {
    if (env.by_degree.count(d)) continue;
    if (auto r = nth_root_solve(h, d)) env.by_degree.emplace(d, std::move(*r));
  }
  return env;
}

struct FiniteTermValue {
  std::optional<ElementId> value;
  std::string missing;  // names the facility the model lacks, if any
  bool ok() const { return value.has_value(); }
};

inline FiniteTermValue eval_term(const Term& t, const FiniteHoop& h, const RootEnv& roots,
                                 const std::array<ElementId, kMaxVars>& assign) {
  auto rec = [&](const Term& u, auto&& self) -> FiniteTermValue {
    auto child = [&](std::size_t i) { return self(u.children[i], self); };
    switch (u.kind) {
      case TermKind::Var: return {assign[static_cast<std::size_t>(u.aux)], ""};
      case TermKind::Zero:
        if (!h.zero()) return {std::nullopt, "bottom"};
        return {*h.zero(), ""};
      case TermKind::One: return {h.one(), ""};
      case TermKind::Mul: {
        auto a = child(0), b = child(1);
        if (!a.ok()) return a;
        if (!b.ok()) return b;
        return {h.mul(*a.value, *b.value), ""};
      }
      case TermKind::Imp: {
        auto a = child(0), b = child(1);
        if (!a.ok()) return a;
        if (!b.ok()) return b;
        return {h.imp(*a.value, *b.value), ""};
      }
      case TermKind::Meet: {
        auto a = child(0), b = child(1);
        if (!a.ok()) return a;
        if (!b.ok()) return b;
        return {h.meet(*a.value, *b.value), ""};
      }
      case TermKind::Join: {
        auto a = child(0), b = child(1);
        if (!a.ok()) return a;
        if (!b.ok()) return b;
        return {h.join_candidate(*a.value, *b.value), ""};
      }
      case TermKind::Neg: {
        auto a = child(0);
        if (!a.ok()) return a;
        if (!h.zero()) return {std::nullopt, "bottom"};
        return {h.neg(*a.value), ""};
      }
      case TermKind::Pow: {
        auto a = child(0);
        if (!a.ok()) return a;
        return {h.pow(*a.value, u.aux), ""};
      }
      case TermKind::Sqrt: {
        auto a = child(0);
        if (!a.ok()) return a;
        const RootMap* r = roots.find(2);
        if (!r) return {std::nullopt, "square root"};
        return {r->at(*a.value), ""};
      }
      case TermKind::Root: {
        auto a = child(0);
        if (!a.ok()) return a;
        if (u.aux == 1) return a;
        const RootMap* r = roots.find(u.aux);
        if (!r) return {std::nullopt, "degree-" + std::to_string(u.aux) + " root"};
        return {r->at(*a.value), ""};
      }
    }
    return {std::nullopt, "malformed term"};
  };
  return rec(t, rec);
}

// Parametric evaluation distinguishes a facility the family lacks outright
// from a partial root with no value at the sampled point.
enum class ParamStatus { Value, Unsupported, Undefined };

struct ParamTermValue {
  ParamStatus status = ParamStatus::Unsupported;
  Rational value;
  std::string missing;
  bool ok() const { return status == ParamStatus::Value; }
};

inline ParamTermValue eval_term(const Term& t, const ParametricHoop& m,
                                const std::array<Rational, kMaxVars>& assign) {
  auto rec = [&](const Term& u, auto&& self) -> ParamTermValue {
    auto child = [&](std::size_t i) { return self(u.children[i], self); };
    auto value = [](Rational v) { return ParamTermValue{ParamStatus::Value, std::move(v), ""}; };
    switch (u.kind) {
      case TermKind::Var: return value(assign[static_cast<std::size_t>(u.aux)]);
      case TermKind::Zero:
        if (!m.bounded()) return {ParamStatus::Unsupported, Rational(0), "bottom"};
        return value(*m.zero());
      case TermKind::One: return value(m.one());
      case TermKind::Mul: {
        auto a = child(0), b = child(1);
        if (!a.ok()) return a;
        if (!b.ok()) return b;
        return value(m.mul(a.value, b.value));
      }
      case TermKind::Imp: {
        auto a = child(0), b = child(1);
        if (!a.ok()) return a;
        if (!b.ok()) return b;
        return value(m.imp(a.value, b.value));
      }
      case TermKind::Meet: {
        auto a = child(0), b = child(1);
        if (!a.ok()) return a;
        if (!b.ok()) return b;
        return value(m.meet(a.value, b.value));
      }
      case TermKind::Join: {
        auto a = child(0), b = child(1);
        if (!a.ok()) return a;
        if (!b.ok()) return b;
        Rational u1 = m.imp(m.imp(a.value, b.value), b.value);
        Rational u2 = m.imp(m.imp(b.value, a.value), a.value);
        return value(m.meet(u1, u2));
      }
      case TermKind::Neg: {
        auto a = child(0);
        if (!a.ok()) return a;
        if (!m.bounded()) return {ParamStatus::Unsupported, Rational(0), "bottom"};
        return value(m.neg(a.value));
      }
      case TermKind::Pow: {
        auto a = child(0);
        if (!a.ok()) return a;
        Rational p = m.one();
        for (int i = 0; i < u.aux; ++i) p = m.mul(p, a.value);
        return value(p);
      }
      case TermKind::Sqrt:
      case TermKind::Root: {
        auto a = child(0);
        if (!a.ok()) return a;
        int degree = u.kind == TermKind::Sqrt ? 2 : u.aux;
        if (degree == 1) return a;
        if (m.root_support(degree) == RootSupport::None)
          return {ParamStatus::Unsupported, Rational(0),
                  "degree-" + std::to_string(degree) + " root"};
        auto r = m.root(degree, a.value);
        if (!r)
          return {ParamStatus::Undefined, Rational(0),
                  "degree-" + std::to_string(degree) + " root at " + rational_string(a.value)};
        return value(*r);
      }
    }
    return {ParamStatus::Unsupported, Rational(0), "malformed term"};
  };
  return rec(t, rec);
}

}  // namespace hoops
