#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <hoops/filters.hpp>
#include <hoops/hoop.hpp>
#include <hoops/parametric.hpp>
#include <hoops/roots.hpp>
#include <hoops/term.hpp>

namespace hoops {

// ---------------------------------------------------------------------------
// Statements under hypotheses
//
// A statement is   [guard & guard & ... =>] lhs REL rhs   with REL one of
// `=` and `<=`; guards are themselves `term REL term` pairs, and the
// conclusion is only required where every guard holds.  Hypotheses restrict
// which models a statement applies to at all: structural flags plus
// root-existence and root-behaviour conditions.
// ---------------------------------------------------------------------------

enum class Rel { Eq, Leq };

struct TermRel {
  Term lhs;
  Rel rel = Rel::Eq;
  Term rhs;
};

struct Identity {
  std::string id;
  std::vector<PropertyFlag> flags;  // structural hypotheses
  bool needs_sqrt = false;          // a square root map must exist
  bool needs_smult = false;         // ... and commute with the product
  bool needs_good = false;          // ... and fix the bottom
  bool needs_strict = false;        // ... and send bottom to its own negation
  std::vector<int> needs_roots;     // required root degrees beyond 2
  std::vector<TermRel> guards;
  TermRel conclusion;

  std::array<bool, kMaxVars> used_vars() const {
    std::array<bool, kMaxVars> used{};
    auto mark = [&](const TermRel& tr) {
      collect_vars(tr.lhs, used);
      collect_vars(tr.rhs, used);
    };
    for (const auto& g : guards) mark(g);
    mark(conclusion);
    return used;
  }

  // Facilities the terms themselves demand, independent of declared
  // hypotheses: bottom if `0` or `'` appears, and every root degree used.
  bool terms_need_bottom() const {
    auto needs = [](const TermRel& tr) {
      return uses_kind(tr.lhs, TermKind::Zero) || uses_kind(tr.rhs, TermKind::Zero) ||
             uses_kind(tr.lhs, TermKind::Neg) || uses_kind(tr.rhs, TermKind::Neg);
    };
    for (const auto& g : guards)
      if (needs(g)) return true;
    return needs(conclusion);
  }

  std::vector<int> term_root_degrees() const {
    std::vector<int> degrees;
    auto walk = [&](const TermRel& tr) {
      collect_root_degrees(tr.lhs, degrees);
      collect_root_degrees(tr.rhs, degrees);
    };
    for (const auto& g : guards) walk(g);
    walk(conclusion);
    std::sort(degrees.begin(), degrees.end());
    degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
    return degrees;
  }

  // All root degrees that must exist on a model before checking.
  std::vector<int> required_root_degrees() const {
    std::vector<int> degrees = term_root_degrees();
    if (needs_sqrt || needs_smult || needs_good || needs_strict) degrees.push_back(2);
    degrees.insert(degrees.end(), needs_roots.begin(), needs_roots.end());
    std::sort(degrees.begin(), degrees.end());
    degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
    return degrees;
  }
};

// ---------------------------------------------------------------------------
// Hypothesis tokens (the textual form used in statement tables)
// ---------------------------------------------------------------------------

inline std::optional<PropertyFlag> flag_by_token(std::string_view tok) {
  if (tok == "bounded") return PropertyFlag::Bounded;
  if (tok == "join") return PropertyFlag::JoinHoop;
  if (tok == "wajsberg") return PropertyFlag::Wajsberg;
  if (tok == "basic") return PropertyFlag::Basic;
  if (tok == "dnp") return PropertyFlag::DoubleNegation;
  if (tok == "cancellative") return PropertyFlag::Cancellative;
  if (tok == "idempotent") return PropertyFlag::Idempotent;
  if (tok == "locallyfinite") return PropertyFlag::LocallyFinite;
  if (tok == "local") return PropertyFlag::Local;
  if (tok == "regular") return PropertyFlag::Regular;
  return std::nullopt;
}

inline std::string flag_token(PropertyFlag f) {
  switch (f) {
    case PropertyFlag::Bounded: return "bounded";
    case PropertyFlag::JoinHoop: return "join";
    case PropertyFlag::Wajsberg: return "wajsberg";
    case PropertyFlag::Basic: return "basic";
    case PropertyFlag::DoubleNegation: return "dnp";
    case PropertyFlag::Cancellative: return "cancellative";
    case PropertyFlag::Idempotent: return "idempotent";
    case PropertyFlag::LocallyFinite: return "locallyfinite";
    case PropertyFlag::Local: return "local";
    case PropertyFlag::Regular: return "regular";
  }
  return "?";
}

// Applies one hypothesis token to an identity; false if unknown.
inline bool apply_hypothesis_token(Identity& ident, std::string_view tok) {
  if (auto f = flag_by_token(tok)) {
    ident.flags.push_back(*f);
    return true;
  }
  if (tok == "sqrt") {
    ident.needs_sqrt = true;
    return true;
  }
  if (tok == "smult") {
    ident.needs_smult = true;
    return true;
  }
  if (tok == "good") {
    ident.needs_good = true;
    return true;
  }
  if (tok == "strict") {
    ident.needs_strict = true;
    return true;
  }
  if (tok.size() >= 5 && tok.substr(0, 4) == "root") {
    int degree = 0;
    for (char c : tok.substr(4)) {
      if (c < '0' || c > '9') return false;
      degree = degree * 10 + (c - '0');
      if (degree > 1000) return false;
    }
    if (degree < 2) return false;
    ident.needs_roots.push_back(degree);
    return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Statement parsing
// ---------------------------------------------------------------------------

namespace detail {

// Splits `src` on a top-level token, respecting nothing fancier than the
// fact that our grammar never nests the separators we split on.
inline std::vector<std::string_view> split_on(std::string_view src, std::string_view sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t at = src.find(sep, start);
    if (at == std::string_view::npos) {
      parts.push_back(src.substr(start));
      return parts;
    }
    parts.push_back(src.substr(start, at - start));
    start = at + sep.size();
  }
}

inline Parsed<TermRel> parse_term_rel(std::string_view src, std::size_t base_offset) {
  // locate the relation: `<=` or a bare `=` that is not part of `<=`
  std::size_t at = std::string_view::npos;
  Rel rel = Rel::Eq;
  std::size_t rel_len = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] == '<' && i + 1 < src.size() && src[i + 1] == '=') {
      at = i;
      rel = Rel::Leq;
      rel_len = 2;
      break;
    }
    if (src[i] == '=') {
      at = i;
      rel = Rel::Eq;
      rel_len = 1;
      break;
    }
  }
  if (at == std::string_view::npos)
    return {std::nullopt, "expected '=' or '<='", base_offset + src.size()};
  auto lhs = parse_term(src.substr(0, at));
  if (!lhs.ok()) return {std::nullopt, lhs.error, base_offset + lhs.offset};
  auto rhs = parse_term(src.substr(at + rel_len));
  if (!rhs.ok()) return {std::nullopt, rhs.error, base_offset + at + rel_len + rhs.offset};
  return {TermRel{std::move(*lhs.value), rel, std::move(*rhs.value)}, "", 0};
}

}  // namespace detail

// Parses `guard & guard & ... => lhs REL rhs` (guards optional).
inline Parsed<Identity> parse_statement(std::string_view src) {
  Identity ident;
  std::string_view conclusion_src = src;
  std::size_t conclusion_offset = 0;

  std::size_t arrow = src.find("=>");
  if (arrow != std::string_view::npos) {
    std::string_view guard_src = src.substr(0, arrow);
    conclusion_src = src.substr(arrow + 2);
    conclusion_offset = arrow + 2;
    std::size_t guard_base = 0;
    for (std::string_view g : detail::split_on(guard_src, "&")) {
      auto tr = detail::parse_term_rel(g, guard_base);
      if (!tr.ok()) return {std::nullopt, tr.error, tr.offset};
      ident.guards.push_back(std::move(*tr.value));
      guard_base += g.size() + 1;
    }
  }

  auto tr = detail::parse_term_rel(conclusion_src, conclusion_offset);
  if (!tr.ok()) return {std::nullopt, tr.error, tr.offset};
  ident.conclusion = std::move(*tr.value);
  return {std::move(ident), "", 0};
}

inline std::string print_term_rel(const TermRel& tr) {
  return print_term(tr.lhs) + (tr.rel == Rel::Eq ? " = " : " <= ") + print_term(tr.rhs);
}

inline std::string print_statement(const Identity& ident) {
  std::string out;
  for (std::size_t i = 0; i < ident.guards.size(); ++i) {
    if (i) out += " & ";
    out += print_term_rel(ident.guards[i]);
  }
  if (!ident.guards.empty()) out += " => ";
  out += print_term_rel(ident.conclusion);
  return out;
}

// Builds a checkable identity from a statement plus comma-separated hypothesis
// tokens ("-" or "" for none). Statement errors carry their byte offset;
// hypothesis errors name the offending token and use offset 0.
inline Parsed<Identity> make_identity(std::string_view statement, std::string_view hypotheses = "-",
                                      std::string id = "") {
  auto parsed = parse_statement(statement);
  if (!parsed.ok()) return parsed;
  Identity ident = std::move(*parsed.value);
  ident.id = std::move(id);
  if (!hypotheses.empty() && hypotheses != "-") {
    for (std::string_view raw : detail::split_on(hypotheses, ",")) {
      std::size_t b = raw.find_first_not_of(" \t");
      if (b == std::string_view::npos) continue;
      std::string_view tok = raw.substr(b, raw.find_last_not_of(" \t") - b + 1);
      if (!apply_hypothesis_token(ident, tok))
        return {std::nullopt, "unknown hypothesis `" + std::string(tok) + "`", 0};
    }
  }
  return {std::move(ident), "", 0};
}

// ---------------------------------------------------------------------------
// Checking on finite models (exhaustive)
// ---------------------------------------------------------------------------

struct FiniteCheck {
  bool applicable = false;
  std::string skip_reason;  // why the model is out of scope, when inapplicable
  bool holds = true;
  long assignments_checked = 0;
  long guard_skipped = 0;
  // first falsifying assignment: (variable index, element) pairs
  std::optional<std::vector<std::pair<int, ElementId>>> witness;
};

inline FiniteCheck check_identity(const Identity& ident, const FiniteHoop& h) {
  FiniteCheck out;

  for (PropertyFlag f : ident.flags) {
    if (!h.has(f)) {
      out.skip_reason = "model is not " + flag_token(f);
      return out;
    }
  }
  if (ident.terms_need_bottom() && !h.zero()) {
    out.skip_reason = "model has no designated bottom";
    return out;
  }

  RootEnv roots = solve_root_env(h, ident.required_root_degrees());
  for (int d : ident.required_root_degrees()) {
    if (!roots.find(d)) {
      out.skip_reason = "model has no degree-" + std::to_string(d) + " root";
      return out;
    }
  }
  if (ident.needs_smult || ident.needs_good || ident.needs_strict) {
    const RootMap& s = *roots.find(2);
    if (ident.needs_smult && !is_multiplicative(h, s)) {
      out.skip_reason = "square root does not commute with the product";
      return out;
    }
    if (ident.needs_good || ident.needs_strict) {
      if (!h.zero()) {
        out.skip_reason = "model has no designated bottom";
        return out;
      }
      SqrtProfile profile = classify_sqrt(h, s);
      if (ident.needs_good && !profile.good) {
        out.skip_reason = "square root moves the bottom";
        return out;
      }
      if (ident.needs_strict && !profile.strict) {
        out.skip_reason = "square root of bottom is not its own negation";
        return out;
      }
    }
  }

  out.applicable = true;

  const auto used = ident.used_vars();
  std::vector<int> vars;
  for (int i = 0; i < kMaxVars; ++i)
    if (used[static_cast<std::size_t>(i)]) vars.push_back(i);

  const ElementId n = static_cast<ElementId>(h.size());
  std::vector<ElementId> counter(vars.size(), 0);
  std::array<ElementId, kMaxVars> assign{};

  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i)
      assign[static_cast<std::size_t>(vars[i])] = counter[i];

    bool guards_hold = true;
    for (const auto& g : ident.guards) {
      auto l = eval_term(g.lhs, h, roots, assign);
      auto r = eval_term(g.rhs, h, roots, assign);
      if (!l.ok() || !r.ok()) {
        out.applicable = false;
        out.skip_reason = "model lacks " + (l.ok() ? r.missing : l.missing);
        return out;
      }
      bool holds = g.rel == Rel::Eq ? *l.value == *r.value : h.leq(*l.value, *r.value);
      if (!holds) {
        guards_hold = false;
        break;
      }
    }

    if (guards_hold) {
      auto l = eval_term(ident.conclusion.lhs, h, roots, assign);
      auto r = eval_term(ident.conclusion.rhs, h, roots, assign);
      if (!l.ok() || !r.ok()) {
        out.applicable = false;
        out.skip_reason = "model lacks " + (l.ok() ? r.missing : l.missing);
        return out;
      }
      ++out.assignments_checked;
      bool holds = ident.conclusion.rel == Rel::Eq ? *l.value == *r.value
                                                   : h.leq(*l.value, *r.value);
      if (!holds) {
        out.holds = false;
        std::vector<std::pair<int, ElementId>> w;
        for (std::size_t i = 0; i < vars.size(); ++i) w.emplace_back(vars[i], counter[i]);
        out.witness = std::move(w);
        return out;
      }
    } else {
      ++out.guard_skipped;
    }

    // odometer with the first variable moving fastest; a variable-free
    // statement visits the single empty assignment once
    std::size_t i = 0;
    while (i < counter.size() && ++counter[i] == n) {
      counter[i] = 0;
      ++i;
    }
    if (i == counter.size()) break;
  }

  return out;
}

// ---------------------------------------------------------------------------
// Checking on parametric families (seeded exact-rational sampling)
// ---------------------------------------------------------------------------

struct ParamCheck {
  bool applicable = false;
  std::string skip_reason;
  bool holds = true;
  int samples_checked = 0;
  int guard_skipped = 0;
  int undefined_skipped = 0;  // partial root had no value at a sampled point
  std::optional<std::vector<std::pair<int, Rational>>> witness;
};

inline ParamCheck check_identity(const Identity& ident, const ParametricHoop& m,
                                 const SamplePlan& plan) {
  ParamCheck out;

  for (PropertyFlag f : ident.flags) {
    if (!m.flag(f)) {
      out.skip_reason = "family is not " + flag_token(f);
      return out;
    }
  }
  if (ident.terms_need_bottom() && !m.bounded()) {
    out.skip_reason = "family has no bottom";
    return out;
  }
  for (int d : ident.required_root_degrees()) {
    if (m.root_support(d) == RootSupport::None) {
      out.skip_reason = "family has no degree-" + std::to_string(d) + " root";
      return out;
    }
  }
  if (ident.needs_smult && !m.multiplicative_root()) {
    out.skip_reason = "square root does not commute with the product";
    return out;
  }
  if (ident.needs_good && m.good() != std::optional<bool>(true)) {
    out.skip_reason = "square root moves the bottom";
    return out;
  }
  if (ident.needs_strict && m.strict() != std::optional<bool>(true)) {
    out.skip_reason = "square root of bottom is not its own negation";
    return out;
  }

  out.applicable = true;

  const auto used = ident.used_vars();
  std::vector<int> vars;
  for (int i = 0; i < kMaxVars; ++i)
    if (used[static_cast<std::size_t>(i)]) vars.push_back(i);

  Sampler sampler(m, plan);
  std::array<Rational, kMaxVars> assign{};

  for (int sample = 0; sample < plan.count; ++sample) {
    for (int v : vars) assign[static_cast<std::size_t>(v)] = sampler.next();

    bool guards_hold = true;
    bool undefined = false;
    for (const auto& g : ident.guards) {
      auto l = eval_term(g.lhs, m, assign);
      auto r = eval_term(g.rhs, m, assign);
      if (l.status == ParamStatus::Undefined || r.status == ParamStatus::Undefined) {
        undefined = true;
        break;
      }
      if (!l.ok() || !r.ok()) {
        out.applicable = false;
        out.skip_reason = "family lacks " + (l.ok() ? r.missing : l.missing);
        return out;
      }
      bool holds = g.rel == Rel::Eq ? l.value == r.value : m.leq(l.value, r.value);
      if (!holds) {
        guards_hold = false;
        break;
      }
    }

    if (undefined) {
      ++out.undefined_skipped;
      continue;
    }
    if (!guards_hold) {
      ++out.guard_skipped;
      continue;
    }

    auto l = eval_term(ident.conclusion.lhs, m, assign);
    auto r = eval_term(ident.conclusion.rhs, m, assign);
    if (l.status == ParamStatus::Undefined || r.status == ParamStatus::Undefined) {
      ++out.undefined_skipped;
      continue;
    }
    if (!l.ok() || !r.ok()) {
      out.applicable = false;
      out.skip_reason = "family lacks " + (l.ok() ? r.missing : l.missing);
      return out;
    }
    ++out.samples_checked;
    bool holds = ident.conclusion.rel == Rel::Eq ? l.value == r.value
                                                 : m.leq(l.value, r.value);
    if (!holds) {
      out.holds = false;
      std::vector<std::pair<int, Rational>> w;
      for (int v : vars) w.emplace_back(v, assign[static_cast<std::size_t>(v)]);
      out.witness = std::move(w);
      return out;
    }
  }

  return out;
}

inline std::string var_name(int index) {
  static constexpr char names[kMaxVars] = {'x', 'y', 'z', 'w'};
  return std::string(1, names[static_cast<std::size_t>(index)]);
}

}  // namespace hoops
