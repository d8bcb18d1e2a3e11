#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <hoops/filters.hpp>
#include <hoops/hoop.hpp>
#include <hoops/identity.hpp>
#include <hoops/parametric.hpp>
#include <hoops/roots.hpp>
#include <hoops/term.hpp>

namespace hoops {

// The audited fact table.  The same text ships as data/catalog.txt; a test
// keeps the two byte-identical.
inline constexpr std::string_view kCatalogText = R"CATALOG(# Audited fact catalog.
#
# Each line is    id | hypotheses | statement
#
# hypotheses: comma-separated tokens, or `-` for none.
#   structural flags: bounded join wajsberg basic dnp cancellative
#                     idempotent locallyfinite local regular
#   root conditions:  sqrt   (a square-root map exists)
#                     smult  (... and it commutes with the product)
#                     good   (... and it fixes the bottom)
#                     strict (... and it sends the bottom to that value's
#                             own negation)
#                     rootN  (a degree-N root map exists)
#
# statement: either a term statement `guard & ... => lhs REL rhs` with REL
# one of `=` `<=`, or `@key` naming a built-in structural check that runs
# on finite models only.  Facilities a statement's terms mention (bottom,
# roots of any degree) gate applicability automatically, so hypothesis
# lists only carry genuinely extra conditions.

# -- defining laws ----------------------------------------------------------
law.mul-comm            | -       | x * y = y * x
law.mul-assoc           | -       | x * (y * z) = (x * y) * z
law.mul-unit            | -       | x * 1 = x
law.mul-unit-left       | -       | 1 * x = x
law.arrow-refl          | -       | x -> x = 1
law.divisibility        | -       | x * (x -> y) = y * (y -> x)
law.curry               | -       | x * y -> z = x -> (y -> z)
law.bottom-least        | bounded | 0 <= x

# -- order and arrow --------------------------------------------------------
ord.arrow-top           | -       | x -> 1 = 1
ord.unit-arrow          | -       | 1 -> x = x
ord.weaken              | -       | x <= y -> x
ord.product-below-left  | -       | x * y <= x
ord.product-below-right | -       | x * y <= y
ord.expand              | -       | x <= (x -> y) -> y
ord.triple-arrow        | -       | ((x -> y) -> y) -> y = x -> y
ord.exchange            | -       | x -> (y -> z) = y -> (x -> z)
ord.arrow-mono-left     | -       | x -> y <= (y -> z) -> (x -> z)
ord.arrow-mono-right    | -       | x -> y <= (z -> x) -> (z -> y)
ord.residuation-fwd     | -       | x * y <= z => x <= y -> z
ord.residuation-bwd     | -       | x <= y -> z => x * y <= z
ord.mul-mono            | -       | x <= y => x * z <= y * z
ord.arrow-antitone      | -       | x <= y => y -> z <= x -> z
ord.arrow-monotone      | -       | x <= y => z -> x <= z -> y
ord.unit-factor         | -       | x * y = 1 => x = 1
ord.absorb-below        | -       | x <= y => y * (y -> x) = x

# -- meet -------------------------------------------------------------------
meet.comm               | -       | x /\ y = y /\ x
meet.below-left         | -       | x /\ y <= x
meet.below-right        | -       | x /\ y <= y
meet.greatest           | -       | z <= x & z <= y => z <= x /\ y
meet.idempotent         | -       | x /\ x = x
meet.assoc              | -       | x /\ (y /\ z) = (x /\ y) /\ z
meet.arrow-distr        | -       | x -> (y /\ z) = (x -> y) /\ (x -> z)
meet.mul-distr-le       | -       | (x /\ y) * z <= (x * z) /\ (y * z)
meet.bottom             | bounded | x /\ 0 = 0

# -- join (least upper bounds must exist) -----------------------------------
join.upper-left         | join    | x <= x \/ y
join.upper-right        | join    | y <= x \/ y
join.least              | join    | x <= z & y <= z => x \/ y <= z
join.comm               | join    | x \/ y = y \/ x
join.assoc              | join    | x \/ (y \/ z) = (x \/ y) \/ z
join.mul-distr          | join    | x * (y \/ z) = (x * y) \/ (x * z)
join.arrow-to-meet      | join    | (x \/ y) -> z = (x -> z) /\ (y -> z)
join.lattice-distr      | join    | x /\ (y \/ z) = (x /\ y) \/ (x /\ z)
join.bottom             | bounded,join | x \/ 0 = x

# -- negation ---------------------------------------------------------------
neg.expand              | bounded | x <= x''
neg.triple              | bounded | x' = x'''
neg.annihilate          | bounded | x * x' = 0
neg.product-arrow       | bounded | (x * y)' = x -> y'
neg.antitone            | bounded | x <= y => y' <= x'
neg.product-le          | bounded | x' * y' <= (x * y)'
neg.join-demorgan       | bounded,join | (x \/ y)' = x' /\ y'
neg.meet-demorgan-le    | bounded,join | x' \/ y' <= (x /\ y)'
neg.bottom-top          | bounded | 0' = 1
neg.top-bottom          | bounded | 1' = 0
neg.contrapose          | bounded | x -> y <= y' -> x'

# -- symmetric-arrow models and double negation -----------------------------
wajsberg.symmetric      | wajsberg | (x -> y) -> y = (y -> x) -> x
wajsberg.dnp            | wajsberg | x'' = x
wajsberg.join-formula   | wajsberg | x \/ y = (x -> y) -> y
wajsberg.prelinear      | wajsberg | (x -> y) -> z <= ((y -> x) -> z) -> z
dnp.symmetric           | dnp      | (x -> y) -> y = (y -> x) -> x
dnp.defining            | dnp      | x'' = x

# -- prelinear models -------------------------------------------------------
basic.defining          | basic   | (x -> y) -> z <= ((y -> x) -> z) -> z
basic.prelinearity      | basic   | (x -> y) \/ (y -> x) = 1

# -- idempotent and cancellative models -------------------------------------
idem.defining           | idempotent | x * x = x
idem.mul-is-meet        | idempotent | x * y = x /\ y
idem.root-identity      | idempotent | s(x) = x
canc.defining           | cancellative | y -> (x * y) = x
canc.cancel             | cancellative | x * z = y * z => x = y
canc.root-mult          | cancellative | s(x * y) = s(x) * s(y)

# -- powers -----------------------------------------------------------------
pow.zero                | -       | x^0 = 1
pow.one                 | -       | x^1 = x
pow.square              | -       | x^2 = x * x
pow.add                 | -       | x^5 = x^2 * x^3
pow.descending          | -       | x^3 <= x^2
pow.mono                | -       | x <= y => x^3 <= y^3

# -- square roots -----------------------------------------------------------
sqrt.square             | -       | s(x)^2 = x
sqrt.greatest           | -       | y^2 <= x => y <= s(x)
sqrt.expand             | -       | x <= s(x)
sqrt.top                | -       | s(1) = 1
sqrt.monotone           | -       | x <= y => s(x) <= s(y)
sqrt.injective          | -       | s(x) = s(y) => x = y
sqrt.square-expand      | -       | x <= s(x^2)
sqrt.fixed-idempotent   | -       | s(x) = x => x * x = x
sqrt.meet               | -       | s(x /\ y) = s(x) /\ s(y)
sqrt.join               | join    | s(x \/ y) = s(x) \/ s(y)
sqrt.submult            | -       | s(x) * s(y) <= s(x * y)
sqrt.arrow-le           | -       | s(x) -> s(y) <= s(x -> y)
sqrt.arrow-symmetric    | wajsberg | s(x -> y) = s(x) -> s(y)
sqrt.arrow-mult         | smult   | s(x -> y) = s(x) -> s(y)
sqrt.iterate            | -       | s(s(x))^4 = x
sqrt.iterate-greatest   | -       | y^4 <= x => y <= s(s(x))
sqrt.neg-le             | bounded | s(x)' <= s(x')
sqrt.neg-shift          | bounded | s(x') = s(x) -> s(0)
sqrt.neg-symmetric      | wajsberg | (s(x) * s(0)')' -> s(y) = s(x' -> y)

# -- bottom behaviour of the square root ------------------------------------
good.bottom             | good    | s(0) = 0
good.neg                | good    | s(x') = s(x)'
strict.bottom           | strict  | s(0) = s(0)'
strict.stable           | strict  | s(0)'' = s(0)
strict.pivot-collapse   | strict  | x * x = x & x'' = x & s(0) <= x => x = 1
collapse.good-strict    | good,strict | x = 1

# -- higher roots -----------------------------------------------------------
root.degree-one         | -       | r1(x) = x
root.sqrt-alias         | -       | r2(x) = s(x)
root.cube               | -       | r3(x)^3 = x
root.cube-greatest      | -       | y^3 <= x => y <= r3(x)
root.expand             | -       | x <= r3(x)
root.top                | -       | r3(1) = 1
root.monotone           | -       | x <= y => r3(x) <= r3(y)
root.meet               | -       | r3(x /\ y) = r3(x) /\ r3(y)
root.submult            | -       | r3(x) * r3(y) <= r3(x * y)
root.commute            | -       | s(r3(x)) = r3(s(x))
root.compose            | -       | s(r3(x)) = r6(x)

# -- structural checks (finite models only) ---------------------------------
struct.meet-infimum     | -       | @meet-infimum
struct.order-divisibility | -     | @order-divisibility
struct.arrow-residual   | -       | @arrow-residual
struct.join-agreement   | -       | @join-agreement
struct.finite-bounded   | -       | @finite-bounded
struct.local-maximal    | -       | @local-maximal
struct.sqrt-unique      | -       | @sqrt-unique
struct.sqrt-rigidity    | -       | @sqrt-rigidity
struct.sqrt-equations   | -       | @sqrt-equations
struct.quotient-certify | -       | @quotient-certify
struct.root-quotient    | -       | @root-quotient
struct.orbit-split      | -       | @orbit-split
struct.boolean-center   | -       | @boolean-center
struct.upset-subalgebra | -       | @upset-subalgebra
struct.image-filter     | -       | @image-filter
)CATALOG";

struct CatalogEntry {
  std::string id;
  std::string hypotheses;  // raw comma-separated token list, `-` for none
  std::string statement;   // term statement, or `@key` for a structural check

  bool procedural() const { return !statement.empty() && statement[0] == '@'; }
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace detail

inline std::vector<CatalogEntry> parse_catalog(std::string_view text) {
  std::vector<CatalogEntry> entries;
  std::size_t start = 0;
  int lineno = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view line =
        text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++lineno;
    std::string stripped = detail::trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    std::size_t p1 = stripped.find('|');
    std::size_t p2 = p1 == std::string::npos ? std::string::npos : stripped.find('|', p1 + 1);
    if (p2 == std::string::npos)
      throw std::logic_error("catalog line " + std::to_string(lineno) +
                             ": expected `id | hypotheses | statement`");
    CatalogEntry e;
    e.id = detail::trim(std::string_view(stripped).substr(0, p1));
    e.hypotheses = detail::trim(std::string_view(stripped).substr(p1 + 1, p2 - p1 - 1));
    e.statement = detail::trim(std::string_view(stripped).substr(p2 + 1));
    if (e.id.empty() || e.hypotheses.empty() || e.statement.empty())
      throw std::logic_error("catalog line " + std::to_string(lineno) + ": empty field");
    entries.push_back(std::move(e));
  }
  return entries;
}

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = parse_catalog(kCatalogText);
  return entries;
}

inline const CatalogEntry* catalog_find(const std::string& id) {
  for (const auto& e : catalog())
    if (e.id == id) return &e;
  return nullptr;
}

// Builds the checkable statement for a term-level entry.  Malformed catalog
// text is a defect in this library, hence the hard error.
inline Identity catalog_identity(const CatalogEntry& e) {
  if (e.procedural()) throw std::logic_error("catalog entry " + e.id + " is procedural");
  auto parsed = parse_statement(e.statement);
  if (!parsed.ok())
    throw std::logic_error("catalog entry " + e.id + ": " + parsed.error + " at offset " +
                           std::to_string(parsed.offset));
  Identity ident = std::move(*parsed.value);
  ident.id = e.id;
  if (e.hypotheses != "-") {
    std::stringstream ss(e.hypotheses);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok = detail::trim(tok);
      if (tok.empty()) continue;
      if (!apply_hypothesis_token(ident, tok))
        throw std::logic_error("catalog entry " + e.id + ": unknown hypothesis `" + tok + "`");
    }
  }
  return ident;
}

// ---------------------------------------------------------------------------
// Structural checks: verdicts about a finite model that terms cannot state.
// ---------------------------------------------------------------------------

namespace detail {

struct ProcOutcome {
  bool applicable = true;
  bool holds = true;
  std::string detail;
};

inline ProcOutcome proc_meet_infimum(const FiniteHoop& h) {
  for (ElementId x = 0; x < h.size(); ++x)
    for (ElementId y = 0; y < h.size(); ++y) {
      ElementId m = h.meet(x, y);
      if (!h.leq(m, x) || !h.leq(m, y))
        return {true, false, "meet(" + h.label(x) + "," + h.label(y) + ") is not a lower bound"};
      for (ElementId z = 0; z < h.size(); ++z)
        if (h.leq(z, x) && h.leq(z, y) && !h.leq(z, m))
          return {true, false,
                  "meet(" + h.label(x) + "," + h.label(y) + ") is below " + h.label(z)};
    }
  return {};
}

inline ProcOutcome proc_order_divisibility(const FiniteHoop& h) {
  for (ElementId x = 0; x < h.size(); ++x)
    for (ElementId y = 0; y < h.size(); ++y) {
      bool divides = false;
      for (ElementId w = 0; w < h.size() && !divides; ++w)
        if (h.mul(w, y) == x) divides = true;
      if (divides != h.leq(x, y))
        return {true, false,
                "order and divisibility disagree at (" + h.label(x) + "," + h.label(y) + ")"};
    }
  return {};
}

inline ProcOutcome proc_arrow_residual(const FiniteHoop& h) {
  for (ElementId x = 0; x < h.size(); ++x)
    for (ElementId y = 0; y < h.size(); ++y) {
      ElementId a = h.imp(x, y);
      if (!h.leq(h.mul(a, x), y))
        return {true, false, "arrow value exceeds the residual at (" + h.label(x) + "," +
                                 h.label(y) + ")"};
      for (ElementId z = 0; z < h.size(); ++z)
        if (h.leq(h.mul(z, x), y) && !h.leq(z, a))
          return {true, false, "arrow value is not greatest at (" + h.label(x) + "," +
                                   h.label(y) + ")"};
    }
  return {};
}

inline ProcOutcome proc_join_agreement(const FiniteHoop& h) {
  bool all_pairs = true;
  for (ElementId x = 0; x < h.size(); ++x)
    for (ElementId y = 0; y < h.size(); ++y) {
      auto j = h.join(x, y);
      if (!j || *j != h.join_candidate(x, y)) all_pairs = false;
      if (j && !h.leq(*j, h.join_candidate(x, y)))
        return {true, false, "join exceeds the upper-bound formula at (" + h.label(x) + "," +
                                 h.label(y) + ")"};
    }
  if (all_pairs != h.has(PropertyFlag::JoinHoop))
    return {true, false, "join flag disagrees with pairwise least upper bounds"};
  return {};
}

inline ProcOutcome proc_finite_bounded(const FiniteHoop& h) {
  if (!h.least()) return {true, false, "no least element under the derived order"};
  return {};
}

inline ProcOutcome proc_local_maximal(const FiniteHoop& h) {
  if (h.size() < 2) return {false, true, "needs a nontrivial model"};
  int maximal = 0;
  for (Mask f : all_filters(h))
    if (is_maximal_filter(h, f)) ++maximal;
  if (h.has(PropertyFlag::Local) != (maximal == 1))
    return {true, false,
            "local flag disagrees with maximal-filter count " + std::to_string(maximal)};
  return {};
}

inline ProcOutcome proc_sqrt_unique(const FiniteHoop& h) {
  if (h.size() > 5) return {false, true, "exhaustive map search is limited to size 5"};
  auto solved = sqrt_solve(h);
  auto oracle = nth_root_oracle(h, 2);
  if (solved.has_value() != oracle.has_value())
    return {true, false, "solver and exhaustive search disagree on existence"};
  if (solved && solved->map != oracle->map)
    return {true, false, "solver and exhaustive search found different maps"};
  return {};
}

inline ProcOutcome proc_sqrt_rigidity(const FiniteHoop& h) {
  auto s = sqrt_solve(h);
  if (s.has_value() != h.has(PropertyFlag::Idempotent))
    return {true, false, "square root existence disagrees with idempotency"};
  if (s && !s->is_identity())
    return {true, false, "square root of an idempotent model is not the identity"};
  return {};
}

inline ProcOutcome proc_sqrt_equations(const FiniteHoop& h) {
  if (!h.zero()) return {false, true, "needs a designated bottom"};
  auto maps = sqrt_equation_maps(h);
  auto s = sqrt_solve(h);
  if (s) {
    if (maps.size() != 1 || maps[0].map != s->map)
      return {true, false, "equation solutions do not pin down the square root"};
  } else if (!maps.empty()) {
    return {true, false, "equations have a solution although no square root exists"};
  }
  return {};
}

inline ProcOutcome proc_quotient_certify(const FiniteHoop& h) {
  for (Mask f : all_filters(h)) {
    Quotient q = quotient(h, f);  // throws if ill-defined or uncertifiable
    for (ElementId x = 0; x < h.size(); ++x)
      for (ElementId y = 0; y < h.size(); ++y) {
        bool quotient_le = q.hoop.leq(q.proj[static_cast<std::size_t>(x)],
                                      q.proj[static_cast<std::size_t>(y)]);
        if (quotient_le != mask_contains(f, h.imp(x, y)))
          return {true, false, "class order disagrees with arrow membership"};
      }
  }
  return {};
}

inline ProcOutcome proc_root_quotient(const FiniteHoop& h) {
  auto s = sqrt_solve(h);
  if (!s) return {false, true, "needs a square root"};
  for (Mask f : all_filters(h)) {
    Quotient q = quotient(h, f);
    RootMap induced = quotient_root(h, q, *s);
    if (!is_nth_root(q.hoop, induced))
      return {true, false, "induced map is not a square root of the quotient"};
    auto c = root_quotient_commutes(h, f, *s);
    if (!c.holds) return {true, false, c.detail};
  }
  return {};
}

inline ProcOutcome proc_orbit_split(const FiniteHoop& h) {
  auto s = sqrt_solve(h);
  if (!s || !h.zero()) return {false, true, "needs a square root and a bottom"};
  auto report = orbit_split(h, *s);
  if (!report.holds) return {true, false, "orbit split classification failed"};
  return {};
}

inline ProcOutcome proc_boolean_center(const FiniteHoop& h) {
  auto d = distinguished_subsets(h);
  if (!d.boolean_center || !d.regulars) return {false, true, "needs a designated bottom"};
  std::vector<ElementId> expect;
  for (ElementId x : d.idempotents)
    if (std::find(d.regulars->begin(), d.regulars->end(), x) != d.regulars->end())
      expect.push_back(x);
  if (*d.boolean_center != expect)
    return {true, false, "complemented elements differ from regular idempotents"};
  return {};
}

inline ProcOutcome proc_upset_subalgebra(const FiniteHoop& h) {
  auto s = sqrt_solve(h);
  for (ElementId a = 0; a < h.size(); ++a) {
    if (h.mul(a, a) != a) continue;
    UpSetSubalgebra up = up_set_subalgebra(h, a, s);  // throws on failure
    if (s && !up.root)
      return {true, false, "square root does not restrict to the up-set of " + h.label(a)};
  }
  return {};
}

inline ProcOutcome proc_image_filter(const FiniteHoop& h) {
  auto s = sqrt_solve(h);
  if (!s) return {false, true, "needs a square root"};
  if (!is_multiplicative(h, *s))
    return {false, true, "needs a root that commutes with the product"};
  for (Mask f : all_filters(h)) {
    ImageFilter img = root_image_filter(h, f, *s);  // throws if not a filter
    if (mask_count(img.filter, static_cast<int>(img.image.hoop.size())) == 0)
      return {true, false, "image of a filter is empty"};
  }
  return {};
}

using Procedure = ProcOutcome (*)(const FiniteHoop&);

inline const std::map<std::string, Procedure>& procedures() {
  static const std::map<std::string, Procedure> table = {
      {"@meet-infimum", proc_meet_infimum},
      {"@order-divisibility", proc_order_divisibility},
      {"@arrow-residual", proc_arrow_residual},
      {"@join-agreement", proc_join_agreement},
      {"@finite-bounded", proc_finite_bounded},
      {"@local-maximal", proc_local_maximal},
      {"@sqrt-unique", proc_sqrt_unique},
      {"@sqrt-rigidity", proc_sqrt_rigidity},
      {"@sqrt-equations", proc_sqrt_equations},
      {"@quotient-certify", proc_quotient_certify},
      {"@root-quotient", proc_root_quotient},
      {"@orbit-split", proc_orbit_split},
      {"@boolean-center", proc_boolean_center},
      {"@upset-subalgebra", proc_upset_subalgebra},
      {"@image-filter", proc_image_filter},
  };
  return table;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Running the catalog
// ---------------------------------------------------------------------------

struct EntryResult {
  std::string id;
  std::string statement;
  bool procedural = false;
  bool applicable = false;
  bool holds = true;
  std::string detail;  // skip reason, failure note, or witness rendering
  long checked = 0;
  long skipped = 0;
};

inline EntryResult run_entry(const CatalogEntry& e, const FiniteHoop& h) {
  EntryResult out;
  out.id = e.id;
  out.statement = e.statement;
  if (e.procedural()) {
    out.procedural = true;
    auto it = detail::procedures().find(e.statement);
    if (it == detail::procedures().end())
      throw std::logic_error("catalog entry " + e.id + ": unknown procedure " + e.statement);
    auto r = it->second(h);
    out.applicable = r.applicable;
    out.holds = r.holds;
    out.detail = r.detail;
    return out;
  }
  Identity ident = catalog_identity(e);
  FiniteCheck c = check_identity(ident, h);
  out.applicable = c.applicable;
  out.holds = c.holds;
  out.checked = c.assignments_checked;
  out.skipped = c.guard_skipped;
  if (!c.applicable) {
    out.detail = c.skip_reason;
  } else if (!c.holds && c.witness) {
    std::string w;
    for (const auto& [var, value] : *c.witness) {
      if (!w.empty()) w += ", ";
      w += var_name(var) + " = " + h.label(value);
    }
    out.detail = w;
  }
  return out;
}

inline EntryResult run_entry(const CatalogEntry& e, const ParametricHoop& m,
                             const SamplePlan& plan) {
  EntryResult out;
  out.id = e.id;
  out.statement = e.statement;
  if (e.procedural()) {
    out.procedural = true;
    out.applicable = false;
    out.detail = "structural checks run on finite models only";
    return out;
  }
  Identity ident = catalog_identity(e);
  ParamCheck c = check_identity(ident, m, plan);
  out.applicable = c.applicable;
  out.holds = c.holds;
  out.checked = c.samples_checked;
  out.skipped = c.guard_skipped + c.undefined_skipped;
  if (!c.applicable) {
    out.detail = c.skip_reason;
  } else if (!c.holds && c.witness) {
    std::string w;
    for (const auto& [var, value] : *c.witness) {
      if (!w.empty()) w += ", ";
      w += var_name(var) + " = " + rational_string(value);
    }
    out.detail = w;
  }
  return out;
}

inline std::vector<EntryResult> audit_catalog(const FiniteHoop& h) {
  std::vector<EntryResult> out;
  for (const auto& e : catalog()) out.push_back(run_entry(e, h));
  return out;
}

inline std::vector<EntryResult> audit_catalog(const ParametricHoop& m, const SamplePlan& plan) {
  std::vector<EntryResult> out;
  for (const auto& e : catalog()) out.push_back(run_entry(e, m, plan));
  return out;
}

}  // namespace hoops
