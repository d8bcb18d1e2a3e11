#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include <hoops/identity.hpp>
#include <hoops/term.hpp>

#include "models.hpp"

namespace models = hoops::testmodels;

using namespace hoops;

namespace {

Term p(const std::string& src) {
  auto r = parse_term(src);
  REQUIRE(r.ok());
  return *r.value;
}

Identity stmt(const std::string& src, const std::vector<std::string>& hyps = {}) {
  auto r = parse_statement(src);
  REQUIRE(r.ok());
  Identity ident = *r.value;
  for (const auto& h : hyps) REQUIRE(apply_hypothesis_token(ident, h));
  return ident;
}

}  // namespace

TEST_CASE("parser builds the expected trees", "[term]") {
  CHECK(p("x") == t_var(0));
  CHECK(p("w") == t_var(3));
  CHECK(p("0") == t_zero());
  CHECK(p("1") == t_one());

  // precedence: postfix > * > /\ > \/ > ->
  CHECK(p("x * y -> z") == t_imp(t_mul(t_var(0), t_var(1)), t_var(2)));
  CHECK(p("x -> y -> z") == t_imp(t_var(0), t_imp(t_var(1), t_var(2))));
  CHECK(p("x /\\ y \\/ z") == t_join(t_meet(t_var(0), t_var(1)), t_var(2)));
  CHECK(p("x \\/ y /\\ z") == t_join(t_var(0), t_meet(t_var(1), t_var(2))));
  CHECK(p("x * y /\\ z") == t_meet(t_mul(t_var(0), t_var(1)), t_var(2)));
  CHECK(p("x''") == t_neg(t_neg(t_var(0))));
  CHECK(p("x^2'") == t_neg(t_pow(t_var(0), 2)));
  CHECK(p("x ^ 2") == t_pow(t_var(0), 2));
  CHECK(p("x * y'") == t_mul(t_var(0), t_neg(t_var(1))));
  CHECK(p("(x * y)'") == t_neg(t_mul(t_var(0), t_var(1))));
  CHECK(p("s(x -> y)") == t_sqrt(t_imp(t_var(0), t_var(1))));
  CHECK(p("r3(x * y)") == t_root(3, t_mul(t_var(0), t_var(1))));
  CHECK(p("r1(x)") == t_root(1, t_var(0)));
  CHECK(p("s(x)^2") == t_pow(t_sqrt(t_var(0)), 2));
  CHECK(p("  x   *   1 ") == t_mul(t_var(0), t_one()));
}

TEST_CASE("parse errors carry byte offsets", "[term]") {
  auto r = parse_term("x ->");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error == "expected a term");
  CHECK(r.offset == 4);

  r = parse_term("x @ y");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error == "unexpected trailing input");
  CHECK(r.offset == 2);

  r = parse_term("x -> (y");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error == "expected ')'");
  CHECK(r.offset == 7);

  r = parse_term("s x");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error == "expected '('");
  CHECK(r.offset == 2);

  r = parse_term("r(x)");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error == "expected root degree");
  CHECK(r.offset == 1);

  r = parse_term("");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error == "expected a term");

  r = parse_term("x ^ y");  // the exponent must be a number, not a term
  REQUIRE_FALSE(r.ok());
  CHECK(r.error == "expected exponent");
  CHECK(r.offset == 4);
}

TEST_CASE("printer emits minimal parentheses and round-trips", "[term]") {
  CHECK(print_term(t_imp(t_imp(t_var(0), t_var(1)), t_var(2))) == "(x -> y) -> z");
  CHECK(print_term(t_imp(t_var(0), t_imp(t_var(1), t_var(2)))) == "x -> y -> z");
  CHECK(print_term(t_mul(t_meet(t_var(0), t_var(1)), t_var(2))) == "(x /\\ y) * z");
  CHECK(print_term(t_join(t_var(0), t_join(t_var(1), t_var(2)))) == "x \\/ (y \\/ z)");
  CHECK(print_term(t_join(t_join(t_var(0), t_var(1)), t_var(2))) == "x \\/ y \\/ z");
  CHECK(print_term(t_neg(t_mul(t_var(0), t_var(1)))) == "(x * y)'");
  CHECK(print_term(t_pow(t_sqrt(t_var(0)), 2)) == "s(x)^2");

  const std::vector<std::string> battery = {
      "x", "0", "1", "x * y -> z", "x -> y -> z", "(x -> y) -> z",
      "x /\\ y \\/ z", "x \\/ (y \\/ z)", "x''", "x^3'", "(x * y)'",
      "s(x -> y) * r3(z)", "s(x)^2 -> x", "(x \\/ y) /\\ (y \\/ x)",
      "r2(x * x) -> x", "w' -> z /\\ x^0",
  };
  for (const auto& src : battery) {
    Term t = p(src);
    std::string printed = print_term(t);
    CHECK(p(printed) == t);
  }
}

TEST_CASE("finite evaluation matches direct table lookups", "[term]") {
  auto h = models::g3();
  RootEnv roots = solve_root_env(h, {2});
  REQUIRE(roots.find(2) != nullptr);

  Term meet_term = p("x * (x -> y)");
  Term pow0 = p("x^0");
  for (ElementId x = 0; x < h.size(); ++x) {
    for (ElementId y = 0; y < h.size(); ++y) {
      std::array<ElementId, kMaxVars> a{x, y, 0, 0};
      auto v = eval_term(meet_term, h, roots, a);
      REQUIRE(v.ok());
      CHECK(*v.value == h.meet(x, y));
      auto s = eval_term(p("s(x)"), h, roots, a);
      REQUIRE(s.ok());
      CHECK(*s.value == x);  // idempotent chain: the square root is the identity
      auto one = eval_term(pow0, h, roots, a);
      REQUIRE(one.ok());
      CHECK(*one.value == h.one());
    }
  }

  // negation needs a bottom; degree-3 roots exist here (identity map)
  std::array<ElementId, kMaxVars> a{1, 0, 0, 0};
  auto n = eval_term(p("x'"), h, roots, a);
  REQUIRE(n.ok());
  CHECK(*n.value == h.neg(1));

  RootEnv deep = solve_root_env(h, {2, 3});
  auto c = eval_term(p("r3(x)"), h, deep, a);
  REQUIRE(c.ok());
  CHECK(*c.value == 1);

  // a model without the requested root reports what is missing
  auto l3 = models::l3();
  RootEnv none = solve_root_env(l3, {2});
  CHECK(none.find(2) == nullptr);
  auto miss = eval_term(p("s(x)"), l3, none, a);
  CHECK_FALSE(miss.ok());
  CHECK(miss.missing == "square root");
}

TEST_CASE("statement parsing handles guards and hypothesis tokens", "[term]") {
  auto ident = stmt("x <= y => s(x) <= s(y)", {"sqrt"});
  CHECK(ident.guards.size() == 1);
  CHECK(ident.guards[0].rel == Rel::Leq);
  CHECK(ident.conclusion.rel == Rel::Leq);
  CHECK(ident.needs_sqrt);
  CHECK(print_statement(ident) == "x <= y => s(x) <= s(y)");

  auto two_guards = stmt("x * x = x & x'' = x => x \\/ x' = 1", {"bounded"});
  CHECK(two_guards.guards.size() == 2);
  CHECK(two_guards.flags == std::vector<PropertyFlag>{PropertyFlag::Bounded});

  Identity probe;
  CHECK(apply_hypothesis_token(probe, "wajsberg"));
  CHECK(apply_hypothesis_token(probe, "root3"));
  CHECK(probe.needs_roots == std::vector<int>{3});
  CHECK_FALSE(apply_hypothesis_token(probe, "root"));
  CHECK_FALSE(apply_hypothesis_token(probe, "rootx"));
  CHECK_FALSE(apply_hypothesis_token(probe, "nonsense"));

  auto bad = parse_statement("x -> y");
  CHECK_FALSE(bad.ok());
  CHECK(bad.error == "expected '=' or '<='");

  auto bad2 = parse_statement("x = ( => y = z");
  CHECK_FALSE(bad2.ok());

  // requirement scan: terms pull in the facilities they mention
  auto reqs = stmt("s(r3(x)) = r3(s(x))");
  CHECK(reqs.required_root_degrees() == std::vector<int>{2, 3});
  CHECK_FALSE(reqs.terms_need_bottom());
  CHECK(stmt("x' = x -> 0").terms_need_bottom());
}

TEST_CASE("finite checks: laws hold, violations carry first witnesses", "[term]") {
  auto g3 = models::g3();
  auto l3 = models::l3();
  auto hoop6 = models::hoop6();

  // the defining laws hold everywhere
  for (const auto* h : {&g3, &l3, &hoop6}) {
    for (const char* law :
         {"x * y = y * x", "x * 1 = x", "x -> x = 1",
          "x * (x -> y) = y * (y -> x)", "x * y -> z = x -> (y -> z)"}) {
      auto c = check_identity(stmt(law), *h);
      CHECK(c.applicable);
      CHECK(c.holds);
    }
  }

  // the symmetric-arrow law fails on the three-element chain with an
  // order-one bottom pair as first witness: x varies fastest, so the scan
  // reaches (x=m, y=0) at the second assignment
  auto anti = check_identity(stmt("(x -> y) -> y = (y -> x) -> x"), g3);
  CHECK(anti.applicable);
  CHECK_FALSE(anti.holds);
  REQUIRE(anti.witness.has_value());
  REQUIRE(anti.witness->size() == 2);
  CHECK((*anti.witness)[0] == std::make_pair(0, ElementId{1}));  // x = middle
  CHECK((*anti.witness)[1] == std::make_pair(1, ElementId{0}));  // y = bottom
  CHECK(anti.assignments_checked == 2);

  // same law holds on the other fixtures (they satisfy the symmetric form)
  for (const auto* h : {&l3, &hoop6}) {
    auto c = check_identity(stmt("(x -> y) -> y = (y -> x) -> x"), *h);
    CHECK(c.applicable);
    CHECK(c.holds);
  }

  // guards: below-comparison restricted multiplication
  auto guarded = stmt("x <= y => x * y = x");
  auto on_g3 = check_identity(guarded, g3);
  CHECK(on_g3.holds);
  CHECK(on_g3.guard_skipped == 3);  // the strictly-above pairs are skipped
  auto on_l3 = check_identity(guarded, l3);
  CHECK_FALSE(on_l3.holds);
  REQUIRE(on_l3.witness.has_value());
  CHECK((*on_l3.witness)[0] == std::make_pair(0, ElementId{1}));
  CHECK((*on_l3.witness)[1] == std::make_pair(1, ElementId{1}));
}

TEST_CASE("finite checks: hypotheses gate applicability", "[term]") {
  auto g3 = models::g3();
  auto l3 = models::l3();
  auto two = models::two();

  auto wajs = stmt("(x -> y) -> y = (y -> x) -> x", {"wajsberg"});
  CHECK_FALSE(check_identity(wajs, g3).applicable);
  auto on_l3 = check_identity(wajs, l3);
  CHECK(on_l3.applicable);
  CHECK(on_l3.holds);

  // root existence is detected from the terms themselves
  auto expands = stmt("x <= s(x)");
  CHECK_FALSE(check_identity(expands, l3).applicable);
  CHECK(check_identity(expands, l3).skip_reason == "model has no degree-2 root");
  auto on_g3 = check_identity(expands, g3);
  CHECK(on_g3.applicable);
  CHECK(on_g3.holds);

  // bottom-value conditions on the square root
  auto good = stmt("s(0) = 0", {"good"});
  auto on_two = check_identity(good, two);
  CHECK(on_two.applicable);
  CHECK(on_two.holds);
  auto strict = stmt("s(0) = s(0)'", {"strict"});
  CHECK_FALSE(check_identity(strict, two).applicable);

  // a variable-free statement checks exactly one assignment
  auto unitfact = check_identity(stmt("1 * 1 = 1"), two);
  CHECK(unitfact.applicable);
  CHECK(unitfact.holds);
  CHECK(unitfact.assignments_checked == 1);
}

TEST_CASE("parametric checks: sampling, witnesses, and partial roots", "[term]") {
  SamplePlan plan{.seed = 5, .count = 64, .depth = 8};

  // an axiom holds on every family
  auto curry = stmt("x * y -> z = x -> (y -> z)");
  for (const auto& m :
       {ParametricHoop::godel(), ParametricHoop::lukasiewicz(),
        ParametricHoop::product_tnorm(), ParametricHoop::gamma(rat(3, 2)),
        ParametricHoop::free_exponent()}) {
    auto c = check_identity(curry, m, plan);
    CHECK(c.applicable);
    CHECK(c.holds);
    CHECK(c.samples_checked == plan.count);
  }

  // idempotency fails off the lattice family, deterministically
  auto idem = stmt("x * x = x");
  auto run1 = check_identity(idem, ParametricHoop::lukasiewicz(), plan);
  auto run2 = check_identity(idem, ParametricHoop::lukasiewicz(), plan);
  CHECK_FALSE(run1.holds);
  REQUIRE(run1.witness.has_value());
  REQUIRE(run2.witness.has_value());
  CHECK(*run1.witness == *run2.witness);
  CHECK(check_identity(idem, ParametricHoop::godel(), plan).holds);

  // root multiplicativity separates the families
  auto smult = stmt("s(x * y) = s(x) * s(y)");
  CHECK(check_identity(smult, ParametricHoop::godel(), plan).holds);
  CHECK(check_identity(smult, ParametricHoop::free_exponent(), plan).holds);
  CHECK_FALSE(check_identity(smult, ParametricHoop::lukasiewicz(), plan).holds);

  // the partial root skips points with no exact value but still certifies
  auto square = stmt("s(x)^2 = x");
  auto on_prod = check_identity(square, ParametricHoop::product_tnorm(), plan);
  CHECK(on_prod.applicable);
  CHECK(on_prod.holds);
  CHECK(on_prod.undefined_skipped > 0);
  CHECK(on_prod.samples_checked + on_prod.undefined_skipped == plan.count);

  // hypothesis gating mirrors the finite side
  CHECK_FALSE(check_identity(stmt("s(0) = 0", {"good"}),
                             ParametricHoop::lukasiewicz(), plan)
                  .applicable);
  CHECK(check_identity(stmt("s(0) = 0", {"good"}), ParametricHoop::godel(), plan).holds);
  CHECK_FALSE(check_identity(stmt("s(0) = s(0)'", {"strict"}),
                             ParametricHoop::free_exponent(), plan)
                  .applicable);
  CHECK(check_identity(stmt("s(0) = s(0)'", {"strict"}),
                       ParametricHoop::lukasiewicz(), plan)
            .holds);

  // cube roots only exist on two families
  auto cube = stmt("r3(x)^3 = x");
  CHECK(check_identity(cube, ParametricHoop::godel(), plan).holds);
  CHECK(check_identity(cube, ParametricHoop::free_exponent(), plan).holds);
  CHECK_FALSE(check_identity(cube, ParametricHoop::lukasiewicz(), plan).applicable);

  // statements mentioning the bottom are out of scope for the unbounded family
  auto dnp = check_identity(stmt("x'' = x"), ParametricHoop::free_exponent(), plan);
  CHECK_FALSE(dnp.applicable);
  CHECK(dnp.skip_reason == "family has no bottom");
}
