#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <stdexcept>

#include <hoops/filters.hpp>
#include <hoops/hoop.hpp>
#include <hoops/roots.hpp>

#include "models.hpp"

using namespace hoops;
namespace models = hoops::testmodels;

TEST_CASE("filter recognition and the full filter list", "[filters]") {
  auto g = models::g3();
  auto l = models::l3();
  auto b = models::b4();

  REQUIRE(all_filters(g) == std::vector<Mask>{0b100, 0b110, 0b111});
  REQUIRE(all_filters(l) == std::vector<Mask>{0b100, 0b111});
  REQUIRE(!is_filter(l, 0b110));  // {m, 1} is not product-closed: m*m = 0
  REQUIRE(all_filters(b) == std::vector<Mask>{0b1000, 0b1010, 0b1100, 0b1111});

  REQUIRE(generated_filter(l, {1}) == 0b111);  // m generates everything
  REQUIRE(generated_filter(g, {1}) == 0b110);
  REQUIRE_THROWS_AS(generated_filter(g, {}), std::invalid_argument);
}

TEST_CASE("prime and maximal filters", "[filters]") {
  auto g = models::g3();
  auto b = models::b4();

  // On chains every proper filter is prime; the improper one never is.
  for (Mask f : all_filters(g))
    REQUIRE(is_prime_filter(g, f) == is_proper_filter(g, f));
  REQUIRE(!is_prime_filter(b, 0b1000));  // a \/ b = 1 lands in {1} but neither atom does
  REQUIRE(is_prime_filter(b, 0b1010));
  REQUIRE(!is_prime_filter(b, 0b1111));  // improper

  REQUIRE(is_maximal_filter(b, 0b1010));
  REQUIRE(is_maximal_filter(b, 0b1100));
  REQUIRE(!is_maximal_filter(b, 0b1000));
  REQUIRE(!is_maximal_filter(b, 0b1111));  // not proper
  REQUIRE(is_maximal_filter(g, 0b110));
}

TEST_CASE("quotients collapse exactly the congruent pairs", "[filters]") {
  auto b = models::b4();
  auto q = quotient(b, 0b1010);  // filter {a, 1}
  REQUIRE(q.hoop.size() == 2);
  REQUIRE(q.classes == std::vector<std::vector<ElementId>>{{0, 2}, {1, 3}});
  REQUIRE(q.proj == std::vector<ElementId>{0, 1, 0, 1});
  REQUIRE(q.hoop.label(0) == "[0]");
  REQUIRE(q.hoop.label(1) == "[a]");
  REQUIRE(q.hoop.one() == 1);
  REQUIRE(q.hoop.zero() == std::optional<ElementId>(0));

  // trivial filter: quotient is a renaming of the model itself
  REQUIRE(quotient(b, 0b1000).hoop.size() == 4);
  // full filter: everything collapses
  REQUIRE(quotient(b, 0b1111).hoop.size() == 1);

  REQUIRE_THROWS_AS(quotient(models::l3(), 0b110), std::invalid_argument);
}

TEST_CASE("quotient order matches filter membership of the arrow", "[filters]") {
  for (const auto& h : {models::two(), models::g3(), models::l3(), models::b4(),
                        models::hoop6()}) {
    for (Mask f : all_filters(h)) {
      auto q = quotient(h, f);
      for (ElementId x = 0; x < h.size(); ++x)
        for (ElementId y = 0; y < h.size(); ++y)
          REQUIRE(q.hoop.leq(q.proj[static_cast<std::size_t>(x)],
                             q.proj[static_cast<std::size_t>(y)]) ==
                  mask_contains(f, h.imp(x, y)));
    }
  }
}

TEST_CASE("roots pass to quotients and to image filters", "[filters]") {
  for (const auto& h : {models::two(), models::g3(), models::b4()}) {
    auto s = *sqrt_solve(h);
    for (Mask f : all_filters(h)) {
      auto q = quotient(h, f);
      auto sq = quotient_root(h, q, s);
      REQUIRE(is_nth_root(q.hoop, sq));

      auto imf = root_image_filter(h, f, s);
      REQUIRE(imf.image.hoop.size() == h.size());  // identity root: image is everything
      REQUIRE(is_filter(imf.image.hoop, imf.filter));

      auto comm = root_quotient_commutes(h, f, s);
      CAPTURE(comm.detail);
      REQUIRE(comm.holds);
    }
  }
}

TEST_CASE("orbit split: the leftover part is a maximal filter or generates", "[filters]") {
  auto g = models::g3();
  auto rep = orbit_split(g, *sqrt_solve(g));
  REQUIRE(rep.covered == std::vector<ElementId>{0});
  REQUIRE(rep.rest == std::vector<ElementId>{1, 2});
  REQUIRE(rep.rest_is_filter);
  REQUIRE(rep.rest_is_maximal);
  REQUIRE(rep.holds);

  auto b = models::b4();
  auto repb = orbit_split(b, *sqrt_solve(b));
  REQUIRE(repb.covered == std::vector<ElementId>{0});
  REQUIRE(repb.rest == std::vector<ElementId>{1, 2, 3});
  REQUIRE(!repb.rest_is_filter);  // a * b = 0 escapes
  REQUIRE(repb.rest_generates_all);
  REQUIRE(repb.holds);

  auto t = models::one_element();
  REQUIRE(orbit_split(t, *sqrt_solve(t)).holds);
}

TEST_CASE("distinguished subsets are frozen per model", "[filters]") {
  auto g = models::g3();
  auto dg = distinguished_subsets(g);
  REQUIRE(dg.idempotents == std::vector<ElementId>{0, 1, 2});
  REQUIRE(dg.regulars == std::vector<ElementId>{0, 2});
  REQUIRE(dg.dense == std::vector<ElementId>{1, 2});
  REQUIRE(dg.nilpotents == std::vector<ElementId>{0});
  REQUIRE(dg.boolean_center == std::vector<ElementId>{0, 2});

  auto l = models::l3();
  auto dl = distinguished_subsets(l);
  REQUIRE(dl.idempotents == std::vector<ElementId>{0, 2});
  REQUIRE(dl.regulars == std::vector<ElementId>{0, 1, 2});
  REQUIRE(dl.dense == std::vector<ElementId>{2});
  REQUIRE(dl.nilpotents == std::vector<ElementId>{0, 1});
  REQUIRE(dl.boolean_center == std::vector<ElementId>{0, 2});

  auto h6 = models::hoop6();
  auto d6 = distinguished_subsets(h6);
  REQUIRE(d6.idempotents == std::vector<ElementId>{0, 2, 3, 5});
  REQUIRE(d6.regulars == std::vector<ElementId>{0, 1, 2, 3, 4, 5});
  REQUIRE(d6.dense == std::vector<ElementId>{5});
  REQUIRE(d6.nilpotents == std::vector<ElementId>{0, 4});
  REQUIRE(d6.boolean_center == std::vector<ElementId>{0, 2, 3, 5});
  REQUIRE(d6.findings.empty());
}

TEST_CASE("boolean center equals idempotent regulars on bounded models", "[filters]") {
  for (const auto& h : {models::one_element(), models::two(), models::g3(), models::l3(),
                        models::b4(), models::hoop6()}) {
    auto d = distinguished_subsets(h);
    std::vector<ElementId> meet_set;
    for (ElementId x : d.idempotents)
      if (std::find(d.regulars->begin(), d.regulars->end(), x) != d.regulars->end())
        meet_set.push_back(x);
    REQUIRE(d.boolean_center == meet_set);
  }
}

TEST_CASE("up-sets of idempotents are subalgebras, filters, and keep roots", "[filters]") {
  auto h6 = models::hoop6();
  auto b_id = *h6.element_by_label("b");
  auto up = up_set_subalgebra(h6, b_id);
  REQUIRE(up.sub.hoop.size() == 3);
  REQUIRE(up.sub.hoop.label(*up.sub.hoop.zero()) == "b");
  REQUIRE(!up.root.has_value());

  auto g = models::g3();
  auto s = sqrt_solve(g);
  auto upg = up_set_subalgebra(g, 1, *s);
  REQUIRE(upg.sub.hoop.size() == 2);
  REQUIRE(upg.root.has_value());
  REQUIRE(upg.root->is_identity());

  REQUIRE_THROWS_AS(up_set_subalgebra(models::l3(), 1), std::invalid_argument);
}
