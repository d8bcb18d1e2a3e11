#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <vector>

#include <hoops/hoop.hpp>
#include <hoops/morphisms.hpp>
#include <hoops/roots.hpp>

#include "models.hpp"

using namespace hoops;
namespace models = hoops::testmodels;

namespace {

// Brute-force reference: every map between two small carriers filtered
// through the homomorphism test.
std::vector<HoopMap> all_homomorphisms(const FiniteHoop& a, const FiniteHoop& b) {
  std::vector<HoopMap> out;
  std::vector<ElementId> digits(static_cast<std::size_t>(a.size()), 0);
  while (true) {
    HoopMap f{digits};
    if (is_homomorphism(a, b, f)) out.push_back(f);
    int i = 0;
    while (i < a.size() && ++digits[static_cast<std::size_t>(i)] == b.size())
      digits[static_cast<std::size_t>(i++)] = 0;
    if (i == a.size()) break;
  }
  return out;
}

}  // namespace

TEST_CASE("products of two-element models give the four-element square", "[morphisms]") {
  auto p = product(models::two(), models::two());
  REQUIRE(p.size() == 4);
  REQUIRE(p.bounded());
  auto iso = find_isomorphism(p, models::b4());
  REQUIRE(iso.has_value());
  REQUIRE(is_isomorphism(p, models::b4(), *iso));
}

TEST_CASE("the six-element model factors as chain times edge", "[morphisms]") {
  auto p = product(models::l3(), models::two());
  auto h6 = models::hoop6();
  auto iso = find_isomorphism(p, h6);
  REQUIRE(iso.has_value());
  REQUIRE(is_isomorphism(p, h6, *iso));
  // d = (m, 0) is the unique nilpotent non-bottom element
  ElementId m0 = 1 * 2 + 0;
  REQUIRE(h6.label(iso->at(m0)) == "d");
}

TEST_CASE("non-isomorphic pairs are rejected fast", "[morphisms]") {
  REQUIRE(!find_isomorphism(models::g3(), models::l3()).has_value());
  REQUIRE(!find_isomorphism(models::two(), models::g3()).has_value());
  REQUIRE(!find_isomorphism(models::b4(), models::hoop6()).has_value());
}

TEST_CASE("relabelings are recovered as isomorphisms", "[morphisms]") {
  for (const auto& h : {models::g3(), models::l3(), models::b4(), models::hoop6()}) {
    std::vector<ElementId> perm(static_cast<std::size_t>(h.size()));
    for (int i = 0; i < h.size(); ++i) perm[static_cast<std::size_t>(i)] = (i + 1) % h.size();
    auto g = relabel(h, perm);
    auto iso = find_isomorphism(h, g);
    REQUIRE(iso.has_value());
    REQUIRE(is_isomorphism(h, g, *iso));
  }
}

TEST_CASE("projections are homomorphisms and respect componentwise roots", "[morphisms]") {
  auto a = models::g3();
  auto b = models::two();
  auto p = product(a, b);
  HoopMap proj1{{}}, proj2{{}};
  for (ElementId x = 0; x < a.size(); ++x)
    for (ElementId y = 0; y < b.size(); ++y) {
      proj1.map.push_back(x);
      proj2.map.push_back(y);
    }
  REQUIRE(is_homomorphism(p, a, proj1));
  REQUIRE(is_homomorphism(p, b, proj2));

  auto ra = *sqrt_solve(a);
  auto rb = *sqrt_solve(b);
  auto rp = product_root(a, b, ra, rb);
  REQUIRE(is_nth_root(p, rp));
  REQUIRE(preserves_root(p, a, proj1, rp, ra));
  REQUIRE(preserves_root(p, b, proj2, rp, rb));
}

TEST_CASE("homomorphic images never overshoot the target root", "[morphisms]") {
  auto pairs = std::vector<std::pair<FiniteHoop, FiniteHoop>>{
      {models::two(), models::g3()},
      {models::g3(), models::two()},
      {models::b4(), models::two()},
      {models::two(), models::b4()},
  };
  for (const auto& [a, b] : pairs) {
    auto ra = *sqrt_solve(a);
    auto rb = *sqrt_solve(b);
    for (const auto& f : all_homomorphisms(a, b))
      for (ElementId x = 0; x < a.size(); ++x)
        REQUIRE(b.leq(f.at(ra.at(x)), rb.at(f.at(x))));
  }
}

TEST_CASE("roots transport along isomorphisms", "[morphisms]") {
  auto h = models::b4();
  auto g = relabel(h, {3, 2, 1, 0});
  auto iso = *find_isomorphism(h, g);
  auto t = transport_root(h, g, iso, *sqrt_solve(h));
  REQUIRE(is_nth_root(g, t));
  REQUIRE(t.map == sqrt_solve(g)->map);  // uniqueness forces agreement

  HoopMap not_iso{{0, 0, 0, 3}};
  REQUIRE_THROWS_AS(transport_root(h, h, not_iso, *sqrt_solve(h)), std::invalid_argument);
}
