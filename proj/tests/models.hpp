#pragma once

#include <stdexcept>
#include <utility>

#include <hoops/hoop.hpp>

// Shared hand-built models used across the test suite. Each must certify;
// tables are transcribed here independently of the fixture files so the file
// parser can be cross-checked against them.
namespace hoops::testmodels {

inline FiniteHoop must(BuildResult r) {
  if (!r.ok()) throw std::runtime_error("test model failed certification");
  return *std::move(r.hoop);
}

// One-element model (1 = 0).
inline FiniteHoop one_element() {
  return must(build_hoop(OpTable::from_rows({{0}}), OpTable::from_rows({{0}}), 0, 0, {"1"}));
}

// Two-element Boolean chain {0 < 1}.
inline FiniteHoop two() {
  return must(build_hoop(OpTable::from_rows({{0, 0}, {0, 1}}),
                         OpTable::from_rows({{1, 1}, {0, 1}}), 1, 0, {"0", "1"}));
}

// Three-element chain 0 < m < 1 with idempotent middle (min product).
inline FiniteHoop g3() {
  return must(build_hoop(OpTable::from_rows({{0, 0, 0}, {0, 1, 1}, {0, 1, 2}}),
                         OpTable::from_rows({{2, 2, 2}, {0, 2, 2}, {0, 1, 2}}), 2, 0,
                         {"0", "m", "1"}));
}

// Three-element chain 0 < m < 1 with nilpotent middle (m*m = 0).
inline FiniteHoop l3() {
  return must(build_hoop(OpTable::from_rows({{0, 0, 0}, {0, 0, 1}, {0, 1, 2}}),
                         OpTable::from_rows({{2, 2, 2}, {1, 2, 2}, {0, 1, 2}}), 2, 0,
                         {"0", "m", "1"}));
}

// Four-element Boolean model {0, a, b, 1} with a, b incomparable atoms.
inline FiniteHoop b4() {
  return must(build_hoop(
      OpTable::from_rows({{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 2, 2}, {0, 1, 2, 3}}),
      OpTable::from_rows({{3, 3, 3, 3}, {2, 3, 2, 3}, {1, 1, 3, 3}, {0, 1, 2, 3}}), 3, 0,
      {"0", "a", "b", "1"}));
}

// Six-element worked example; carrier order 0, a, b, c, d, 1 (indices 0..5).
// Derived order: 0 < b < a < 1, 0 < d < a, d < c < 1, with a and c
// incomparable. Isomorphic to the product of the l3 and two models.
inline FiniteHoop hoop6() {
  OpTable mul = OpTable::from_rows({
      {0, 0, 0, 0, 0, 0},
      {0, 2, 2, 4, 0, 1},
      {0, 2, 2, 0, 0, 2},
      {0, 4, 0, 3, 4, 3},
      {0, 0, 0, 4, 0, 4},
      {0, 1, 2, 3, 4, 5},
  });
  OpTable imp = OpTable::from_rows({
      {5, 5, 5, 5, 5, 5},
      {4, 5, 1, 3, 3, 5},
      {3, 5, 5, 3, 3, 5},
      {2, 1, 2, 5, 1, 5},
      {1, 5, 1, 5, 5, 5},
      {0, 1, 2, 3, 4, 5},
  });
  return must(build_hoop(std::move(mul), std::move(imp), 5, 0, {"0", "a", "b", "c", "d", "1"}));
}

// Same carrier as hoop6 but with a corrupted unit row in the product table
// (1*x gives the successor-looking row a b c d 1 1 instead of the identity
// row). Certification must reject it with an H1-unit witness at (1, 0).
inline std::pair<OpTable, OpTable> hoop6_bad_unit_tables() {
  OpTable mul = OpTable::from_rows({
      {0, 0, 0, 0, 0, 0},
      {0, 2, 2, 4, 0, 1},
      {0, 2, 2, 0, 0, 2},
      {0, 4, 0, 3, 4, 3},
      {0, 0, 0, 4, 0, 4},
      {1, 2, 3, 4, 5, 5},
  });
  OpTable imp = OpTable::from_rows({
      {5, 5, 5, 5, 5, 5},
      {4, 5, 1, 3, 3, 5},
      {3, 5, 5, 3, 3, 5},
      {2, 1, 2, 5, 1, 5},
      {1, 5, 1, 5, 5, 5},
      {0, 1, 2, 3, 4, 5},
  });
  return {std::move(mul), std::move(imp)};
}

}  // namespace hoops::testmodels
