#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <hoops/hoop.hpp>

namespace hoops {

// Total n-th root map over a carrier: map[x]^degree = x, and any y with
// y^degree <= x sits below map[x].
struct RootMap {
  int degree = 2;
  std::vector<ElementId> map;

  ElementId at(ElementId x) const { return map[static_cast<std::size_t>(x)]; }
  bool is_identity() const {
    for (std::size_t i = 0; i < map.size(); ++i)
      if (map[i] != static_cast<ElementId>(i)) return false;
    return true;
  }
};

// Direct check of the two defining laws of an n-th root.
inline bool is_nth_root(const FiniteHoop& h, const RootMap& r) {
  if (static_cast<int>(r.map.size()) != h.size() || r.degree < 1) return false;
  for (ElementId x = 0; x < h.size(); ++x) {
    if (h.pow(r.at(x), r.degree) != x) return false;
    for (ElementId y = 0; y < h.size(); ++y)
      if (h.leq(h.pow(y, r.degree), x) && !h.leq(y, r.at(x))) return false;
  }
  return true;
}

// Solve for the n-th root: its value at x, if any, must be the greatest
// element of {y : y^degree <= x}, and that greatest element must power back
// to x. Absence anywhere means the model has no n-th root.
inline std::optional<RootMap> nth_root_solve(const FiniteHoop& h, int degree) {
  if (degree < 1) throw std::logic_error("nth_root_solve: degree must be >= 1");
  RootMap r{degree, {}};
  r.map.reserve(static_cast<std::size_t>(h.size()));
  for (ElementId x = 0; x < h.size(); ++x) {
    std::vector<ElementId> below;
    for (ElementId y = 0; y < h.size(); ++y)
      if (h.leq(h.pow(y, degree), x)) below.push_back(y);
    std::optional<ElementId> top;
    for (ElementId c : below) {
      bool greatest = true;
      for (ElementId y : below)
        if (!h.leq(y, c)) greatest = false;
      if (greatest) {
        top = c;
        break;
      }
    }
    if (!top || h.pow(*top, degree) != x) return std::nullopt;
    r.map.push_back(*top);
  }
  return r;
}

inline std::optional<RootMap> sqrt_solve(const FiniteHoop& h) { return nth_root_solve(h, 2); }

// Independent oracle: filter every one of the n^n self-maps through the
// defining laws. The laws pin the map down, so finding two is a logic error.
inline std::optional<RootMap> nth_root_oracle(const FiniteHoop& h, int degree,
                                              int max_size = 5) {
  const int n = h.size();
  if (n > max_size) throw std::logic_error("nth_root_oracle: carrier above configured bound");
  std::vector<ElementId> digits(static_cast<std::size_t>(n), 0);
  std::optional<RootMap> found;
  while (true) {
    RootMap cand{degree, digits};
    if (is_nth_root(h, cand)) {
      if (found) throw std::logic_error("nth_root_oracle: two distinct maps satisfy the laws");
      found = cand;
    }
    int i = 0;
    while (i < n && ++digits[static_cast<std::size_t>(i)] == n) digits[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
  return found;
}

inline std::optional<RootMap> sqrt_oracle(const FiniteHoop& h, int max_size = 5) {
  return nth_root_oracle(h, 2, max_size);
}

inline bool is_multiplicative(const FiniteHoop& h, const RootMap& s) {
  for (ElementId x = 0; x < h.size(); ++x)
    for (ElementId y = 0; y < h.size(); ++y)
      if (s.at(h.mul(x, y)) != h.mul(s.at(x), s.at(y))) return false;
  return true;
}

// Equational profile of a square-root map on a bounded model:
//   eq1: s(x)*s(x) = x
//   eq2: s((y*y) \/ x) /\ y = y   (join taken as the derived candidate)
//   eq3: s(x') = s(x) -> s(0)
// plus the bottom-value classification (good: s(0) = 0; strict: s(0) = s(0)').
struct SqrtProfile {
  bool good = false;
  bool strict = false;
  bool eq1 = false, eq2 = false, eq3 = false;
  std::optional<std::vector<ElementId>> eq1_witness, eq2_witness, eq3_witness;
};

inline SqrtProfile classify_sqrt(const FiniteHoop& h, const RootMap& s) {
  if (!h.bounded()) throw std::logic_error("classify_sqrt: model has no designated bottom");
  if (s.degree != 2) throw std::logic_error("classify_sqrt: map degree is not 2");
  SqrtProfile p;
  const ElementId z = *h.zero();
  p.good = s.at(z) == z;
  p.strict = s.at(z) == h.neg(s.at(z));
  p.eq1 = p.eq2 = p.eq3 = true;
  for (ElementId x = 0; x < h.size() && p.eq1; ++x)
    if (h.mul(s.at(x), s.at(x)) != x) {
      p.eq1 = false;
      p.eq1_witness = {x};
    }
  for (ElementId x = 0; x < h.size() && p.eq2; ++x)
    for (ElementId y = 0; y < h.size() && p.eq2; ++y) {
      ElementId v = h.join_candidate(h.mul(y, y), x);
      if (h.meet(s.at(v), y) != y) {
        p.eq2 = false;
        p.eq2_witness = {x, y};
      }
    }
  for (ElementId x = 0; x < h.size() && p.eq3; ++x)
    if (s.at(h.neg(x)) != h.imp(s.at(x), s.at(z))) {
      p.eq3 = false;
      p.eq3_witness = {x};
    }
  return p;
}

// All self-maps satisfying the three equations above; on a bounded model the
// laws force any such map to be the square root, so the result is empty or a
// singleton equal to sqrt_solve's answer.
inline std::vector<RootMap> sqrt_equation_maps(const FiniteHoop& h) {
  if (!h.bounded()) throw std::logic_error("sqrt_equation_maps: model has no designated bottom");
  const int n = h.size();
  const ElementId z = *h.zero();
  std::vector<RootMap> out;
  std::vector<ElementId> digits(static_cast<std::size_t>(n), 0);
  while (true) {
    RootMap cand{2, digits};
    bool ok = true;
    for (ElementId x = 0; x < n && ok; ++x)
      ok = h.mul(cand.at(x), cand.at(x)) == x &&
           cand.at(h.neg(x)) == h.imp(cand.at(x), cand.at(z));
    for (ElementId x = 0; x < n && ok; ++x)
      for (ElementId y = 0; y < n && ok; ++y)
        ok = h.meet(cand.at(h.join_candidate(h.mul(y, y), x)), y) == y;
    if (ok) out.push_back(cand);
    int i = 0;
    while (i < n && ++digits[static_cast<std::size_t>(i)] == n) digits[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
  return out;
}

// Orbit of x under repeated application of the root map (x, r(x), r(r(x)), ...).
inline std::vector<ElementId> root_orbit(const RootMap& r, ElementId x) {
  std::vector<ElementId> orbit;
  ElementId cur = x;
  while (true) {
    for (ElementId seen : orbit)
      if (seen == cur) return orbit;
    orbit.push_back(cur);
    cur = r.at(cur);
  }
}

}  // namespace hoops
