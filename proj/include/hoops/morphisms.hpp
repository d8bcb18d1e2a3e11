#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <hoops/hoop.hpp>
#include <hoops/roots.hpp>

namespace hoops {

// Map from the carrier of a source model into a target model.
struct HoopMap {
  std::vector<ElementId> map;
  ElementId at(ElementId x) const { return map[static_cast<std::size_t>(x)]; }
};

// Preserves product, arrow, unit — and bottom when both sides designate one.
inline bool is_homomorphism(const FiniteHoop& a, const FiniteHoop& b, const HoopMap& f) {
  if (static_cast<int>(f.map.size()) != a.size()) return false;
  for (ElementId v : f.map)
    if (v < 0 || v >= b.size()) return false;
  if (f.at(a.one()) != b.one()) return false;
  if (a.zero() && b.zero() && f.at(*a.zero()) != *b.zero()) return false;
  for (ElementId x = 0; x < a.size(); ++x)
    for (ElementId y = 0; y < a.size(); ++y) {
      if (f.at(a.mul(x, y)) != b.mul(f.at(x), f.at(y))) return false;
      if (f.at(a.imp(x, y)) != b.imp(f.at(x), f.at(y))) return false;
    }
  return true;
}

inline bool is_isomorphism(const FiniteHoop& a, const FiniteHoop& b, const HoopMap& f) {
  if (a.size() != b.size() || !is_homomorphism(a, b, f)) return false;
  std::vector<bool> hit(static_cast<std::size_t>(b.size()), false);
  for (ElementId x = 0; x < a.size(); ++x) {
    if (hit[static_cast<std::size_t>(f.at(x))]) return false;
    hit[static_cast<std::size_t>(f.at(x))] = true;
  }
  return true;
}

namespace detail {

// Relabeling-invariant signature of an element, used to prune the search.
inline std::array<long, 7> element_signature(const FiniteHoop& h, ElementId x) {
  long up = 0, down = 0, sq_pre = 0, prod_pre = 0;
  for (ElementId y = 0; y < h.size(); ++y) {
    if (h.leq(x, y)) ++up;
    if (h.leq(y, x)) ++down;
    if (h.mul(y, y) == x) ++sq_pre;
    for (ElementId z = 0; z < h.size(); ++z)
      if (h.mul(y, z) == x) ++prod_pre;
  }
  auto o = h.ord(x);
  return {x == h.one() ? 1L : 0L, h.mul(x, x) == x ? 1L : 0L, o ? *o : -1L,
          up, down, sq_pre, prod_pre};
}

// The per-node checks only compare pairs whose images are already decided,
// so the leaf runs the complete homomorphism verification; a failing leaf
// resumes the search.
inline bool iso_backtrack(const FiniteHoop& a, const FiniteHoop& b,
                          const std::vector<std::array<long, 7>>& siga,
                          const std::vector<std::array<long, 7>>& sigb,
                          std::vector<ElementId>& f, std::vector<bool>& used, ElementId x);

inline bool iso_leaf_ok(const FiniteHoop& a, const FiniteHoop& b, const std::vector<ElementId>& f);

inline bool iso_backtrack(const FiniteHoop& a, const FiniteHoop& b,
                          const std::vector<std::array<long, 7>>& siga,
                          const std::vector<std::array<long, 7>>& sigb,
                          std::vector<ElementId>& f, std::vector<bool>& used, ElementId x) {
  const int n = a.size();
  if (x == n) return iso_leaf_ok(a, b, f);
  for (ElementId y = 0; y < n; ++y) {
    if (used[static_cast<std::size_t>(y)] ||
        siga[static_cast<std::size_t>(x)] != sigb[static_cast<std::size_t>(y)])
      continue;
    bool ok = true;
    for (ElementId u = 0; u <= x && ok; ++u) {
      ElementId fu = (u == x) ? y : f[static_cast<std::size_t>(u)];
      ElementId p = a.mul(x, u), q = a.imp(x, u), r = a.imp(u, x);
      if (p <= x && (p < x ? f[static_cast<std::size_t>(p)] : y) != b.mul(y, fu)) ok = false;
      if (ok && q <= x && (q < x ? f[static_cast<std::size_t>(q)] : y) != b.imp(y, fu)) ok = false;
      if (ok && r <= x && (r < x ? f[static_cast<std::size_t>(r)] : y) != b.imp(fu, y)) ok = false;
    }
    if (!ok) continue;
    f[static_cast<std::size_t>(x)] = y;
    used[static_cast<std::size_t>(y)] = true;
    if (iso_backtrack(a, b, siga, sigb, f, used, x + 1)) return true;
    used[static_cast<std::size_t>(y)] = false;
  }
  return false;
}

inline bool iso_leaf_ok(const FiniteHoop& a, const FiniteHoop& b, const std::vector<ElementId>& f) {
  HoopMap m{f};
  return is_homomorphism(a, b, m);
}

}  // namespace detail

// First isomorphism in lexicographic image order, or absence. Signature
// multisets screen mismatches before any search starts.
inline std::optional<HoopMap> find_isomorphism(const FiniteHoop& a, const FiniteHoop& b) {
  if (a.size() != b.size()) return std::nullopt;
  if (a.bounded() != b.bounded()) return std::nullopt;
  const int n = a.size();
  std::vector<std::array<long, 7>> siga, sigb;
  for (ElementId x = 0; x < n; ++x) {
    siga.push_back(detail::element_signature(a, x));
    sigb.push_back(detail::element_signature(b, x));
  }
  auto sa = siga, sb = sigb;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return std::nullopt;

  std::vector<ElementId> f(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  if (!detail::iso_backtrack(a, b, siga, sigb, f, used, 0)) return std::nullopt;
  return HoopMap{std::move(f)};
}

// Componentwise product model; certified on construction. Element (x, y) of
// the factors sits at index x * |B| + y.
inline FiniteHoop product(const FiniteHoop& a, const FiniteHoop& b) {
  const int n = a.size() * b.size();
  auto idx = [&](ElementId x, ElementId y) { return x * b.size() + y; };
  OpTable mul(n), imp(n);
  std::vector<std::string> labels;
  for (ElementId x = 0; x < a.size(); ++x)
    for (ElementId y = 0; y < b.size(); ++y) {
      labels.push_back("(" + a.label(x) + "," + b.label(y) + ")");
      for (ElementId u = 0; u < a.size(); ++u)
        for (ElementId v = 0; v < b.size(); ++v) {
          mul.set(idx(x, y), idx(u, v), idx(a.mul(x, u), b.mul(y, v)));
          imp.set(idx(x, y), idx(u, v), idx(a.imp(x, u), b.imp(y, v)));
        }
    }
  std::optional<ElementId> zero;
  if (a.zero() && b.zero()) zero = idx(*a.zero(), *b.zero());
  auto res = build_hoop(std::move(mul), std::move(imp), idx(a.one(), b.one()), zero,
                        std::move(labels));
  if (!res.ok()) throw std::logic_error("product: componentwise tables failed certification");
  return *std::move(res.hoop);
}

// Componentwise root on a product, certified against the root laws.
inline RootMap product_root(const FiniteHoop& a, const FiniteHoop& b, const RootMap& ra,
                            const RootMap& rb) {
  if (ra.degree != rb.degree) throw std::invalid_argument("product_root: degree mismatch");
  FiniteHoop p = product(a, b);
  RootMap r{ra.degree, std::vector<ElementId>(static_cast<std::size_t>(p.size()), -1)};
  for (ElementId x = 0; x < a.size(); ++x)
    for (ElementId y = 0; y < b.size(); ++y)
      r.map[static_cast<std::size_t>(x * b.size() + y)] = ra.at(x) * b.size() + rb.at(y);
  if (!is_nth_root(p, r)) throw std::logic_error("product_root: componentwise map fails the laws");
  return r;
}

inline bool preserves_root(const FiniteHoop& a, const FiniteHoop& /*b*/, const HoopMap& f,
                           const RootMap& ra, const RootMap& rb) {
  for (ElementId x = 0; x < a.size(); ++x)
    if (f.at(ra.at(x)) != rb.at(f.at(x))) return false;
  return true;
}

// Carry a root across an isomorphism: t = f . r . f^{-1}, re-certified.
inline RootMap transport_root(const FiniteHoop& a, const FiniteHoop& b, const HoopMap& f,
                              const RootMap& r) {
  if (!is_isomorphism(a, b, f))
    throw std::invalid_argument("transport_root: map is not an isomorphism");
  RootMap t{r.degree, std::vector<ElementId>(static_cast<std::size_t>(b.size()), -1)};
  for (ElementId x = 0; x < a.size(); ++x) t.map[static_cast<std::size_t>(f.at(x))] = f.at(r.at(x));
  if (!is_nth_root(b, t))
    throw std::logic_error("transport_root: transported map fails the root laws");
  return t;
}

}  // namespace hoops
