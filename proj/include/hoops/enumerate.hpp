#pragma once
// Exhaustive enumeration of finite models up to isomorphism, census tables
// over the enumerated models, and a hunt facility that searches for the
// smallest model violating a statement.
//
// Search strategy: the product table of a model determines everything else.
// The order is divisibility (x <= y iff x = w * y for some w), and the arrow
// is forced as the residual (x -> y is the greatest z with z * x <= y). So we
// backtrack over commutative monoid tables only, derive the rest, and keep
// candidates that certify. Two sound prunings shrink the search:
//   - the unit can be placed at the last index (relabeling),
//   - a product of non-unit elements is never the unit (1 = x * y <= x
//     forces x = 1), so non-unit cells range over non-unit values.
// Incremental associativity filtering after each cell assignment keeps the
// tree small. Deduplication and deterministic output order come from a
// canonical key: the least (product, arrow) table pair over all relabelings.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hoops/hoop.hpp"
#include "hoops/identity.hpp"
#include "hoops/roots.hpp"

namespace hoops {

inline constexpr int kMaxEnumerationSize = 6;

using CanonicalKey = std::pair<std::vector<ElementId>, std::vector<ElementId>>;

// Least (product, arrow) flat-table pair over all relabelings that put the
// unit at the last index. Isomorphic models share a key, non-isomorphic
// models never do (the key reconstructs the model).
inline CanonicalKey canonical_key(const FiniteHoop& h) {
  const int n = h.size();
  std::vector<ElementId> slots;  // canonical index i < n-1 holds host element slots[i]
  for (ElementId x = 0; x < n; ++x)
    if (x != h.one()) slots.push_back(x);
  std::sort(slots.begin(), slots.end());

  CanonicalKey best;
  bool have = false;
  std::vector<ElementId> from_canon(static_cast<std::size_t>(n));
  std::vector<ElementId> to_canon(static_cast<std::size_t>(n));
  do {
    for (int i = 0; i + 1 < n; ++i) from_canon[static_cast<std::size_t>(i)] = slots[static_cast<std::size_t>(i)];
    from_canon[static_cast<std::size_t>(n - 1)] = h.one();
    for (int i = 0; i < n; ++i) to_canon[static_cast<std::size_t>(from_canon[static_cast<std::size_t>(i)])] = i;

    CanonicalKey key;
    key.first.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    key.second.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        const ElementId hx = from_canon[static_cast<std::size_t>(x)];
        const ElementId hy = from_canon[static_cast<std::size_t>(y)];
        key.first.push_back(to_canon[static_cast<std::size_t>(h.mul(hx, hy))]);
        key.second.push_back(to_canon[static_cast<std::size_t>(h.imp(hx, hy))]);
      }
    if (!have || key < best) {
      best = std::move(key);
      have = true;
    }
  } while (std::next_permutation(slots.begin(), slots.end()));
  return best;
}

// Rebuilds the certified model a canonical key encodes. The bottom is
// labeled "0", the unit "1", and the rest a, b, c, ... by index.
inline FiniteHoop hoop_from_key(const CanonicalKey& key) {
  int n = 1;
  while (static_cast<std::size_t>(n) * static_cast<std::size_t>(n) < key.first.size()) ++n;
  if (static_cast<std::size_t>(n) * static_cast<std::size_t>(n) != key.first.size() ||
      key.first.size() != key.second.size())
    throw std::invalid_argument("hoop_from_key: malformed key");

  OpTable mul(n), imp(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      mul.set(x, y, key.first[static_cast<std::size_t>(x * n + y)]);
      imp.set(x, y, key.second[static_cast<std::size_t>(x * n + y)]);
    }

  BuildResult probe = build_hoop(mul, imp, n - 1);
  if (!probe.ok()) throw std::invalid_argument("hoop_from_key: tables do not certify");
  std::optional<ElementId> least = probe.hoop->least();
  if (!least) throw std::invalid_argument("hoop_from_key: model has no least element");

  std::vector<std::string> labels(static_cast<std::size_t>(n));
  char next = 'a';
  for (ElementId i = 0; i < n; ++i) {
    if (i == n - 1)
      labels[static_cast<std::size_t>(i)] = "1";
    else if (i == *least)
      labels[static_cast<std::size_t>(i)] = "0";
    else
      labels[static_cast<std::size_t>(i)] = std::string(1, next++);
  }

  BuildResult r = build_hoop(mul, imp, n - 1, *least, std::move(labels));
  if (!r.ok()) throw std::invalid_argument("hoop_from_key: bounded rebuild failed");
  return *r.hoop;
}

namespace detail {

// Completes a product table into a certified model when possible. The unit is
// located (nullopt if absent), the divisibility order derived (nullopt if not
// antisymmetric or without a least element), the arrow forced by residuation
// (nullopt if some residual has no greatest solution), and the result goes
// through full certification. Commutativity/associativity failures surface
// there. Every certified model arises this way from its own product table, so
// a scan over product tables that calls this misses nothing.
inline std::optional<FiniteHoop> model_from_monoid(const std::vector<std::vector<ElementId>>& m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return std::nullopt;

  std::optional<ElementId> unit;
  for (ElementId u = 0; u < n && !unit; ++u) {
    bool neutral = true;
    for (ElementId x = 0; x < n && neutral; ++x)
      neutral = m[static_cast<std::size_t>(u)][static_cast<std::size_t>(x)] == x &&
                m[static_cast<std::size_t>(x)][static_cast<std::size_t>(u)] == x;
    if (neutral) unit = u;
  }
  if (!unit) return std::nullopt;

  // x <= y iff x is a multiple of y.
  auto divides_le = [&](ElementId x, ElementId y) {
    for (ElementId w = 0; w < n; ++w)
      if (m[static_cast<std::size_t>(w)][static_cast<std::size_t>(y)] == x) return true;
    return false;
  };

  // Reflexivity and transitivity come with the monoid; antisymmetry does not.
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = a + 1; b < n; ++b)
      if (divides_le(a, b) && divides_le(b, a)) return std::nullopt;

  std::optional<ElementId> least;
  for (ElementId a = 0; a < n && !least; ++a) {
    bool below_all = true;
    for (ElementId b = 0; b < n && below_all; ++b) below_all = divides_le(a, b);
    if (below_all) least = a;
  }
  if (!least) return std::nullopt;

  // Arrow forced by residuation: the greatest z with z * x <= y.
  OpTable mul(n), imp(n);
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = 0; y < n; ++y) {
      mul.set(x, y, m[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]);
      std::optional<ElementId> greatest;
      for (ElementId z = 0; z < n && !greatest; ++z) {
        if (!divides_le(m[static_cast<std::size_t>(z)][static_cast<std::size_t>(x)], y)) continue;
        bool top = true;
        for (ElementId w = 0; w < n && top; ++w)
          if (divides_le(m[static_cast<std::size_t>(w)][static_cast<std::size_t>(x)], y))
            top = divides_le(w, z);
        if (top) greatest = z;
      }
      if (!greatest) return std::nullopt;
      imp.set(x, y, *greatest);
    }

  BuildResult r = build_hoop(std::move(mul), std::move(imp), *unit, *least);
  if (!r.ok()) return std::nullopt;
  return std::move(r.hoop);
}

// Backtracks over symmetric product tables (unit row forced, non-unit cells
// range over non-unit values), rejecting as soon as some fully determined
// triple breaks associativity. At each leaf the order and arrow are derived
// and the candidate goes through full certification.
class ModelSearch {
 public:
  explicit ModelSearch(int n) : n_(n), unit_(n - 1), m_(static_cast<std::size_t>(n), std::vector<ElementId>(static_cast<std::size_t>(n), -1)) {
    for (ElementId x = 0; x < n_; ++x) {
      m_[static_cast<std::size_t>(x)][static_cast<std::size_t>(unit_)] = x;
      m_[static_cast<std::size_t>(unit_)][static_cast<std::size_t>(x)] = x;
    }
    for (ElementId x = 0; x < unit_; ++x)
      for (ElementId y = x; y < unit_; ++y) cells_.emplace_back(x, y);
  }

  std::set<CanonicalKey> run() {
    keys_.clear();
    descend(0);
    return std::move(keys_);
  }

 private:
  void descend(std::size_t cell) {
    if (cell == cells_.size()) {
      harvest();
      return;
    }
    const auto [x, y] = cells_[cell];
    for (ElementId v = 0; v < unit_; ++v) {
      m_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = v;
      m_[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = v;
      if (associativity_consistent()) descend(cell + 1);
    }
    m_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = -1;
    m_[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = -1;
  }

  // True while every triple whose intermediate products are all determined
  // associates; unknown cells are skipped.
  bool associativity_consistent() const {
    for (ElementId a = 0; a < n_; ++a)
      for (ElementId b = 0; b < n_; ++b) {
        const ElementId ab = m_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        if (ab < 0) continue;
        for (ElementId c = 0; c < n_; ++c) {
          const ElementId bc = m_[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)];
          if (bc < 0) continue;
          const ElementId l = m_[static_cast<std::size_t>(ab)][static_cast<std::size_t>(c)];
          const ElementId r = m_[static_cast<std::size_t>(a)][static_cast<std::size_t>(bc)];
          if (l >= 0 && r >= 0 && l != r) return false;
        }
      }
    return true;
  }

  void harvest() {
    if (std::optional<FiniteHoop> h = model_from_monoid(m_)) keys_.insert(canonical_key(*h));
  }

  int n_;
  ElementId unit_;
  std::vector<std::vector<ElementId>> m_;
  std::vector<std::pair<ElementId, ElementId>> cells_;
  std::set<CanonicalKey> keys_;
};

}  // namespace detail

// All models of the given size up to isomorphism, in ascending canonical-key
// order. Sizes above kMaxEnumerationSize are rejected.
inline std::vector<FiniteHoop> enumerate_hoops(int n) {
  if (n < 1 || n > kMaxEnumerationSize)
    throw std::invalid_argument("enumerate_hoops: size must be between 1 and " +
                                std::to_string(kMaxEnumerationSize));
  detail::ModelSearch search(n);
  std::vector<FiniteHoop> out;
  for (const CanonicalKey& key : search.run()) out.push_back(hoop_from_key(key));
  return out;
}

struct CensusRow {
  int size = 0;
  long long models = 0;
  long long bounded = 0;
  long long join = 0;
  long long wajsberg = 0;
  long long basic = 0;
  long long double_negation = 0;
  long long idempotent = 0;
  long long cancellative = 0;
  long long with_sqrt = 0;
  long long good_sqrt = 0;
  long long strict_sqrt = 0;
};

inline CensusRow census(const std::vector<FiniteHoop>& models, int size) {
  CensusRow row;
  row.size = size;
  row.models = static_cast<long long>(models.size());
  for (const FiniteHoop& h : models) {
    if (h.has(PropertyFlag::Bounded)) ++row.bounded;
    if (h.has(PropertyFlag::JoinHoop)) ++row.join;
    if (h.has(PropertyFlag::Wajsberg)) ++row.wajsberg;
    if (h.has(PropertyFlag::Basic)) ++row.basic;
    if (h.has(PropertyFlag::DoubleNegation)) ++row.double_negation;
    if (h.has(PropertyFlag::Idempotent)) ++row.idempotent;
    if (h.has(PropertyFlag::Cancellative)) ++row.cancellative;
    if (std::optional<RootMap> s = sqrt_solve(h)) {
      ++row.with_sqrt;
      SqrtProfile p = classify_sqrt(h, *s);
      if (p.good) ++row.good_sqrt;
      if (p.strict) ++row.strict_sqrt;
    }
  }
  return row;
}

inline CensusRow census(int n) { return census(enumerate_hoops(n), n); }

struct HuntResult {
  FiniteHoop model;       // the smallest violating model (canonical form)
  FiniteCheck check;      // holds == false; includes the first witness
  long long models_tried = 0;
};

// Searches models of size 1..max_size (ascending, canonical order within a
// size) for the first one where the identity is applicable and fails.
inline std::optional<HuntResult> hunt(const Identity& ident, int max_size) {
  if (max_size < 1 || max_size > kMaxEnumerationSize)
    throw std::invalid_argument("hunt: size bound must be between 1 and " +
                                std::to_string(kMaxEnumerationSize));
  long long tried = 0;
  for (int n = 1; n <= max_size; ++n) {
    for (const FiniteHoop& h : enumerate_hoops(n)) {
      ++tried;
      FiniteCheck c = check_identity(ident, h);
      if (c.applicable && !c.holds) return HuntResult{h, std::move(c), tried};
    }
  }
  return std::nullopt;
}

}  // namespace hoops
