#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hoops {

// Index of an element relative to a carrier of size n (0 <= id < n).
using ElementId = int;

// Square operation table over a carrier, stored row-major.
class OpTable {
 public:
  OpTable() = default;
  explicit OpTable(int n, ElementId fill = 0)
      : n_(n), cells_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill) {}

  static OpTable from_rows(const std::vector<std::vector<ElementId>>& rows) {
    OpTable t(static_cast<int>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size())
        throw std::invalid_argument("OpTable::from_rows: ragged rows");
      for (std::size_t j = 0; j < rows[i].size(); ++j)
        t.set(static_cast<ElementId>(i), static_cast<ElementId>(j), rows[i][j]);
    }
    return t;
  }

  int size() const { return n_; }
  ElementId at(ElementId x, ElementId y) const { return cells_[index(x, y)]; }
  void set(ElementId x, ElementId y, ElementId v) { cells_[index(x, y)] = v; }
  const std::vector<ElementId>& flat() const { return cells_; }
  bool in_range() const {
    for (ElementId v : cells_)
      if (v < 0 || v >= n_) return false;
    return true;
  }
  bool operator==(const OpTable&) const = default;

 private:
  std::size_t index(ElementId x, ElementId y) const {
    assert(x >= 0 && x < n_ && y >= 0 && y < n_);
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(y);
  }

  int n_ = 0;
  std::vector<ElementId> cells_;
};

// Structural properties decidable by exhaustive scan of a certified model.
enum class PropertyFlag {
  Bounded,         // a designated least element exists
  JoinHoop,        // the derived join candidate is a genuine lub for every pair
  Wajsberg,        // (x->y)->y = (y->x)->x
  Basic,           // (x->y)->z <= ((y->x)->z)->z
  DoubleNegation,  // x'' = x (needs a bottom)
  Cancellative,    // y -> x*y = x
  Idempotent,      // x*x = x
  LocallyFinite,   // every x != 1 has a finite power hitting bottom
  Local,           // for every x, x or x' has a finite power hitting bottom
  Regular,         // no two nonbottom elements meet to bottom
};

inline const char* to_string(PropertyFlag f) {
  switch (f) {
    case PropertyFlag::Bounded: return "bounded";
    case PropertyFlag::JoinHoop: return "join";
    case PropertyFlag::Wajsberg: return "wajsberg";
    case PropertyFlag::Basic: return "basic";
    case PropertyFlag::DoubleNegation: return "dnp";
    case PropertyFlag::Cancellative: return "cancellative";
    case PropertyFlag::Idempotent: return "idempotent";
    case PropertyFlag::LocallyFinite: return "locally-finite";
    case PropertyFlag::Local: return "local";
    case PropertyFlag::Regular: return "regular";
  }
  return "?";
}

// One violated law with its lexicographically first witness tuple.
struct Violation {
  std::string law;                  // H1-comm | H1-assoc | H1-unit | H2 | H3 | H4 | BOUND
  std::vector<ElementId> witness;
};

// Certification outcome. Structural defects (wrong shapes, out-of-range
// entries, bad designations) are kept apart from law violations.
struct AxiomReport {
  std::vector<std::string> malformed;
  std::vector<Violation> violations;
  bool ok() const { return malformed.empty() && violations.empty(); }
};

class FiniteHoop;
struct BuildResult;

BuildResult build_hoop(OpTable mul, OpTable imp, ElementId one,
                       std::optional<ElementId> zero = std::nullopt,
                       std::vector<std::string> labels = {});

// A certified finite model: construction goes through build_hoop only, so
// every instance satisfies the defining laws (and boundedness when a bottom
// is designated).
class FiniteHoop {
 public:
  int size() const { return n_; }
  ElementId one() const { return one_; }
  std::optional<ElementId> zero() const { return zero_; }
  bool bounded() const { return zero_.has_value(); }

  ElementId mul(ElementId x, ElementId y) const { return mul_.at(x, y); }
  ElementId imp(ElementId x, ElementId y) const { return imp_.at(x, y); }
  const OpTable& mul_table() const { return mul_; }
  const OpTable& imp_table() const { return imp_; }

  // Natural order: x <= y iff x -> y = 1.
  bool leq(ElementId x, ElementId y) const { return imp_.at(x, y) == one_; }

  // x /\ y = x * (x -> y); total, and the infimum for the natural order.
  ElementId meet(ElementId x, ElementId y) const { return mul(x, imp(x, y)); }

  // ((x->y)->y) /\ ((y->x)->x): always an upper bound of {x, y}; the model
  // is a join-hoop when it is the least one for every pair.
  ElementId join_candidate(ElementId x, ElementId y) const {
    return meet(imp(imp(x, y), y), imp(imp(y, x), x));
  }

  // Least upper bound computed directly from the order, if one exists.
  std::optional<ElementId> join(ElementId x, ElementId y) const {
    std::optional<ElementId> best;
    for (ElementId u = 0; u < n_; ++u) {
      if (!leq(x, u) || !leq(y, u)) continue;
      if (!best || leq(u, *best)) {
        // candidate least; confirm against all other upper bounds below
        best = u;
      }
    }
    if (!best) return std::nullopt;
    for (ElementId u = 0; u < n_; ++u)
      if (leq(x, u) && leq(y, u) && !leq(*best, u)) return std::nullopt;
    return best;
  }

  bool is_join_hoop() const {
    for (ElementId x = 0; x < n_; ++x)
      for (ElementId y = 0; y < n_; ++y) {
        auto j = join(x, y);
        if (!j || *j != join_candidate(x, y)) return false;
      }
    return true;
  }

  // x' = x -> 0; only meaningful with a designated bottom.
  ElementId neg(ElementId x) const {
    if (!zero_) throw std::logic_error("neg: model has no designated bottom");
    return imp(x, *zero_);
  }

  // x^k with x^0 = 1.
  ElementId pow(ElementId x, int k) const {
    if (k < 0) throw std::logic_error("pow: negative exponent");
    ElementId p = one_;
    for (int i = 0; i < k; ++i) p = mul(p, x);
    return p;
  }

  // Least k >= 1 with x^k = 0, or nullopt when powers stabilize above bottom
  // (always nullopt for models without a designated bottom).
  std::optional<int> ord(ElementId x) const {
    if (!zero_) return std::nullopt;
    ElementId p = x;
    int k = 1;
    while (true) {
      if (p == *zero_) return k;
      ElementId q = mul(p, x);
      if (q == p) return std::nullopt;  // powers are non-increasing, so this is final
      p = q;
      ++k;
    }
  }

  // Least element of the carrier under the natural order, when one exists
  // (it always does for a certified finite model: fold the total meet).
  std::optional<ElementId> least() const {
    ElementId m = 0;
    for (ElementId x = 1; x < n_; ++x) m = meet(m, x);
    for (ElementId x = 0; x < n_; ++x)
      if (!leq(m, x)) return std::nullopt;
    return m;
  }

  const std::string& label(ElementId x) const { return labels_[static_cast<std::size_t>(x)]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<ElementId> element_by_label(const std::string& s) const {
    for (ElementId x = 0; x < n_; ++x)
      if (labels_[static_cast<std::size_t>(x)] == s) return x;
    return std::nullopt;
  }

  bool has(PropertyFlag f) const {
    switch (f) {
      case PropertyFlag::Bounded:
        return bounded();
      case PropertyFlag::JoinHoop:
        return is_join_hoop();
      case PropertyFlag::Wajsberg:
        for (ElementId x = 0; x < n_; ++x)
          for (ElementId y = 0; y < n_; ++y)
            if (imp(imp(x, y), y) != imp(imp(y, x), x)) return false;
        return true;
      case PropertyFlag::Basic:
        for (ElementId x = 0; x < n_; ++x)
          for (ElementId y = 0; y < n_; ++y)
            for (ElementId z = 0; z < n_; ++z)
              if (!leq(imp(imp(x, y), z), imp(imp(imp(y, x), z), z))) return false;
        return true;
      case PropertyFlag::DoubleNegation:
        if (!bounded()) return false;
        for (ElementId x = 0; x < n_; ++x)
          if (neg(neg(x)) != x) return false;
        return true;
      case PropertyFlag::Cancellative:
        for (ElementId x = 0; x < n_; ++x)
          for (ElementId y = 0; y < n_; ++y)
            if (imp(y, mul(x, y)) != x) return false;
        return true;
      case PropertyFlag::Idempotent:
        for (ElementId x = 0; x < n_; ++x)
          if (mul(x, x) != x) return false;
        return true;
      case PropertyFlag::LocallyFinite:
        if (!bounded()) return false;
        for (ElementId x = 0; x < n_; ++x)
          if (x != one_ && !ord(x)) return false;
        return true;
      case PropertyFlag::Local:
        if (!bounded()) return false;
        for (ElementId x = 0; x < n_; ++x)
          if (!ord(x) && !ord(neg(x))) return false;
        return true;
      case PropertyFlag::Regular:
        if (!bounded()) return false;
        for (ElementId x = 0; x < n_; ++x)
          for (ElementId y = 0; y < n_; ++y)
            if (x != *zero_ && y != *zero_ && meet(x, y) == *zero_) return false;
        return true;
    }
    return false;
  }

 private:
  friend BuildResult build_hoop(OpTable, OpTable, ElementId, std::optional<ElementId>,
                                std::vector<std::string>);

  FiniteHoop(OpTable mul, OpTable imp, ElementId one, std::optional<ElementId> zero,
             std::vector<std::string> labels)
      : n_(mul.size()),
        mul_(std::move(mul)),
        imp_(std::move(imp)),
        one_(one),
        zero_(zero),
        labels_(std::move(labels)) {}

  int n_ = 0;
  OpTable mul_;
  OpTable imp_;
  ElementId one_ = 0;
  std::optional<ElementId> zero_;
  std::vector<std::string> labels_;
};

struct BuildResult {
  std::optional<FiniteHoop> hoop;  // present iff report.ok()
  AxiomReport report;
  bool ok() const { return report.ok(); }
};

inline BuildResult build_hoop(OpTable mul, OpTable imp, ElementId one,
                              std::optional<ElementId> zero, std::vector<std::string> labels) {
  BuildResult r;
  AxiomReport& rep = r.report;
  const int n = mul.size();

  if (n <= 0) rep.malformed.push_back("empty carrier");
  if (imp.size() != n) rep.malformed.push_back("table sizes differ");
  if (n > 0 && !mul.in_range()) rep.malformed.push_back("product table entry out of range");
  if (n > 0 && imp.size() == n && !imp.in_range())
    rep.malformed.push_back("arrow table entry out of range");
  if (one < 0 || one >= n) rep.malformed.push_back("unit index out of range");
  if (zero && (*zero < 0 || *zero >= n)) rep.malformed.push_back("bottom index out of range");
  if (labels.empty()) {
    for (int i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
  } else if (static_cast<int>(labels.size()) != n) {
    rep.malformed.push_back("label count differs from carrier size");
  } else {
    auto sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      rep.malformed.push_back("duplicate labels");
  }
  if (!rep.malformed.empty()) return r;

  auto m = [&](ElementId x, ElementId y) { return mul.at(x, y); };
  auto i = [&](ElementId x, ElementId y) { return imp.at(x, y); };

  // Lexicographically first witness per law; laws are scanned independently.
  [&] {
    for (ElementId x = 0; x < n; ++x)
      for (ElementId y = 0; y < n; ++y)
        if (m(x, y) != m(y, x)) {
          rep.violations.push_back({"H1-comm", {x, y}});
          return;
        }
  }();
  [&] {
    for (ElementId x = 0; x < n; ++x)
      for (ElementId y = 0; y < n; ++y)
        for (ElementId z = 0; z < n; ++z)
          if (m(m(x, y), z) != m(x, m(y, z))) {
            rep.violations.push_back({"H1-assoc", {x, y, z}});
            return;
          }
  }();
  [&] {
    for (ElementId x = 0; x < n; ++x)
      if (m(one, x) != x || m(x, one) != x) {
        rep.violations.push_back({"H1-unit", {one, x}});
        return;
      }
  }();
  [&] {
    for (ElementId x = 0; x < n; ++x)
      if (i(x, x) != one) {
        rep.violations.push_back({"H2", {x}});
        return;
      }
  }();
  [&] {
    for (ElementId x = 0; x < n; ++x)
      for (ElementId y = 0; y < n; ++y)
        if (m(x, i(x, y)) != m(y, i(y, x))) {
          rep.violations.push_back({"H3", {x, y}});
          return;
        }
  }();
  [&] {
    for (ElementId x = 0; x < n; ++x)
      for (ElementId y = 0; y < n; ++y)
        for (ElementId z = 0; z < n; ++z)
          if (i(m(x, y), z) != i(x, i(y, z))) {
            rep.violations.push_back({"H4", {x, y, z}});
            return;
          }
  }();
  if (zero) {
    for (ElementId x = 0; x < n; ++x)
      if (i(*zero, x) != one) {
        rep.violations.push_back({"BOUND", {x}});
        break;
      }
  }

  if (rep.violations.empty())
    r.hoop = FiniteHoop(std::move(mul), std::move(imp), one, zero, std::move(labels));
  return r;
}

// Rebuild a certified model under a relabeling permutation (perm[old] = new).
inline FiniteHoop relabel(const FiniteHoop& h, const std::vector<ElementId>& perm) {
  const int n = h.size();
  if (static_cast<int>(perm.size()) != n) throw std::logic_error("relabel: bad permutation size");
  OpTable mul(n), imp(n);
  std::vector<std::string> labels(static_cast<std::size_t>(n));
  for (ElementId x = 0; x < n; ++x) {
    labels[static_cast<std::size_t>(perm[x])] = h.label(x);
    for (ElementId y = 0; y < n; ++y) {
      mul.set(perm[x], perm[y], perm[h.mul(x, y)]);
      imp.set(perm[x], perm[y], perm[h.imp(x, y)]);
    }
  }
  std::optional<ElementId> zero;
  if (h.zero()) zero = perm[*h.zero()];
  auto res = build_hoop(std::move(mul), std::move(imp), perm[h.one()], zero, std::move(labels));
  if (!res.ok()) throw std::logic_error("relabel: permuted model failed certification");
  return *std::move(res.hoop);
}

// Restriction of a certified model to a subset closed under both operations.
// The induced least element is designated as the bottom (a finite model always
// has one). Returns nullopt if the subset is not closed or misses the unit.
struct Subalgebra {
  FiniteHoop hoop;
  std::vector<ElementId> to_host;  // subalgebra index -> host index
  std::vector<ElementId> to_sub;   // host index -> subalgebra index, or -1
};

inline std::optional<Subalgebra> restrict_to(const FiniteHoop& h, std::vector<ElementId> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  const int k = static_cast<int>(members.size());
  if (k == 0) return std::nullopt;
  std::vector<ElementId> to_sub(static_cast<std::size_t>(h.size()), -1);
  for (int a = 0; a < k; ++a) to_sub[static_cast<std::size_t>(members[static_cast<std::size_t>(a)])] = a;
  if (to_sub[static_cast<std::size_t>(h.one())] < 0) return std::nullopt;

  OpTable mul(k), imp(k);
  std::vector<std::string> labels;
  for (int a = 0; a < k; ++a) labels.push_back(h.label(members[static_cast<std::size_t>(a)]));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      ElementId p = h.mul(members[static_cast<std::size_t>(a)], members[static_cast<std::size_t>(b)]);
      ElementId q = h.imp(members[static_cast<std::size_t>(a)], members[static_cast<std::size_t>(b)]);
      if (to_sub[static_cast<std::size_t>(p)] < 0 || to_sub[static_cast<std::size_t>(q)] < 0)
        return std::nullopt;  // not closed
      mul.set(a, b, to_sub[static_cast<std::size_t>(p)]);
      imp.set(a, b, to_sub[static_cast<std::size_t>(q)]);
    }

  // Find the induced least member, if any, and designate it.
  std::optional<ElementId> bottom;
  for (int a = 0; a < k; ++a) {
    bool below_all = true;
    for (int b = 0; b < k && below_all; ++b)
      below_all = h.leq(members[static_cast<std::size_t>(a)], members[static_cast<std::size_t>(b)]);
    if (below_all) {
      bottom = a;
      break;
    }
  }

  auto res = build_hoop(std::move(mul), std::move(imp), to_sub[static_cast<std::size_t>(h.one())],
                        bottom, std::move(labels));
  if (!res.ok()) return std::nullopt;
  return Subalgebra{*std::move(res.hoop), std::move(members), std::move(to_sub)};
}

}  // namespace hoops
