#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <hoops/hoop.hpp>
#include <hoops/roots.hpp>

namespace hoops {

// Carrier subsets as bitmasks; carriers handled here stay well below 64.
using Mask = std::uint64_t;

inline bool mask_contains(Mask m, ElementId x) { return (m >> x) & 1u; }
inline Mask mask_add(Mask m, ElementId x) { return m | (Mask{1} << x); }
inline Mask mask_of(const std::vector<ElementId>& xs) {
  Mask m = 0;
  for (ElementId x : xs) m = mask_add(m, x);
  return m;
}
inline std::vector<ElementId> mask_members(Mask m, int n) {
  std::vector<ElementId> out;
  for (ElementId x = 0; x < n; ++x)
    if (mask_contains(m, x)) out.push_back(x);
  return out;
}
inline int mask_count(Mask m, int n) { return static_cast<int>(mask_members(m, n).size()); }

// F1: unit present; F2: closed under product; F3: upward closed.
inline bool is_filter(const FiniteHoop& h, Mask f) {
  if (!mask_contains(f, h.one())) return false;
  for (ElementId x = 0; x < h.size(); ++x) {
    if (!mask_contains(f, x)) continue;
    for (ElementId y = 0; y < h.size(); ++y) {
      if (mask_contains(f, y) && !mask_contains(f, h.mul(x, y))) return false;
      if (h.leq(x, y) && !mask_contains(f, y)) return false;
    }
  }
  return true;
}

inline bool is_proper_filter(const FiniteHoop& h, Mask f) {
  return is_filter(h, f) && mask_count(f, h.size()) < h.size();
}

// Every filter, ordered by ascending member bitmask.
inline std::vector<Mask> all_filters(const FiniteHoop& h) {
  const int n = h.size();
  if (n > 24) throw std::logic_error("all_filters: carrier too large for subset scan");
  std::vector<Mask> out;
  const Mask top = (Mask{1} << n);
  for (Mask m = 0; m < top; ++m)
    if (mask_contains(m, h.one()) && is_filter(h, m)) out.push_back(m);
  return out;
}

// Least filter containing the given elements: close under products, then
// upward, to a fixpoint.
inline Mask generated_filter(const FiniteHoop& h, const std::vector<ElementId>& xs) {
  if (xs.empty()) throw std::invalid_argument("generated_filter: empty generating set");
  Mask f = mask_add(mask_of(xs), h.one());
  bool grew = true;
  while (grew) {
    grew = false;
    for (ElementId x = 0; x < h.size(); ++x) {
      if (!mask_contains(f, x)) continue;
      for (ElementId y = 0; y < h.size(); ++y) {
        if (mask_contains(f, y) && !mask_contains(f, h.mul(x, y))) {
          f = mask_add(f, h.mul(x, y));
          grew = true;
        }
        if (h.leq(x, y) && !mask_contains(f, y)) {
          f = mask_add(f, y);
          grew = true;
        }
      }
    }
  }
  return f;
}

// Prime: proper, and a join landing in the filter forces one of its
// arguments in. Meaningful on join models, where the derived candidate is
// the actual join.
inline bool is_prime_filter(const FiniteHoop& h, Mask f) {
  if (!is_proper_filter(h, f)) return false;
  for (ElementId x = 0; x < h.size(); ++x)
    for (ElementId y = 0; y < h.size(); ++y) {
      auto j = h.join(x, y);
      if (!j) throw std::logic_error("is_prime_filter: model lacks a join for some pair");
      if (mask_contains(f, *j) && !mask_contains(f, x) && !mask_contains(f, y)) return false;
    }
  return true;
}

inline bool is_maximal_filter(const FiniteHoop& h, Mask f) {
  if (!is_proper_filter(h, f)) return false;
  for (Mask g : all_filters(h))
    if (g != f && (g & f) == f && mask_count(g, h.size()) < h.size()) return false;
  return true;
}

// Quotient by the congruence x ~ y iff x->y and y->x lie in the filter.
// Classes are indexed by ascending least member; operation tables are checked
// well-defined over every member pair before the quotient is certified.
struct Quotient {
  FiniteHoop hoop;
  std::vector<ElementId> proj;                // host element -> class index
  std::vector<std::vector<ElementId>> classes;  // class index -> sorted members
};

inline Quotient quotient(const FiniteHoop& h, Mask f) {
  if (!is_filter(h, f)) throw std::invalid_argument("quotient: subset is not a filter");
  const int n = h.size();
  auto equiv = [&](ElementId x, ElementId y) {
    return mask_contains(f, h.imp(x, y)) && mask_contains(f, h.imp(y, x));
  };

  std::vector<ElementId> proj(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<ElementId>> classes;
  for (ElementId x = 0; x < n; ++x) {
    if (proj[static_cast<std::size_t>(x)] >= 0) continue;
    ElementId c = static_cast<ElementId>(classes.size());
    classes.push_back({});
    for (ElementId y = x; y < n; ++y)
      if (proj[static_cast<std::size_t>(y)] < 0 && equiv(x, y)) {
        proj[static_cast<std::size_t>(y)] = c;
        classes.back().push_back(y);
      }
  }

  const int k = static_cast<int>(classes.size());
  OpTable mul(k), imp(k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      ElementId pm = proj[static_cast<std::size_t>(h.mul(classes[static_cast<std::size_t>(a)][0],
                                                         classes[static_cast<std::size_t>(b)][0]))];
      ElementId pi = proj[static_cast<std::size_t>(h.imp(classes[static_cast<std::size_t>(a)][0],
                                                         classes[static_cast<std::size_t>(b)][0]))];
      for (ElementId x : classes[static_cast<std::size_t>(a)])
        for (ElementId y : classes[static_cast<std::size_t>(b)]) {
          if (proj[static_cast<std::size_t>(h.mul(x, y))] != pm ||
              proj[static_cast<std::size_t>(h.imp(x, y))] != pi)
            throw std::logic_error("quotient: operations not well-defined on classes");
        }
      mul.set(a, b, pm);
      imp.set(a, b, pi);
    }

  std::vector<std::string> labels;
  for (const auto& cls : classes) labels.push_back("[" + h.label(cls[0]) + "]");
  std::optional<ElementId> zero;
  if (h.zero()) zero = proj[static_cast<std::size_t>(*h.zero())];
  auto res = build_hoop(std::move(mul), std::move(imp), proj[static_cast<std::size_t>(h.one())],
                        zero, std::move(labels));
  if (!res.ok()) throw std::logic_error("quotient: induced tables failed certification");
  return Quotient{*std::move(res.hoop), std::move(proj), std::move(classes)};
}

// Root map induced on a quotient: [x] -> [r(x)]. Verified well-defined and
// re-certified against the root laws on the quotient.
inline RootMap quotient_root(const FiniteHoop& h, const Quotient& q, const RootMap& r) {
  RootMap out{r.degree, std::vector<ElementId>(q.classes.size(), -1)};
  for (std::size_t c = 0; c < q.classes.size(); ++c) {
    ElementId target = q.proj[static_cast<std::size_t>(r.at(q.classes[c][0]))];
    for (ElementId x : q.classes[c])
      if (q.proj[static_cast<std::size_t>(r.at(x))] != target)
        throw std::logic_error("quotient_root: induced map not well-defined");
    out.map[c] = target;
  }
  if (!is_nth_root(q.hoop, out))
    throw std::logic_error("quotient_root: induced map fails the root laws");
  (void)h;
  return out;
}

// Image subalgebra of a root map (requires a multiplicative map to be closed
// under products; restriction fails otherwise).
inline std::optional<Subalgebra> root_image(const FiniteHoop& h, const RootMap& r) {
  std::vector<ElementId> members;
  for (ElementId x = 0; x < h.size(); ++x) members.push_back(r.at(x));
  return restrict_to(h, members);
}

// Image of a filter under a multiplicative root map, as a certified filter of
// the image subalgebra.
struct ImageFilter {
  Subalgebra image;  // the subalgebra r(H)
  Mask filter;       // r(F) as a subset of image indices
};

inline ImageFilter root_image_filter(const FiniteHoop& h, Mask f, const RootMap& r) {
  if (!is_filter(h, f)) throw std::invalid_argument("root_image_filter: not a filter");
  if (!is_multiplicative(h, r))
    throw std::invalid_argument("root_image_filter: map is not multiplicative");
  auto image = root_image(h, r);
  if (!image) throw std::logic_error("root_image_filter: image not closed under operations");
  Mask rf = 0;
  for (ElementId x = 0; x < h.size(); ++x)
    if (mask_contains(f, x)) rf = mask_add(rf, image->to_sub[static_cast<std::size_t>(r.at(x))]);
  if (!is_filter(image->hoop, rf))
    throw std::logic_error("root_image_filter: image subset fails the filter laws");
  return ImageFilter{*std::move(image), rf};
}

// Commutation of root and quotient: the root induced on H/F restricts to its
// image, and that image must be isomorphic to r(H)/r(F) via [x] -> [r(x)].
// Requires a multiplicative root map.
struct RootQuotientCommutation {
  bool holds = false;
  std::string detail;
};

inline RootQuotientCommutation root_quotient_commutes(const FiniteHoop& h, Mask f,
                                                      const RootMap& r) {
  if (!is_multiplicative(h, r))
    throw std::invalid_argument("root_quotient_commutes: map is not multiplicative");
  RootQuotientCommutation out;

  Quotient q1 = quotient(h, f);
  RootMap rq = quotient_root(h, q1, r);

  std::vector<ElementId> image_classes;
  for (std::size_t c = 0; c < q1.classes.size(); ++c) image_classes.push_back(rq.at(static_cast<ElementId>(c)));
  auto sq = restrict_to(q1.hoop, image_classes);
  if (!sq) {
    out.detail = "image of the quotient root is not closed";
    return out;
  }

  ImageFilter imf = root_image_filter(h, f, r);
  Quotient q2 = quotient(imf.image.hoop, imf.filter);

  if (sq->hoop.size() != q2.hoop.size()) {
    out.detail = "image sizes differ";
    return out;
  }

  // phi: class of u in H/F (restricted to the image) -> class of u in r(H)/r(F)
  std::vector<ElementId> phi(static_cast<std::size_t>(sq->hoop.size()), -1);
  for (ElementId u_host : imf.image.to_host) {
    ElementId c1 = sq->to_sub[static_cast<std::size_t>(q1.proj[static_cast<std::size_t>(u_host)])];
    ElementId c2 = q2.proj[static_cast<std::size_t>(
        imf.image.to_sub[static_cast<std::size_t>(u_host)])];
    if (c1 < 0) {
      out.detail = "image element missing from the restricted quotient";
      return out;
    }
    if (phi[static_cast<std::size_t>(c1)] >= 0 && phi[static_cast<std::size_t>(c1)] != c2) {
      out.detail = "induced correspondence not well-defined";
      return out;
    }
    phi[static_cast<std::size_t>(c1)] = c2;
  }
  std::vector<bool> hit(static_cast<std::size_t>(q2.hoop.size()), false);
  for (ElementId c : phi) {
    if (c < 0) {
      out.detail = "correspondence not total";
      return out;
    }
    if (hit[static_cast<std::size_t>(c)]) {
      out.detail = "correspondence not injective";
      return out;
    }
    hit[static_cast<std::size_t>(c)] = true;
  }
  for (ElementId a = 0; a < sq->hoop.size(); ++a)
    for (ElementId b = 0; b < sq->hoop.size(); ++b) {
      if (phi[static_cast<std::size_t>(sq->hoop.mul(a, b))] !=
              q2.hoop.mul(phi[static_cast<std::size_t>(a)], phi[static_cast<std::size_t>(b)]) ||
          phi[static_cast<std::size_t>(sq->hoop.imp(a, b))] !=
              q2.hoop.imp(phi[static_cast<std::size_t>(a)], phi[static_cast<std::size_t>(b)])) {
        out.detail = "correspondence does not preserve the operations";
        return out;
      }
    }
  if (phi[static_cast<std::size_t>(sq->hoop.one())] != q2.hoop.one()) {
    out.detail = "correspondence moves the unit";
    return out;
  }
  out.holds = true;
  return out;
}

// Split of a bounded model with a root into the union of root-orbits of the
// elements below r(0) versus the rest; the rest is either a maximal filter or
// generates the whole model.
struct OrbitSplitReport {
  std::vector<ElementId> covered;
  std::vector<ElementId> rest;
  bool rest_is_filter = false;
  bool rest_is_maximal = false;
  bool rest_generates_all = false;
  bool holds = false;
};

inline OrbitSplitReport orbit_split(const FiniteHoop& h, const RootMap& r) {
  if (!h.bounded()) throw std::invalid_argument("orbit_split: model has no designated bottom");
  OrbitSplitReport rep;
  Mask covered = 0;
  const ElementId r0 = r.at(*h.zero());
  for (ElementId x = 0; x < h.size(); ++x)
    if (h.leq(x, r0))
      for (ElementId y : root_orbit(r, x)) covered = mask_add(covered, y);
  rep.covered = mask_members(covered, h.size());
  for (ElementId x = 0; x < h.size(); ++x)
    if (!mask_contains(covered, x)) rep.rest.push_back(x);

  if (rep.rest.empty()) {
    // only the one-element model: the empty rest generates the least filter {1}
    rep.rest_generates_all = h.size() == 1;
    rep.holds = rep.rest_generates_all;
    return rep;
  }
  Mask p = mask_of(rep.rest);
  rep.rest_is_filter = is_filter(h, p);
  if (rep.rest_is_filter) {
    rep.rest_is_maximal = is_maximal_filter(h, p);
    rep.holds = rep.rest_is_maximal;
  } else {
    rep.rest_generates_all = generated_filter(h, rep.rest) == (Mask{1} << h.size()) - 1;
    rep.holds = rep.rest_generates_all;
  }
  return rep;
}

// Distinguished subsets. The boolean-center computation takes the derived
// join candidate, verifies it is a genuine least upper bound for the pair,
// and logs a finding (rather than including the element) when it is not.
struct DistinguishedSubsets {
  std::vector<ElementId> idempotents;
  std::optional<std::vector<ElementId>> regulars;      // x'' = x       (needs bottom)
  std::optional<std::vector<ElementId>> dense;         // x' = 0        (needs bottom)
  std::optional<std::vector<ElementId>> nilpotents;    // some power hits 0
  std::optional<std::vector<ElementId>> boolean_center;  // complemented  (needs bottom)
  std::vector<std::string> findings;
};

inline DistinguishedSubsets distinguished_subsets(const FiniteHoop& h) {
  DistinguishedSubsets out;
  for (ElementId x = 0; x < h.size(); ++x)
    if (h.mul(x, x) == x) out.idempotents.push_back(x);
  if (!h.bounded()) return out;

  out.regulars.emplace();
  out.dense.emplace();
  out.nilpotents.emplace();
  out.boolean_center.emplace();
  for (ElementId x = 0; x < h.size(); ++x) {
    if (h.neg(h.neg(x)) == x) out.regulars->push_back(x);
    if (h.neg(x) == *h.zero()) out.dense->push_back(x);
    if (h.ord(x)) out.nilpotents->push_back(x);
    for (ElementId y = 0; y < h.size(); ++y) {
      if (h.join_candidate(x, y) != h.one() || h.meet(x, y) != *h.zero()) continue;
      auto j = h.join(x, y);
      if (!j || *j != h.one()) {
        out.findings.push_back("complement candidate for " + h.label(x) + " via " + h.label(y) +
                               " is not a genuine join; element excluded");
        continue;
      }
      out.boolean_center->push_back(x);
      break;
    }
  }
  return out;
}

// Up-set of an idempotent element as a certified subalgebra (it is also a
// filter of the host); a root map restricts to it when present.
struct UpSetSubalgebra {
  Subalgebra sub;
  std::optional<RootMap> root;
};

inline UpSetSubalgebra up_set_subalgebra(const FiniteHoop& h, ElementId a,
                                         const std::optional<RootMap>& r = std::nullopt) {
  if (h.mul(a, a) != a) throw std::invalid_argument("up_set_subalgebra: element not idempotent");
  std::vector<ElementId> members;
  for (ElementId x = 0; x < h.size(); ++x)
    if (h.leq(a, x)) members.push_back(x);
  if (!is_filter(h, mask_of(members)))
    throw std::logic_error("up_set_subalgebra: up-set fails the filter laws");
  auto sub = restrict_to(h, members);
  if (!sub) throw std::logic_error("up_set_subalgebra: up-set not closed under operations");

  UpSetSubalgebra out{*std::move(sub), std::nullopt};
  if (r) {
    RootMap rr{r->degree, std::vector<ElementId>(out.sub.to_host.size(), -1)};
    for (std::size_t i = 0; i < out.sub.to_host.size(); ++i) {
      ElementId img = r->at(out.sub.to_host[i]);
      ElementId sub_img = out.sub.to_sub[static_cast<std::size_t>(img)];
      if (sub_img < 0) throw std::logic_error("up_set_subalgebra: root leaves the up-set");
      rr.map[i] = sub_img;
    }
    if (!is_nth_root(out.sub.hoop, rr))
      throw std::logic_error("up_set_subalgebra: restricted map fails the root laws");
    out.root = std::move(rr);
  }
  return out;
}

}  // namespace hoops
