#pragma once
// Deterministic report vocabulary shared by the command-line tool: a content
// fingerprint for models and JSON building blocks. Reports never include
// timestamps or environment data, so identical inputs give identical bytes.

#include <cstdint>
#include <string>

#include <json.hpp>

#include "hoops/hoop.hpp"
#include "hoops/hoopfile.hpp"
#include "hoops/identity.hpp"
#include "hoops/rational.hpp"

namespace hoops {

// Insertion-ordered JSON keeps field order (and therefore output bytes) stable.
using Json = nlohmann::ordered_json;

// FNV-1a 64-bit hash of the model's canonical file text, in fixed-width hex.
// Two models share a fingerprint exactly when their canonical spellings match.
inline std::string fingerprint(const FiniteHoop& h) {
  const std::string text = dump_hoop_file(h);
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = "0123456789abcdef"[hash & 0xf];
    hash >>= 4;
  }
  return out;
}

// Tokens for the structural property flags, in a fixed presentation order.
inline const std::vector<PropertyFlag>& all_property_flags() {
  static const std::vector<PropertyFlag> flags = {
      PropertyFlag::Bounded,       PropertyFlag::JoinHoop,      PropertyFlag::Wajsberg,
      PropertyFlag::Basic,         PropertyFlag::DoubleNegation, PropertyFlag::Cancellative,
      PropertyFlag::Idempotent,    PropertyFlag::LocallyFinite, PropertyFlag::Local,
      PropertyFlag::Regular,
  };
  return flags;
}

inline Json json_hoop(const FiniteHoop& h) {
  Json j;
  j["size"] = h.size();
  Json labels = Json::array();
  for (ElementId x = 0; x < h.size(); ++x) labels.push_back(h.label(x));
  j["labels"] = std::move(labels);
  j["one"] = h.label(h.one());
  if (h.zero())
    j["zero"] = h.label(*h.zero());
  else
    j["zero"] = nullptr;
  auto table = [&](bool product) {
    Json rows = Json::array();
    for (ElementId x = 0; x < h.size(); ++x) {
      Json row = Json::array();
      for (ElementId y = 0; y < h.size(); ++y)
        row.push_back(h.label(product ? h.mul(x, y) : h.imp(x, y)));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  j["mul"] = table(true);
  j["imp"] = table(false);
  Json props = Json::object();
  for (PropertyFlag f : all_property_flags()) props[flag_token(f)] = h.has(f);
  j["properties"] = std::move(props);
  j["fingerprint"] = fingerprint(h);
  return j;
}

// Finite witnesses render by label, parametric ones as exact rationals.
inline Json json_witness(const FiniteHoop& h, const std::vector<std::pair<int, ElementId>>& w) {
  Json j = Json::object();
  for (const auto& [var, value] : w) j[var_name(var)] = h.label(value);
  return j;
}

inline Json json_witness(const std::vector<std::pair<int, Rational>>& w) {
  Json j = Json::object();
  for (const auto& [var, value] : w) j[var_name(var)] = rational_string(value);
  return j;
}

inline Json json_optional_bool(std::optional<bool> v) {
  if (!v) return nullptr;
  return *v;
}

}  // namespace hoops
