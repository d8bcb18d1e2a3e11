#pragma once
// Command-line driver. run_cli is the whole program: it parses arguments,
// dispatches to one subcommand, and writes a report to the given stream (or
// to --out PATH). Reports are human-readable text by default and JSON with
// --json; JSON output is byte-deterministic for identical inputs and seeds.
//
// Exit codes: 0 everything passed, 1 findings (law violations, failed audit
// entries, found countermodels, negative isomorphism answers), 2 usage or
// parse errors.

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "hoops/catalog.hpp"
#include "hoops/enumerate.hpp"
#include "hoops/filters.hpp"
#include "hoops/hoopfile.hpp"
#include "hoops/morphisms.hpp"
#include "hoops/parametric.hpp"
#include "hoops/report.hpp"
#include "hoops/roots.hpp"

namespace hoops {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Report under construction: every handler fills both renderings and the
// driver emits whichever was requested.
struct Emit {
  bool json = false;
  Json j;
  std::ostringstream text;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw UsageError("cannot open `" + path + "`");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Syntax problems become usage errors with file:line:column; certification
// failures are returned for the caller to judge.
inline FileResult parse_model_file(const std::string& path) {
  FileResult r = parse_hoop_file(read_file(path));
  if (!r.ok() && r.line > 0)
    throw UsageError(path + ":" + std::to_string(r.line) + ":" + std::to_string(r.column) + ": " +
                     r.error);
  return r;
}

inline FiniteHoop load_model(const std::string& path) {
  FileResult r = parse_model_file(path);
  if (!r.ok())
    throw UsageError(path + ": tables fail certification (run `check` for details)");
  return *std::move(r.hoop);
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string yes_no_unknown(std::optional<bool> b) {
  return b ? yes_no(*b) : "unknown";
}

inline std::string label_set(const FiniteHoop& h, const std::vector<ElementId>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += h.label(xs[i]);
  }
  return out + "}";
}

inline Json json_label_array(const FiniteHoop& h, const std::vector<ElementId>& xs) {
  Json a = Json::array();
  for (ElementId x : xs) a.push_back(h.label(x));
  return a;
}

inline std::string render_violation(const Violation& v, const std::vector<std::string>& labels) {
  std::string out = v.law + " at (";
  for (std::size_t i = 0; i < v.witness.size(); ++i) {
    if (i) out += ", ";
    const ElementId w = v.witness[i];
    out += (w >= 0 && w < static_cast<ElementId>(labels.size()))
               ? labels[static_cast<std::size_t>(w)]
               : std::to_string(w);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

inline int cmd_check(const std::string& path, Emit& e) {
  FileResult r = parse_model_file(path);
  e.j["file"] = path;
  e.text << "model: " << path << "\n";

  if (!r.ok()) {
    e.j["certified"] = false;
    Json malformed = Json::array();
    for (const std::string& m : r.report.malformed) malformed.push_back(m);
    Json violations = Json::array();
    for (const Violation& v : r.report.violations) {
      Json jv;
      jv["law"] = v.law;
      Json w = Json::array();
      for (ElementId x : v.witness)
        w.push_back(x >= 0 && x < static_cast<ElementId>(r.labels.size())
                        ? Json(r.labels[static_cast<std::size_t>(x)])
                        : Json(x));
      jv["witness"] = std::move(w);
      violations.push_back(std::move(jv));
    }
    e.j["malformed"] = std::move(malformed);
    e.j["violations"] = std::move(violations);
    e.text << "certified: no\n";
    for (const std::string& m : r.report.malformed) e.text << "malformed: " << m << "\n";
    for (const Violation& v : r.report.violations)
      e.text << "violation: " << render_violation(v, r.labels) << "\n";
    return kExitFindings;
  }

  const FiniteHoop& h = *r.hoop;
  e.j["certified"] = true;
  e.j["model"] = json_hoop(h);
  e.text << "size: " << h.size() << "  one: " << h.label(h.one()) << "  zero: "
         << (h.zero() ? h.label(*h.zero()) : "none") << "\n";
  e.text << "fingerprint: " << fingerprint(h) << "\n";
  e.text << "certified: yes\n";
  e.text << "properties:";
  for (PropertyFlag f : all_property_flags())
    if (h.has(f)) e.text << " " << flag_token(f);
  e.text << "\n";
  return kExitPass;
}

// ---------------------------------------------------------------------------
// sqrt / root
// ---------------------------------------------------------------------------

inline int cmd_root(const std::string& path, int degree, Emit& e) {
  const FiniteHoop h = load_model(path);
  e.j["file"] = path;
  e.j["fingerprint"] = fingerprint(h);
  e.j["degree"] = degree;
  e.text << "model: " << path << "\n";
  e.text << "degree: " << degree << "\n";

  const std::optional<RootMap> r = nth_root_solve(h, degree);
  if (!r) {
    e.j["root"] = nullptr;
    e.text << "root: none\n";
    return kExitPass;
  }

  Json map = Json::object();
  std::string map_text;
  for (ElementId x = 0; x < h.size(); ++x) {
    map[h.label(x)] = h.label(r->at(x));
    if (x) map_text += ", ";
    map_text += h.label(x) + " -> " + h.label(r->at(x));
  }
  Json root;
  root["map"] = std::move(map);
  root["identity"] = r->is_identity();
  root["multiplicative"] = is_multiplicative(h, *r);
  e.text << "root: yes\n";
  e.text << "map: " << map_text << "\n";
  e.text << "identity: " << yes_no(r->is_identity()) << "\n";
  e.text << "multiplicative: " << yes_no(is_multiplicative(h, *r)) << "\n";

  if (degree == 2 && h.bounded()) {
    const SqrtProfile p = classify_sqrt(h, *r);
    root["good"] = p.good;
    root["strict"] = p.strict;
    Json eqs;
    eqs["eq1"] = p.eq1;
    eqs["eq2"] = p.eq2;
    eqs["eq3"] = p.eq3;
    root["equations"] = std::move(eqs);
    e.text << "good: " << yes_no(p.good) << "\n";
    e.text << "strict: " << yes_no(p.strict) << "\n";
    e.text << "equations: eq1 " << yes_no(p.eq1) << ", eq2 " << yes_no(p.eq2) << ", eq3 "
           << yes_no(p.eq3) << "\n";
  }
  e.j["root"] = std::move(root);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// filters
// ---------------------------------------------------------------------------

inline int cmd_filters(const std::string& path, Emit& e) {
  const FiniteHoop h = load_model(path);
  if (h.size() > 24)
    throw UsageError("filter enumeration supports models with at most 24 elements");
  e.j["file"] = path;
  e.j["fingerprint"] = fingerprint(h);
  e.text << "model: " << path << "\n";

  std::vector<Mask> fs = all_filters(h);
  std::sort(fs.begin(), fs.end(), [&](Mask a, Mask b) {
    const int ca = mask_count(a, h.size()), cb = mask_count(b, h.size());
    return ca != cb ? ca < cb : a < b;
  });

  int proper = 0;
  Json rows = Json::array();
  std::ostringstream lines;
  for (Mask f : fs) {
    const std::vector<ElementId> members = mask_members(f, h.size());
    const bool is_proper = is_proper_filter(h, f);
    const bool prime = is_prime_filter(h, f);
    const bool maximal = is_maximal_filter(h, f);
    if (is_proper) ++proper;
    Json row;
    row["members"] = json_label_array(h, members);
    row["proper"] = is_proper;
    row["prime"] = prime;
    row["maximal"] = maximal;
    rows.push_back(std::move(row));
    lines << label_set(h, members);
    if (!is_proper) lines << "  improper";
    if (maximal) lines << "  maximal";
    if (prime) lines << "  prime";
    lines << "\n";
  }
  e.j["filters"] = std::move(rows);
  e.text << "filters: " << fs.size() << " (" << proper << " proper)\n" << lines.str();
  return kExitPass;
}

// ---------------------------------------------------------------------------
// quotient
// ---------------------------------------------------------------------------

inline int cmd_quotient(const std::string& path, const std::string& filter_arg, Emit& e) {
  const FiniteHoop h = load_model(path);
  e.j["file"] = path;
  e.j["fingerprint"] = fingerprint(h);
  e.text << "model: " << path << "\n";

  std::vector<ElementId> members;
  std::stringstream ss(filter_arg);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const std::size_t b = tok.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    tok = tok.substr(b, tok.find_last_not_of(" \t") - b + 1);
    const std::optional<ElementId> id = h.element_by_label(tok);
    if (!id) throw UsageError("unknown label `" + tok + "`");
    members.push_back(*id);
  }
  const Mask f = mask_of(members);
  e.j["filter"] = json_label_array(h, mask_members(f, h.size()));
  e.text << "filter: " << label_set(h, mask_members(f, h.size())) << "\n";

  if (!is_filter(h, f)) {
    e.j["is_filter"] = false;
    e.text << "not a filter: the set must contain 1 and be closed under the product and "
              "upward\n";
    return kExitFindings;
  }
  e.j["is_filter"] = true;

  const Quotient q = quotient(h, f);
  Json classes = Json::array();
  for (std::size_t c = 0; c < q.classes.size(); ++c) {
    Json row;
    row["class"] = q.hoop.label(static_cast<ElementId>(c));
    row["members"] = json_label_array(h, q.classes[c]);
    classes.push_back(std::move(row));
    e.text << "class " << q.hoop.label(static_cast<ElementId>(c)) << " = "
           << label_set(h, q.classes[c]) << "\n";
  }
  e.j["classes"] = std::move(classes);
  e.j["quotient"] = json_hoop(q.hoop);
  e.text << "quotient:\n" << dump_hoop_file(q.hoop);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// subsets
// ---------------------------------------------------------------------------

inline int cmd_subsets(const std::string& path, Emit& e) {
  const FiniteHoop h = load_model(path);
  e.j["file"] = path;
  e.j["fingerprint"] = fingerprint(h);
  e.text << "model: " << path << "\n";

  const DistinguishedSubsets s = distinguished_subsets(h);
  auto put = [&](const char* name, const std::optional<std::vector<ElementId>>& xs) {
    if (xs) {
      e.j[name] = json_label_array(h, *xs);
      e.text << name << ": " << label_set(h, *xs) << "\n";
    } else {
      e.j[name] = nullptr;
      e.text << name << ": n/a (no designated bottom)\n";
    }
  };
  e.j["idempotents"] = json_label_array(h, s.idempotents);
  e.text << "idempotents: " << label_set(h, s.idempotents) << "\n";
  put("regular", s.regulars);
  put("dense", s.dense);
  put("nilpotent", s.nilpotents);
  put("boolean-center", s.boolean_center);
  Json notes = Json::array();
  for (const std::string& n : s.findings) {
    notes.push_back(n);
    e.text << "note: " << n << "\n";
  }
  e.j["notes"] = std::move(notes);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// product / iso
// ---------------------------------------------------------------------------

inline int cmd_product(const std::string& left, const std::string& right, Emit& e) {
  const FiniteHoop a = load_model(left);
  const FiniteHoop b = load_model(right);
  const FiniteHoop p = product(a, b);
  e.j["left"] = left;
  e.j["right"] = right;
  e.j["model"] = json_hoop(p);
  e.text << "# product of " << left << " and " << right << "\n" << dump_hoop_file(p);
  return kExitPass;
}

inline int cmd_iso(const std::string& left, const std::string& right, Emit& e) {
  const FiniteHoop a = load_model(left);
  const FiniteHoop b = load_model(right);
  e.j["left"] = left;
  e.j["right"] = right;
  const std::optional<HoopMap> f = find_isomorphism(a, b);
  if (!f) {
    e.j["isomorphic"] = false;
    e.j["map"] = nullptr;
    e.text << "isomorphic: no\n";
    return kExitFindings;
  }
  e.j["isomorphic"] = true;
  Json map = Json::object();
  e.text << "isomorphic: yes\n";
  for (ElementId x = 0; x < a.size(); ++x) {
    map[a.label(x)] = b.label(f->at(x));
    e.text << "map: " << a.label(x) << " -> " << b.label(f->at(x)) << "\n";
  }
  e.j["map"] = std::move(map);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// audit
// ---------------------------------------------------------------------------

inline std::vector<const CatalogEntry*> select_entries(const std::string& selection) {
  std::vector<const CatalogEntry*> out;
  if (selection == "all" || selection.empty()) {
    for (const CatalogEntry& e : catalog()) out.push_back(&e);
    return out;
  }
  std::stringstream ss(selection);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const std::size_t b = tok.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    tok = tok.substr(b, tok.find_last_not_of(" \t") - b + 1);
    const CatalogEntry* e = catalog_find(tok);
    if (!e) throw UsageError("unknown catalog entry `" + tok + "`");
    out.push_back(e);
  }
  if (out.empty()) throw UsageError("catalog selection is empty");
  return out;
}

inline void render_audit_results(const std::vector<EntryResult>& results, Emit& e) {
  long applicable = 0, held = 0, failed = 0;
  for (const EntryResult& r : results) {
    if (!r.applicable) continue;
    ++applicable;
    (r.holds ? held : failed) += 1;
  }
  e.j["summary"] = Json{{"entries", results.size()},
                        {"applicable", applicable},
                        {"held", held},
                        {"failed", failed}};
  e.text << "entries: " << results.size() << "  applicable: " << applicable
         << "  held: " << held << "  failed: " << failed << "\n";

  Json rows = Json::array();
  for (const EntryResult& r : results) {
    Json row;
    row["id"] = r.id;
    row["statement"] = r.statement;
    row["procedural"] = r.procedural;
    row["applicable"] = r.applicable;
    row["holds"] = r.applicable ? Json(r.holds) : Json(nullptr);
    row["checked"] = r.checked;
    row["skipped"] = r.skipped;
    row["detail"] = r.detail;
    rows.push_back(std::move(row));

    e.text << std::left << std::setw(26) << r.id << " ";
    if (!r.applicable)
      e.text << "skip  " << r.detail;
    else if (!r.holds)
      e.text << "FAIL  " << r.detail;
    else {
      e.text << "pass";
      if (r.checked > 0) {
        e.text << "  (" << r.checked << " checked";
        if (r.skipped > 0) e.text << ", " << r.skipped << " skipped";
        e.text << ")";
      } else if (!r.detail.empty()) {
        e.text << "  " << r.detail;
      }
    }
    e.text << "\n";
  }
  e.j["entries"] = std::move(rows);
}

inline int cmd_audit_file(const std::string& path, const std::string& selection, Emit& e) {
  const FiniteHoop h = load_model(path);
  e.j["target"] = Json{{"file", path}, {"fingerprint", fingerprint(h)}, {"mode", "exhaustive"}};
  e.text << "target: " << path << " (exhaustive)\n";

  Json sq;
  if (const std::optional<RootMap> s = sqrt_solve(h)) {
    sq["exists"] = true;
    sq["identity"] = s->is_identity();
    if (h.bounded()) {
      const SqrtProfile p = classify_sqrt(h, *s);
      sq["good"] = p.good;
      sq["strict"] = p.strict;
      e.text << "square root: exists, identity = " << yes_no(s->is_identity()) << ", good = "
             << yes_no(p.good) << ", strict = " << yes_no(p.strict) << "\n";
    } else {
      e.text << "square root: exists, identity = " << yes_no(s->is_identity()) << "\n";
    }
  } else {
    sq["exists"] = false;
    e.text << "square root: none\n";
  }
  e.j["sqrt"] = std::move(sq);

  std::vector<EntryResult> results;
  for (const CatalogEntry* entry : select_entries(selection)) results.push_back(run_entry(*entry, h));
  render_audit_results(results, e);
  return std::any_of(results.begin(), results.end(),
                     [](const EntryResult& r) { return r.applicable && !r.holds; })
             ? kExitFindings
             : kExitPass;
}

inline int cmd_audit_model(const std::string& name, const std::string& selection,
                           const SamplePlan& plan, Emit& e) {
  const std::optional<ParametricHoop> m = ParametricHoop::by_name(name);
  if (!m)
    throw UsageError("unknown model `" + name +
                     "` (expected godel, lukasiewicz, product, free, or gamma(U))");
  e.j["target"] = Json{{"model", m->name()},
                       {"mode", "sampled"},
                       {"seed", plan.seed},
                       {"samples", plan.count},
                       {"depth", plan.depth}};
  e.text << "target: " << m->name() << "\n";
  e.text << "sampling: seed " << plan.seed << ", samples " << plan.count << ", depth "
         << plan.depth << "\n";

  Json sq;
  std::optional<Rational> s0;
  if (m->bounded() && m->root_support(2) != RootSupport::None) s0 = m->root(2, *m->zero());
  sq["s0"] = s0 ? Json(rational_string(*s0)) : Json(nullptr);
  sq["good"] = json_optional_bool(m->good());
  sq["strict"] = json_optional_bool(m->strict());
  e.j["sqrt"] = std::move(sq);
  e.text << "square root:";
  if (s0) e.text << " s(0) = " << rational_string(*s0) << ",";
  e.text << " good = " << yes_no_unknown(m->good()) << ", strict = "
         << yes_no_unknown(m->strict()) << "\n";

  std::vector<EntryResult> results;
  for (const CatalogEntry* entry : select_entries(selection))
    results.push_back(run_entry(*entry, *m, plan));
  render_audit_results(results, e);
  return std::any_of(results.begin(), results.end(),
                     [](const EntryResult& r) { return r.applicable && !r.holds; })
             ? kExitFindings
             : kExitPass;
}

// ---------------------------------------------------------------------------
// hunt
// ---------------------------------------------------------------------------

inline int cmd_hunt(const std::string& statement, const std::string& hypotheses, int max_size,
                    Emit& e) {
  const Parsed<Identity> parsed = make_identity(statement, hypotheses);
  if (!parsed.ok())
    throw UsageError("statement: " + parsed.error + " at offset " + std::to_string(parsed.offset));

  e.j["statement"] = print_statement(*parsed.value);
  e.j["hypotheses"] = hypotheses;
  e.j["max_size"] = max_size;
  e.text << "statement: " << print_statement(*parsed.value) << "\n";
  if (hypotheses != "-" && !hypotheses.empty())
    e.text << "hypotheses: " << hypotheses << "\n";

  const std::optional<HuntResult> r = hunt(*parsed.value, max_size);
  if (!r) {
    e.j["countermodel"] = nullptr;
    e.text << "no countermodel up to size " << max_size << "\n";
    return kExitPass;
  }

  Json cm;
  cm["models_tried"] = r->models_tried;
  cm["witness"] = r->check.witness ? json_witness(r->model, *r->check.witness) : Json(nullptr);
  cm["model"] = json_hoop(r->model);
  e.j["countermodel"] = std::move(cm);
  e.text << "countermodel: size " << r->model.size() << " (" << r->models_tried
         << " models tried)\n";
  if (r->check.witness) {
    e.text << "witness:";
    for (std::size_t i = 0; i < r->check.witness->size(); ++i) {
      const auto& [var, value] = (*r->check.witness)[i];
      e.text << (i ? ", " : " ") << var_name(var) << " = " << r->model.label(value);
    }
    e.text << "\n";
  }
  e.text << dump_hoop_file(r->model);
  return kExitFindings;
}

// ---------------------------------------------------------------------------
// enumerate
// ---------------------------------------------------------------------------

inline int cmd_enumerate(int size, bool with_census, Emit& e) {
  const std::vector<FiniteHoop> models = enumerate_hoops(size);
  e.j["size"] = size;
  e.j["count"] = models.size();

  Json jmodels = Json::array();
  for (const FiniteHoop& h : models) jmodels.push_back(json_hoop(h));
  e.j["models"] = std::move(jmodels);

  if (with_census) {
    Json rows = Json::array();
    e.text << "index,size,fingerprint,bounded,basic,wajsberg,dnp,idempotent,sqrt,good,strict\n";
    for (std::size_t i = 0; i < models.size(); ++i) {
      const FiniteHoop& h = models[i];
      const std::optional<RootMap> s = sqrt_solve(h);
      std::string sqrt_kind = "none";
      std::optional<bool> good, strict;
      if (s) {
        sqrt_kind = s->is_identity() ? "identity" : "map";
        const SqrtProfile p = classify_sqrt(h, *s);
        good = p.good;
        strict = p.strict;
      }
      Json row;
      row["index"] = i + 1;
      row["size"] = h.size();
      row["fingerprint"] = fingerprint(h);
      row["bounded"] = h.has(PropertyFlag::Bounded);
      row["basic"] = h.has(PropertyFlag::Basic);
      row["wajsberg"] = h.has(PropertyFlag::Wajsberg);
      row["dnp"] = h.has(PropertyFlag::DoubleNegation);
      row["idempotent"] = h.has(PropertyFlag::Idempotent);
      row["sqrt"] = sqrt_kind;
      row["good"] = json_optional_bool(good);
      row["strict"] = json_optional_bool(strict);
      rows.push_back(std::move(row));
      auto cell = [&](std::optional<bool> b) { return b ? yes_no(*b) : std::string("n/a"); };
      e.text << (i + 1) << "," << h.size() << "," << fingerprint(h) << ","
             << yes_no(h.has(PropertyFlag::Bounded)) << "," << yes_no(h.has(PropertyFlag::Basic))
             << "," << yes_no(h.has(PropertyFlag::Wajsberg)) << ","
             << yes_no(h.has(PropertyFlag::DoubleNegation)) << ","
             << yes_no(h.has(PropertyFlag::Idempotent)) << "," << sqrt_kind << "," << cell(good)
             << "," << cell(strict) << "\n";
    }
    e.j["census"] = std::move(rows);
  } else {
    for (std::size_t i = 0; i < models.size(); ++i) {
      e.text << "# model " << (i + 1) << " of " << models.size() << "\n"
             << dump_hoop_file(models[i]);
      if (i + 1 < models.size()) e.text << "\n";
    }
  }
  return kExitPass;
}

}  // namespace detail

// Parses and runs one command-line invocation; `args` excludes the program
// name. Reports go to `out` (or the --out file), diagnostics to `err`.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"workbench for finite and parametric hoop models"};
  app.name("hoops");

  bool json = false;
  std::string out_path;
  int exit_code = kExitPass;
  detail::Emit emit;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", json, "emit the report as JSON");
    sub->add_option("--out", out_path, "write the report to this file instead of stdout");
  };

  // check
  std::string check_file;
  CLI::App* c_check = app.add_subcommand("check", "certify a model file and report properties");
  c_check->add_option("file", check_file, "model file")->required();
  add_common(c_check);
  c_check->callback([&] {
    emit.j["schema"] = 1;
    emit.j["command"] = "check";
    exit_code = detail::cmd_check(check_file, emit);
  });

  // sqrt
  std::string sqrt_file;
  CLI::App* c_sqrt = app.add_subcommand("sqrt", "solve for the square root map");
  c_sqrt->add_option("file", sqrt_file, "model file")->required();
  add_common(c_sqrt);
  c_sqrt->callback([&] {
    emit.j["schema"] = 1;
    emit.j["command"] = "sqrt";
    exit_code = detail::cmd_root(sqrt_file, 2, emit);
  });

  // root
  std::string root_file;
  int root_degree = 2;
  CLI::App* c_root = app.add_subcommand("root", "solve for an n-th root map");
  c_root->add_option("file", root_file, "model file")->required();
  c_root->add_option("-n,--degree", root_degree, "root degree (>= 1)")->required();
  add_common(c_root);
  c_root->callback([&] {
    if (root_degree < 1) throw detail::UsageError("root degree must be at least 1");
    emit.j["schema"] = 1;
    emit.j["command"] = "root";
    exit_code = detail::cmd_root(root_file, root_degree, emit);
  });

  // filters
  std::string filters_file;
  CLI::App* c_filters = app.add_subcommand("filters", "list all filters with prime/maximal tags");
  c_filters->add_option("file", filters_file, "model file")->required();
  add_common(c_filters);
  c_filters->callback([&] {
    emit.j["schema"] = 1;
    emit.j["command"] = "filters";
    exit_code = detail::cmd_filters(filters_file, emit);
  });

  // quotient
  std::string quotient_file, quotient_filter;
  CLI::App* c_quotient = app.add_subcommand("quotient", "quotient by a filter given by labels");
  c_quotient->add_option("file", quotient_file, "model file")->required();
  c_quotient->add_option("--filter", quotient_filter, "comma-separated element labels")
      ->required();
  add_common(c_quotient);
  c_quotient->callback([&] {
    emit.j["schema"] = 1;
    emit.j["command"] = "quotient";
    exit_code = detail::cmd_quotient(quotient_file, quotient_filter, emit);
  });

  // subsets
  std::string subsets_file;
  CLI::App* c_subsets = app.add_subcommand("subsets", "distinguished subsets of a model");
  c_subsets->add_option("file", subsets_file, "model file")->required();
  add_common(c_subsets);
  c_subsets->callback([&] {
    emit.j["schema"] = 1;
    emit.j["command"] = "subsets";
    exit_code = detail::cmd_subsets(subsets_file, emit);
  });

  // product
  std::string product_left, product_right;
  CLI::App* c_product = app.add_subcommand("product", "componentwise product of two models");
  c_product->add_option("left", product_left, "model file")->required();
  c_product->add_option("right", product_right, "model file")->required();
  add_common(c_product);
  c_product->callback([&] {
    emit.j["schema"] = 1;
    emit.j["command"] = "product";
    exit_code = detail::cmd_product(product_left, product_right, emit);
  });

  // iso
  std::string iso_left, iso_right;
  CLI::App* c_iso = app.add_subcommand("iso", "search for an isomorphism between two models");
  c_iso->add_option("left", iso_left, "model file")->required();
  c_iso->add_option("right", iso_right, "model file")->required();
  add_common(c_iso);
  c_iso->callback([&] {
    emit.j["schema"] = 1;
    emit.j["command"] = "iso";
    exit_code = detail::cmd_iso(iso_left, iso_right, emit);
  });

  // audit
  std::string audit_file, audit_model, audit_catalog_sel = "all";
  std::uint64_t audit_seed = 0;
  int audit_samples = 256, audit_depth = 10;
  CLI::App* c_audit = app.add_subcommand("audit", "run the identity catalog against a model");
  c_audit->add_option("file", audit_file, "model file (exhaustive check)");
  c_audit->add_option("--model", audit_model,
                      "parametric model name (godel, lukasiewicz, product, free, gamma(U))");
  c_audit->add_option("--catalog", audit_catalog_sel, "entry selection: all or comma-separated ids");
  c_audit->add_option("--seed", audit_seed, "sampling seed (parametric models)");
  c_audit->add_option("--samples", audit_samples, "sample count (parametric models)");
  c_audit->add_option("--depth", audit_depth, "dyadic sample depth (parametric models)");
  add_common(c_audit);
  c_audit->callback([&] {
    emit.j["schema"] = 1;
    emit.j["command"] = "audit";
    if (audit_file.empty() == audit_model.empty())
      throw detail::UsageError("audit needs exactly one target: a model file or --model NAME");
    if (audit_samples < 1) throw detail::UsageError("--samples must be at least 1");
    if (audit_depth < 1) throw detail::UsageError("--depth must be at least 1");
    if (!audit_file.empty()) {
      exit_code = detail::cmd_audit_file(audit_file, audit_catalog_sel, emit);
    } else {
      SamplePlan plan;
      plan.seed = audit_seed;
      plan.count = audit_samples;
      plan.depth = audit_depth;
      exit_code = detail::cmd_audit_model(audit_model, audit_catalog_sel, plan, emit);
    }
  });

  // hunt
  std::string hunt_statement, hunt_hypotheses = "-";
  int hunt_max_size = 4;
  bool hunt_large = false;
  CLI::App* c_hunt = app.add_subcommand("hunt", "search for a smallest countermodel");
  c_hunt->add_option("--identity", hunt_statement, "statement, e.g. \"x * y = y * x\"")
      ->required();
  c_hunt->add_option("--hypotheses", hunt_hypotheses,
                     "comma-separated hypothesis tokens (default none)");
  c_hunt->add_option("--max-size", hunt_max_size, "largest model size to try (default 4)");
  c_hunt->add_flag("--allow-size-6", hunt_large, "permit sizes above the default bound of 5");
  add_common(c_hunt);
  c_hunt->callback([&] {
    emit.j["schema"] = 1;
    emit.j["command"] = "hunt";
    if (hunt_max_size < 1 || hunt_max_size > kMaxEnumerationSize)
      throw detail::UsageError("--max-size must be between 1 and " +
                               std::to_string(kMaxEnumerationSize));
    if (hunt_max_size > 5 && !hunt_large)
      throw detail::UsageError("sizes above 5 require --allow-size-6");
    if (hunt_max_size > 5)
      err << "note: searching size 6 leaves the default bound; this may take longer\n";
    exit_code = detail::cmd_hunt(hunt_statement, hunt_hypotheses, hunt_max_size, emit);
  });

  // enumerate
  int enum_size = 0;
  bool enum_census = false, enum_large = false;
  CLI::App* c_enum = app.add_subcommand("enumerate", "all models of a size up to isomorphism");
  c_enum->add_option("--size", enum_size, "model size (1..6)")->required();
  c_enum->add_flag("--census", enum_census, "emit a per-model census (CSV in text mode)");
  c_enum->add_flag("--allow-size-6", enum_large, "permit sizes above the default bound of 5");
  add_common(c_enum);
  c_enum->callback([&] {
    emit.j["schema"] = 1;
    emit.j["command"] = "enumerate";
    if (enum_size < 1 || enum_size > kMaxEnumerationSize)
      throw detail::UsageError("--size must be between 1 and " +
                               std::to_string(kMaxEnumerationSize));
    if (enum_size > 5 && !enum_large)
      throw detail::UsageError("sizes above 5 require --allow-size-6");
    if (enum_size > 5)
      err << "note: searching size 6 leaves the default bound; this may take longer\n";
    exit_code = detail::cmd_enumerate(enum_size, enum_census, emit);
  });

  app.require_subcommand(1);

  std::vector<std::string> full;
  full.push_back("hoops");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const std::string& s : full) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const detail::UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  emit.json = json;
  const std::string payload = emit.json ? emit.j.dump(2) + "\n" : emit.text.str();
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f.good()) {
      err << "error: cannot write `" << out_path << "`\n";
      return kExitUsage;
    }
    f << payload;
  } else {
    out << payload;
  }
  return exit_code;
}

}  // namespace hoops
