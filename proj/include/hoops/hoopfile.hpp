#pragma once
// Text format for finite models. A file is a header followed by the two
// operation tables, one row per line, entries named by label:
//
//   size 3
//   labels 0 m 1
//   one 1
//   zero 0          <- optional; omit for a model without a designated bottom
//   mul
//   0 0 0
//   0 m m
//   0 m 1
//   imp
//   1 1 1
//   0 1 1
//   0 m 1
//
// `#` starts a comment that runs to the end of the line; tokens are
// whitespace separated. Parsing ends with full certification, so a
// successful parse always yields a lawful model. dump_hoop_file produces the
// canonical spelling above (no comments, single spaces), and parsing it
// reproduces the model exactly.

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hoops/hoop.hpp"

namespace hoops {

struct FileResult {
  std::optional<FiniteHoop> hoop;  // present iff parsing and certification succeed
  std::string error;               // first problem; empty on success
  int line = 0;                    // 1-based position of the problem (0 for certification)
  int column = 0;
  AxiomReport report;              // law violations when certification is what failed
  std::vector<std::string> labels;  // declared labels, kept for rendering violations
  bool ok() const { return hoop.has_value(); }
};

namespace detail {

struct FileToken {
  std::string text;
  int line = 0;
  int column = 0;  // 1-based
};

// Nonempty lines only, comments stripped, with source positions retained.
inline std::vector<std::vector<FileToken>> tokenize_file(std::string_view text) {
  std::vector<std::vector<FileToken>> rows;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                           : eol - pos);
    ++line_no;
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);

    std::vector<FileToken> row;
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      row.push_back({std::string(line.substr(start, i - start)), line_no,
                     static_cast<int>(start) + 1});
    }
    if (!row.empty()) rows.push_back(std::move(row));

    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return rows;
}

}  // namespace detail

inline FileResult parse_hoop_file(std::string_view text) {
  FileResult out;
  const auto rows = detail::tokenize_file(text);
  std::size_t cursor = 0;
  int last_line = rows.empty() ? 0 : rows.back().front().line;

  auto fail = [&](std::string message, int line, int column) {
    out.error = std::move(message);
    out.line = line;
    out.column = column;
    return out;
  };
  auto have_row = [&] { return cursor < rows.size(); };
  auto eof_fail = [&](const std::string& wanted) {
    return fail("unexpected end of file: expected " + wanted, last_line + 1, 1);
  };

  // size N
  if (!have_row()) return eof_fail("`size N`");
  {
    const auto& row = rows[cursor];
    if (row[0].text != "size")
      return fail("expected `size N`", row[0].line, row[0].column);
    if (row.size() != 2)
      return fail("`size` takes exactly one value", row[0].line,
                  row.size() > 2 ? row[2].column : row[0].column);
  }
  int n = 0;
  {
    const auto& tok = rows[cursor][1];
    for (char c : tok.text) {
      if (!std::isdigit(static_cast<unsigned char>(c)) || n > 4096)
        return fail("`size` value must be a small positive integer", tok.line, tok.column);
      n = n * 10 + (c - '0');
    }
    if (n < 1)
      return fail("`size` value must be a small positive integer", tok.line, tok.column);
  }
  ++cursor;

  // labels L0 ... L_{n-1}
  std::vector<std::string> labels;
  std::map<std::string, ElementId> by_label;
  if (!have_row()) return eof_fail("`labels`");
  {
    const auto& row = rows[cursor];
    if (row[0].text != "labels")
      return fail("expected `labels` after `size`", row[0].line, row[0].column);
    if (static_cast<int>(row.size()) != n + 1)
      return fail("expected " + std::to_string(n) + " labels, found " +
                      std::to_string(row.size() - 1),
                  row[0].line, row[0].column);
    for (std::size_t i = 1; i < row.size(); ++i) {
      if (by_label.contains(row[i].text))
        return fail("duplicate label `" + row[i].text + "`", row[i].line, row[i].column);
      by_label[row[i].text] = static_cast<ElementId>(i - 1);
      labels.push_back(row[i].text);
    }
  }
  out.labels = labels;
  ++cursor;

  auto lookup = [&](const detail::FileToken& tok) -> std::optional<ElementId> {
    auto it = by_label.find(tok.text);
    if (it == by_label.end()) return std::nullopt;
    return it->second;
  };

  // one LABEL
  if (!have_row()) return eof_fail("`one`");
  ElementId one = 0;
  {
    const auto& row = rows[cursor];
    if (row[0].text != "one" || row.size() != 2)
      return fail("expected `one LABEL`", row[0].line, row[0].column);
    auto id = lookup(row[1]);
    if (!id) return fail("unknown label `" + row[1].text + "`", row[1].line, row[1].column);
    one = *id;
  }
  ++cursor;

  // zero LABEL (optional)
  std::optional<ElementId> zero;
  if (have_row() && rows[cursor][0].text == "zero") {
    const auto& row = rows[cursor];
    if (row.size() != 2) return fail("expected `zero LABEL`", row[0].line, row[0].column);
    auto id = lookup(row[1]);
    if (!id) return fail("unknown label `" + row[1].text + "`", row[1].line, row[1].column);
    zero = *id;
    ++cursor;
  }

  // the two table blocks
  OpTable mul(n), imp(n);
  for (const char* block : {"mul", "imp"}) {
    if (!have_row()) return eof_fail("`" + std::string(block) + "` block");
    {
      const auto& row = rows[cursor];
      if (row[0].text != block || row.size() != 1)
        return fail("expected `" + std::string(block) + "` on its own line", row[0].line,
                    row[0].column);
    }
    ++cursor;
    OpTable& table = block == std::string_view("mul") ? mul : imp;
    const char* what = block == std::string_view("mul") ? "product" : "arrow";
    for (int r = 0; r < n; ++r) {
      if (!have_row())
        return eof_fail("row " + std::to_string(r + 1) + " of the " + std::string(what) +
                        " table");
      const auto& row = rows[cursor];
      if (static_cast<int>(row.size()) != n)
        return fail("row " + std::to_string(r + 1) + " of the " + what + " table has " +
                        std::to_string(row.size()) + " entries, expected " + std::to_string(n),
                    row[0].line, row[0].column);
      for (int c = 0; c < n; ++c) {
        auto id = lookup(row[static_cast<std::size_t>(c)]);
        if (!id)
          return fail("unknown label `" + row[static_cast<std::size_t>(c)].text + "`",
                      row[static_cast<std::size_t>(c)].line,
                      row[static_cast<std::size_t>(c)].column);
        table.set(r, c, *id);
      }
      ++cursor;
    }
  }

  if (have_row())
    return fail("unexpected trailing content", rows[cursor][0].line, rows[cursor][0].column);

  BuildResult r = build_hoop(std::move(mul), std::move(imp), one, zero, std::move(labels));
  out.report = r.report;
  if (!r.ok()) {
    out.error = "tables fail certification";
    return out;
  }
  out.hoop = *std::move(r.hoop);
  return out;
}

// Canonical spelling of a model; parsing it reproduces the model exactly.
// Labels must be printable as tokens (nonempty, no whitespace, no `#`).
inline std::string dump_hoop_file(const FiniteHoop& h) {
  const int n = h.size();
  for (ElementId x = 0; x < n; ++x) {
    const std::string& l = h.label(x);
    if (l.empty()) throw std::logic_error("dump_hoop_file: empty label");
    for (char c : l)
      if (std::isspace(static_cast<unsigned char>(c)) || c == '#')
        throw std::logic_error("dump_hoop_file: label `" + l + "` is not a clean token");
  }

  std::string out;
  out += "size " + std::to_string(n) + "\n";
  out += "labels";
  for (ElementId x = 0; x < n; ++x) out += " " + h.label(x);
  out += "\n";
  out += "one " + h.label(h.one()) + "\n";
  if (h.zero()) out += "zero " + h.label(*h.zero()) + "\n";
  for (const char* block : {"mul", "imp"}) {
    out += block;
    out += "\n";
    for (ElementId x = 0; x < n; ++x) {
      for (ElementId y = 0; y < n; ++y) {
        if (y) out += " ";
        out += h.label(block == std::string_view("mul") ? h.mul(x, y) : h.imp(x, y));
      }
      out += "\n";
    }
  }
  return out;
}

}  // namespace hoops
