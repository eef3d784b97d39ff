// Copyright 2026 The Spotbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spotbench/report.h"

#include <algorithm>
#include <cmath>

#include "spotbench/errors.h"
#include "spotbench/format.h"

namespace spotbench::report {
namespace {

void CheckShape(const ReportTable& t) {
  if (t.rows.empty()) throw ArgumentError("table '" + t.title + "' has no rows");
  for (const auto& r : t.rows) {
    if (r.values.size() != t.columns.size()) {
      throw ArgumentError("row '" + r.method + "' has " + std::to_string(r.values.size()) +
                          " values for " + std::to_string(t.columns.size()) + " columns");
    }
  }
}

std::string Cell(const std::optional<double>& v, int decimals) {
  return v ? FormatFixed(*v, decimals) : "";
}

std::string EscapeMarkdown(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

Style ParseStyle(std::string_view name) {
  if (name == "markdown" || name == "md") return Style::kMarkdown;
  if (name == "csv") return Style::kCsv;
  throw ArgumentError("unknown table style '" + std::string(name) + "'");
}

std::vector<int> ColumnRanks(const ReportTable& t, std::size_t column) {
  const Column& col = t.columns.at(column);
  std::vector<double> rounded(t.rows.size(), 0.0);
  std::vector<double> distinct;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& v = t.rows[r].values.at(column);
    if (!v) continue;
    double x = 0.0;
    ParseReal(FormatFixed(*v, col.decimals), x);
    rounded[r] = x;
    distinct.push_back(x);
  }
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (col.higher_is_better) std::reverse(distinct.begin(), distinct.end());
  std::vector<int> ranks(t.rows.size(), 0);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (!t.rows[r].values[column]) continue;
    const auto it = std::find(distinct.begin(), distinct.end(), rounded[r]);
    ranks[r] = static_cast<int>(it - distinct.begin()) + 1;
  }
  return ranks;
}

std::string RenderTable(const ReportTable& t, Style style) {
  CheckShape(t);
  std::string out;
  if (style == Style::kCsv) {
    out += "method";
    for (const auto& c : t.columns) out += "," + CsvEscape(c.name);
    out += "\n";
    for (const auto& r : t.rows) {
      out += CsvEscape(r.method);
      for (std::size_t c = 0; c < t.columns.size(); ++c) {
        out += "," + Cell(r.values[c], t.columns[c].decimals);
      }
      out += "\n";
    }
    return out;
  }
  std::vector<std::vector<int>> ranks(t.columns.size());
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (t.columns[c].ranked) ranks[c] = ColumnRanks(t, c);
  }
  out += "### " + t.title + "\n\n| Method |";
  for (const auto& c : t.columns) {
    out += " " + EscapeMarkdown(c.name);
    if (c.ranked) out += c.higher_is_better ? " ↑" : " ↓";
    out += " |";
  }
  out += "\n|---|";
  for (std::size_t c = 0; c < t.columns.size(); ++c) out += "---:|";
  out += "\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out += "| " + EscapeMarkdown(t.rows[r].method) + " |";
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      const auto& v = t.rows[r].values[c];
      std::string cell = v ? FormatFixed(*v, t.columns[c].decimals) : "-";
      if (v && t.columns[c].ranked) {
        if (ranks[c][r] == 1) cell = "**" + cell + "**";
        if (ranks[c][r] == 2) cell = "<u>" + cell + "</u>";
      }
      out += " " + cell + " |";
    }
    out += "\n";
  }
  out += "\nMarking: **best**, <u>second best</u> per column at the printed precision.\n";
  for (const auto& n : t.notes) out += "\n" + n + "\n";
  return out;
}

ReportTable ParseTableCsv(std::string_view text, const std::string& source_name,
                          const std::string& title) {
  ReportTable t;
  t.title = title;
  std::size_t lineno = 0;
  bool header = true;
  for (auto raw : Split(text, '\n')) {
    ++lineno;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty()) continue;
    const auto cells = CsvSplit(line);
    if (header) {
      if (cells.size() < 2) throw ParseError(source_name, lineno, "need method plus a column");
      for (std::size_t c = 1; c < cells.size(); ++c) {
        const auto parts = Split(cells[c], ':');
        Column col{std::string(Trim(parts[0])), true, 2, true};
        if (col.name.empty()) throw ParseError(source_name, lineno, "empty column name");
        if (parts.size() > 1) {
          const auto dir = Trim(parts[1]);
          if (dir == "lower") {
            col.higher_is_better = false;
          } else if (dir != "higher") {
            throw ParseError(source_name, lineno, "direction must be higher or lower");
          }
        }
        if (parts.size() > 2) {
          long long d = 0;
          if (!ParseInt(parts[2], d) || d < 0 || d > 12) {
            throw ParseError(source_name, lineno, "bad decimals in '" + cells[c] + "'");
          }
          col.decimals = static_cast<int>(d);
        }
        if (parts.size() > 3) throw ParseError(source_name, lineno, "bad column spec");
        t.columns.push_back(std::move(col));
      }
      header = false;
      continue;
    }
    if (cells.size() != t.columns.size() + 1) {
      throw ParseError(source_name, lineno,
                       "expected " + std::to_string(t.columns.size() + 1) + " cells");
    }
    Row r{cells[0], {}};
    for (std::size_t c = 1; c < cells.size(); ++c) {
      const auto cell = Trim(cells[c]);
      if (cell.empty() || cell == "-" || cell == "N/A") {
        r.values.emplace_back(std::nullopt);
        continue;
      }
      double v = 0.0;
      if (!ParseReal(cell, v) || !std::isfinite(v)) {
        throw ParseError(source_name, lineno, "bad value '" + std::string(cell) + "'");
      }
      r.values.emplace_back(v);
    }
    t.rows.push_back(std::move(r));
  }
  if (header) throw ParseError(source_name, lineno, "empty table");
  if (t.rows.empty()) throw ParseError(source_name, lineno, "table has no rows");
  return t;
}

std::string RenderRunHeader(const RunInfo& info) {
  std::string out = "## " + info.command + "\n\n";
  out += "- tool: " + std::string(kToolVersion) + "\n";
  out += "- config_hash: " + info.config_hash + "\n";
  if (!info.normalization.empty()) out += "- normalization: " + info.normalization + "\n";
  if (info.iou_threshold) out += "- iou_threshold: " + FormatShortest(*info.iou_threshold) + "\n";
  for (const auto& [name, value] : info.seeds) out += "- seed." + name + ": " + value + "\n";
  if (!info.assumptions.empty()) {
    out += "- assumptions:\n";
    for (const auto& a : info.assumptions) out += "  - " + a + "\n";
  }
  return out + "\n";
}

std::vector<std::string> StandardAssumptions() {
  return {
      "detection matching is polygon IoU >= threshold, greedy by score; DetEval-style "
      "constraints are not applied",
      "1-NED averages over max(#GT, #counted predictions) slots over the whole dataset; "
      "unmatched GT and surplus predictions score 0",
      "SSIM and FSIM are reported on [0, 1]",
  };
}

}  // namespace spotbench::report
