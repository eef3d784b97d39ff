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

// Result tables with best / second-best marking, run headers and the
// built-in transcribed result tables.

#ifndef SPOTBENCH_REPORT_H_
#define SPOTBENCH_REPORT_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spotbench::report {

struct Column {
  std::string name;
  bool higher_is_better = true;
  int decimals = 2;
  bool ranked = true;
};

struct Row {
  std::string method;
  std::vector<std::optional<double>> values;  // empty optional renders blank
};

struct ReportTable {
  std::string title;
  std::vector<Column> columns;
  std::vector<Row> rows;
  std::vector<std::string> notes;
};

enum class Style { kMarkdown, kCsv };
Style ParseStyle(std::string_view name);  // throws ArgumentError

// Dense rank per row for one column at the declared precision: 1 is best,
// ties share a rank, 0 marks a blank cell.
std::vector<int> ColumnRanks(const ReportTable& t, std::size_t column);

// Markdown bolds rank 1 and underlines rank 2 in ranked columns; CSV emits
// the same values without markup. Throws ArgumentError on an empty or
// ragged table.
std::string RenderTable(const ReportTable& t, Style style);

// CSV input for `report --in`: header "method,<spec>,..." where a spec is
// name[:higher|lower[:decimals]]; blank, "-" and "N/A" cells are blank.
ReportTable ParseTableCsv(std::string_view text, const std::string& source_name,
                          const std::string& title);

struct RunInfo {
  std::string command;
  std::string config_hash;
  std::string normalization;
  std::optional<double> iou_threshold;
  std::vector<std::pair<std::string, std::string>> seeds;
  std::vector<std::string> assumptions;
};

// Markdown header block listing tool version, config hash, policies, seeds
// and open assumptions.
std::string RenderRunHeader(const RunInfo& info);

// Assumption lines shared by the evaluation reports.
std::vector<std::string> StandardAssumptions();

// Built-in transcribed tables, addressed by content name.
std::vector<std::string> BuiltinTableIds();
ReportTable BuiltinTable(std::string_view id);  // throws ArgumentError

// Rows from the domain-adaptation tables where P, R and F are all printed.
struct PrintedPrf {
  std::string table;
  std::string dataset;
  std::string method;
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};
std::vector<PrintedPrf> TranscribedPrfRows();

}  // namespace spotbench::report

#endif  // SPOTBENCH_REPORT_H_
