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

#include "doctest.h"
#include "spotbench/errors.h"

namespace spotbench::report {
namespace {

ReportTable Simple(std::vector<double> values, bool higher = true) {
  ReportTable t{"t", {{"v", higher, 2, true}}, {}, {}};
  int i = 0;
  for (double v : values) t.rows.push_back({"m" + std::to_string(i++), {v}});
  return t;
}

TEST_CASE("one row is best everywhere") {
  ReportTable t{"t", {{"a", true, 2, true}, {"b", false, 1, true}}, {{"only", {1.0, 2.0}}}, {}};
  const auto md = RenderTable(t, Style::kMarkdown);
  CHECK(md.find("| only | **1.00** | **2.0** |") != std::string::npos);
}

TEST_CASE("higher and lower is better") {
  const auto hi = RenderTable(Simple({88.19, 87.29, 84.86}), Style::kMarkdown);
  CHECK(hi.find("**88.19**") != std::string::npos);
  CHECK(hi.find("<u>87.29</u>") != std::string::npos);
  CHECK(hi.find("| 84.86 |") != std::string::npos);
  const auto lo = RenderTable(Simple({6.97, 0.92, 0.82}, false), Style::kMarkdown);
  CHECK(lo.find("**0.82**") != std::string::npos);
  CHECK(lo.find("<u>0.92</u>") != std::string::npos);
}

TEST_CASE("ties share a rank at printed precision") {
  const auto t = Simple({90.4, 90.401, 89.0, 88.0});
  CHECK(ColumnRanks(t, 0) == std::vector<int>{1, 1, 2, 3});
}

TEST_CASE("blank cells") {
  ReportTable t{"t", {{"a", true, 1, true}}, {{"x", {std::nullopt}}, {"y", {3.0}}}, {}};
  CHECK(ColumnRanks(t, 0) == std::vector<int>{0, 1});
  CHECK(RenderTable(t, Style::kMarkdown).find("| x | - |") != std::string::npos);
  CHECK(RenderTable(t, Style::kCsv) == "method,a\nx,\ny,3.0\n");
}

TEST_CASE("csv and markdown carry the same numbers") {
  const auto t = BuiltinTable("da-curved");
  const auto csv = RenderTable(t, Style::kCsv);
  CHECK(csv.find("**") == std::string::npos);
  CHECK(csv.find("Mix pre-train → Fine-tune,90.58,85.46,87.95") != std::string::npos);
  CHECK(csv.find(",0.08,") != std::string::npos);
}

TEST_CASE("rendering is deterministic") {
  for (const auto& id : BuiltinTableIds()) {
    const auto t = BuiltinTable(id);
    CHECK(RenderTable(t, Style::kMarkdown) == RenderTable(BuiltinTable(id), Style::kMarkdown));
    for (const auto& r : t.rows) CHECK(r.values.size() == t.columns.size());
  }
  CHECK_THROWS_AS(BuiltinTable("nope"), ArgumentError);
}

TEST_CASE("pipes in names are escaped") {
  ReportTable t{"t", {{"a|b", true, 0, true}}, {{"x|y", {1.0}}}, {}};
  CHECK(RenderTable(t, Style::kMarkdown).find("x\\|y") != std::string::npos);
}

TEST_CASE("table csv parsing") {
  const auto t = ParseTableCsv("method,FID:lower:3,SSIM\nA,1.5,N/A\nB,-,0.25\n", "t.csv", "T");
  REQUIRE(t.columns.size() == 2);
  CHECK_FALSE(t.columns[0].higher_is_better);
  CHECK(t.columns[0].decimals == 3);
  CHECK(t.columns[1].decimals == 2);
  CHECK_FALSE(t.rows[0].values[1].has_value());
  CHECK(*t.rows[1].values[1] == 0.25);
  CHECK_THROWS_AS(ParseTableCsv("method,a:sideways\nA,1\n", "t", "T"), ParseError);
  CHECK_THROWS_AS(ParseTableCsv("method,a\nA,1,2\n", "t", "T"), ParseError);
  CHECK_THROWS_AS(ParseTableCsv("method,a\nA,abc\n", "t", "T"), ParseError);
  CHECK_THROWS_AS(ParseTableCsv("", "t", "T"), ParseError);
}

TEST_CASE("run header") {
  RunInfo info{"eval-detect", "abc123", "case_insensitive=true", 0.5, {{"pairs", "7"}}, {"x"}};
  const auto h = RenderRunHeader(info);
  CHECK(h.find("spotbench 1.0.0") != std::string::npos);
  CHECK(h.find("config_hash: abc123") != std::string::npos);
  CHECK(h.find("iou_threshold: 0.5") != std::string::npos);
  CHECK(h.find("seed.pairs: 7") != std::string::npos);
  CHECK(StandardAssumptions().size() == 3);
}

TEST_CASE("style names") {
  CHECK(ParseStyle("markdown") == Style::kMarkdown);
  CHECK(ParseStyle("csv") == Style::kCsv);
  CHECK_THROWS_AS(ParseStyle("html"), ArgumentError);
}

TEST_CASE("transcribed P/R/F rows") {
  const auto rows = TranscribedPrfRows();
  CHECK(rows.size() >= 25);
  for (const auto& r : rows) {
    CHECK(r.precision > 0);
    CHECK(r.f > 0);
  }
}

}  // namespace
}  // namespace spotbench::report
