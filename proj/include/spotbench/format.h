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

#ifndef SPOTBENCH_FORMAT_H_
#define SPOTBENCH_FORMAT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace spotbench {

// Fixed-point decimal with '.' separator, never an exponent, never "-0".
std::string FormatFixed(double value, int decimals);

// Shortest text that reads back to the same double.
std::string FormatShortest(double value);

// Locale-independent real parsing of the whole token (surrounding blanks
// allowed). Returns false on garbage.
bool ParseReal(std::string_view token, double& out);
bool ParseInt(std::string_view token, long long& out);

std::string_view Trim(std::string_view s);
std::vector<std::string_view> Split(std::string_view s, char sep);

// Quotes a CSV cell when it holds a separator, quote or newline.
std::string CsvEscape(std::string_view cell);
// RFC 4180 style split of a single line.
std::vector<std::string> CsvSplit(std::string_view line);

// 64-bit FNV-1a, rendered as 16 hex digits by HashHex.
std::uint64_t Fnv1a64(std::string_view data);
std::string HashHex(std::uint64_t h);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view content);

constexpr std::string_view kToolVersion = "spotbench 1.0.0";

}  // namespace spotbench

#endif  // SPOTBENCH_FORMAT_H_
