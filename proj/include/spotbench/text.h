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

#ifndef SPOTBENCH_TEXT_H_
#define SPOTBENCH_TEXT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spotbench::text {

// Invalid sequences decode to U+FFFD, one per offending byte.
std::u32string DecodeUtf8(std::string_view s);
std::string EncodeUtf8(std::u32string_view s);

// Number of Unicode scalar values.
std::size_t CodePointLength(std::string_view s);

// Simple case folding for ASCII, Latin-1, Latin Extended-A/Additional
// (Vietnamese), Greek and Cyrillic. Other scripts pass through.
char32_t ToLower(char32_t c);
bool IsAlnum(char32_t c);

struct NormalizationPolicy {
  bool case_insensitive = true;
  bool strip_edge_punctuation = true;
  // Word-accuracy protocols skip GT words shorter than 3 code points or
  // without any alphanumeric character. Never applied to 1-NED.
  bool drop_non_evaluable = true;

  // One-line rendering embedded in reports.
  std::string Describe() const;
};

// Trims and collapses whitespace runs, then applies the policy.
std::u32string Normalize(std::string_view s, const NormalizationPolicy& policy);

bool IsEvaluable(std::u32string_view normalized);

// Levenshtein distance over Unicode scalar values.
std::size_t EditDistance(std::u32string_view a, std::u32string_view b);
std::size_t EditDistance(std::string_view a, std::string_view b);

// Nearest lexicon entry by edit distance between normalized forms; ties go
// to the smallest entry by code point order. Returns the entry as given.
// Throws ArgumentError on an empty lexicon.
const std::string& LexiconCorrect(std::string_view word,
                                  std::span<const std::string> lexicon,
                                  const NormalizationPolicy& policy = {});

// Precomputed normalized lexicon for repeated lookups.
class Lexicon {
 public:
  Lexicon() = default;
  Lexicon(std::vector<std::string> words, const NormalizationPolicy& policy);

  bool empty() const { return words_.empty(); }
  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }

  // Index of the nearest entry (same rule as LexiconCorrect).
  std::size_t Nearest(std::u32string_view normalized_word) const;
  const std::u32string& normalized(std::size_t i) const { return normalized_[i]; }

 private:
  std::vector<std::string> words_;
  std::vector<std::u32string> normalized_;
  std::vector<std::u32string> decoded_;  // tie-break order
};

// One word per line, UTF-8; blank lines skipped, CR stripped.
std::vector<std::string> ReadWordList(const std::string& path);

}  // namespace spotbench::text

#endif  // SPOTBENCH_TEXT_H_
