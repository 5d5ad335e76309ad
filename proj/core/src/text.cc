// Copyright 2026 The Magnet Authors
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

#include "magnet/text.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <array>

namespace magnet {
namespace {

constexpr std::array<std::string_view, 17> kStopwords = {
    "of", "the", "and", "for", "de", "la", "le", "les", "du",
    "des", "der", "die", "das", "und", "di", "et", "e"};

bool IsMark(UChar32 c) {
  const auto type = u_charType(c);
  return type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK ||
         type == U_ENCLOSING_MARK;
}

bool IsAsciiAlnum(UChar32 c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

icu::UnicodeString FromUtf8(std::string_view s) {
  return icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
}

}  // namespace

std::string NormalizeText(std::string_view raw) {
  if (raw.empty()) return {};
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfkd = icu::Normalizer2::getNFKDInstance(status);
  icu::UnicodeString decomposed = FromUtf8(raw);
  if (U_SUCCESS(status)) {
    decomposed = nfkd->normalize(decomposed, status);
  }
  // A failed decomposition leaves the input as-is; the ASCII filter below
  // still guarantees the output alphabet.

  std::string out;
  out.reserve(raw.size());
  bool pending_separator = false;
  for (int32_t i = 0; i < decomposed.length();) {
    UChar32 c = decomposed.char32At(i);
    i += U16_LENGTH(c);
    if (IsMark(c)) continue;
    c = u_tolower(c);
    if (IsAsciiAlnum(c)) {
      if (pending_separator && !out.empty()) out.push_back(' ');
      pending_separator = false;
      out.push_back(static_cast<char>(c));
    } else {
      pending_separator = true;
    }
  }
  return out;
}

std::vector<std::string> Tokenize(std::string_view normalized) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (start < normalized.size()) {
    auto end = normalized.find(' ', start);
    if (end == std::string_view::npos) end = normalized.size();
    if (end > start) tokens.emplace_back(normalized.substr(start, end - start));
    start = end + 1;
  }
  return tokens;
}

std::span<const std::string_view> Stopwords() { return kStopwords; }

bool IsStopword(std::string_view token) {
  return std::find(kStopwords.begin(), kStopwords.end(), token) !=
         kStopwords.end();
}

std::vector<std::string> ContentTokens(std::string_view normalized) {
  auto tokens = Tokenize(normalized);
  std::erase_if(tokens, [](const std::string& t) { return IsStopword(t); });
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  return tokens;
}

std::vector<std::string> ExtractAcronyms(std::string_view raw) {
  std::vector<std::string> acronyms;
  const icu::UnicodeString text = FromUtf8(raw);
  icu::UnicodeString run;
  int32_t run_letters = 0;
  auto flush = [&] {
    if (run_letters >= 2) {
      std::string utf8;
      run.toUTF8String(utf8);
      acronyms.push_back(std::move(utf8));
    }
    run.remove();
    run_letters = 0;
  };
  for (int32_t i = 0; i < text.length();) {
    const UChar32 c = text.char32At(i);
    i += U16_LENGTH(c);
    if (u_isupper(c)) {
      run.append(c);
      ++run_letters;
    } else {
      flush();
    }
  }
  flush();
  return acronyms;
}

bool ContainsPhrase(std::string_view text, std::string_view phrase) {
  if (phrase.empty() || phrase.size() > text.size()) return false;
  for (auto pos = text.find(phrase); pos != std::string_view::npos;
       pos = text.find(phrase, pos + 1)) {
    const bool left_ok = pos == 0 || text[pos - 1] == ' ';
    const auto end = pos + phrase.size();
    const bool right_ok = end == text.size() || text[end] == ' ';
    if (left_ok && right_ok) return true;
  }
  return false;
}

}  // namespace magnet
