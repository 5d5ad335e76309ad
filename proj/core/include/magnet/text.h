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

#ifndef MAGNET_TEXT_H_
#define MAGNET_TEXT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace magnet {

/// Folds organization text into the matching alphabet `[a-z0-9 ]`.
///
/// Applies, in order: Unicode compatibility decomposition (NFKD), removal of
/// combining marks, lowercasing, replacement of every character that is not
/// an ASCII letter or digit by a separator, whitespace collapse and trim.
/// Letters without an ASCII decomposition (e.g. "ß", "ł") become separators.
/// The function is idempotent.
std::string NormalizeText(std::string_view raw);

/// Splits a normalized string on single spaces. Empty input yields no tokens.
std::vector<std::string> Tokenize(std::string_view normalized);

/// The fixed multilingual stopword list.
std::span<const std::string_view> Stopwords();
bool IsStopword(std::string_view token);

/// Sorted, duplicate-free non-stopword tokens of an already normalized string.
std::vector<std::string> ContentTokens(std::string_view normalized);

/// Maximal runs of two or more uppercase letters in `raw`, in order of
/// appearance and before any case folding. "INSERM U1234 (CNRS)" yields
/// {"INSERM", "CNRS"}.
std::vector<std::string> ExtractAcronyms(std::string_view raw);

/// True iff `phrase` occurs in `text` as a whole run of tokens. Both inputs
/// must be normalized. An empty phrase is never contained.
bool ContainsPhrase(std::string_view text, std::string_view phrase);

}  // namespace magnet

#endif  // MAGNET_TEXT_H_
