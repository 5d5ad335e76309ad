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

#ifndef MAGNET_COUNTRY_H_
#define MAGNET_COUNTRY_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace magnet {

/// Normalized English and French country names (and a few common short
/// forms such as "usa" or "uk") mapped to ISO 3166-1 alpha-2 codes.
const std::map<std::string, std::string, std::less<>>& CountryLexicon();

/// Codes of every lexicon entry occurring as a whole token run in the
/// normalized `text`.
std::set<std::string> CountriesMentioned(std::string_view normalized_text);

/// Display name of a country; `french` selects the French exonym. nullopt
/// for codes outside the lexicon.
std::optional<std::string_view> CountryDisplayName(std::string_view code,
                                                   bool french = false);

}  // namespace magnet

#endif  // MAGNET_COUNTRY_H_
