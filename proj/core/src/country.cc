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

#include "magnet/country.h"

#include <array>
#include <vector>

#include "magnet/text.h"

namespace magnet {
namespace {

struct CountryEntry {
  std::string_view code;
  std::string_view english;
  std::string_view french;
};

// Names that are common inside institution names of other countries
// ("New Mexico", "Georgia Tech", "New Jersey") are deliberately absent.
constexpr std::array<CountryEntry, 72> kCountries = {{
    {"AR", "Argentina", "Argentine"},
    {"AT", "Austria", "Autriche"},
    {"AU", "Australia", "Australie"},
    {"BE", "Belgium", "Belgique"},
    {"BF", "Burkina Faso", "Burkina Faso"},
    {"BG", "Bulgaria", "Bulgarie"},
    {"BJ", "Benin", "Bénin"},
    {"BR", "Brazil", "Brésil"},
    {"CA", "Canada", "Canada"},
    {"CH", "Switzerland", "Suisse"},
    {"CI", "Ivory Coast", "Côte d'Ivoire"},
    {"CL", "Chile", "Chili"},
    {"CM", "Cameroon", "Cameroun"},
    {"CN", "China", "Chine"},
    {"CO", "Colombia", "Colombie"},
    {"CZ", "Czech Republic", "République tchèque"},
    {"DE", "Germany", "Allemagne"},
    {"DK", "Denmark", "Danemark"},
    {"DZ", "Algeria", "Algérie"},
    {"EE", "Estonia", "Estonie"},
    {"EG", "Egypt", "Égypte"},
    {"ES", "Spain", "Espagne"},
    {"FI", "Finland", "Finlande"},
    {"FR", "France", "France"},
    {"GB", "United Kingdom", "Royaume-Uni"},
    {"GR", "Greece", "Grèce"},
    {"HR", "Croatia", "Croatie"},
    {"HU", "Hungary", "Hongrie"},
    {"ID", "Indonesia", "Indonésie"},
    {"IE", "Ireland", "Irlande"},
    {"IL", "Israel", "Israël"},
    {"IN", "India", "Inde"},
    {"IR", "Iran", "Iran"},
    {"IS", "Iceland", "Islande"},
    {"IT", "Italy", "Italie"},
    {"JP", "Japan", "Japon"},
    {"KE", "Kenya", "Kenya"},
    {"KR", "South Korea", "Corée du Sud"},
    {"LB", "Lebanon", "Liban"},
    {"LT", "Lithuania", "Lituanie"},
    {"LU", "Luxembourg", "Luxembourg"},
    {"LV", "Latvia", "Lettonie"},
    {"MA", "Morocco", "Maroc"},
    {"MG", "Madagascar", "Madagascar"},
    {"ML", "Mali", "Mali"},
    {"MY", "Malaysia", "Malaisie"},
    {"NG", "Nigeria", "Nigéria"},
    {"NL", "Netherlands", "Pays-Bas"},
    {"NO", "Norway", "Norvège"},
    {"NZ", "New Zealand", "Nouvelle-Zélande"},
    {"PE", "Peru", "Pérou"},
    {"PH", "Philippines", "Philippines"},
    {"PK", "Pakistan", "Pakistan"},
    {"PL", "Poland", "Pologne"},
    {"PT", "Portugal", "Portugal"},
    {"RO", "Romania", "Roumanie"},
    {"RS", "Serbia", "Serbie"},
    {"RU", "Russia", "Russie"},
    {"SA", "Saudi Arabia", "Arabie saoudite"},
    {"SE", "Sweden", "Suède"},
    {"SG", "Singapore", "Singapour"},
    {"SI", "Slovenia", "Slovénie"},
    {"SK", "Slovakia", "Slovaquie"},
    {"SN", "Senegal", "Sénégal"},
    {"TH", "Thailand", "Thaïlande"},
    {"TN", "Tunisia", "Tunisie"},
    {"TW", "Taiwan", "Taïwan"},
    {"UA", "Ukraine", "Ukraine"},
    {"US", "United States", "États-Unis"},
    {"VN", "Vietnam", "Viêt Nam"},
    {"ZA", "South Africa", "Afrique du Sud"},
    {"MX", "Mexico", "Mexique"},
}};

struct Alias {
  std::string_view name;
  std::string_view code;
};

constexpr std::array<Alias, 14> kAliases = {{
    {"USA", "US"},
    {"United States of America", "US"},
    {"Etats Unis d'Amerique", "US"},
    {"UK", "GB"},
    {"Great Britain", "GB"},
    {"Grande-Bretagne", "GB"},
    {"England", "GB"},
    {"Scotland", "GB"},
    {"Ecosse", "GB"},
    {"Angleterre", "GB"},
    {"Republic of Korea", "KR"},
    {"Viet Nam", "VN"},
    {"The Netherlands", "NL"},
    {"Czechia", "CZ"},
}};

std::map<std::string, std::string, std::less<>> BuildLexicon() {
  std::map<std::string, std::string, std::less<>> lexicon;
  for (const auto& c : kCountries) {
    lexicon.emplace(NormalizeText(c.english), std::string(c.code));
    lexicon.emplace(NormalizeText(c.french), std::string(c.code));
  }
  for (const auto& a : kAliases) {
    lexicon.emplace(NormalizeText(a.name), std::string(a.code));
  }
  return lexicon;
}

}  // namespace

const std::map<std::string, std::string, std::less<>>& CountryLexicon() {
  static const auto* lexicon =
      new std::map<std::string, std::string, std::less<>>(BuildLexicon());
  return *lexicon;
}

std::set<std::string> CountriesMentioned(std::string_view normalized_text) {
  std::set<std::string> codes;
  if (normalized_text.empty()) return codes;
  for (const auto& [name, code] : CountryLexicon()) {
    if (!codes.contains(code) && ContainsPhrase(normalized_text, name)) {
      codes.insert(code);
    }
  }
  return codes;
}

std::optional<std::string_view> CountryDisplayName(std::string_view code,
                                                   bool french) {
  for (const auto& c : kCountries) {
    if (c.code == code) return french ? c.french : c.english;
  }
  return std::nullopt;
}

}  // namespace magnet
