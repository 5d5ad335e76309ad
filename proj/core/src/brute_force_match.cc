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

// Index-free reference matcher. Every statistic is recomputed by scanning the
// registry; nothing here reads a MatchIndex.

#include <algorithm>
#include <map>
#include <set>

#include "magnet/country.h"
#include "magnet/matcher.h"
#include "magnet/text.h"

namespace magnet {

std::vector<ScoredCandidate> BruteForceMatch(const RegistryIndex& registry,
                                             std::string_view raw) {
  const auto normalized = NormalizeText(raw);
  const auto query_tokens = ContentTokens(normalized);
  if (query_tokens.empty()) return {};

  // Corpus statistics over the active records.
  std::size_t total_forms = 0;
  std::map<std::string, std::size_t> df;
  for (const auto& [id, record] : registry.records()) {
    if (!record.active()) continue;
    for (const auto& form : registry.name_forms().at(id)) {
      ++total_forms;
      for (const auto& token : ContentTokens(form)) ++df[token];
    }
  }
  if (total_forms == 0) return {};

  std::set<std::string> query_acronyms;
  for (const auto& a : ExtractAcronyms(raw)) query_acronyms.insert(NormalizeText(a));
  const auto countries = CountriesMentioned(normalized);

  std::vector<ScoredCandidate> out;
  for (const auto& [id, record] : registry.records()) {
    if (!record.active()) continue;

    double self_weight = 0;
    double best = 0;
    std::vector<std::string> best_shared;
    for (const auto& form : registry.name_forms().at(id)) {
      const auto form_tokens = ContentTokens(form);
      double own = 0;
      for (const auto& t : form_tokens) own += TokenWeight(total_forms, df.at(t));
      self_weight = std::max(self_weight, own);

      std::vector<std::string> shared;
      for (const auto& t : form_tokens) {
        if (std::binary_search(query_tokens.begin(), query_tokens.end(), t)) {
          shared.push_back(t);
        }
      }
      double sum = 0;
      for (const auto& t : shared) sum += TokenWeight(total_forms, df.at(t));
      if (sum > best) {
        best = sum;
        best_shared = std::move(shared);
      }
    }

    bool acronym = false;
    for (const auto& a : record.acronyms) {
      const auto n = NormalizeText(a);
      if (!n.empty() && query_acronyms.contains(n)) acronym = true;
    }

    ScoredCandidate c;
    c.ror_id = id;
    c.evidence.exact_name =
        ContainsPhrase(normalized, NormalizeText(record.primary_name));
    c.evidence.acronym_match = acronym;
    c.evidence.country_consistent = countries.contains(record.country_code);
    c.evidence.tokens = best_shared;
    c.score = c.evidence.exact_name ? best * kExactNameMultiplier : best;
    if (acronym) c.score += kAcronymBonusRatio * self_weight;

    if (c.score <= 0) continue;
    if (c.score < kMatchThresholdRatio * self_weight) continue;
    if (!countries.empty() && !c.evidence.country_consistent) continue;
    out.push_back(std::move(c));
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const ScoredCandidate& a, const ScoredCandidate& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.evidence.exact_name && !b.evidence.exact_name;
                   });
  if (out.size() > kMaxCandidates) out.resize(kMaxCandidates);
  return out;
}

}  // namespace magnet
