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

#include "magnet/matcher.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "magnet/country.h"
#include "magnet/text.h"

namespace magnet {
namespace {

bool RankBefore(const ScoredCandidate& a, const ScoredCandidate& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.evidence.exact_name != b.evidence.exact_name) {
    return a.evidence.exact_name;
  }
  return a.ror_id < b.ror_id;
}

std::vector<std::string> Intersect(const std::vector<std::string>& a,
                                   const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

}  // namespace

double TokenWeight(std::size_t total_forms, std::size_t document_frequency) {
  return std::log(1.0 + static_cast<double>(total_forms) /
                            static_cast<double>(document_frequency));
}

absl::StatusOr<MatchIndex> MatchIndex::Build(const RegistryIndex& registry) {
  MatchIndex index;
  for (const auto& [id, record] : registry.records()) {
    if (!record.active()) continue;
    Entry entry;
    entry.ror_id = id;
    entry.country_code = record.country_code;
    entry.normalized_primary = NormalizeText(record.primary_name);
    for (const auto& acronym : record.acronyms) {
      auto normalized = NormalizeText(acronym);
      if (!normalized.empty()) entry.acronyms.push_back(std::move(normalized));
    }
    for (const auto& form : registry.name_forms().find(id)->second) {
      entry.form_tokens.push_back(ContentTokens(form));
    }
    index.total_forms_ += entry.form_tokens.size();
    index.entries_.push_back(std::move(entry));
  }
  if (index.entries_.empty() || index.total_forms_ == 0) {
    return absl::FailedPreconditionError(
        "empty registry: no active record to index");
  }

  for (std::uint32_t e = 0; e < index.entries_.size(); ++e) {
    const auto& entry = index.entries_[e];
    for (std::uint32_t f = 0; f < entry.form_tokens.size(); ++f) {
      for (const auto& token : entry.form_tokens[f]) {
        index.postings_[token].push_back({e, f});
        ++index.token_df_[token];
      }
    }
    for (const auto& acronym : entry.acronyms) {
      auto& hits = index.acronyms_[acronym];
      if (hits.empty() || hits.back() != e) hits.push_back(e);
    }
  }
  for (const auto& [token, df] : index.token_df_) {
    index.token_weight_.emplace(token, TokenWeight(index.total_forms_, df));
  }

  for (auto& entry : index.entries_) {
    for (const auto& tokens : entry.form_tokens) {
      double sum = 0;
      for (const auto& token : tokens) sum += index.token_weight_.find(token)->second;
      entry.self_weight = std::max(entry.self_weight, sum);
    }
  }
  return index;
}

std::size_t MatchIndex::DocumentFrequency(std::string_view token) const {
  auto it = token_df_.find(token);
  return it == token_df_.end() ? 0 : it->second;
}

double MatchIndex::Weight(std::string_view token) const {
  auto it = token_weight_.find(token);
  return it == token_weight_.end() ? 0.0 : it->second;
}

double MatchIndex::SelfWeight(std::string_view ror_id) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), ror_id,
      [](const Entry& e, std::string_view id) { return e.ror_id < id; });
  return it != entries_.end() && it->ror_id == ror_id ? it->self_weight : 0.0;
}

const std::map<std::string, std::string, std::less<>>&
MatchIndex::country_lexicon() const {
  return CountryLexicon();
}

std::vector<ScoredCandidate> MatchAffiliation(const MatchIndex& index,
                                              std::string_view raw) {
  const auto normalized = NormalizeText(raw);
  const auto query_tokens = ContentTokens(normalized);
  if (query_tokens.empty()) return {};

  // Per-form partial sums, accumulated in sorted token order so the result
  // is bit-identical to a direct per-form summation.
  std::unordered_map<std::uint32_t, std::vector<double>> form_sums;
  for (const auto& token : query_tokens) {
    auto it = index.postings_.find(token);
    if (it == index.postings_.end()) continue;
    const double w = index.token_weight_.find(token)->second;
    for (const auto& posting : it->second) {
      auto& sums = form_sums[posting.entry];
      if (sums.empty()) {
        sums.assign(index.entries_[posting.entry].form_tokens.size(), 0.0);
      }
      sums[posting.form] += w;
    }
  }

  std::set<std::uint32_t> acronym_hits;
  for (const auto& acronym : ExtractAcronyms(raw)) {
    auto it = index.acronyms_.find(NormalizeText(acronym));
    if (it != index.acronyms_.end()) {
      acronym_hits.insert(it->second.begin(), it->second.end());
    }
  }

  std::set<std::uint32_t> candidates(acronym_hits);
  for (const auto& [entry, sums] : form_sums) candidates.insert(entry);

  const auto countries = CountriesMentioned(normalized);
  std::vector<ScoredCandidate> ranked;
  for (const auto e : candidates) {
    const auto& entry = index.entries_[e];
    double best = 0;
    std::size_t best_form = 0;
    if (auto it = form_sums.find(e); it != form_sums.end()) {
      for (std::size_t f = 0; f < it->second.size(); ++f) {
        if (it->second[f] > best) {
          best = it->second[f];
          best_form = f;
        }
      }
    }

    ScoredCandidate c;
    c.ror_id = entry.ror_id;
    c.evidence.exact_name = ContainsPhrase(normalized, entry.normalized_primary);
    c.evidence.acronym_match = acronym_hits.contains(e);
    c.evidence.country_consistent = countries.contains(entry.country_code);
    c.score = c.evidence.exact_name ? best * kExactNameMultiplier : best;
    if (c.evidence.acronym_match) {
      c.score += kAcronymBonusRatio * entry.self_weight;
    }
    if (!(c.score > 0) || c.score < kMatchThresholdRatio * entry.self_weight) {
      continue;
    }
    if (!countries.empty() && !c.evidence.country_consistent) continue;
    if (best > 0) {
      c.evidence.tokens = Intersect(query_tokens, entry.form_tokens[best_form]);
    }
    ranked.push_back(std::move(c));
  }

  std::sort(ranked.begin(), ranked.end(), RankBefore);
  if (ranked.size() > kMaxCandidates) ranked.resize(kMaxCandidates);
  return ranked;
}

}  // namespace magnet
