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

#ifndef MAGNET_MATCHER_H_
#define MAGNET_MATCHER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "magnet/ror_registry.h"

namespace magnet {

// A candidate must cover this fraction of its own best-form weight.
inline constexpr double kMatchThresholdRatio = 0.5;
inline constexpr double kExactNameMultiplier = 2.0;
inline constexpr double kAcronymBonusRatio = 0.5;
inline constexpr std::size_t kMaxCandidates = 10;

/// Rarity weight of a token: ln(1 + total_forms / df).
double TokenWeight(std::size_t total_forms, std::size_t document_frequency);

struct MatchEvidence {
  std::vector<std::string> tokens;  // sorted; shared with the best form
  bool acronym_match = false;
  bool country_consistent = false;
  bool exact_name = false;

  friend bool operator==(const MatchEvidence&, const MatchEvidence&) = default;
};

struct ScoredCandidate {
  std::string ror_id;
  double score = 0;
  MatchEvidence evidence;

  friend bool operator==(const ScoredCandidate&, const ScoredCandidate&) =
      default;
};

/// Inverted token index over the name forms of the active records of a
/// registry. Immutable after Build(); MatchAffiliation() may be called from
/// any number of threads.
class MatchIndex {
 public:
  struct Posting {
    std::uint32_t entry;  // position in entries(), ordered by ror_id
    std::uint32_t form;   // ordinal within the record's name forms

    friend bool operator==(const Posting&, const Posting&) = default;
  };

  struct Entry {
    std::string ror_id;
    std::string country_code;
    std::string normalized_primary;
    std::vector<std::string> acronyms;  // normalized
    // Content tokens of each name form, sorted and unique.
    std::vector<std::vector<std::string>> form_tokens;
    double self_weight = 0;
  };

  /// FailedPrecondition when the registry holds no active record.
  static absl::StatusOr<MatchIndex> Build(const RegistryIndex& registry);

  const std::vector<Entry>& entries() const { return entries_; }
  const std::map<std::string, std::vector<Posting>, std::less<>>& postings()
      const {
    return postings_;
  }
  /// Number of name forms containing `token`; 0 for unknown tokens.
  std::size_t DocumentFrequency(std::string_view token) const;
  double Weight(std::string_view token) const;
  std::size_t total_forms() const { return total_forms_; }
  /// 0 for ids that are not indexed (inactive, withdrawn or unknown).
  double SelfWeight(std::string_view ror_id) const;
  const std::map<std::string, std::string, std::less<>>& country_lexicon()
      const;

 private:
  friend std::vector<ScoredCandidate> MatchAffiliation(const MatchIndex&,
                                                       std::string_view);

  std::vector<Entry> entries_;
  std::map<std::string, std::vector<Posting>, std::less<>> postings_;
  std::map<std::string, std::size_t, std::less<>> token_df_;
  std::map<std::string, double, std::less<>> token_weight_;
  std::map<std::string, std::vector<std::uint32_t>, std::less<>> acronyms_;
  std::size_t total_forms_ = 0;
};

/// Ranks registry candidates for one raw affiliation string.
///
/// The string is normalized and tokenized; candidates are records sharing a
/// content token with it or carrying one of its acronyms (runs of two or more
/// uppercase letters in the raw text). A candidate scores the summed weight
/// of the tokens shared with its best name form, doubled when the whole
/// normalized primary name occurs in the query, plus half its self weight
/// on an acronym hit. Candidates below half their self weight, or located in
/// a country other than the one(s) the query names, are dropped. Results are
/// ordered by score, then exact-name flag, then ror_id, and capped at
/// kMaxCandidates.
std::vector<ScoredCandidate> MatchAffiliation(const MatchIndex& index,
                                              std::string_view raw);

/// Reference implementation of MatchAffiliation() that scans every record of
/// the registry and recomputes all statistics from scratch. Used as a test
/// oracle; O(registry) per call.
std::vector<ScoredCandidate> BruteForceMatch(const RegistryIndex& registry,
                                             std::string_view raw);

}  // namespace magnet

#endif  // MAGNET_MATCHER_H_
