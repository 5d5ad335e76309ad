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

#ifndef MAGNET_WORKS_H_
#define MAGNET_WORKS_H_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"

namespace magnet {

/// One affiliation string as printed on a work, with the registry ids the
/// source currently attaches to it.
struct Signature {
  std::string raw_string;  // byte-for-byte from the source payload
  std::vector<std::string> current_ror_ids;  // sorted, unique

  friend bool operator==(const Signature&, const Signature&) = default;
};

struct Authorship {
  std::vector<std::string> raw_affiliation_strings;
  std::vector<std::string> ror_ids;

  friend bool operator==(const Authorship&, const Authorship&) = default;
};

struct Work {
  std::string work_id;
  std::optional<std::string> doi;  // normalized, see NormalizeDoi()
  std::string title;
  int publication_year = 0;
  std::vector<Authorship> authorships;
  std::vector<Signature> signatures;  // ExtractSignatures(*this)

  friend bool operator==(const Work&, const Work&) = default;
};

/// Lowercases and strips resolver prefixes ("https://doi.org/",
/// "http://dx.doi.org/", "doi:"). nullopt for blank input.
std::optional<std::string> NormalizeDoi(std::string_view doi);

/// One Signature per distinct non-empty raw string, in order of first
/// appearance; ids are the union over all authorships carrying the string.
std::vector<Signature> ExtractSignatures(const Work& work);

/// Keeps the first occurrence per DOI (or per work_id for works without a
/// DOI), preserving input order.
std::vector<Work> DeduplicateWorks(std::vector<Work> works);

enum class HarvestMode { kByRor, kByAffiliationSearch, kByDoiList };

struct HarvestQuery {
  HarvestMode mode = HarvestMode::kByRor;
  // ror_id or search string; unused for kByDoiList.
  std::string value;
  std::vector<std::string> dois;  // kByDoiList only
  std::optional<int> year_from;
  std::optional<int> year_to;

  friend bool operator==(const HarvestQuery&, const HarvestQuery&) = default;
};

std::string_view ToString(HarvestMode mode);
std::optional<HarvestMode> ParseHarvestMode(std::string_view s);

/// InvalidArgument naming the offending field when the query is invalid.
absl::Status ValidateQuery(const HarvestQuery& query);

/// The works-API filter expression for `query`, e.g.
/// "institutions.ror:05f82e368,from_publication_date:2020-01-01,to_publication_date:2023-12-31".
/// Commas and pipes in a search string are replaced by spaces since they are
/// filter separators.
absl::StatusOr<std::string> BuildFilter(const HarvestQuery& query);

/// One decoded page of the works API.
struct WorksPage {
  long long count = 0;
  std::optional<std::string> next_cursor;
  std::vector<Work> works;
};

/// Decodes a works-API response body. DataLoss when required fields are
/// missing or mistyped.
absl::StatusOr<WorksPage> ParseWorksPage(std::string_view body);

}  // namespace magnet

#endif  // MAGNET_WORKS_H_
