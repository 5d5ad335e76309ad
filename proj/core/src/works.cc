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

#include "magnet/works.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "magnet/ror_registry.h"
#include "internal/strings.h"

namespace magnet {
namespace {

using nlohmann::json;

constexpr std::string_view kOpenAlexPrefix = "https://openalex.org/";

absl::Status Malformed(std::string_view what) {
  return absl::DataLossError(internal::StrCat("malformed works page: ", what));
}

}  // namespace

std::optional<std::string> NormalizeDoi(std::string_view doi) {
  auto s = internal::AsciiStrToLower(internal::StripAsciiWhitespace(doi));
  for (std::string_view prefix :
       {"https://doi.org/", "http://doi.org/", "https://dx.doi.org/",
        "http://dx.doi.org/", "doi.org/", "doi:"}) {
    if (std::string_view(s).starts_with(prefix)) {
      s.erase(0, prefix.size());
      break;
    }
  }
  if (s.empty()) return std::nullopt;
  return s;
}

std::vector<Signature> ExtractSignatures(const Work& work) {
  std::vector<Signature> signatures;
  std::vector<std::set<std::string>> ids;
  for (const auto& authorship : work.authorships) {
    for (const auto& raw : authorship.raw_affiliation_strings) {
      if (raw.empty()) continue;
      auto it = std::find_if(
          signatures.begin(), signatures.end(),
          [&raw](const Signature& s) { return s.raw_string == raw; });
      std::size_t pos = it - signatures.begin();
      if (it == signatures.end()) {
        signatures.push_back({raw, {}});
        ids.emplace_back();
      }
      ids[pos].insert(authorship.ror_ids.begin(), authorship.ror_ids.end());
    }
  }
  for (std::size_t i = 0; i < signatures.size(); ++i) {
    signatures[i].current_ror_ids.assign(ids[i].begin(), ids[i].end());
  }
  return signatures;
}

std::vector<Work> DeduplicateWorks(std::vector<Work> works) {
  std::unordered_set<std::string> seen;
  std::vector<Work> out;
  out.reserve(works.size());
  for (auto& work : works) {
    // Separate key spaces so a work_id can never collide with a DOI.
    auto key = work.doi ? internal::StrCat("doi:", *work.doi)
                        : internal::StrCat("id:", work.work_id);
    if (seen.insert(std::move(key)).second) out.push_back(std::move(work));
  }
  return out;
}

std::string_view ToString(HarvestMode mode) {
  switch (mode) {
    case HarvestMode::kByRor:
      return "by_ror";
    case HarvestMode::kByAffiliationSearch:
      return "by_affiliation_search";
    case HarvestMode::kByDoiList:
      return "by_doi_list";
  }
  return "by_ror";
}

std::optional<HarvestMode> ParseHarvestMode(std::string_view s) {
  if (s == "by_ror") return HarvestMode::kByRor;
  if (s == "by_affiliation_search") return HarvestMode::kByAffiliationSearch;
  if (s == "by_doi_list") return HarvestMode::kByDoiList;
  return std::nullopt;
}

absl::Status ValidateQuery(const HarvestQuery& query) {
  if (query.year_from && query.year_to && *query.year_from > *query.year_to) {
    return absl::InvalidArgumentError(internal::StrCat(
        "invalid query: year_from (", *query.year_from,
        ") is after year_to (", *query.year_to, ")"));
  }
  for (const auto& year : {query.year_from, query.year_to}) {
    if (year && (*year < 1 || *year > 9999)) {
      return absl::InvalidArgumentError(
          internal::StrCat("invalid query: year out of range: ", *year));
    }
  }
  switch (query.mode) {
    case HarvestMode::kByRor:
      if (!ValidateRorId(CanonicalRorId(query.value))) {
        return absl::InvalidArgumentError(internal::StrCat(
            "invalid query: value is not a valid ROR id: ", query.value));
      }
      break;
    case HarvestMode::kByAffiliationSearch:
      if (internal::StripAsciiWhitespace(query.value).empty()) {
        return absl::InvalidArgumentError(
            "invalid query: value (search string) is empty");
      }
      break;
    case HarvestMode::kByDoiList:
      if (query.dois.empty()) {
        return absl::InvalidArgumentError("invalid query: dois is empty");
      }
      for (const auto& doi : query.dois) {
        if (!NormalizeDoi(doi)) {
          return absl::InvalidArgumentError(
              "invalid query: dois contains a blank entry");
        }
      }
      break;
  }
  return absl::OkStatus();
}

absl::StatusOr<std::string> BuildFilter(const HarvestQuery& query) {
  if (auto status = ValidateQuery(query); !status.ok()) return status;
  std::string filter;
  switch (query.mode) {
    case HarvestMode::kByRor:
      filter = internal::StrCat("institutions.ror:", CanonicalRorId(query.value));
      break;
    case HarvestMode::kByAffiliationSearch: {
      std::string value(internal::StripAsciiWhitespace(query.value));
      std::replace_if(
          value.begin(), value.end(),
          [](char c) { return c == ',' || c == '|'; }, ' ');
      filter = internal::StrCat("raw_affiliation_strings.search:", value);
      break;
    }
    case HarvestMode::kByDoiList: {
      std::vector<std::string> dois;
      for (const auto& doi : query.dois) dois.push_back(*NormalizeDoi(doi));
      filter = internal::StrCat("doi:", absl::StrJoin(dois, "|"));
      break;
    }
  }
  if (query.year_from) {
    internal::StrAppend(&filter, ",from_publication_date:", *query.year_from,
                    "-01-01");
  }
  if (query.year_to) {
    internal::StrAppend(&filter, ",to_publication_date:", *query.year_to, "-12-31");
  }
  return filter;
}

absl::StatusOr<WorksPage> ParseWorksPage(std::string_view body) {
  const json j = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) return Malformed("not a JSON object");

  WorksPage page;
  auto meta = j.find("meta");
  if (meta == j.end() || !meta->is_object()) return Malformed("missing meta");
  auto count = meta->find("count");
  if (count == meta->end() || !count->is_number_integer()) {
    return Malformed("missing meta.count");
  }
  page.count = count->get<long long>();
  auto cursor = meta->find("next_cursor");
  if (cursor == meta->end() || !(cursor->is_null() || cursor->is_string())) {
    return Malformed("missing meta.next_cursor");
  }
  if (cursor->is_string()) page.next_cursor = cursor->get<std::string>();

  auto results = j.find("results");
  if (results == j.end() || !results->is_array()) {
    return Malformed("missing results");
  }
  for (const auto& r : *results) {
    if (!r.is_object()) return Malformed("result is not an object");
    Work work;
    auto id = r.find("id");
    if (id == r.end() || !id->is_string() || id->get<std::string>().empty()) {
      return Malformed("result without id");
    }
    work.work_id = id->get<std::string>();
    if (work.work_id.starts_with(kOpenAlexPrefix)) {
      work.work_id.erase(0, kOpenAlexPrefix.size());
    }
    if (auto doi = r.find("doi"); doi != r.end() && doi->is_string()) {
      work.doi = NormalizeDoi(doi->get<std::string>());
    }
    if (auto title = r.find("title"); title != r.end() && title->is_string()) {
      work.title = title->get<std::string>();
    }
    if (auto year = r.find("publication_year");
        year != r.end() && year->is_number_integer()) {
      work.publication_year = year->get<int>();
    }
    auto authorships = r.find("authorships");
    if (authorships == r.end() || !authorships->is_array()) {
      return Malformed(internal::StrCat("work ", work.work_id,
                                    " has no authorships array"));
    }
    for (const auto& a : *authorships) {
      if (!a.is_object()) return Malformed("authorship is not an object");
      Authorship authorship;
      if (auto raws = a.find("raw_affiliation_strings");
          raws != a.end() && raws->is_array()) {
        for (const auto& s : *raws) {
          if (s.is_string()) {
            authorship.raw_affiliation_strings.push_back(s.get<std::string>());
          }
        }
      }
      if (auto insts = a.find("institutions");
          insts != a.end() && insts->is_array()) {
        for (const auto& inst : *insts) {
          if (!inst.is_object()) continue;
          auto ror = inst.find("ror");
          if (ror == inst.end() || !ror->is_string()) continue;
          auto canonical = CanonicalRorId(ror->get<std::string>());
          if (ValidateRorId(canonical)) {
            authorship.ror_ids.push_back(std::move(canonical));
          }
        }
      }
      work.authorships.push_back(std::move(authorship));
    }
    work.signatures = ExtractSignatures(work);
    page.works.push_back(std::move(work));
  }
  return page;
}

}  // namespace magnet
