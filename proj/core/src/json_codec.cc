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

#include "magnet/json_codec.h"

#include "absl/strings/str_cat.h"
#include "magnet/ror_registry.h"
#include "internal/strings.h"

namespace magnet {
namespace {

using nlohmann::json;

absl::Status FieldError(std::string_view field, std::string_view what) {
  return absl::InvalidArgumentError(
      internal::StrCat("field '", field, "': ", what));
}

absl::Status RequireObject(const json& j) {
  if (!j.is_object()) return absl::InvalidArgumentError("expected an object");
  return absl::OkStatus();
}

absl::StatusOr<std::string> GetString(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end() || !it->is_string()) {
    return FieldError(field, "missing or not a string");
  }
  return it->get<std::string>();
}

absl::StatusOr<std::vector<std::string>> GetStrings(const json& j,
                                                    const char* field,
                                                    bool required = true) {
  auto it = j.find(field);
  if (it == j.end()) {
    if (required) return FieldError(field, "missing");
    return std::vector<std::string>{};
  }
  if (!it->is_array()) return FieldError(field, "not an array");
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) return FieldError(field, "contains a non-string");
    out.push_back(v.get<std::string>());
  }
  return out;
}

absl::StatusOr<bool> GetBool(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end() || !it->is_boolean()) {
    return FieldError(field, "missing or not a boolean");
  }
  return it->get<bool>();
}

absl::StatusOr<std::optional<int>> GetOptionalInt(const json& j,
                                                  const char* field) {
  auto it = j.find(field);
  if (it == j.end() || it->is_null()) return std::optional<int>();
  if (!it->is_number_integer()) return FieldError(field, "not an integer");
  return std::optional<int>(it->get<int>());
}

absl::StatusOr<std::optional<Timestamp>> GetOptionalTime(const json& j,
                                                         const char* field) {
  auto it = j.find(field);
  if (it == j.end() || it->is_null()) return std::optional<Timestamp>();
  if (!it->is_string()) return FieldError(field, "not a string");
  auto t = ParseTimestamp(it->get<std::string>());
  if (!t) return FieldError(field, "not an ISO 8601 UTC timestamp");
  return std::optional<Timestamp>(*t);
}

json OptionalTime(const std::optional<Timestamp>& t) {
  return t ? json(FormatTimestamp(*t)) : json(nullptr);
}

}  // namespace

json ToJson(const ScoredCandidate& c) {
  return {{"ror_id", c.ror_id},
          {"score", c.score},
          {"evidence",
           {{"tokens", c.evidence.tokens},
            {"acronym_match", c.evidence.acronym_match},
            {"country_consistent", c.evidence.country_consistent},
            {"exact_name", c.evidence.exact_name}}}};
}

absl::StatusOr<ScoredCandidate> ScoredCandidateFromJson(const json& j) {
  if (auto s = RequireObject(j); !s.ok()) return s;
  ScoredCandidate c;
  auto id = GetString(j, "ror_id");
  if (!id.ok()) return id.status();
  c.ror_id = *id;
  auto score = j.find("score");
  if (score == j.end() || !score->is_number()) {
    return FieldError("score", "missing or not a number");
  }
  c.score = score->get<double>();
  auto evidence = j.find("evidence");
  if (evidence == j.end() || !evidence->is_object()) {
    return FieldError("evidence", "missing or not an object");
  }
  auto tokens = GetStrings(*evidence, "tokens");
  if (!tokens.ok()) return tokens.status();
  c.evidence.tokens = *tokens;
  auto acronym = GetBool(*evidence, "acronym_match");
  auto country = GetBool(*evidence, "country_consistent");
  auto exact = GetBool(*evidence, "exact_name");
  for (const auto* flag : {&acronym, &country, &exact}) {
    if (!flag->ok()) return flag->status();
  }
  c.evidence.acronym_match = *acronym;
  c.evidence.country_consistent = *country;
  c.evidence.exact_name = *exact;
  return c;
}

json ToJson(const AffiliationGroup& g) {
  json suggestions = json::array();
  for (const auto& s : g.suggestions) suggestions.push_back(ToJson(s));
  return {{"group_id", g.group_id},
          {"raw_string", g.raw_string},
          {"work_ids", g.work_ids},
          {"work_count", g.work_count},
          {"current_ror_ids", g.current_ror_ids},
          {"suggestions", std::move(suggestions)}};
}

absl::StatusOr<AffiliationGroup> AffiliationGroupFromJson(const json& j) {
  if (auto s = RequireObject(j); !s.ok()) return s;
  AffiliationGroup g;
  auto group_id = GetString(j, "group_id");
  if (!group_id.ok()) return group_id.status();
  g.group_id = *group_id;
  auto raw = GetString(j, "raw_string");
  if (!raw.ok()) return raw.status();
  g.raw_string = *raw;
  auto works = GetStrings(j, "work_ids");
  if (!works.ok()) return works.status();
  g.work_ids = *works;
  g.work_count = g.work_ids.size();
  auto current = GetStrings(j, "current_ror_ids");
  if (!current.ok()) return current.status();
  g.current_ror_ids = *current;
  if (auto it = j.find("suggestions"); it != j.end()) {
    if (!it->is_array()) return FieldError("suggestions", "not an array");
    for (const auto& s : *it) {
      auto c = ScoredCandidateFromJson(s);
      if (!c.ok()) return c.status();
      g.suggestions.push_back(*std::move(c));
    }
  }
  return g;
}

json ToJson(const CurationDecision& d) {
  return {{"group_id", d.group_id},
          {"added_ror_ids", d.added_ror_ids},
          {"removed_ror_ids", d.removed_ror_ids},
          {"contact_email", d.contact_email}};
}

absl::StatusOr<CurationDecision> CurationDecisionFromJson(const json& j) {
  if (auto s = RequireObject(j); !s.ok()) return s;
  CurationDecision d;
  auto group_id = GetString(j, "group_id");
  if (!group_id.ok()) return group_id.status();
  d.group_id = *group_id;
  auto added = GetStrings(j, "added_ror_ids", /*required=*/false);
  if (!added.ok()) return added.status();
  d.added_ror_ids = *added;
  auto removed = GetStrings(j, "removed_ror_ids", /*required=*/false);
  if (!removed.ok()) return removed.status();
  d.removed_ror_ids = *removed;
  auto email = GetString(j, "contact_email");
  if (!email.ok()) return email.status();
  d.contact_email = *email;
  return d;
}

json ToJson(const CorrectionRequest& r) {
  return {{"request_id", r.request_id},
          {"raw_string", r.raw_string},
          {"previous_ror_ids", r.previous_ror_ids},
          {"new_ror_ids", r.new_ror_ids},
          {"works_examples", r.works_examples},
          {"contact_domain", r.contact_domain},
          {"status", ToString(r.status)},
          {"date_opened", OptionalTime(r.date_opened)},
          {"date_closed", OptionalTime(r.date_closed)},
          {"issue_number",
           r.issue_number ? json(*r.issue_number) : json(nullptr)}};
}

absl::StatusOr<CorrectionRequest> CorrectionRequestFromJson(const json& j) {
  if (auto s = RequireObject(j); !s.ok()) return s;
  CorrectionRequest r;
  auto id = j.find("request_id");
  if (id == j.end() || !id->is_number_unsigned()) {
    return FieldError("request_id", "missing or not a positive integer");
  }
  r.request_id = id->get<RequestId>();
  auto raw = GetString(j, "raw_string");
  if (!raw.ok()) return raw.status();
  r.raw_string = *raw;
  auto previous = GetStrings(j, "previous_ror_ids");
  if (!previous.ok()) return previous.status();
  r.previous_ror_ids = *previous;
  auto next = GetStrings(j, "new_ror_ids");
  if (!next.ok()) return next.status();
  r.new_ror_ids = *next;
  auto works = GetStrings(j, "works_examples");
  if (!works.ok()) return works.status();
  r.works_examples = *works;
  auto domain = GetString(j, "contact_domain");
  if (!domain.ok()) return domain.status();
  r.contact_domain = *domain;
  auto status = GetString(j, "status");
  if (!status.ok()) return status.status();
  auto parsed = ParseRequestStatus(*status);
  if (!parsed) return FieldError("status", internal::StrCat("unknown: ", *status));
  r.status = *parsed;
  auto opened = GetOptionalTime(j, "date_opened");
  if (!opened.ok()) return opened.status();
  r.date_opened = *opened;
  auto closed = GetOptionalTime(j, "date_closed");
  if (!closed.ok()) return closed.status();
  r.date_closed = *closed;
  auto issue = GetOptionalInt(j, "issue_number");
  if (!issue.ok()) return issue.status();
  r.issue_number = *issue;
  return r;
}

json ToJson(const HarvestQuery& q) {
  json j = {{"mode", ToString(q.mode)}};
  if (q.mode == HarvestMode::kByDoiList) {
    j["value"] = q.dois;
  } else {
    j["value"] = q.value;
  }
  j["year_from"] = q.year_from ? json(*q.year_from) : json(nullptr);
  j["year_to"] = q.year_to ? json(*q.year_to) : json(nullptr);
  return j;
}

absl::StatusOr<HarvestQuery> HarvestQueryFromJson(const json& j) {
  if (auto s = RequireObject(j); !s.ok()) return s;
  HarvestQuery q;
  auto mode = GetString(j, "mode");
  if (!mode.ok()) return mode.status();
  auto parsed = ParseHarvestMode(*mode);
  if (!parsed) return FieldError("mode", internal::StrCat("unknown: ", *mode));
  q.mode = *parsed;
  if (q.mode == HarvestMode::kByDoiList) {
    auto dois = GetStrings(j, "value");
    if (!dois.ok()) return dois.status();
    q.dois = *dois;
  } else {
    auto value = GetString(j, "value");
    if (!value.ok()) return value.status();
    q.value = *value;
  }
  auto from = GetOptionalInt(j, "year_from");
  if (!from.ok()) return from.status();
  q.year_from = *from;
  auto to = GetOptionalInt(j, "year_to");
  if (!to.ok()) return to.status();
  q.year_to = *to;
  return q;
}

json ToJson(const StatsSummary& s) {
  json domains = json::array();
  for (const auto& [domain, count] : s.top_domains) {
    domains.push_back({{"domain", domain}, {"count", count}});
  }
  return {{"total", s.total},
          {"open_count", s.open_count},
          {"closed_count", s.closed_count},
          {"pending_count", s.pending_count},
          {"exported_count", s.exported_count},
          {"top_domains", std::move(domains)},
          {"per_previous_ror", s.per_previous_ror}};
}

json ToJson(const BatchReport& r) {
  json failed = json::array();
  for (const auto& f : r.failed) {
    failed.push_back({{"request_id", f.request_id}, {"reason", f.reason}});
  }
  return {{"attempted", r.attempted},
          {"succeeded", r.succeeded},
          {"failed", std::move(failed)},
          {"remaining_backlog", r.remaining_backlog}};
}

}  // namespace magnet
