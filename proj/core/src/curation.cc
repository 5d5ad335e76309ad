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

#include "magnet/curation.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "magnet/ror_registry.h"
#include "magnet/store.h"
#include "internal/strings.h"

namespace magnet {
namespace {

std::vector<std::string> CanonicalIds(const std::vector<std::string>& ids) {
  std::set<std::string> out;
  for (const auto& id : ids) out.insert(CanonicalRorId(id));
  return {out.begin(), out.end()};
}

}  // namespace

std::string GroupIdFor(std::string_view raw_string) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : raw_string) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = kHex[hash & 0xF];
    hash >>= 4;
  }
  return out;
}

std::vector<AffiliationGroup> GroupWorks(std::span<const Work> works) {
  std::map<std::string, AffiliationGroup, std::less<>> by_raw;
  std::map<std::string, std::set<std::string>, std::less<>> ids_by_raw;
  for (const auto& work : works) {
    for (const auto& signature : work.signatures) {
      auto [it, inserted] = by_raw.try_emplace(signature.raw_string);
      auto& group = it->second;
      if (inserted) {
        group.raw_string = signature.raw_string;
        group.group_id = GroupIdFor(signature.raw_string);
      }
      if (std::find(group.work_ids.begin(), group.work_ids.end(),
                    work.work_id) == group.work_ids.end()) {
        group.work_ids.push_back(work.work_id);
      }
      ids_by_raw[signature.raw_string].insert(signature.current_ror_ids.begin(),
                                              signature.current_ror_ids.end());
    }
  }

  std::vector<AffiliationGroup> groups;
  groups.reserve(by_raw.size());
  for (auto& [raw, group] : by_raw) {
    const auto& ids = ids_by_raw[raw];
    group.current_ror_ids.assign(ids.begin(), ids.end());
    group.work_count = group.work_ids.size();
    groups.push_back(std::move(group));
  }
  // by_raw iterates in ascending raw order, so a stable sort on the count
  // alone yields (work_count desc, raw_string asc).
  std::stable_sort(groups.begin(), groups.end(),
                   [](const AffiliationGroup& a, const AffiliationGroup& b) {
                     return a.work_count > b.work_count;
                   });
  return groups;
}

AffiliationGroup SuggestMatches(AffiliationGroup group,
                                const MatchIndex& index) {
  group.suggestions = MatchAffiliation(index, group.raw_string);
  return group;
}

std::string EmailDomain(std::string_view email) {
  const auto at = email.rfind('@');
  if (at == std::string_view::npos) return {};
  return internal::AsciiStrToLower(
      internal::StripAsciiWhitespace(email.substr(at + 1)));
}

absl::Status ValidateDecision(const CurationDecision& decision) {
  for (const auto* ids : {&decision.added_ror_ids, &decision.removed_ror_ids}) {
    for (const auto& id : *ids) {
      if (!ValidateRorId(CanonicalRorId(id))) {
        return absl::InvalidArgumentError(
            internal::StrCat("invalid ROR id in decision: ", id));
      }
    }
  }
  const auto added = CanonicalIds(decision.added_ror_ids);
  const auto removed = CanonicalIds(decision.removed_ror_ids);
  std::vector<std::string> overlap;
  std::set_intersection(added.begin(), added.end(), removed.begin(),
                        removed.end(), std::back_inserter(overlap));
  if (!overlap.empty()) {
    return absl::InvalidArgumentError(internal::StrCat(
        "ROR id both added and removed: ", overlap.front()));
  }
  const auto at = decision.contact_email.rfind('@');
  if (at == std::string::npos || at == 0 ||
      EmailDomain(decision.contact_email).empty()) {
    return absl::InvalidArgumentError("contact_email is not an e-mail address");
  }
  return absl::OkStatus();
}

std::string_view ToString(RequestStatus status) {
  switch (status) {
    case RequestStatus::kPending:
      return "pending";
    case RequestStatus::kExported:
      return "exported";
    case RequestStatus::kOpen:
      return "open";
    case RequestStatus::kClosed:
      return "closed";
  }
  return "pending";
}

std::optional<RequestStatus> ParseRequestStatus(std::string_view s) {
  for (auto status : kAllRequestStatuses) {
    if (ToString(status) == s) return status;
  }
  return std::nullopt;
}

absl::Status ValidateRequest(const CorrectionRequest& request) {
  if (request.new_ror_ids == request.previous_ror_ids) {
    return absl::InvalidArgumentError("new_ror_ids equals previous_ror_ids");
  }
  const bool has_issue = request.status == RequestStatus::kOpen ||
                         request.status == RequestStatus::kClosed;
  if (has_issue != request.issue_number.has_value()) {
    return absl::InvalidArgumentError(
        internal::StrCat("issue_number must be present exactly for open/closed "
                     "requests (status ",
                     ToString(request.status), ")"));
  }
  if (request.status == RequestStatus::kClosed) {
    if (!request.date_closed) {
      return absl::InvalidArgumentError("closed request without date_closed");
    }
    if (request.date_opened && *request.date_closed < *request.date_opened) {
      return absl::InvalidArgumentError("date_closed precedes date_opened");
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<CorrectionRequest> ApplyDecision(CorrectionStore& store,
                                                const AffiliationGroup& group,
                                                const CurationDecision& decision,
                                                const ApplyOptions& options) {
  if (decision.group_id != group.group_id) {
    return absl::NotFoundError(
        internal::StrCat("unknown group: ", decision.group_id));
  }
  if (auto valid = ValidateDecision(decision); !valid.ok()) return valid;

  std::set<std::string> next(group.current_ror_ids.begin(),
                             group.current_ror_ids.end());
  for (const auto& id : CanonicalIds(decision.added_ror_ids)) next.insert(id);
  for (const auto& id : CanonicalIds(decision.removed_ror_ids)) next.erase(id);

  CorrectionRequest candidate;
  candidate.raw_string = group.raw_string;
  candidate.previous_ror_ids = CanonicalIds(group.current_ror_ids);
  candidate.new_ror_ids.assign(next.begin(), next.end());
  if (candidate.new_ror_ids == candidate.previous_ror_ids) {
    return absl::FailedPreconditionError(internal::StrCat(
        "no-op decision: group ", group.group_id, " already has these ids"));
  }
  const auto n = std::min(options.works_examples, group.work_ids.size());
  candidate.works_examples.assign(group.work_ids.begin(),
                                  group.work_ids.begin() + n);
  candidate.contact_domain = EmailDomain(decision.contact_email);
  candidate.status = RequestStatus::kPending;

  CorrectionRequest result;
  auto status = store.Write([&](CorrectionStore::Writer& w) -> absl::Status {
    const auto* existing =
        w.FindLatest(candidate.raw_string, candidate.contact_domain);
    const bool same_content =
        existing && existing->previous_ror_ids == candidate.previous_ror_ids &&
        existing->new_ror_ids == candidate.new_ror_ids &&
        existing->works_examples == candidate.works_examples;
    if (same_content) {
      result = *existing;
      return absl::OkStatus();
    }
    // A pending request can still be rewritten; once published, a changed
    // decision becomes a follow-up request.
    candidate.request_id = existing && existing->status == RequestStatus::kPending
                               ? existing->request_id
                               : w.NextId();
    result = candidate;
    return w.Put(candidate);
  });
  if (!status.ok()) return status;
  return result;
}

bool IsLegalTransition(RequestStatus from, RequestStatus to) {
  return (from == RequestStatus::kPending && to == RequestStatus::kExported) ||
         (from == RequestStatus::kExported && to == RequestStatus::kOpen) ||
         (from == RequestStatus::kOpen && to == RequestStatus::kClosed);
}

absl::StatusOr<CorrectionRequest> TransitionStatus(
    CorrectionStore& store, RequestId request_id, RequestStatus new_status,
    const TransitionMetadata& metadata) {
  CorrectionRequest result;
  auto status = store.Write([&](CorrectionStore::Writer& w) -> absl::Status {
    const auto* existing = w.Find(request_id);
    if (existing == nullptr) {
      return absl::NotFoundError(
          internal::StrCat("unknown request: ", request_id));
    }
    if (!IsLegalTransition(existing->status, new_status)) {
      return absl::FailedPreconditionError(
          internal::StrCat("illegal transition: ", ToString(existing->status),
                       " -> ", ToString(new_status)));
    }
    CorrectionRequest next = *existing;
    next.status = new_status;
    if (new_status == RequestStatus::kOpen) {
      if (!metadata.issue_number) {
        return absl::InvalidArgumentError(
            "exported -> open requires an issue_number");
      }
      next.issue_number = metadata.issue_number;
      next.date_opened = metadata.date_opened.value_or(Now());
    } else if (new_status == RequestStatus::kClosed) {
      next.date_closed = metadata.date_closed.value_or(Now());
      if (next.date_opened && *next.date_closed < *next.date_opened) {
        return absl::InvalidArgumentError(
            internal::StrCat("date_closed ", FormatTimestamp(*next.date_closed),
                         " precedes date_opened ",
                         FormatTimestamp(*next.date_opened)));
      }
    }
    if (auto valid = ValidateRequest(next); !valid.ok()) return valid;
    result = next;
    return w.Put(std::move(next));
  });
  if (!status.ok()) return status;
  return result;
}

}  // namespace magnet
