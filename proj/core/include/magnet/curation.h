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

#ifndef MAGNET_CURATION_H_
#define MAGNET_CURATION_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "magnet/matcher.h"
#include "magnet/timestamp.h"
#include "magnet/works.h"

namespace magnet {

class CorrectionStore;

inline constexpr std::size_t kDefaultWorksExamples = 10;

/// All works sharing one byte-exact raw affiliation string.
struct AffiliationGroup {
  std::string group_id;  // GroupIdFor(raw_string)
  std::string raw_string;
  std::vector<std::string> work_ids;  // distinct, in harvest order
  std::size_t work_count = 0;
  std::vector<std::string> current_ror_ids;  // sorted union
  std::vector<ScoredCandidate> suggestions;

  friend bool operator==(const AffiliationGroup&, const AffiliationGroup&) =
      default;
};

/// 16 lowercase hex digits of the 64-bit FNV-1a hash of the raw string.
std::string GroupIdFor(std::string_view raw_string);

/// One group per distinct raw string, ordered by work_count descending then
/// raw_string ascending (bytewise).
std::vector<AffiliationGroup> GroupWorks(std::span<const Work> works);

/// Returns `group` with suggestions = MatchAffiliation(index, raw_string).
AffiliationGroup SuggestMatches(AffiliationGroup group, const MatchIndex& index);

struct CurationDecision {
  std::string group_id;
  std::vector<std::string> added_ror_ids;
  std::vector<std::string> removed_ror_ids;
  std::string contact_email;

  friend bool operator==(const CurationDecision&, const CurationDecision&) =
      default;
};

/// InvalidArgument if an id is malformed, if added and removed overlap, or if
/// the email has no local part or domain.
absl::Status ValidateDecision(const CurationDecision& decision);

/// Lowercased part after the last '@'; empty when there is none.
std::string EmailDomain(std::string_view email);

enum class RequestStatus { kPending, kExported, kOpen, kClosed };

inline constexpr RequestStatus kAllRequestStatuses[] = {
    RequestStatus::kPending, RequestStatus::kExported, RequestStatus::kOpen,
    RequestStatus::kClosed};

std::string_view ToString(RequestStatus status);
std::optional<RequestStatus> ParseRequestStatus(std::string_view s);

using RequestId = std::uint64_t;

struct CorrectionRequest {
  RequestId request_id = 0;
  std::string raw_string;
  std::vector<std::string> previous_ror_ids;  // sorted
  std::vector<std::string> new_ror_ids;       // sorted
  std::vector<std::string> works_examples;
  std::string contact_domain;
  RequestStatus status = RequestStatus::kPending;
  std::optional<Timestamp> date_opened;
  std::optional<Timestamp> date_closed;
  std::optional<int> issue_number;

  friend bool operator==(const CorrectionRequest&, const CorrectionRequest&) =
      default;
};

/// Checks the lifecycle invariants of a stored request.
absl::Status ValidateRequest(const CorrectionRequest& request);

struct ApplyOptions {
  std::size_t works_examples = kDefaultWorksExamples;
};

/// Turns a curator decision on `group` into a pending correction request.
///
/// new_ror_ids = (current ∪ added) \ removed. Only the e-mail domain is kept.
/// Requests are keyed by (raw_string, contact_domain): re-applying an
/// identical decision returns the existing request, and a changed decision
/// rewrites a still-pending request in place.
///
/// Errors: NotFound when decision.group_id does not name `group`,
/// FailedPrecondition for a no-op decision, InvalidArgument for an invalid
/// decision.
absl::StatusOr<CorrectionRequest> ApplyDecision(CorrectionStore& store,
                                                const AffiliationGroup& group,
                                                const CurationDecision& decision,
                                                const ApplyOptions& options = {});

struct TransitionMetadata {
  std::optional<int> issue_number;
  std::optional<Timestamp> date_opened;
  std::optional<Timestamp> date_closed;
};

/// True for exactly pending->exported, exported->open and open->closed.
bool IsLegalTransition(RequestStatus from, RequestStatus to);

/// Moves a request along its lifecycle. exported->open requires an issue
/// number and stamps date_opened (now if absent); open->closed stamps
/// date_closed (now if absent), which may not precede date_opened.
///
/// Errors: NotFound for an unknown request, FailedPrecondition for an
/// illegal transition, InvalidArgument for inconsistent metadata.
absl::StatusOr<CorrectionRequest> TransitionStatus(
    CorrectionStore& store, RequestId request_id, RequestStatus new_status,
    const TransitionMetadata& metadata = {});

}  // namespace magnet

#endif  // MAGNET_CURATION_H_
