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

#ifndef MAGNET_EXPORTER_H_
#define MAGNET_EXPORTER_H_

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "magnet/curation.h"
#include "magnet/issue_format.h"
#include "magnet/timestamp.h"

namespace magnet {

class CorrectionStore;

struct StatsSummary {
  std::size_t total = 0;
  std::size_t open_count = 0;
  std::size_t closed_count = 0;
  std::size_t pending_count = 0;
  std::size_t exported_count = 0;
  // Sorted by count descending, then domain ascending.
  std::vector<std::pair<std::string, std::size_t>> top_domains;
  std::map<std::string, std::size_t> per_previous_ror;

  friend bool operator==(const StatsSummary&, const StatsSummary&) = default;
};

StatsSummary ComputeStats(std::span<const CorrectionRequest> requests);
StatsSummary ComputeStats(const CorrectionStore& store);

struct BatchFailure {
  RequestId request_id = 0;
  std::string reason;

  friend bool operator==(const BatchFailure&, const BatchFailure&) = default;
};

struct BatchReport {
  std::size_t attempted = 0;
  std::size_t succeeded = 0;
  std::vector<BatchFailure> failed;
  // Requests still awaiting an issue once the batch is over.
  std::size_t remaining_backlog = 0;
};

enum class IssueState { kOpen, kClosed };

struct TrackerIssue {
  int number = 0;
  IssueState state = IssueState::kOpen;
  std::optional<Timestamp> closed_at;
};

/// A tracker call outcome. `retry_after` is set when the tracker asked the
/// caller to slow down; `value` then carries ResourceExhausted.
template <typename T>
struct TrackerReply {
  absl::StatusOr<T> value;
  std::optional<std::chrono::seconds> retry_after;
};

/// GitHub-compatible issue tracker. Unavailable from either call means the
/// tracker could not be reached at all.
class IssueTracker {
 public:
  virtual ~IssueTracker() = default;
  /// Number of the created issue.
  virtual TrackerReply<int> CreateIssue(const RenderedIssue& issue) = 0;
  virtual TrackerReply<TrackerIssue> GetIssue(int number) = 0;
};

struct HttpTrackerOptions {
  std::string base_url;  // POST {base_url}/issues, GET {base_url}/issues/{n}
  std::string token;     // sent as "Authorization: Bearer <token>" if set
  std::chrono::seconds timeout{30};
  // Used when a rate-limit response carries no Retry-After header.
  std::chrono::seconds default_retry_after{60};
};

/// IssueTracker speaking the JSON wire contract over HTTP. Treats 429, and
/// 403 with a Retry-After header, as rate limiting.
class HttpIssueTracker : public IssueTracker {
 public:
  explicit HttpIssueTracker(HttpTrackerOptions options);

  TrackerReply<int> CreateIssue(const RenderedIssue& issue) override;
  TrackerReply<TrackerIssue> GetIssue(int number) override;

 private:
  HttpTrackerOptions options_;
};

struct ExportOptions {
  // Rate-limit waits allowed per tracker call before giving up on it.
  int max_rate_limit_waits = 8;
  std::chrono::seconds max_retry_after{300};
  std::function<void(std::chrono::seconds)> sleep;  // default: sleep_for
  std::function<Timestamp()> now;                   // default: Now()
};

/// Creates one issue per pending request (and re-drives requests left in
/// exported by an interrupted run), moving each to open with its issue
/// number. A request whose creation fails stays where it was and is listed
/// in the report; the batch continues. Unavailable aborts the batch; work
/// already acknowledged is kept.
absl::StatusOr<BatchReport> ExportIssues(CorrectionStore& store,
                                         IssueTracker& tracker,
                                         const ExportOptions& options = {});

/// Closes every open request whose issue the tracker reports closed, using
/// the tracker's close time. Returns the number of requests updated.
absl::StatusOr<std::size_t> SyncStatuses(CorrectionStore& store,
                                         IssueTracker& tracker,
                                         const ExportOptions& options = {});

}  // namespace magnet

#endif  // MAGNET_EXPORTER_H_
