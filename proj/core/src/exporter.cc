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

#include "magnet/exporter.h"

#include <algorithm>
#include <thread>

#include "absl/strings/str_cat.h"
#include "magnet/store.h"
#include "internal/strings.h"

namespace magnet {
namespace {

// Calls `call` until it is not rate limited or the wait budget is spent.
template <typename T, typename Call>
TrackerReply<T> WithRateLimitWaits(const ExportOptions& options, Call call) {
  auto sleep = options.sleep ? options.sleep : [](std::chrono::seconds s) {
    std::this_thread::sleep_for(s);
  };
  for (int waits = 0;; ++waits) {
    TrackerReply<T> reply = call();
    if (!reply.retry_after || waits >= options.max_rate_limit_waits) {
      return reply;
    }
    sleep(std::min(*reply.retry_after, options.max_retry_after));
  }
}

}  // namespace

StatsSummary ComputeStats(std::span<const CorrectionRequest> requests) {
  StatsSummary s;
  std::map<std::string, std::size_t> domains;
  for (const auto& r : requests) {
    ++s.total;
    switch (r.status) {
      case RequestStatus::kPending:
        ++s.pending_count;
        break;
      case RequestStatus::kExported:
        ++s.exported_count;
        break;
      case RequestStatus::kOpen:
        ++s.open_count;
        break;
      case RequestStatus::kClosed:
        ++s.closed_count;
        break;
    }
    if (!r.contact_domain.empty()) ++domains[r.contact_domain];
    for (const auto& id : r.previous_ror_ids) ++s.per_previous_ror[id];
  }
  s.top_domains.assign(domains.begin(), domains.end());
  std::stable_sort(s.top_domains.begin(), s.top_domains.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return s;
}

StatsSummary ComputeStats(const CorrectionStore& store) {
  const auto requests = store.Snapshot();
  return ComputeStats(requests);
}

absl::StatusOr<BatchReport> ExportIssues(CorrectionStore& store,
                                         IssueTracker& tracker,
                                         const ExportOptions& options) {
  const auto now = options.now ? options.now : [] { return Now(); };
  BatchReport report;
  for (const auto& request : store.Snapshot()) {
    if (request.status != RequestStatus::kPending &&
        request.status != RequestStatus::kExported) {
      continue;
    }
    ++report.attempted;
    auto issue = RenderIssue(request);
    if (!issue.ok()) {
      report.failed.push_back({request.request_id, issue.status().ToString()});
      continue;
    }

    auto reply = WithRateLimitWaits<int>(
        options, [&] { return tracker.CreateIssue(*issue); });
    if (!reply.value.ok()) {
      if (absl::IsUnavailable(reply.value.status())) {
        return absl::UnavailableError(
            internal::StrCat("tracker unreachable: ", reply.value.status().message()));
      }
      report.failed.push_back(
          {request.request_id, reply.retry_after
                                   ? std::string("rate limited")
                                   : reply.value.status().ToString()});
      continue;
    }

    if (request.status == RequestStatus::kPending) {
      auto exported =
          TransitionStatus(store, request.request_id, RequestStatus::kExported);
      if (!exported.ok()) return exported.status();
    }
    TransitionMetadata meta;
    meta.issue_number = *reply.value;
    meta.date_opened = now();
    auto opened = TransitionStatus(store, request.request_id,
                                   RequestStatus::kOpen, meta);
    if (!opened.ok()) return opened.status();
    ++report.succeeded;
  }

  for (const auto& r : store.Snapshot()) {
    if (r.status == RequestStatus::kPending ||
        r.status == RequestStatus::kExported) {
      ++report.remaining_backlog;
    }
  }
  return report;
}

absl::StatusOr<std::size_t> SyncStatuses(CorrectionStore& store,
                                         IssueTracker& tracker,
                                         const ExportOptions& options) {
  std::size_t updates = 0;
  for (const auto& request : store.Snapshot()) {
    if (request.status != RequestStatus::kOpen || !request.issue_number) {
      continue;
    }
    auto reply = WithRateLimitWaits<TrackerIssue>(
        options, [&] { return tracker.GetIssue(*request.issue_number); });
    if (!reply.value.ok()) {
      if (absl::IsUnavailable(reply.value.status())) {
        return absl::UnavailableError(internal::StrCat(
            "tracker unreachable: ", reply.value.status().message()));
      }
      // Unknown or unreadable issue: leave it open; the next sync retries.
      continue;
    }
    if (reply.value->state != IssueState::kClosed) continue;

    TransitionMetadata meta;
    auto closed_at = reply.value->closed_at.value_or(
        options.now ? options.now() : Now());
    // Clock skew between tracker and store must not break date ordering.
    if (request.date_opened && closed_at < *request.date_opened) {
      closed_at = *request.date_opened;
    }
    meta.date_closed = closed_at;
    auto closed = TransitionStatus(store, request.request_id,
                                   RequestStatus::kClosed, meta);
    if (!closed.ok()) return closed.status();
    ++updates;
  }
  return updates;
}

}  // namespace magnet
