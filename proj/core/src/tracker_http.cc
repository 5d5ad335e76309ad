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

#include <charconv>

#include <nlohmann/json.hpp>

#include "absl/strings/str_cat.h"
#include "httplib.h"
#include "internal/url.h"
#include "magnet/exporter.h"
#include "internal/strings.h"

namespace magnet {
namespace {

using nlohmann::json;

std::optional<std::chrono::seconds> RateLimitDelay(
    const httplib::Result& response, std::chrono::seconds fallback) {
  const bool has_header = response->has_header("Retry-After");
  if (response->status != 429 && !(response->status == 403 && has_header)) {
    return std::nullopt;
  }
  if (!has_header) return fallback;
  const auto value = response->get_header_value("Retry-After");
  long long seconds = 0;
  auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), seconds);
  if (ec != std::errc() || seconds < 0) return fallback;
  return std::chrono::seconds(seconds);
}

template <typename T>
TrackerReply<T> Failure(absl::Status status) {
  return {std::move(status), std::nullopt};
}

}  // namespace

HttpIssueTracker::HttpIssueTracker(HttpTrackerOptions options)
    : options_(std::move(options)) {}

TrackerReply<int> HttpIssueTracker::CreateIssue(const RenderedIssue& issue) {
  auto base = internal::ParseBaseUrl(options_.base_url);
  if (!base.ok()) return Failure<int>(base.status());
  httplib::Client client(base->origin);
  client.set_connection_timeout(options_.timeout);
  client.set_read_timeout(options_.timeout);
  httplib::Headers headers = {{"Accept", "application/json"}};
  if (!options_.token.empty()) {
    headers.emplace("Authorization", internal::StrCat("Bearer ", options_.token));
  }
  const auto payload = json{{"title", issue.title}, {"body", issue.body}}.dump();
  auto response = client.Post(internal::StrCat(base->path_prefix, "/issues"),
                              headers, payload, "application/json");
  if (!response) {
    return Failure<int>(absl::UnavailableError(
        internal::StrCat("POST /issues: ", httplib::to_string(response.error()))));
  }
  if (auto delay = RateLimitDelay(response, options_.default_retry_after)) {
    return {absl::ResourceExhaustedError("tracker rate limit"), delay};
  }
  if (response->status < 200 || response->status >= 300) {
    return Failure<int>(absl::FailedPreconditionError(
        internal::StrCat("POST /issues returned HTTP ", response->status)));
  }
  const json body = json::parse(response->body, nullptr, false);
  if (body.is_discarded() || !body.contains("number") ||
      !body["number"].is_number_integer()) {
    return Failure<int>(
        absl::DataLossError("POST /issues response has no integer 'number'"));
  }
  return {body["number"].get<int>(), std::nullopt};
}

TrackerReply<TrackerIssue> HttpIssueTracker::GetIssue(int number) {
  auto base = internal::ParseBaseUrl(options_.base_url);
  if (!base.ok()) return Failure<TrackerIssue>(base.status());
  httplib::Client client(base->origin);
  client.set_connection_timeout(options_.timeout);
  client.set_read_timeout(options_.timeout);
  httplib::Headers headers = {{"Accept", "application/json"}};
  if (!options_.token.empty()) {
    headers.emplace("Authorization", internal::StrCat("Bearer ", options_.token));
  }
  const auto path = internal::StrCat(base->path_prefix, "/issues/", number);
  auto response = client.Get(path, headers);
  if (!response) {
    return Failure<TrackerIssue>(absl::UnavailableError(
        internal::StrCat("GET ", path, ": ", httplib::to_string(response.error()))));
  }
  if (auto delay = RateLimitDelay(response, options_.default_retry_after)) {
    return {absl::ResourceExhaustedError("tracker rate limit"), delay};
  }
  if (response->status == 404) {
    return Failure<TrackerIssue>(
        absl::NotFoundError(internal::StrCat("issue ", number, " not found")));
  }
  if (response->status != 200) {
    return Failure<TrackerIssue>(absl::FailedPreconditionError(
        internal::StrCat("GET ", path, " returned HTTP ", response->status)));
  }
  const json body = json::parse(response->body, nullptr, false);
  if (body.is_discarded() || !body.contains("state") ||
      !body["state"].is_string()) {
    return Failure<TrackerIssue>(
        absl::DataLossError("issue response has no 'state'"));
  }
  TrackerIssue issue;
  issue.number = number;
  const auto state = body["state"].get<std::string>();
  if (state == "closed") {
    issue.state = IssueState::kClosed;
  } else if (state != "open") {
    return Failure<TrackerIssue>(
        absl::DataLossError(internal::StrCat("unknown issue state: ", state)));
  }
  if (auto it = body.find("closed_at"); it != body.end() && it->is_string()) {
    issue.closed_at = ParseTimestamp(it->get<std::string>());
  }
  return {issue, std::nullopt};
}

}  // namespace magnet
