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


#include "support/tracker_double.h"

#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "httplib.h"

namespace magnet::testing {

using nlohmann::json;

TrackerReply<int> FakeTracker::CreateIssue(const RenderedIssue& issue) {
  std::lock_guard<std::mutex> lock(mu_);
  ++create_calls_;
  if (unreachable_) return {absl::UnavailableError("tracker down"), std::nullopt};
  if (limited_left_ > 0) {
    --limited_left_;
    ++rate_limited_;
    return {absl::ResourceExhaustedError("rate limited"), retry_after_};
  }
  if (failing_titles_.contains(issue.title)) {
    return {absl::FailedPreconditionError("HTTP 422"), std::nullopt};
  }
  if (auto it = by_title_.find(issue.title); it != by_title_.end()) {
    ++duplicates_;
    return {it->second, std::nullopt};
  }
  const int number = static_cast<int>(issues_.size()) + 1;
  issues_[number] = {number, issue.title, issue.body, false, std::nullopt};
  by_title_[issue.title] = number;
  if (every_ > 0 && ++since_limit_ >= every_) {
    since_limit_ = 0;
    limited_left_ = burst_;
  }
  return {number, std::nullopt};
}

TrackerReply<TrackerIssue> FakeTracker::GetIssue(int number) {
  std::lock_guard<std::mutex> lock(mu_);
  ++get_calls_;
  if (unreachable_) return {absl::UnavailableError("tracker down"), std::nullopt};
  auto it = issues_.find(number);
  if (it == issues_.end()) return {absl::NotFoundError("no issue"), std::nullopt};
  TrackerIssue out;
  out.number = number;
  out.state = it->second.closed ? IssueState::kClosed : IssueState::kOpen;
  out.closed_at = it->second.closed_at;
  return {out, std::nullopt};
}

void FakeTracker::RateLimitEvery(int every, int burst,
                                 std::chrono::seconds retry_after) {
  std::lock_guard<std::mutex> lock(mu_);
  every_ = every;
  burst_ = burst;
  retry_after_ = retry_after;
}

void FakeTracker::FailTitles(std::set<std::string> titles) {
  std::lock_guard<std::mutex> lock(mu_);
  failing_titles_ = std::move(titles);
}

void FakeTracker::SetUnreachable(bool unreachable) {
  std::lock_guard<std::mutex> lock(mu_);
  unreachable_ = unreachable;
}

void FakeTracker::Close(int number, Timestamp at) {
  std::lock_guard<std::mutex> lock(mu_);
  auto& issue = issues_.at(number);
  issue.closed = true;
  issue.closed_at = at;
}

std::vector<FakeTracker::Issue> FakeTracker::issues() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<Issue> out;
  for (const auto& [n, issue] : issues_) out.push_back(issue);
  return out;
}

int FakeTracker::create_calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return create_calls_;
}

int FakeTracker::get_calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return get_calls_;
}

int FakeTracker::rate_limited_calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return rate_limited_;
}

int FakeTracker::duplicate_titles_absorbed() const {
  std::lock_guard<std::mutex> lock(mu_);
  return duplicates_;
}

struct TrackerServer::Impl {
  httplib::Server server;
  std::thread thread;
};

namespace {

int HttpStatusFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kNotFound:
      return 404;
    case absl::StatusCode::kUnavailable:
      return 503;
    default:
      return 422;
  }
}

}  // namespace

TrackerServer::TrackerServer(std::shared_ptr<FakeTracker> tracker)
    : tracker_(std::move(tracker)), impl_(std::make_unique<Impl>()) {
  impl_->server.Post("/issues", [this](const httplib::Request& req,
                                       httplib::Response& res) {
    const json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.contains("title") || !body.contains("body")) {
      res.status = 400;
      return;
    }
    auto reply = tracker_->CreateIssue(
        {body["title"].get<std::string>(), body["body"].get<std::string>()});
    if (reply.retry_after) {
      res.status = 429;
      res.set_header("Retry-After", std::to_string(reply.retry_after->count()));
      return;
    }
    if (!reply.value.ok()) {
      res.status = HttpStatusFor(reply.value.status());
      return;
    }
    res.status = 201;
    res.set_content(json{{"number", *reply.value}}.dump(), "application/json");
  });
  impl_->server.Get(R"(/issues/(\d+))", [this](const httplib::Request& req,
                                              httplib::Response& res) {
    auto reply = tracker_->GetIssue(std::stoi(req.matches[1]));
    if (!reply.value.ok()) {
      res.status = HttpStatusFor(reply.value.status());
      return;
    }
    json body = {{"number", reply.value->number},
                 {"state", reply.value->state == IssueState::kClosed ? "closed" : "open"},
                 {"closed_at", reply.value->closed_at
                                   ? json(FormatTimestamp(*reply.value->closed_at))
                                   : json(nullptr)}};
    res.set_content(body.dump(), "application/json");
  });
  const int port = impl_->server.bind_to_any_port("127.0.0.1");
  if (port < 0) throw std::runtime_error("tracker server: bind failed");
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  url_ = "http://127.0.0.1:" + std::to_string(port);
}

TrackerServer::~TrackerServer() {
  impl_->server.stop();
  impl_->thread.join();
}

}  // namespace magnet::testing
