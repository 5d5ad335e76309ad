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

#include "magnet/harvester.h"

#include <cmath>
#include <thread>
#include <unordered_set>

#include "absl/strings/str_cat.h"
#include "httplib.h"
#include "internal/url.h"
#include "internal/strings.h"

namespace magnet {
namespace {

bool IsRetryable(int http_status) {
  return http_status == 429 || (http_status >= 500 && http_status < 600);
}

}  // namespace

RateLimiter::RateLimiter(double max_requests_per_second)
    : interval_(std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double>(1.0 / max_requests_per_second))),
      next_slot_(std::chrono::steady_clock::now()) {}

void RateLimiter::Acquire() {
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard<std::mutex> lock(mu_);
    slot = std::max(std::chrono::steady_clock::now(), next_slot_);
    next_slot_ = slot + interval_;
  }
  std::this_thread::sleep_until(slot);
}

std::shared_ptr<RateLimiter> RateLimiter::Default() {
  static auto limiter = std::make_shared<RateLimiter>(10.0);
  return limiter;
}

std::chrono::milliseconds BackoffPolicy::DelayAfter(int attempt) const {
  const double factor = std::pow(multiplier, attempt - 1);
  return std::chrono::milliseconds(static_cast<std::int64_t>(
      static_cast<double>(initial_delay.count()) * factor));
}

absl::StatusOr<HarvestResult> FetchAllWorks(const HarvestConfig& config,
                                            const HarvestQuery& query,
                                            const HarvestObserver& observer) {
  auto filter = BuildFilter(query);
  if (!filter.ok()) return filter.status();
  auto base = internal::ParseBaseUrl(config.endpoint);
  if (!base.ok()) return base.status();

  httplib::Client client(base->origin);
  client.set_connection_timeout(config.timeout);
  client.set_read_timeout(config.timeout);
  auto sleep = config.sleep ? config.sleep : [](std::chrono::milliseconds d) {
    std::this_thread::sleep_for(d);
  };

  HarvestResult result;
  std::unordered_set<std::string> seen;
  std::string cursor = "*";
  while (true) {
    auto path = internal::StrCat(base->path_prefix, "/works?filter=",
                             internal::QueryEscape(*filter), "&per-page=",
                             kWorksPerPage, "&cursor=",
                             internal::QueryEscape(cursor));
    if (config.mailto) {
      internal::StrAppend(&path, "&mailto=", internal::QueryEscape(*config.mailto));
    }

    std::string body;
    for (int attempt = 1;; ++attempt) {
      if (config.rate_limiter) config.rate_limiter->Acquire();
      ++result.requests;
      auto response = client.Get(path);
      std::string failure;
      if (!response) {
        failure = internal::StrCat("transport error: ",
                               httplib::to_string(response.error()));
      } else if (response->status == 200) {
        body = std::move(response->body);
        break;
      } else if (IsRetryable(response->status)) {
        failure = internal::StrCat("HTTP ", response->status);
      } else {
        return absl::FailedPreconditionError(internal::StrCat(
            "works API returned HTTP ", response->status, " for ", path));
      }
      if (attempt >= config.backoff.max_attempts) {
        return absl::UnavailableError(
            internal::StrCat("network error after ", attempt,
                         " attempts; last failure: ", failure));
      }
      ++result.retries;
      sleep(config.backoff.DelayAfter(attempt));
    }

    auto page = ParseWorksPage(body);
    if (!page.ok()) return page.status();
    if (result.pages == 0) {
      result.total_count = page->count;
      if (page->count > config.harvest_cap) {
        return absl::ResourceExhaustedError(
            internal::StrCat("harvest cap exceeded: meta.count ", page->count,
                         " > cap ", config.harvest_cap));
      }
    }
    ++result.pages;

    const auto first_new = result.works.size();
    for (auto& work : page->works) {
      if (seen.insert(work.work_id).second) {
        result.works.push_back(std::move(work));
      }
    }
    if (observer.on_works) {
      observer.on_works(std::span<const Work>(result.works).subspan(first_new));
    }
    if (observer.on_progress) {
      observer.on_progress(
          {result.pages, result.total_count, result.works.size()});
    }

    if (result.total_count == 0 || !page->next_cursor ||
        page->works.empty()) {
      break;
    }
    cursor = *page->next_cursor;
  }
  return result;
}

}  // namespace magnet
