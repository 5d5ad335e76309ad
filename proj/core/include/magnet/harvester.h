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

#ifndef MAGNET_HARVESTER_H_
#define MAGNET_HARVESTER_H_

#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "magnet/works.h"

namespace magnet {

inline constexpr int kWorksPerPage = 100;
inline constexpr long long kDefaultHarvestCap = 100'000;

/// Spaces request start times at least 1/rate apart. One limiter is meant to
/// be shared by every query hitting the same endpoint.
class RateLimiter {
 public:
  explicit RateLimiter(double max_requests_per_second);

  /// Blocks until the caller may issue its next request.
  void Acquire();

  /// Process-wide limiter at 10 requests per second.
  static std::shared_ptr<RateLimiter> Default();

 private:
  std::mutex mu_;
  std::chrono::steady_clock::duration interval_;
  std::chrono::steady_clock::time_point next_slot_;
};

/// Exponential backoff applied to 429, 5xx and transport failures.
struct BackoffPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds initial_delay{1000};
  double multiplier = 2.0;

  /// Delay before attempt `attempt + 1`, for attempt >= 1.
  std::chrono::milliseconds DelayAfter(int attempt) const;
};

struct HarvestConfig {
  std::string endpoint;  // base URL; requests go to {endpoint}/works
  std::optional<std::string> mailto;
  long long harvest_cap = kDefaultHarvestCap;
  BackoffPolicy backoff;
  std::shared_ptr<RateLimiter> rate_limiter = RateLimiter::Default();
  std::chrono::seconds timeout{30};
  // Injectable for tests; defaults to std::this_thread::sleep_for.
  std::function<void(std::chrono::milliseconds)> sleep;
};

struct HarvestProgress {
  int pages_fetched = 0;
  long long total_count = 0;  // meta.count of the first page
  std::size_t works_received = 0;
};

struct HarvestObserver {
  std::function<void(const HarvestProgress&)> on_progress;
  // Receives each page's new works as soon as the page is decoded.
  std::function<void(std::span<const Work>)> on_works;
};

struct HarvestResult {
  std::vector<Work> works;  // unique work_ids, in page order
  long long total_count = 0;
  int pages = 0;
  int requests = 0;
  int retries = 0;
};

/// Walks the cursor-paginated works API to exhaustion for `query`.
///
/// Errors: InvalidArgument for an invalid query, Unavailable once the retry
/// budget is spent, DataLoss for a malformed page, ResourceExhausted when
/// meta.count exceeds the harvest cap, FailedPrecondition for other HTTP
/// errors.
absl::StatusOr<HarvestResult> FetchAllWorks(const HarvestConfig& config,
                                            const HarvestQuery& query,
                                            const HarvestObserver& observer = {});

}  // namespace magnet

#endif  // MAGNET_HARVESTER_H_
