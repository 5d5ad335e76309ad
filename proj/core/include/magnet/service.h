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

#ifndef MAGNET_SERVICE_H_
#define MAGNET_SERVICE_H_

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "absl/status/status.h"
#include "magnet/curation.h"
#include "magnet/exporter.h"
#include "magnet/harvester.h"
#include "magnet/matcher.h"

namespace magnet {

class CorrectionStore;

inline constexpr std::string_view kSchemaVersionHeader = "X-Magnet-Schema-Version";
inline constexpr std::string_view kSchemaVersion = "1";

enum class TaskKind { kHarvest, kExport, kSync };
enum class TaskState { kQueued, kRunning, kDone, kFailed };

std::string_view ToString(TaskKind kind);
std::string_view ToString(TaskState state);

struct TaskProgress {
  long long done_units = 0;
  std::optional<long long> total_units;
};

struct Task {
  std::string task_id;
  TaskKind kind = TaskKind::kHarvest;
  TaskState state = TaskState::kQueued;
  TaskProgress progress;
  std::optional<std::string> result_ref;
  std::optional<std::string> error;
};

struct ServiceConfig {
  // Works API settings; `endpoint` must be set for harvest tasks.
  HarvestConfig harvest;
  std::size_t max_concurrent_harvests = 2;
  // Harvest tasks allowed to wait for a slot before POST /api/tasks is
  // answered with 429.
  std::size_t max_queued_harvests = 16;
  ExportOptions export_options;
};

/// Transport-independent request and response.
struct ApiRequest {
  std::string method;
  std::string path;
  std::multimap<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// Asynchronous harvest/export/sync tasks plus the curation endpoints used by
/// the web application:
///
///   POST /api/tasks                    HarvestQuery -> 202 {"task_id"}
///   GET  /api/tasks/{id}               Task
///   GET  /api/tasks/{id}/groups        ?offset&limit -> page of groups
///   POST /api/tasks/{id}/decisions     {"decisions":[...]} -> per-entry results
///   POST /api/export                   {"format":"issues"} -> 202 task,
///                                      {"format":"csv"} -> 200 text/csv
///   POST /api/sync                     202 task
///   GET  /api/stats                    StatsSummary
///
/// Harvest tasks run on a bounded worker pool; export and sync tasks run one
/// at a time on a dedicated worker so they never overlap.
class Service {
 public:
  /// `index` may be null (groups then carry no suggestions) and `tracker`
  /// may be null (export-to-issues and sync are then refused with 503).
  Service(ServiceConfig config, std::shared_ptr<const MatchIndex> index,
          CorrectionStore& store, std::shared_ptr<IssueTracker> tracker);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  ApiResponse Handle(const ApiRequest& request);

  std::optional<Task> GetTask(const std::string& task_id) const;

  /// Serves Handle() over HTTP until Stop(). Blocks.
  absl::Status Listen(const std::string& host, int port);
  /// Binds an ephemeral port and serves on a background thread; returns the
  /// port.
  absl::StatusOr<int> StartBackground(const std::string& host = "127.0.0.1");
  void Stop();

 private:
  struct TaskRecord;

  ApiResponse CreateHarvestTask(const ApiRequest& request);
  ApiResponse GetTaskResponse(const std::string& task_id);
  ApiResponse GetGroups(const std::string& task_id, const ApiRequest& request);
  ApiResponse PostDecisions(const std::string& task_id,
                            const ApiRequest& request);
  ApiResponse PostExport(const ApiRequest& request);
  ApiResponse PostSync();
  ApiResponse GetStats();

  std::shared_ptr<TaskRecord> NewTask(TaskKind kind);
  std::shared_ptr<TaskRecord> FindTask(const std::string& task_id) const;
  void RunHarvest(const std::shared_ptr<TaskRecord>& task);
  void RunJob(const std::shared_ptr<TaskRecord>& task);
  void HarvestWorker();
  void JobWorker();

  ServiceConfig config_;
  std::shared_ptr<const MatchIndex> index_;
  CorrectionStore& store_;
  std::shared_ptr<IssueTracker> tracker_;

  mutable std::mutex mu_;
  std::condition_variable work_cv_;
  bool stopping_ = false;
  std::size_t next_task_ = 1;
  std::map<std::string, std::shared_ptr<TaskRecord>> tasks_;
  std::deque<std::shared_ptr<TaskRecord>> harvest_queue_;
  std::deque<std::shared_ptr<TaskRecord>> job_queue_;
  std::vector<std::thread> workers_;

  struct HttpServer;
  std::unique_ptr<HttpServer> http_;
};

}  // namespace magnet

#endif  // MAGNET_SERVICE_H_
