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

#include "magnet/service.h"

#include <charconv>
#include <regex>

#include <nlohmann/json.hpp>

#include "absl/strings/str_cat.h"
#include "httplib.h"
#include "magnet/csv.h"
#include "magnet/json_codec.h"
#include "magnet/store.h"
#include "internal/strings.h"

namespace magnet {
namespace {

using nlohmann::json;

constexpr std::size_t kDefaultPageLimit = 50;
constexpr std::size_t kMaxPageLimit = 1000;

ApiResponse Json(int status, const json& body) {
  return {status, "application/json", body.dump()};
}

ApiResponse Error(int status, std::string_view code, std::string_view message) {
  return Json(status, {{"error", {{"code", code}, {"message", message}}}});
}

std::string_view ErrorCode(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kNotFound:
      return "unknown_group";
    case absl::StatusCode::kFailedPrecondition:
      return "no_op_decision";
    case absl::StatusCode::kInvalidArgument:
      return "invalid_decision";
    default:
      return "internal";
  }
}

std::optional<std::size_t> QueryNumber(const ApiRequest& request,
                                       const std::string& key,
                                       std::size_t fallback) {
  auto it = request.query.find(key);
  if (it == request.query.end()) return fallback;
  std::size_t value = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

json TaskJson(const Task& task) {
  json progress = {{"done_units", task.progress.done_units},
                   {"total_units", task.progress.total_units
                                       ? json(*task.progress.total_units)
                                       : json(nullptr)}};
  return {{"task_id", task.task_id},
          {"kind", ToString(task.kind)},
          {"state", ToString(task.state)},
          {"progress", std::move(progress)},
          {"result_ref", task.result_ref ? json(*task.result_ref) : json(nullptr)},
          {"error", task.error ? json(*task.error) : json(nullptr)}};
}

}  // namespace

std::string_view ToString(TaskKind kind) {
  switch (kind) {
    case TaskKind::kHarvest:
      return "harvest";
    case TaskKind::kExport:
      return "export";
    case TaskKind::kSync:
      return "sync";
  }
  return "harvest";
}

std::string_view ToString(TaskState state) {
  switch (state) {
    case TaskState::kQueued:
      return "queued";
    case TaskState::kRunning:
      return "running";
    case TaskState::kDone:
      return "done";
    case TaskState::kFailed:
      return "failed";
  }
  return "queued";
}

struct Service::TaskRecord {
  Task task;  // guarded by Service::mu_
  HarvestQuery query;
  std::vector<AffiliationGroup> groups;  // immutable once task is done
  json result;
};

struct Service::HttpServer {
  httplib::Server server;
  std::thread thread;
};

Service::Service(ServiceConfig config, std::shared_ptr<const MatchIndex> index,
                 CorrectionStore& store, std::shared_ptr<IssueTracker> tracker)
    : config_(std::move(config)),
      index_(std::move(index)),
      store_(store),
      tracker_(std::move(tracker)) {
  const auto harvesters = std::max<std::size_t>(1, config_.max_concurrent_harvests);
  for (std::size_t i = 0; i < harvesters; ++i) {
    workers_.emplace_back([this] { HarvestWorker(); });
  }
  workers_.emplace_back([this] { JobWorker(); });
}

Service::~Service() {
  Stop();
  {
    std::lock_guard<std::mutex> lock(mu_);
    stopping_ = true;
  }
  work_cv_.notify_all();
  for (auto& w : workers_) w.join();
}

std::shared_ptr<Service::TaskRecord> Service::NewTask(TaskKind kind) {
  auto record = std::make_shared<TaskRecord>();
  record->task.task_id = internal::StrCat("task-", next_task_++);
  record->task.kind = kind;
  record->task.state = TaskState::kQueued;
  tasks_.emplace(record->task.task_id, record);
  return record;
}

std::shared_ptr<Service::TaskRecord> Service::FindTask(
    const std::string& task_id) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = tasks_.find(task_id);
  return it == tasks_.end() ? nullptr : it->second;
}

std::optional<Task> Service::GetTask(const std::string& task_id) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = tasks_.find(task_id);
  if (it == tasks_.end()) return std::nullopt;
  return it->second->task;
}

void Service::HarvestWorker() {
  while (true) {
    std::shared_ptr<TaskRecord> task;
    {
      std::unique_lock<std::mutex> lock(mu_);
      work_cv_.wait(lock, [this] { return stopping_ || !harvest_queue_.empty(); });
      if (stopping_) return;
      task = harvest_queue_.front();
      harvest_queue_.pop_front();
      task->task.state = TaskState::kRunning;
    }
    RunHarvest(task);
  }
}

void Service::JobWorker() {
  while (true) {
    std::shared_ptr<TaskRecord> task;
    {
      std::unique_lock<std::mutex> lock(mu_);
      work_cv_.wait(lock, [this] { return stopping_ || !job_queue_.empty(); });
      if (stopping_) return;
      task = job_queue_.front();
      job_queue_.pop_front();
      task->task.state = TaskState::kRunning;
    }
    RunJob(task);
  }
}

void Service::RunHarvest(const std::shared_ptr<TaskRecord>& task) {
  HarvestObserver observer;
  observer.on_progress = [this, task](const HarvestProgress& p) {
    std::lock_guard<std::mutex> lock(mu_);
    task->task.progress.done_units = p.pages_fetched;
    task->task.progress.total_units =
        p.total_count == 0 ? 1 : (p.total_count + kWorksPerPage - 1) / kWorksPerPage;
  };
  auto harvest = FetchAllWorks(config_.harvest, task->query, observer);
  if (!harvest.ok()) {
    std::lock_guard<std::mutex> lock(mu_);
    task->task.state = TaskState::kFailed;
    task->task.error = std::string(harvest.status().message());
    return;
  }
  const auto works = DeduplicateWorks(std::move(harvest->works));
  auto groups = GroupWorks(works);
  if (index_) {
    for (auto& group : groups) group = SuggestMatches(std::move(group), *index_);
  }
  std::lock_guard<std::mutex> lock(mu_);
  task->groups = std::move(groups);
  task->result = {{"works", works.size()}, {"groups", task->groups.size()}};
  task->task.result_ref = internal::StrCat("/api/tasks/", task->task.task_id, "/groups");
  task->task.state = TaskState::kDone;
}

void Service::RunJob(const std::shared_ptr<TaskRecord>& task) {
  absl::Status status;
  json result;
  if (task->task.kind == TaskKind::kExport) {
    auto report = ExportIssues(store_, *tracker_, config_.export_options);
    if (report.ok()) {
      result = ToJson(*report);
    } else {
      status = report.status();
    }
  } else {
    auto updates = SyncStatuses(store_, *tracker_, config_.export_options);
    if (updates.ok()) {
      result = {{"updates", *updates}};
    } else {
      status = updates.status();
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  task->task.progress = {1, 1};
  if (status.ok()) {
    task->result = std::move(result);
    task->task.result_ref = internal::StrCat("/api/tasks/", task->task.task_id);
    task->task.state = TaskState::kDone;
  } else {
    task->task.error = std::string(status.message());
    task->task.state = TaskState::kFailed;
  }
}

ApiResponse Service::Handle(const ApiRequest& request) {
  static const std::regex kTask(R"(^/api/tasks/([A-Za-z0-9_-]+)$)");
  static const std::regex kGroups(R"(^/api/tasks/([A-Za-z0-9_-]+)/groups$)");
  static const std::regex kDecisions(R"(^/api/tasks/([A-Za-z0-9_-]+)/decisions$)");
  std::smatch m;
  const auto& path = request.path;
  const auto& method = request.method;

  if (path == "/api/tasks" && method == "POST") return CreateHarvestTask(request);
  if (std::regex_match(path, m, kTask) && method == "GET") {
    return GetTaskResponse(m[1]);
  }
  if (std::regex_match(path, m, kGroups) && method == "GET") {
    return GetGroups(m[1], request);
  }
  if (std::regex_match(path, m, kDecisions) && method == "POST") {
    return PostDecisions(m[1], request);
  }
  if (path == "/api/export" && method == "POST") return PostExport(request);
  if (path == "/api/sync" && method == "POST") return PostSync();
  if (path == "/api/stats" && method == "GET") return GetStats();
  return Error(404, "not_found",
               internal::StrCat("no route for ", method, " ", path));
}

ApiResponse Service::CreateHarvestTask(const ApiRequest& request) {
  const json body = json::parse(request.body, nullptr, false);
  if (body.is_discarded()) return Error(400, "invalid_query", "body is not JSON");
  auto query = HarvestQueryFromJson(body);
  if (!query.ok()) return Error(400, "invalid_query", internal::Message(query.status()));
  if (auto valid = ValidateQuery(*query); !valid.ok()) {
    return Error(400, "invalid_query", internal::Message(valid));
  }

  std::string id;
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (harvest_queue_.size() >= config_.max_queued_harvests) {
      return Error(429, "queue_full", "too many queued harvest tasks");
    }
    auto task = NewTask(TaskKind::kHarvest);
    task->query = *std::move(query);
    harvest_queue_.push_back(task);
    id = task->task.task_id;
  }
  work_cv_.notify_all();
  return Json(202, {{"task_id", id}});
}

ApiResponse Service::GetTaskResponse(const std::string& task_id) {
  auto record = FindTask(task_id);
  if (!record) return Error(404, "unknown_task", task_id);
  std::lock_guard<std::mutex> lock(mu_);
  auto j = TaskJson(record->task);
  if (record->task.state == TaskState::kDone) j["result"] = record->result;
  return Json(200, j);
}

ApiResponse Service::GetGroups(const std::string& task_id,
                               const ApiRequest& request) {
  auto record = FindTask(task_id);
  if (!record) return Error(404, "unknown_task", task_id);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (record->task.state != TaskState::kDone) {
      return Error(409, "task_not_finished",
                   internal::StrCat("task ", task_id, " is ",
                                ToString(record->task.state)));
    }
  }
  auto offset = QueryNumber(request, "offset", 0);
  auto limit = QueryNumber(request, "limit", kDefaultPageLimit);
  if (!offset || !limit || *limit > kMaxPageLimit) {
    return Error(400, "invalid_page", "offset and limit must be integers, limit <= 1000");
  }
  const auto& groups = record->groups;
  json page = json::array();
  for (std::size_t i = *offset; i < groups.size() && i < *offset + *limit; ++i) {
    page.push_back(ToJson(groups[i]));
  }
  return Json(200, {{"task_id", task_id},
                    {"offset", *offset},
                    {"limit", *limit},
                    {"total", groups.size()},
                    {"groups", std::move(page)}});
}

ApiResponse Service::PostDecisions(const std::string& task_id,
                                   const ApiRequest& request) {
  auto record = FindTask(task_id);
  if (!record) return Error(404, "unknown_task", task_id);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (record->task.state != TaskState::kDone) {
      return Error(409, "task_not_finished", task_id);
    }
  }
  const json body = json::parse(request.body, nullptr, false);
  if (body.is_discarded() || !body.is_object() || !body.contains("decisions") ||
      !body["decisions"].is_array()) {
    return Error(400, "invalid_body", "expected {\"decisions\": [...]}");
  }

  json results = json::array();
  for (const auto& entry : body["decisions"]) {
    auto decision = CurationDecisionFromJson(entry);
    if (!decision.ok()) {
      results.push_back(
          {{"group_id", entry.is_object() ? entry.value("group_id", "") : ""},
           {"error",
            {{"code", "invalid_decision"},
             {"message", internal::Message(decision.status())}}}});
      continue;
    }
    const auto& groups = record->groups;
    auto group = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
      return g.group_id == decision->group_id;
    });
    if (group == groups.end()) {
      results.push_back({{"group_id", decision->group_id},
                         {"error",
                          {{"code", "unknown_group"},
                           {"message", internal::StrCat("unknown group: ",
                                                    decision->group_id)}}}});
      continue;
    }
    auto applied = ApplyDecision(store_, *group, *decision);
    if (!applied.ok()) {
      results.push_back({{"group_id", decision->group_id},
                         {"error",
                          {{"code", ErrorCode(applied.status())},
                           {"message", internal::Message(applied.status())}}}});
      continue;
    }
    results.push_back(
        {{"group_id", decision->group_id}, {"request_id", applied->request_id}});
  }
  return Json(200, {{"results", std::move(results)}});
}

ApiResponse Service::PostExport(const ApiRequest& request) {
  std::string format = "issues";
  if (!request.body.empty()) {
    const json body = json::parse(request.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) {
      return Error(400, "invalid_body", "body is not a JSON object");
    }
    format = body.value("format", "issues");
  }
  if (format == "csv") {
    const auto requests = store_.Snapshot();
    return {200, "text/csv; charset=utf-8", ExportCsv(requests)};
  }
  if (format != "issues") {
    return Error(400, "invalid_format", internal::StrCat("unknown format: ", format));
  }
  if (!tracker_) return Error(503, "no_tracker", "issue tracker not configured");
  std::string id;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto task = NewTask(TaskKind::kExport);
    job_queue_.push_back(task);
    id = task->task.task_id;
  }
  work_cv_.notify_all();
  return Json(202, {{"task_id", id}});
}

ApiResponse Service::PostSync() {
  if (!tracker_) return Error(503, "no_tracker", "issue tracker not configured");
  std::string id;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto task = NewTask(TaskKind::kSync);
    job_queue_.push_back(task);
    id = task->task.task_id;
  }
  work_cv_.notify_all();
  return Json(202, {{"task_id", id}});
}

ApiResponse Service::GetStats() { return Json(200, ToJson(ComputeStats(store_))); }

namespace {

void Bridge(Service& service, const httplib::Request& req,
            httplib::Response& res) {
  ApiRequest api{req.method, req.path, {}, req.body};
  for (const auto& [k, v] : req.params) api.query.emplace(k, v);
  auto response = service.Handle(api);
  res.status = response.status;
  res.set_header(std::string(kSchemaVersionHeader), std::string(kSchemaVersion));
  res.set_content(response.body, response.content_type);
}

void InstallRoutes(Service& service, httplib::Server& server) {
  auto handler = [&service](const httplib::Request& req, httplib::Response& res) {
    Bridge(service, req, res);
  };
  server.Get(".*", handler);
  server.Post(".*", handler);
  server.Put(".*", handler);
  server.Delete(".*", handler);
  server.Patch(".*", handler);
}

}  // namespace

absl::Status Service::Listen(const std::string& host, int port) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (!http_) http_ = std::make_unique<HttpServer>();
  }
  InstallRoutes(*this, http_->server);
  if (!http_->server.listen(host, port)) {
    return absl::UnavailableError(
        internal::StrCat("cannot listen on ", host, ":", port));
  }
  return absl::OkStatus();
}

absl::StatusOr<int> Service::StartBackground(const std::string& host) {
  http_ = std::make_unique<HttpServer>();
  InstallRoutes(*this, http_->server);
  const int port = http_->server.bind_to_any_port(host);
  if (port < 0) return absl::UnavailableError("cannot bind a port");
  http_->thread = std::thread([this] { http_->server.listen_after_bind(); });
  http_->server.wait_until_ready();
  return port;
}

void Service::Stop() {
  if (!http_) return;
  http_->server.stop();
  if (http_->thread.joinable()) http_->thread.join();
}

}  // namespace magnet
