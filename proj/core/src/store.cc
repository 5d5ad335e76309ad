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

#include "magnet/store.h"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>

#include <nlohmann/json.hpp>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "internal/file_util.h"
#include "magnet/json_codec.h"
#include "internal/strings.h"

namespace magnet {
namespace {

using nlohmann::json;

std::string HeaderLine() {
  return json{{"format", "magnet-corrections"}, {"version", kStoreFormatVersion}}
             .dump() +
         "\n";
}

absl::Status CheckHeader(std::string_view line, const std::string& file) {
  const json header = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (header.is_discarded() || !header.is_object() ||
      header.value("format", "") != "magnet-corrections") {
    return absl::DataLossError(internal::StrCat(file, ": missing store header"));
  }
  if (header.value("version", 0) != kStoreFormatVersion) {
    return absl::FailedPreconditionError(
        internal::StrCat(file, ": unsupported store version ",
                     header.value("version", 0)));
  }
  return absl::OkStatus();
}

}  // namespace

const CorrectionRequest* CorrectionStore::Writer::Find(RequestId id) const {
  auto it = store_.requests_.find(id);
  return it == store_.requests_.end() ? nullptr : &it->second;
}

const CorrectionRequest* CorrectionStore::Writer::FindLatest(
    std::string_view raw_string, std::string_view contact_domain) const {
  auto it = store_.latest_.find(
      std::make_pair(std::string(raw_string), std::string(contact_domain)));
  return it == store_.latest_.end() ? nullptr : Find(it->second);
}

RequestId CorrectionStore::Writer::NextId() const {
  return store_.requests_.empty() ? 1 : store_.requests_.rbegin()->first + 1;
}

absl::Status CorrectionStore::Writer::Put(CorrectionRequest request) {
  if (request.request_id == 0) {
    return absl::InvalidArgumentError("request_id 0 is reserved");
  }
  if (auto status = store_.AppendLog(request); !status.ok()) return status;
  store_.Index(request);
  const auto id = request.request_id;
  store_.requests_.insert_or_assign(id, std::move(request));
  if (store_.log_fd_ >= 0 && store_.options_.compact_every > 0 &&
      store_.log_entries_ >= store_.options_.compact_every) {
    return store_.CompactLocked();
  }
  return absl::OkStatus();
}

std::unique_ptr<CorrectionStore> CorrectionStore::InMemory() {
  return std::unique_ptr<CorrectionStore>(new CorrectionStore());
}

absl::StatusOr<std::unique_ptr<CorrectionStore>> CorrectionStore::Open(
    const std::filesystem::path& directory, StoreOptions options) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) {
    return absl::InternalError(
        internal::StrCat("cannot create ", directory.string(), ": ", ec.message()));
  }
  std::unique_ptr<CorrectionStore> store(new CorrectionStore());
  store->directory_ = directory;
  store->options_ = options;
  store->lock_fd_ =
      ::open((directory / "LOCK").c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (store->lock_fd_ < 0 || ::flock(store->lock_fd_, LOCK_EX | LOCK_NB) != 0) {
    return absl::FailedPreconditionError(internal::StrCat(
        "store ", directory.string(), " is in use by another process"));
  }
  if (auto status = store->Load(); !status.ok()) return status;
  return store;
}

CorrectionStore::~CorrectionStore() {
  if (log_fd_ >= 0) ::close(log_fd_);
  if (lock_fd_ >= 0) ::close(lock_fd_);
}

void CorrectionStore::Index(const CorrectionRequest& request) {
  auto& latest =
      latest_[std::make_pair(request.raw_string, request.contact_domain)];
  latest = std::max(latest, request.request_id);
}

absl::Status CorrectionStore::Load() {
  const auto snapshot_path = directory_ / kSnapshotFile;
  const auto log_path = directory_ / kLogFile;

  auto decode = [this](std::string_view line,
                       const std::string& where) -> absl::Status {
    const json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) {
      return absl::DataLossError(internal::StrCat(where, ": invalid JSON"));
    }
    const json* body = &j;
    if (j.contains("op")) {
      if (j["op"] != "put" || !j.contains("request")) {
        return absl::DataLossError(internal::StrCat(where, ": unknown log op"));
      }
      body = &j["request"];
    }
    auto request = CorrectionRequestFromJson(*body);
    if (!request.ok()) {
      return absl::DataLossError(
          internal::StrCat(where, ": ", request.status().message()));
    }
    Index(*request);
    const auto id = request->request_id;
    requests_.insert_or_assign(id, *std::move(request));
    return absl::OkStatus();
  };

  auto load_file = [&](const std::filesystem::path& path,
                       bool tolerate_torn_tail) -> absl::StatusOr<std::size_t> {
    if (!std::filesystem::exists(path)) return 0;
    auto contents = internal::ReadFile(path);
    if (!contents.ok()) return contents.status();
    auto lines = internal::Split(*contents, '\n');
    const bool ends_with_newline =
        !contents->empty() && contents->back() == '\n';
    // The split leaves one trailing element: empty after a final newline,
    // otherwise an unterminated (torn) line.
    const std::string tail = lines.back();
    lines.pop_back();
    if (lines.empty()) {
      if (tail.empty()) return 0;
      if (tolerate_torn_tail) return 0;
      return absl::DataLossError(internal::StrCat(path.string(), ": truncated"));
    }
    if (auto s = CheckHeader(lines.front(), path.string()); !s.ok()) return s;
    std::size_t entries = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      auto s = decode(lines[i], internal::StrCat(path.string(), ":", i + 1));
      if (!s.ok()) return s;
      ++entries;
    }
    if (!ends_with_newline && !tail.empty() && !tolerate_torn_tail) {
      return absl::DataLossError(
          internal::StrCat(path.string(), ": unterminated final line"));
    }
    return entries;
  };

  auto snapshot = load_file(snapshot_path, /*tolerate_torn_tail=*/false);
  if (!snapshot.ok()) return snapshot.status();
  auto replayed = load_file(log_path, /*tolerate_torn_tail=*/true);
  if (!replayed.ok()) return replayed.status();

  // Fold whatever the log held into a fresh snapshot so the new log starts
  // clean (this also drops a torn tail).
  return CompactLocked();
}

absl::Status CorrectionStore::AppendLog(const CorrectionRequest& request) {
  if (log_fd_ < 0) return absl::OkStatus();
  const auto line =
      json{{"op", "put"}, {"request", ToJson(request)}}.dump() + "\n";
  std::size_t written = 0;
  while (written < line.size()) {
    const auto n = ::write(log_fd_, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      return absl::InternalError(
          internal::StrCat("append to store log: ", std::strerror(errno)));
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fdatasync(log_fd_) != 0) {
    return absl::InternalError(
        internal::StrCat("sync store log: ", std::strerror(errno)));
  }
  ++log_entries_;
  return absl::OkStatus();
}

absl::Status CorrectionStore::CompactLocked() {
  if (directory_.empty()) return absl::OkStatus();
  std::string snapshot = HeaderLine();
  for (const auto& [id, request] : requests_) {
    snapshot += ToJson(request).dump();
    snapshot += '\n';
  }
  if (auto s = internal::AtomicWriteFile(directory_ / kSnapshotFile, snapshot);
      !s.ok()) {
    return s;
  }
  if (auto s = internal::AtomicWriteFile(directory_ / kLogFile, HeaderLine());
      !s.ok()) {
    return s;
  }
  if (log_fd_ >= 0) ::close(log_fd_);
  log_fd_ = ::open((directory_ / kLogFile).c_str(), O_WRONLY | O_APPEND | O_CLOEXEC);
  if (log_fd_ < 0) {
    return absl::InternalError(
        internal::StrCat("open store log: ", std::strerror(errno)));
  }
  log_entries_ = 0;
  return absl::OkStatus();
}

absl::Status CorrectionStore::Write(
    const std::function<absl::Status(Writer&)>& fn) {
  std::unique_lock lock(mu_);
  Writer writer(*this);
  return fn(writer);
}

std::vector<CorrectionRequest> CorrectionStore::Snapshot() const {
  std::shared_lock lock(mu_);
  std::vector<CorrectionRequest> out;
  out.reserve(requests_.size());
  for (const auto& [id, request] : requests_) out.push_back(request);
  return out;
}

std::optional<CorrectionRequest> CorrectionStore::Get(RequestId id) const {
  std::shared_lock lock(mu_);
  auto it = requests_.find(id);
  if (it == requests_.end()) return std::nullopt;
  return it->second;
}

std::size_t CorrectionStore::size() const {
  std::shared_lock lock(mu_);
  return requests_.size();
}

absl::Status CorrectionStore::Compact() {
  std::unique_lock lock(mu_);
  return CompactLocked();
}

}  // namespace magnet
