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

#ifndef MAGNET_STORE_H_
#define MAGNET_STORE_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "magnet/curation.h"

namespace magnet {

// On-disk layout of a store directory:
//
//   corrections.snapshot   header line, then one request object per line,
//                          ordered by request_id; replaced atomically.
//   corrections.log        header line, then one {"op":"put","request":...}
//                          object per line, appended and flushed per write.
//
// Both header lines are {"format":"magnet-corrections","version":1}. Opening
// loads the snapshot and replays the log; a torn final log line (no trailing
// newline) is discarded. The log is folded into a new snapshot every
// `compact_every` writes and on Compact().
inline constexpr int kStoreFormatVersion = 1;
inline constexpr std::string_view kSnapshotFile = "corrections.snapshot";
inline constexpr std::string_view kLogFile = "corrections.log";

struct StoreOptions {
  std::size_t compact_every = 256;
};

/// Correction requests keyed by request_id, with one writer at a time and
/// snapshot reads. A store opened without a directory is memory-only.
class CorrectionStore {
 public:
  /// Mutation handle passed to Write(); valid only inside the callback.
  class Writer {
   public:
    const CorrectionRequest* Find(RequestId id) const;
    /// Most recent request for (raw_string, contact_domain), if any.
    const CorrectionRequest* FindLatest(std::string_view raw_string,
                                        std::string_view contact_domain) const;
    RequestId NextId() const;
    /// Inserts or replaces by request_id. Durable once it returns Ok.
    absl::Status Put(CorrectionRequest request);

   private:
    friend class CorrectionStore;
    explicit Writer(CorrectionStore& store) : store_(store) {}
    CorrectionStore& store_;
  };

  static std::unique_ptr<CorrectionStore> InMemory();
  /// Creates the directory if needed and takes an exclusive lock on it.
  /// DataLoss on a corrupt file, FailedPrecondition on an unsupported format
  /// version or when another process holds the store.
  static absl::StatusOr<std::unique_ptr<CorrectionStore>> Open(
      const std::filesystem::path& directory, StoreOptions options = {});

  ~CorrectionStore();
  CorrectionStore(const CorrectionStore&) = delete;
  CorrectionStore& operator=(const CorrectionStore&) = delete;

  /// Runs `fn` with exclusive write access.
  absl::Status Write(const std::function<absl::Status(Writer&)>& fn);

  /// Consistent copy of every request, ordered by request_id.
  std::vector<CorrectionRequest> Snapshot() const;
  std::optional<CorrectionRequest> Get(RequestId id) const;
  std::size_t size() const;

  /// Rewrites the snapshot from memory and truncates the log.
  absl::Status Compact();

  /// Directory backing the store; empty for memory-only stores.
  const std::filesystem::path& directory() const { return directory_; }

 private:
  CorrectionStore() = default;
  absl::Status Load();
  absl::Status AppendLog(const CorrectionRequest& request);
  absl::Status CompactLocked();
  void Index(const CorrectionRequest& request);

  std::filesystem::path directory_;
  StoreOptions options_;
  mutable std::shared_mutex mu_;
  std::map<RequestId, CorrectionRequest> requests_;
  // (raw_string, contact_domain) -> highest request_id.
  std::map<std::pair<std::string, std::string>, RequestId, std::less<>> latest_;
  int log_fd_ = -1;
  int lock_fd_ = -1;  // flock on <directory>/LOCK
  std::size_t log_entries_ = 0;
};

}  // namespace magnet

#endif  // MAGNET_STORE_H_
