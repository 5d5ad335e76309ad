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

#ifndef MAGNET_ROR_REGISTRY_H_
#define MAGNET_ROR_REGISTRY_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace magnet {

inline constexpr std::string_view kRorUrlPrefix = "https://ror.org/";

/// True iff `id` is a well-formed short ROR identifier: a leading '0', six
/// Crockford base32 characters (lowercase, no i/l/o/u) and two ISO 7064
/// MOD 97-10 check digits over the decoded value of the first seven
/// characters.
bool ValidateRorId(std::string_view id);

/// Check digits for the first seven characters of an identifier, or nullopt
/// when those characters are not a valid '0'-led base32 prefix.
std::optional<std::string> RorCheckDigits(std::string_view prefix7);

/// Strips an "https://ror.org/" (or "http://ror.org/", "ror.org/") prefix and
/// lowercases. Does not validate.
std::string CanonicalRorId(std::string_view id);

/// "https://ror.org/" + id.
std::string RorUrl(std::string_view id);

enum class RorStatus { kActive, kInactive, kWithdrawn };

std::string_view ToString(RorStatus status);
std::optional<RorStatus> ParseRorStatus(std::string_view s);

struct RorLabel {
  std::string language;  // ISO 639 code, may be empty
  std::string label;

  friend bool operator==(const RorLabel&, const RorLabel&) = default;
};

struct RorRecord {
  std::string ror_id;  // canonical 9-character short form
  std::string primary_name;
  std::vector<std::string> aliases;
  std::vector<std::string> acronyms;
  std::vector<RorLabel> labels;
  std::string country_code;  // ISO 3166-1 alpha-2, uppercase
  RorStatus status = RorStatus::kActive;
  // First address city when the dump carries one.
  std::optional<std::string> city;

  bool active() const { return status == RorStatus::kActive; }
  bool withdrawn() const { return status == RorStatus::kWithdrawn; }

  friend bool operator==(const RorRecord&, const RorRecord&) = default;
};

/// Immutable, validated view of a registry dump. Safe for concurrent reads.
class RegistryIndex {
 public:
  using RecordMap = std::map<std::string, RorRecord, std::less<>>;
  using FormMap = std::map<std::string, std::vector<std::string>, std::less<>>;
  using AcronymMap = std::map<std::string, std::set<std::string>, std::less<>>;

  /// Validates every record and derives the normalized name forms and the
  /// acronym map. Fails on the first invalid record (1-based ordinal in the
  /// message) or on a duplicated ror_id.
  static absl::StatusOr<RegistryIndex> Build(std::vector<RorRecord> records);

  const RecordMap& records() const { return records_; }
  /// Normalized, non-empty, duplicate-free forms in the order primary name,
  /// aliases, labels.
  const FormMap& name_forms() const { return name_forms_; }
  /// Normalized acronym -> ror_ids, over all records regardless of status.
  const AcronymMap& acronym_map() const { return acronym_map_; }
  std::size_t record_count() const { return records_.size(); }

 private:
  RecordMap records_;
  FormMap name_forms_;
  AcronymMap acronym_map_;
};

/// Reads a ROR data dump: either one JSON array of records or one record per
/// line. Field paths read: id, name, aliases[], acronyms[], labels[].label,
/// labels[].iso639, country.country_code, status, addresses[0].city
/// (optional).
absl::StatusOr<RegistryIndex> LoadRorDump(const std::filesystem::path& path);
absl::StatusOr<RegistryIndex> ParseRorDump(std::string_view contents);

/// Serializes records back to the one-record-per-line dump shape.
std::string WriteRorDump(const RegistryIndex& registry);

/// The record for `ror_id`. InvalidArgument when the id fails validation,
/// NotFound when it is valid but absent. Accepts the URL form.
absl::StatusOr<RorRecord> LookupRecord(const RegistryIndex& registry,
                                       std::string_view ror_id);

}  // namespace magnet

#endif  // MAGNET_ROR_REGISTRY_H_
