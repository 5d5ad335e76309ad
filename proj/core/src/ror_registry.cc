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

#include "magnet/ror_registry.h"

#include <algorithm>
#include <cctype>
#include <cstdint>

#include <nlohmann/json.hpp>

#include "absl/strings/str_cat.h"
#include "internal/file_util.h"
#include "magnet/text.h"
#include "internal/strings.h"

namespace magnet {
namespace {

using nlohmann::json;

constexpr std::string_view kCrockford = "0123456789abcdefghjkmnpqrstvwxyz";

int DecodeBase32(char c) {
  const auto pos = kCrockford.find(c);
  return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

absl::Status MalformedRecord(std::size_t ordinal, std::string_view field,
                             std::string_view what) {
  return absl::InvalidArgumentError(internal::StrCat(
      "malformed record ", ordinal, ": field '", field, "' ", what));
}

absl::StatusOr<std::vector<std::string>> StringArray(const json& record,
                                                     std::size_t ordinal,
                                                     const char* field) {
  auto it = record.find(field);
  if (it == record.end()) return MalformedRecord(ordinal, field, "missing");
  if (!it->is_array()) return MalformedRecord(ordinal, field, "not an array");
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) {
      return MalformedRecord(ordinal, field, "contains a non-string");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

absl::StatusOr<RorRecord> RecordFromJson(const json& j, std::size_t ordinal) {
  if (!j.is_object()) return MalformedRecord(ordinal, "<record>", "not an object");
  RorRecord r;

  auto id = j.find("id");
  if (id == j.end() || !id->is_string()) {
    return MalformedRecord(ordinal, "id", "missing or not a string");
  }
  r.ror_id = CanonicalRorId(id->get<std::string>());
  if (!ValidateRorId(r.ror_id)) {
    return MalformedRecord(ordinal, "id",
                           internal::StrCat("is not a valid ROR id: ", r.ror_id));
  }

  auto name = j.find("name");
  if (name == j.end() || !name->is_string()) {
    return MalformedRecord(ordinal, "name", "missing or not a string");
  }
  r.primary_name = name->get<std::string>();

  auto aliases = StringArray(j, ordinal, "aliases");
  if (!aliases.ok()) return aliases.status();
  r.aliases = *std::move(aliases);
  auto acronyms = StringArray(j, ordinal, "acronyms");
  if (!acronyms.ok()) return acronyms.status();
  r.acronyms = *std::move(acronyms);

  auto labels = j.find("labels");
  if (labels == j.end() || !labels->is_array()) {
    return MalformedRecord(ordinal, "labels", "missing or not an array");
  }
  for (const auto& l : *labels) {
    if (!l.is_object() || !l.contains("label") || !l["label"].is_string()) {
      return MalformedRecord(ordinal, "labels[].label",
                             "missing or not a string");
    }
    RorLabel label;
    label.label = l["label"].get<std::string>();
    if (auto lang = l.find("iso639"); lang != l.end() && lang->is_string()) {
      label.language = lang->get<std::string>();
    }
    r.labels.push_back(std::move(label));
  }

  auto country = j.find("country");
  const json* code = nullptr;
  if (country != j.end() && country->is_object()) {
    if (auto it = country->find("country_code"); it != country->end()) {
      code = &*it;
    }
  }
  if (code == nullptr || !code->is_string()) {
    return MalformedRecord(ordinal, "country.country_code",
                           "missing or not a string");
  }
  r.country_code = code->get<std::string>();
  const bool code_ok =
      r.country_code.size() == 2 &&
      std::all_of(r.country_code.begin(), r.country_code.end(),
                  [](char c) { return c >= 'A' && c <= 'Z'; });
  if (!code_ok) {
    return MalformedRecord(
        ordinal, "country.country_code",
        internal::StrCat("is not two uppercase letters: ", r.country_code));
  }

  auto status = j.find("status");
  if (status == j.end() || !status->is_string()) {
    return MalformedRecord(ordinal, "status", "missing or not a string");
  }
  auto parsed = ParseRorStatus(status->get<std::string>());
  if (!parsed) {
    return MalformedRecord(
        ordinal, "status",
        internal::StrCat("has unknown value: ", status->get<std::string>()));
  }
  r.status = *parsed;
  if (r.active() && NormalizeText(r.primary_name).empty()) {
    return MalformedRecord(ordinal, "name", "is empty for an active record");
  }

  if (auto addresses = j.find("addresses");
      addresses != j.end() && addresses->is_array() && !addresses->empty()) {
    const auto& first = addresses->front();
    if (auto city = first.find("city"); city != first.end() && city->is_string()) {
      r.city = city->get<std::string>();
    }
  }
  return r;
}

json RecordToJson(const RorRecord& r) {
  json labels = json::array();
  for (const auto& l : r.labels) {
    labels.push_back({{"label", l.label}, {"iso639", l.language}});
  }
  json j = {{"id", RorUrl(r.ror_id)},
            {"name", r.primary_name},
            {"aliases", r.aliases},
            {"acronyms", r.acronyms},
            {"labels", std::move(labels)},
            {"country", {{"country_code", r.country_code}}},
            {"status", ToString(r.status)}};
  if (r.city) j["addresses"] = json::array({{{"city", *r.city}}});
  return j;
}

}  // namespace

bool ValidateRorId(std::string_view id) {
  if (id.size() != 9 || id[0] != '0') return false;
  if (!std::isdigit(static_cast<unsigned char>(id[7])) ||
      !std::isdigit(static_cast<unsigned char>(id[8]))) {
    return false;
  }
  const auto expected = RorCheckDigits(id.substr(0, 7));
  return expected && *expected == id.substr(7);
}

std::optional<std::string> RorCheckDigits(std::string_view prefix7) {
  if (prefix7.size() != 7 || prefix7[0] != '0') return std::nullopt;
  std::uint64_t value = 0;
  for (char c : prefix7) {
    const int digit = DecodeBase32(c);
    if (digit < 0) return std::nullopt;
    value = value * 32 + static_cast<std::uint64_t>(digit);
  }
  const auto check = 98 - (value * 100) % 97;
  std::string out(2, '0');
  out[0] = static_cast<char>('0' + check / 10);
  out[1] = static_cast<char>('0' + check % 10);
  return out;
}

std::string CanonicalRorId(std::string_view id) {
  for (std::string_view prefix :
       {std::string_view("https://ror.org/"), std::string_view("http://ror.org/"),
        std::string_view("ror.org/")}) {
    if (id.starts_with(prefix)) {
      id.remove_prefix(prefix.size());
      break;
    }
  }
  // Base32 ids are case-insensitive; lowercase is the stored form.
  return internal::AsciiStrToLower(id);
}

std::string RorUrl(std::string_view id) {
  return internal::StrCat(kRorUrlPrefix, id);
}

std::string_view ToString(RorStatus status) {
  switch (status) {
    case RorStatus::kActive:
      return "active";
    case RorStatus::kInactive:
      return "inactive";
    case RorStatus::kWithdrawn:
      return "withdrawn";
  }
  return "active";
}

std::optional<RorStatus> ParseRorStatus(std::string_view s) {
  if (s == "active") return RorStatus::kActive;
  if (s == "inactive") return RorStatus::kInactive;
  if (s == "withdrawn") return RorStatus::kWithdrawn;
  return std::nullopt;
}

absl::StatusOr<RegistryIndex> RegistryIndex::Build(
    std::vector<RorRecord> records) {
  RegistryIndex index;
  std::size_t ordinal = 0;
  for (auto& record : records) {
    ++ordinal;
    if (!ValidateRorId(record.ror_id)) {
      return MalformedRecord(ordinal, "id",
                             internal::StrCat("is not a valid ROR id: ",
                                          record.ror_id));
    }
    if (index.records_.contains(record.ror_id)) {
      return absl::AlreadyExistsError(internal::StrCat(
          "duplicate ror_id ", record.ror_id, " at record ", ordinal));
    }

    std::vector<std::string> forms;
    auto add_form = [&forms](std::string_view text) {
      auto normalized = NormalizeText(text);
      if (normalized.empty()) return;
      if (std::find(forms.begin(), forms.end(), normalized) != forms.end()) {
        return;
      }
      forms.push_back(std::move(normalized));
    };
    add_form(record.primary_name);
    for (const auto& alias : record.aliases) add_form(alias);
    for (const auto& label : record.labels) add_form(label.label);

    for (const auto& acronym : record.acronyms) {
      auto normalized = NormalizeText(acronym);
      if (!normalized.empty()) {
        index.acronym_map_[normalized].insert(record.ror_id);
      }
    }
    index.name_forms_.emplace(record.ror_id, std::move(forms));
    auto id = record.ror_id;
    index.records_.emplace(std::move(id), std::move(record));
  }
  return index;
}

absl::StatusOr<RegistryIndex> ParseRorDump(std::string_view contents) {
  std::vector<json> objects;
  const auto first = contents.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && contents[first] == '[') {
    json array = json::parse(contents, nullptr, /*allow_exceptions=*/false);
    if (array.is_discarded() || !array.is_array()) {
      return absl::InvalidArgumentError("malformed dump: invalid JSON array");
    }
    for (auto& v : array) objects.push_back(std::move(v));
  } else {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < contents.size()) {
      auto end = contents.find('\n', start);
      if (end == std::string_view::npos) end = contents.size();
      const auto line = contents.substr(start, end - start);
      start = end + 1;
      if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
      ++line_no;
      json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
      if (j.is_discarded()) {
        return MalformedRecord(line_no, "<record>", "is not valid JSON");
      }
      objects.push_back(std::move(j));
    }
  }

  std::vector<RorRecord> records;
  records.reserve(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) {
    auto record = RecordFromJson(objects[i], i + 1);
    if (!record.ok()) return record.status();
    records.push_back(*std::move(record));
  }
  return RegistryIndex::Build(std::move(records));
}

absl::StatusOr<RegistryIndex> LoadRorDump(const std::filesystem::path& path) {
  auto contents = internal::ReadFile(path);
  if (!contents.ok()) return contents.status();
  return ParseRorDump(*contents);
}

std::string WriteRorDump(const RegistryIndex& registry) {
  std::string out;
  for (const auto& [id, record] : registry.records()) {
    out += RecordToJson(record).dump();
    out += '\n';
  }
  return out;
}

absl::StatusOr<RorRecord> LookupRecord(const RegistryIndex& registry,
                                       std::string_view ror_id) {
  const auto id = CanonicalRorId(ror_id);
  if (!ValidateRorId(id)) {
    return absl::InvalidArgumentError(
        internal::StrCat("invalid ROR id: ", ror_id));
  }
  auto it = registry.records().find(id);
  if (it == registry.records().end()) {
    return absl::NotFoundError(internal::StrCat("ROR id not in registry: ", id));
  }
  return it->second;
}

}  // namespace magnet
