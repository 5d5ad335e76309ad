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

#include "magnet/csv.h"

#include <algorithm>
#include <charconv>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "magnet/ror_registry.h"
#include "internal/strings.h"

namespace magnet {
namespace {

constexpr std::size_t kColumns = 9;

std::string JoinRors(const std::vector<std::string>& ids) {
  return absl::StrJoin(ids, "|", [](std::string* out, const std::string& id) {
    out->append(RorUrl(id));
  });
}

std::string OptionalTime(const std::optional<Timestamp>& t) {
  return t ? FormatTimestamp(*t) : std::string();
}

absl::Status BadRow(std::size_t row, std::string_view what) {
  return absl::InvalidArgumentError(
      internal::StrCat("malformed row ", row, ": ", what));
}

absl::StatusOr<std::vector<std::string>> SplitRors(std::string_view cell,
                                                   std::size_t row) {
  std::vector<std::string> ids;
  if (cell.empty()) return ids;
  for (std::string_view item : internal::Split(cell, '|')) {
    if (!item.starts_with(kRorUrlPrefix)) {
      return BadRow(row, internal::StrCat("not a ROR URL: ", item));
    }
    ids.emplace_back(item.substr(kRorUrlPrefix.size()));
    if (!ValidateRorId(ids.back())) {
      return BadRow(row, internal::StrCat("invalid ROR id: ", ids.back()));
    }
  }
  return ids;
}

absl::StatusOr<std::optional<Timestamp>> OptionalTimeCell(std::string_view cell,
                                                          std::size_t row) {
  if (cell.empty()) return std::optional<Timestamp>();
  auto t = ParseTimestamp(cell);
  if (!t) return BadRow(row, internal::StrCat("bad timestamp: ", cell));
  return std::optional<Timestamp>(*t);
}

}  // namespace

std::string CsvField(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(value);
  }
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

absl::StatusOr<std::vector<std::vector<std::string>>> ParseCsvRecords(
    std::string_view document) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  std::size_t i = 0;
  const std::size_t n = document.size();
  while (i < n) {
    // Start of a field.
    if (document[i] == '"') {
      ++i;
      while (true) {
        if (i >= n) {
          return absl::InvalidArgumentError(internal::StrCat(
              "malformed row ", records.size() + 1, ": unterminated quote"));
        }
        if (document[i] == '"') {
          if (i + 1 < n && document[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        field.push_back(document[i++]);
      }
      if (i < n && document[i] != ',' && document[i] != '\n' &&
          document[i] != '\r') {
        return absl::InvalidArgumentError(
            internal::StrCat("malformed row ", records.size() + 1,
                         ": characters after closing quote"));
      }
    } else {
      while (i < n && document[i] != ',' && document[i] != '\n' &&
             document[i] != '\r') {
        if (document[i] == '"') {
          return absl::InvalidArgumentError(internal::StrCat(
              "malformed row ", records.size() + 1, ": quote in bare field"));
        }
        field.push_back(document[i++]);
      }
    }
    record.push_back(std::move(field));
    field.clear();
    if (i >= n) break;
    if (document[i] == ',') {
      ++i;
      if (i == n) record.emplace_back();  // trailing empty field
      continue;
    }
    // Line break: CRLF or LF.
    if (document[i] == '\r') {
      ++i;
      if (i < n && document[i] == '\n') ++i;
    } else {
      ++i;
    }
    records.push_back(std::move(record));
    record.clear();
  }
  if (!record.empty()) records.push_back(std::move(record));
  return records;
}

std::string ExportCsv(std::span<const CorrectionRequest> requests) {
  std::vector<const CorrectionRequest*> sorted;
  sorted.reserve(requests.size());
  for (const auto& r : requests) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) {
    return a->request_id < b->request_id;
  });

  std::string out = internal::StrCat(kCsvHeader, "\r\n");
  for (const auto* r : sorted) {
    internal::StrAppend(
        &out, CsvField(r->raw_string), ",", JoinRors(r->new_ror_ids), ",",
        JoinRors(r->previous_ror_ids), ",",
        CsvField(absl::StrJoin(r->works_examples, "|")), ",",
        CsvField(r->contact_domain), ",", ToString(r->status), ",",
        OptionalTime(r->date_opened), ",", OptionalTime(r->date_closed), ",",
        r->issue_number ? internal::StrCat(*r->issue_number) : std::string(),
        "\r\n");
  }
  return out;
}

absl::StatusOr<std::vector<CorrectionRequest>> ParseCsv(
    std::string_view document) {
  auto records = ParseCsvRecords(document);
  if (!records.ok()) return records.status();
  if (records->empty()) {
    return absl::InvalidArgumentError("header mismatch: document is empty");
  }
  const auto header = absl::StrJoin(records->front(), ",");
  if (header != kCsvHeader) {
    return absl::InvalidArgumentError(
        internal::StrCat("header mismatch: got '", header, "'"));
  }

  std::vector<CorrectionRequest> out;
  for (std::size_t r = 1; r < records->size(); ++r) {
    const auto& cells = (*records)[r];
    const auto row = r + 1;
    if (cells.size() != kColumns) {
      return BadRow(row, internal::StrCat("expected ", kColumns, " cells, got ",
                                      cells.size()));
    }
    CorrectionRequest req;
    req.request_id = r;
    req.raw_string = cells[0];
    auto new_ids = SplitRors(cells[1], row);
    if (!new_ids.ok()) return new_ids.status();
    req.new_ror_ids = *std::move(new_ids);
    auto previous = SplitRors(cells[2], row);
    if (!previous.ok()) return previous.status();
    req.previous_ror_ids = *std::move(previous);
    if (!cells[3].empty()) req.works_examples = internal::Split(cells[3], '|');
    req.contact_domain = cells[4];
    auto status = ParseRequestStatus(cells[5]);
    if (!status) return BadRow(row, internal::StrCat("unknown status: ", cells[5]));
    req.status = *status;
    auto opened = OptionalTimeCell(cells[6], row);
    if (!opened.ok()) return opened.status();
    req.date_opened = *opened;
    auto closed = OptionalTimeCell(cells[7], row);
    if (!closed.ok()) return closed.status();
    req.date_closed = *closed;
    if (!cells[8].empty()) {
      int number = 0;
      const auto& s = cells[8];
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), number);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        return BadRow(row, internal::StrCat("bad issue_number: ", s));
      }
      req.issue_number = number;
    }
    if (auto valid = ValidateRequest(req); !valid.ok()) {
      return BadRow(row, internal::Message(valid));
    }
    out.push_back(std::move(req));
  }
  return out;
}

}  // namespace magnet
