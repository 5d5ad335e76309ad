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

#ifndef MAGNET_CSV_H_
#define MAGNET_CSV_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "magnet/curation.h"

namespace magnet {

inline constexpr std::string_view kCsvHeader =
    "raw_affiliation_name,new_rors,previous_rors,works_examples,"
    "contact_domain,status,date_opened,date_closed,issue_number";

/// Quotes a field when it contains a comma, a double quote, CR or LF.
std::string CsvField(std::string_view value);

/// RFC 4180 records from `document`. Accepts CRLF or bare LF line breaks and
/// quoted fields spanning lines. InvalidArgument with the 1-based record
/// number for unbalanced quotes or stray characters after a closing quote.
absl::StatusOr<std::vector<std::vector<std::string>>> ParseCsvRecords(
    std::string_view document);

/// The open-dataset CSV: kCsvHeader, then one CRLF-terminated row per
/// request ordered by request_id. List cells are joined with '|', ids carry
/// the ror.org prefix and dates are ISO 8601 UTC.
std::string ExportCsv(std::span<const CorrectionRequest> requests);

/// Inverse of ExportCsv(). The CSV carries no request ids; rows are numbered
/// 1..n in document order. InvalidArgument on a header mismatch or a
/// malformed row (row number in the message).
absl::StatusOr<std::vector<CorrectionRequest>> ParseCsv(
    std::string_view document);

}  // namespace magnet

#endif  // MAGNET_CSV_H_
