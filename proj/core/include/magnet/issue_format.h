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

#ifndef MAGNET_ISSUE_FORMAT_H_
#define MAGNET_ISSUE_FORMAT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "magnet/curation.h"

namespace magnet {

inline constexpr std::string_view kIssueTitlePrefix =
    "Correction for raw affiliation: ";
inline constexpr std::size_t kIssueTitleMaxRawChars = 80;

// Issue body, five "key: value" lines joined by '\n' with no trailing
// newline; list values are joined by ';' and ids carry the ror.org prefix:
//
//   raw_affiliation_name: <raw string>
//   new_rors: https://ror.org/<id>;https://ror.org/<id>
//   previous_rors: https://ror.org/<id>
//   works_examples: W1;W2
//   contact: <domain>

struct RenderedIssue {
  std::string title;
  std::string body;

  friend bool operator==(const RenderedIssue&, const RenderedIssue&) = default;
};

/// The fields an issue body carries.
struct IssueFields {
  std::string raw_affiliation_name;
  std::vector<std::string> new_ror_ids;       // short form
  std::vector<std::string> previous_ror_ids;  // short form
  std::vector<std::string> works_examples;
  std::string contact_domain;

  friend bool operator==(const IssueFields&, const IssueFields&) = default;
};

/// Title truncation counts Unicode code points and never splits one.
/// FailedPrecondition unless the request is pending or exported.
absl::StatusOr<RenderedIssue> RenderIssue(const CorrectionRequest& request);

/// Inverse of the body produced by RenderIssue(). InvalidArgument naming the
/// first offending line.
absl::StatusOr<IssueFields> ParseIssueBody(std::string_view body);

IssueFields FieldsOf(const CorrectionRequest& request);

}  // namespace magnet

#endif  // MAGNET_ISSUE_FORMAT_H_
