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

#include "magnet/issue_format.h"

#include <array>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "magnet/ror_registry.h"
#include "internal/strings.h"

namespace magnet {
namespace {

constexpr std::array<std::string_view, 5> kKeys = {
    "raw_affiliation_name", "new_rors", "previous_rors", "works_examples",
    "contact"};

// Byte length of the first `max_chars` UTF-8 code points of `s`.
std::size_t Utf8Prefix(std::string_view s, std::size_t max_chars) {
  std::size_t chars = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto byte = static_cast<unsigned char>(s[i]);
    if ((byte & 0xC0) != 0x80) {
      if (chars == max_chars) return i;
      ++chars;
    }
  }
  return s.size();
}

// Keeps the body at exactly five lines whatever the raw string contains.
std::string EscapeLine(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

absl::StatusOr<std::string> UnescapeLine(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out.push_back(s[i]);
      continue;
    }
    if (++i == s.size()) {
      return absl::InvalidArgumentError("dangling escape in issue body");
    }
    switch (s[i]) {
      case '\\':
        out.push_back('\\');
        break;
      case 'n':
        out.push_back('\n');
        break;
      case 'r':
        out.push_back('\r');
        break;
      default:
        return absl::InvalidArgumentError(
            internal::StrCat("unknown escape \\", std::string(1, s[i])));
    }
  }
  return out;
}

std::string RorList(const std::vector<std::string>& ids) {
  return absl::StrJoin(ids, ";", [](std::string* out, const std::string& id) {
    out->append(RorUrl(id));
  });
}

std::vector<std::string> SplitList(std::string_view value) {
  if (value.empty()) return {};
  return internal::Split(value, ';');
}

absl::StatusOr<std::vector<std::string>> ParseRorList(std::string_view value,
                                                      std::string_view key) {
  std::vector<std::string> ids;
  for (auto& item : SplitList(value)) {
    if (!std::string_view(item).starts_with(kRorUrlPrefix)) {
      return absl::InvalidArgumentError(
          internal::StrCat("issue body line '", key, "': not a ROR URL: ", item));
    }
    ids.push_back(item.substr(kRorUrlPrefix.size()));
  }
  return ids;
}

}  // namespace

IssueFields FieldsOf(const CorrectionRequest& request) {
  return {request.raw_string, request.new_ror_ids, request.previous_ror_ids,
          request.works_examples, request.contact_domain};
}

absl::StatusOr<RenderedIssue> RenderIssue(const CorrectionRequest& request) {
  if (request.status != RequestStatus::kPending &&
      request.status != RequestStatus::kExported) {
    return absl::FailedPreconditionError(
        internal::StrCat("cannot render request ", request.request_id,
                     " in status ", ToString(request.status)));
  }
  RenderedIssue issue;
  const std::string_view raw = request.raw_string;
  issue.title = internal::StrCat(
      kIssueTitlePrefix, raw.substr(0, Utf8Prefix(raw, kIssueTitleMaxRawChars)));
  issue.body = internal::StrCat(
      kKeys[0], ": ", EscapeLine(request.raw_string), "\n",  //
      kKeys[1], ": ", RorList(request.new_ror_ids), "\n",    //
      kKeys[2], ": ", RorList(request.previous_ror_ids), "\n",
      kKeys[3], ": ", absl::StrJoin(request.works_examples, ";"), "\n",
      kKeys[4], ": ", request.contact_domain);
  return issue;
}

absl::StatusOr<IssueFields> ParseIssueBody(std::string_view body) {
  const auto lines = internal::Split(body, '\n');
  if (lines.size() != kKeys.size()) {
    return absl::InvalidArgumentError(internal::StrCat(
        "issue body has ", lines.size(), " lines, expected ", kKeys.size()));
  }
  std::array<std::string_view, 5> values;
  for (std::size_t i = 0; i < kKeys.size(); ++i) {
    const auto prefix = internal::StrCat(kKeys[i], ": ");
    if (!lines[i].starts_with(prefix)) {
      return absl::InvalidArgumentError(internal::StrCat(
          "issue body line ", i + 1, " does not start with '", prefix, "'"));
    }
    values[i] = std::string_view(lines[i]).substr(prefix.size());
  }

  IssueFields fields;
  auto raw = UnescapeLine(values[0]);
  if (!raw.ok()) return raw.status();
  fields.raw_affiliation_name = *std::move(raw);
  auto new_ids = ParseRorList(values[1], kKeys[1]);
  if (!new_ids.ok()) return new_ids.status();
  fields.new_ror_ids = *std::move(new_ids);
  auto previous = ParseRorList(values[2], kKeys[2]);
  if (!previous.ok()) return previous.status();
  fields.previous_ror_ids = *std::move(previous);
  fields.works_examples = SplitList(values[3]);
  fields.contact_domain = std::string(values[4]);
  return fields;
}

}  // namespace magnet
