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

#ifndef MAGNET_INTERNAL_URL_H_
#define MAGNET_INTERNAL_URL_H_

#include <string>
#include <string_view>

#include "absl/status/statusor.h"

namespace magnet::internal {

struct SplitUrl {
  std::string origin;       // "http://host:port"
  std::string path_prefix;  // "" or "/api", never a trailing slash
};

/// Splits an http(s) base URL into origin and path prefix.
absl::StatusOr<SplitUrl> ParseBaseUrl(std::string_view url);

/// Percent-encodes everything outside RFC 3986 unreserved characters.
std::string QueryEscape(std::string_view value);

}  // namespace magnet::internal

#endif  // MAGNET_INTERNAL_URL_H_
