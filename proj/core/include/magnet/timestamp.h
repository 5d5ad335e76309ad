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

#ifndef MAGNET_TIMESTAMP_H_
#define MAGNET_TIMESTAMP_H_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace magnet {

using Timestamp = std::chrono::sys_seconds;

/// "YYYY-MM-DDTHH:MM:SSZ".
std::string FormatTimestamp(Timestamp t);

/// Accepts "YYYY-MM-DDTHH:MM:SSZ", optionally with fractional seconds or a
/// "+00:00" suffix. Fractions are truncated.
std::optional<Timestamp> ParseTimestamp(std::string_view s);

Timestamp Now();

}  // namespace magnet

#endif  // MAGNET_TIMESTAMP_H_
