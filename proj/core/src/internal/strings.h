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


// Adapters over absl string utilities that accept std::string_view. The
// system absl is built with its own string_view type, which does not convert
// implicitly from the standard one.

#ifndef MAGNET_INTERNAL_STRINGS_H_
#define MAGNET_INTERNAL_STRINGS_H_

#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"

namespace magnet::internal {

inline absl::string_view ToAbsl(std::string_view s) {
  return absl::string_view(s.data(), s.size());
}

inline std::string_view ToStd(absl::string_view s) {
  return std::string_view(s.data(), s.size());
}

template <typename T>
decltype(auto) Piece(const T& v) {
  if constexpr (std::is_same_v<T, std::string_view>) {
    return ToAbsl(v);
  } else {
    return (v);
  }
}

template <typename... Args>
std::string StrCat(const Args&... args) {
  return absl::StrCat(Piece(args)...);
}

template <typename... Args>
void StrAppend(std::string* dest, const Args&... args) {
  absl::StrAppend(dest, Piece(args)...);
}

inline std::vector<std::string> Split(std::string_view s, char sep) {
  return absl::StrSplit(ToAbsl(s), sep);
}

inline std::string_view StripAsciiWhitespace(std::string_view s) {
  return ToStd(absl::StripAsciiWhitespace(ToAbsl(s)));
}

inline std::string AsciiStrToLower(std::string_view s) {
  return absl::AsciiStrToLower(ToAbsl(s));
}

inline std::string_view Message(const absl::Status& status) {
  return ToStd(status.message());
}

}  // namespace magnet::internal

#endif  // MAGNET_INTERNAL_STRINGS_H_
