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


#ifndef MAGNET_TESTS_SUPPORT_FIXTURES_H_
#define MAGNET_TESTS_SUPPORT_FIXTURES_H_

#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "magnet/curation.h"
#include "magnet/ror_registry.h"
#include "magnet/works.h"

namespace magnet::testing {

std::filesystem::path DataPath(std::string_view name);

/// The 200-record registry fixture, loaded once.
const RegistryIndex& FixtureRegistry();

std::vector<nlohmann::json> LoadJsonLines(std::string_view name);

std::vector<std::string> OracleQueries();

struct LabeledQuery {
  std::string query;
  std::string ror_id;
};
std::vector<LabeledQuery> LabeledCorpus();

/// Decodes work objects in the works-API shape.
std::vector<Work> DecodeWorks(const std::vector<nlohmann::json>& objects);

/// A works-API result object.
nlohmann::json WorkJson(std::string_view id, std::optional<std::string> doi,
                        const std::vector<std::vector<std::string>>& raw_strings,
                        const std::vector<std::vector<std::string>>& rors = {});

/// Twenty deterministic pending/exported requests with varied content.
std::vector<CorrectionRequest> IssueFixtureRequests();

/// A valid request with hostile text: commas, quotes, CR/LF, non-ASCII.
CorrectionRequest RandomRequest(std::mt19937_64& rng, RequestId id);

/// Random works drawing raw strings from a small pool so groups collide.
std::vector<Work> RandomWorks(std::mt19937_64& rng, std::size_t count);

/// A fresh empty directory under the system temp dir.
std::filesystem::path ScratchDir(std::string_view tag);

/// Valid registry id derived from `n`.
std::string SyntheticRorId(std::uint64_t n);

}  // namespace magnet::testing

#endif  // MAGNET_TESTS_SUPPORT_FIXTURES_H_
