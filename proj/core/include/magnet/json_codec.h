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

// JSON encodings of the domain types, shared by the store, the HTTP API and
// the CLI. Field names are the lower_snake_case member names; ror ids are
// stored in short form.

#ifndef MAGNET_JSON_CODEC_H_
#define MAGNET_JSON_CODEC_H_

#include <nlohmann/json.hpp>

#include "absl/status/statusor.h"
#include "magnet/curation.h"
#include "magnet/exporter.h"
#include "magnet/matcher.h"
#include "magnet/works.h"

namespace magnet {

nlohmann::json ToJson(const ScoredCandidate& candidate);
absl::StatusOr<ScoredCandidate> ScoredCandidateFromJson(const nlohmann::json& j);

nlohmann::json ToJson(const AffiliationGroup& group);
absl::StatusOr<AffiliationGroup> AffiliationGroupFromJson(
    const nlohmann::json& j);

nlohmann::json ToJson(const CurationDecision& decision);
absl::StatusOr<CurationDecision> CurationDecisionFromJson(
    const nlohmann::json& j);

nlohmann::json ToJson(const CorrectionRequest& request);
absl::StatusOr<CorrectionRequest> CorrectionRequestFromJson(
    const nlohmann::json& j);

nlohmann::json ToJson(const HarvestQuery& query);
absl::StatusOr<HarvestQuery> HarvestQueryFromJson(const nlohmann::json& j);

nlohmann::json ToJson(const StatsSummary& stats);
nlohmann::json ToJson(const BatchReport& report);

}  // namespace magnet

#endif  // MAGNET_JSON_CODEC_H_
