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


#include "support/fixtures.h"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <set>
#include <stdexcept>

namespace magnet::testing {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& what) {
  throw std::runtime_error("fixture error: " + what);
}

template <typename T>
T Pick(std::mt19937_64& rng, const std::vector<T>& items) {
  return items[rng() % items.size()];
}

}  // namespace

std::filesystem::path DataPath(std::string_view name) {
  return std::filesystem::path(MAGNET_TEST_DATA_DIR) / name;
}

const RegistryIndex& FixtureRegistry() {
  static const RegistryIndex* registry = [] {
    auto loaded = LoadRorDump(DataPath("ror_fixture.jsonl"));
    if (!loaded.ok()) Fail(loaded.status().ToString());
    return new RegistryIndex(*std::move(loaded));
  }();
  return *registry;
}

std::vector<json> LoadJsonLines(std::string_view name) {
  std::ifstream in(DataPath(name));
  if (!in) Fail("cannot open " + std::string(name));
  std::vector<json> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) rows.push_back(json::parse(line));
  }
  return rows;
}

std::vector<std::string> OracleQueries() {
  std::vector<std::string> out;
  for (const auto& row : LoadJsonLines("oracle_queries.jsonl")) {
    out.push_back(row.get<std::string>());
  }
  return out;
}

std::vector<LabeledQuery> LabeledCorpus() {
  std::vector<LabeledQuery> out;
  for (const auto& row : LoadJsonLines("labeled_corpus.jsonl")) {
    out.push_back({row.at("query").get<std::string>(),
                   row.at("ror_id").get<std::string>()});
  }
  return out;
}

std::vector<Work> DecodeWorks(const std::vector<json>& objects) {
  json page = {{"meta", {{"count", objects.size()}, {"next_cursor", nullptr}}},
               {"results", objects}};
  auto decoded = ParseWorksPage(page.dump());
  if (!decoded.ok()) Fail(decoded.status().ToString());
  return std::move(decoded->works);
}

json WorkJson(std::string_view id, std::optional<std::string> doi,
              const std::vector<std::vector<std::string>>& raw_strings,
              const std::vector<std::vector<std::string>>& rors) {
  json authorships = json::array();
  for (std::size_t i = 0; i < raw_strings.size(); ++i) {
    json institutions = json::array();
    if (i < rors.size()) {
      for (const auto& r : rors[i]) {
        institutions.push_back({{"ror", "https://ror.org/" + r}});
      }
    }
    authorships.push_back({{"raw_affiliation_strings", raw_strings[i]},
                           {"institutions", std::move(institutions)}});
  }
  return {{"id", "https://openalex.org/" + std::string(id)},
          {"doi", doi ? json(*doi) : json(nullptr)},
          {"title", "Work " + std::string(id)},
          {"publication_year", 2022},
          {"authorships", std::move(authorships)}};
}

std::string SyntheticRorId(std::uint64_t n) {
  static constexpr std::string_view kAlphabet = "0123456789abcdefghjkmnpqrstvwxyz";
  std::string body = "0";
  std::uint64_t v = n * 2654435761u + 12345;
  for (int i = 0; i < 6; ++i) {
    body.push_back(kAlphabet[v % 32]);
    v /= 32;
  }
  return body + *RorCheckDigits(body);
}

std::vector<CorrectionRequest> IssueFixtureRequests() {
  static const std::vector<std::string> kRaw = {
      "Université de Lyon",
      "Dept. of Physics, MIT, Cambridge, MA 02139, USA",
      "CNRS; Inserm; Université Paris Cité",
      "Laboratoire \"Chimie & Matériaux\", Grenoble",
      "Institut für Genetik, Köln",
      "東京大学",
      "Line one\nline two",
      "Trailing backslash \\",
      "Carriage\rreturn",
      "semi;colon;separated",
      "   padded   ",
      "key: value lookalike",
      "new_rors: injected",
      "https://ror.org/02feahw73 in text",
      "Hôpital Européen Georges-Pompidou, AP-HP",
      "A",
      "Ünïcödé ñame \xe2\x80\x94 with dash",
      "Tab\tseparated",
      "University of Cambridge, Cambridge CB2 1TN, United Kingdom, and a long "
      "tail of words that pushes the raw string past the eighty character "
      "title budget",
      "Mixed, \"quoted\", and | piped",
  };
  std::vector<CorrectionRequest> out;
  for (std::size_t i = 0; i < kRaw.size(); ++i) {
    CorrectionRequest r;
    r.request_id = i + 1;
    r.raw_string = kRaw[i];
    for (std::size_t k = 0; k < i % 3; ++k) {
      r.previous_ror_ids.push_back(SyntheticRorId(100 + i * 7 + k));
    }
    if (i % 5 != 4) r.new_ror_ids.push_back(SyntheticRorId(500 + i));
    if (i % 4 == 0) r.new_ror_ids.push_back(SyntheticRorId(900 + i));
    std::sort(r.previous_ror_ids.begin(), r.previous_ror_ids.end());
    std::sort(r.new_ror_ids.begin(), r.new_ror_ids.end());
    if (r.new_ror_ids == r.previous_ror_ids) {
      r.new_ror_ids.push_back(SyntheticRorId(1300 + i));
    }
    for (std::size_t k = 0; k < i % 11; ++k) {
      r.works_examples.push_back("W" + std::to_string(3000000 + i * 100 + k));
    }
    r.contact_domain = i % 2 ? "univ-lyon.fr" : "example.org";
    r.status = i % 3 == 0 ? RequestStatus::kExported : RequestStatus::kPending;
    out.push_back(std::move(r));
  }
  return out;
}

CorrectionRequest RandomRequest(std::mt19937_64& rng, RequestId id) {
  static const std::vector<std::string> kPieces = {
      "Université", "de", "Lyon", ",", "\"", "\"\"", "\n", "\r\n", "|", ";",
      " ", "Köln", "CNRS", "Lab", "東京", "'", "a,b", "\"quoted, text\"",
      "\xe2\x80\x94", "\t", "\\"};
  CorrectionRequest r;
  r.request_id = id;
  const auto pieces = 1 + rng() % 8;
  for (std::size_t i = 0; i < pieces; ++i) r.raw_string += Pick(rng, kPieces);
  if (r.raw_string.find_first_not_of(" \t\r\n") == std::string::npos) {
    r.raw_string += "Institute";
  }

  std::set<std::string> previous, next;
  for (std::size_t i = rng() % 3; i > 0; --i) previous.insert(SyntheticRorId(rng() % 50));
  next = previous;
  do {
    if (!next.empty() && rng() % 2) {
      next.erase(next.begin());
    } else {
      next.insert(SyntheticRorId(50 + rng() % 50));
    }
  } while (next == previous);
  r.previous_ror_ids.assign(previous.begin(), previous.end());
  r.new_ror_ids.assign(next.begin(), next.end());

  for (std::size_t i = rng() % 11; i > 0; --i) {
    r.works_examples.push_back("W" + std::to_string(rng() % 1000000));
  }
  static const std::vector<std::string> kDomains = {
      "example.org", "univ-lyon.fr", "cnrs.fr", "inserm.fr", "mit.edu"};
  r.contact_domain = Pick(rng, kDomains);

  r.status = kAllRequestStatuses[rng() % 4];
  const Timestamp base{std::chrono::seconds(1600000000 + rng() % 100000000)};
  if (r.status == RequestStatus::kOpen || r.status == RequestStatus::kClosed) {
    r.issue_number = 1 + static_cast<int>(rng() % 100000);
    r.date_opened = base;
  }
  if (r.status == RequestStatus::kClosed) {
    r.date_closed = base + std::chrono::seconds(rng() % 10000000);
  }
  return r;
}

std::vector<Work> RandomWorks(std::mt19937_64& rng, std::size_t count) {
  static const std::vector<std::string> kRaw = {
      "Univ A", "univ a", "Univ A ", "Lab B", "Université de Lyon",
      "Universite de Lyon", "CNRS", "", "Dept. of X, Univ A", "Köln",
      "Lab B, Paris", "東京大学"};
  std::vector<Work> works;
  for (std::size_t w = 0; w < count; ++w) {
    std::vector<std::vector<std::string>> raws, rors;
    for (std::size_t a = rng() % 4; a > 0; --a) {
      std::vector<std::string> strings, ids;
      for (std::size_t s = rng() % 4; s > 0; --s) strings.push_back(Pick(rng, kRaw));
      for (std::size_t s = rng() % 3; s > 0; --s) {
        ids.push_back(SyntheticRorId(rng() % 6));
      }
      raws.push_back(std::move(strings));
      rors.push_back(std::move(ids));
    }
    works.push_back(DecodeWorks({WorkJson("W" + std::to_string(w + 1),
                                          std::nullopt, raws, rors)})
                        .front());
  }
  return works;
}

std::filesystem::path ScratchDir(std::string_view tag) {
  static std::atomic<int> counter{0};
  auto dir = std::filesystem::temp_directory_path() /
             ("magnet-" + std::string(tag) + "-" + std::to_string(::getpid()) +
              "-" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace magnet::testing
