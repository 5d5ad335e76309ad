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


#include "magnet/works.h"

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "support/fixtures.h"

namespace magnet {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;
using testing::DecodeWorks;
using testing::WorkJson;

constexpr std::string_view kRor = "05f82e368";

TEST(BuildFilterTest, Examples) {
  HarvestQuery q{HarvestMode::kByRor, std::string(kRor), {}, 2020, 2023};
  EXPECT_EQ(*BuildFilter(q),
            "institutions.ror:05f82e368,from_publication_date:2020-01-01,"
            "to_publication_date:2023-12-31");
  HarvestQuery search{HarvestMode::kByAffiliationSearch, "inserm", {}, {}, {}};
  EXPECT_EQ(*BuildFilter(search), "raw_affiliation_strings.search:inserm");
  HarvestQuery dois{HarvestMode::kByDoiList, "", {"10.1/A", "https://doi.org/10.2/b"}, {}, 2019};
  EXPECT_EQ(*BuildFilter(dois), "doi:10.1/a|10.2/b,to_publication_date:2019-12-31");
}

TEST(BuildFilterTest, Deterministic) {
  HarvestQuery q{HarvestMode::kByAffiliationSearch, "cnrs, lyon|x", {}, 2001, {}};
  const auto a = BuildFilter(q);
  ASSERT_TRUE(a.ok());
  EXPECT_EQ(*a, *BuildFilter(q));
  EXPECT_EQ(*a, "raw_affiliation_strings.search:cnrs  lyon x,from_publication_date:2001-01-01");
}

TEST(BuildFilterTest, InvalidQueriesNameTheField) {
  HarvestQuery years{HarvestMode::kByRor, std::string(kRor), {}, 2024, 2020};
  auto r = BuildFilter(years);
  ASSERT_TRUE(absl::IsInvalidArgument(r.status()));
  EXPECT_THAT(r.status().message(), HasSubstr("year"));

  HarvestQuery bad_ror{HarvestMode::kByRor, "0abc", {}, {}, {}};
  EXPECT_THAT(BuildFilter(bad_ror).status().message(), HasSubstr("value"));

  HarvestQuery empty_search{HarvestMode::kByAffiliationSearch, "  ", {}, {}, {}};
  EXPECT_TRUE(absl::IsInvalidArgument(BuildFilter(empty_search).status()));

  HarvestQuery no_dois{HarvestMode::kByDoiList, "", {}, {}, {}};
  EXPECT_TRUE(absl::IsInvalidArgument(BuildFilter(no_dois).status()));
}

TEST(NormalizeDoiTest, StripsResolversAndLowercases) {
  EXPECT_EQ(NormalizeDoi("https://doi.org/10.1000/ABC"), "10.1000/abc");
  EXPECT_EQ(NormalizeDoi("http://dx.doi.org/10.1000/abc"), "10.1000/abc");
  EXPECT_EQ(NormalizeDoi("doi:10.1000/Abc"), "10.1000/abc");
  EXPECT_EQ(NormalizeDoi(" 10.1000/abc "), "10.1000/abc");
  EXPECT_EQ(NormalizeDoi(""), std::nullopt);
}

TEST(ExtractSignaturesTest, Examples) {
  auto works = DecodeWorks({
      WorkJson("W1", std::nullopt, {{"Univ A", "Univ A"}, {"Lab B"}}),
      WorkJson("W2", std::nullopt, {}),
      WorkJson("W3", std::nullopt, {{"Univ A"}, {"Univ A", ""}},
               {{"05f82e368"}, {"05f82e368", "02feahw73"}}),
  });
  ASSERT_EQ(works.size(), 3u);
  EXPECT_EQ(ExtractSignatures(works[0]).size(), 2u);
  EXPECT_TRUE(ExtractSignatures(works[1]).empty());
  const auto sigs = ExtractSignatures(works[2]);
  ASSERT_EQ(sigs.size(), 1u);
  EXPECT_EQ(sigs[0].raw_string, "Univ A");
  EXPECT_THAT(sigs[0].current_ror_ids, ElementsAre("02feahw73", "05f82e368"));
}

TEST(ExtractSignaturesTest, RawStringsAreByteExact) {
  const std::string raw = "  Université  de Lyon,\tFrance ";
  auto works = DecodeWorks({WorkJson("W1", std::nullopt, {{raw}})});
  const auto sigs = ExtractSignatures(works[0]);
  ASSERT_EQ(sigs.size(), 1u);
  EXPECT_EQ(sigs[0].raw_string, raw);
}

std::vector<std::string> Ids(const std::vector<Work>& works) {
  std::vector<std::string> ids;
  for (const auto& w : works) ids.push_back(w.work_id);
  return ids;
}

TEST(DeduplicateWorksTest, Examples) {
  auto same_doi = DecodeWorks({WorkJson("W1", "10.1/x", {}), WorkJson("W2", "10.1/x", {})});
  EXPECT_THAT(Ids(DeduplicateWorks(same_doi)), ElementsAre("W1"));
  auto no_doi = DecodeWorks({WorkJson("W1", std::nullopt, {}), WorkJson("W2", std::nullopt, {})});
  EXPECT_THAT(Ids(DeduplicateWorks(no_doi)), ElementsAre("W1", "W2"));
}

TEST(DeduplicateWorksTest, FixtureWithThreeDuplicatePairs) {
  const auto works = DecodeWorks(testing::LoadJsonLines("works_dedup.jsonl"));
  ASSERT_EQ(works.size(), 10u);
  const auto once = DeduplicateWorks(works);
  // Hand count: W4 repeats W1, W7 repeats W2, W9 repeats W5.
  EXPECT_THAT(Ids(once), ElementsAre("W1", "W2", "W3", "W5", "W6", "W8", "W10"));
  EXPECT_EQ(DeduplicateWorks(once), once);
}

TEST(ParseWorksPageTest, DecodesThePayload) {
  const auto body = R"({"meta":{"count":2,"next_cursor":"abc"},"results":[
    {"id":"https://openalex.org/W1","doi":"https://doi.org/10.5/X","title":"T",
     "publication_year":2020,"authorships":[{"raw_affiliation_strings":["A"],
     "institutions":[{"ror":"https://ror.org/05f82e368"},{"ror":null},{}]}]}]})";
  auto page = ParseWorksPage(body);
  ASSERT_TRUE(page.ok()) << page.status();
  EXPECT_EQ(page->count, 2);
  EXPECT_EQ(page->next_cursor, "abc");
  ASSERT_EQ(page->works.size(), 1u);
  const auto& w = page->works[0];
  EXPECT_EQ(w.work_id, "W1");
  EXPECT_EQ(w.doi, "10.5/x");
  EXPECT_EQ(w.publication_year, 2020);
  ASSERT_EQ(w.signatures.size(), 1u);
  EXPECT_THAT(w.signatures[0].current_ror_ids, ElementsAre("05f82e368"));
}

TEST(ParseWorksPageTest, MalformedPages) {
  for (std::string_view body : {
           "not json",
           R"({"results":[]})",
           R"({"meta":{"count":1,"next_cursor":null}})",
           R"({"meta":{"count":"1","next_cursor":null},"results":[]})",
           R"({"meta":{"count":1,"next_cursor":null},"results":[{"title":"no id"}]})",
           R"({"meta":{"count":1,"next_cursor":null},"results":[{"id":"W1","authorships":{}}]})",
       }) {
    EXPECT_TRUE(absl::IsDataLoss(ParseWorksPage(body).status())) << body;
  }
}

TEST(HarvestModeTest, RoundTrip) {
  for (auto m : {HarvestMode::kByRor, HarvestMode::kByAffiliationSearch,
                 HarvestMode::kByDoiList}) {
    EXPECT_EQ(ParseHarvestMode(ToString(m)), m);
  }
  EXPECT_EQ(ParseHarvestMode("by_title"), std::nullopt);
}

}  // namespace
}  // namespace magnet
