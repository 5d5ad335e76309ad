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


#include "magnet/cli.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "magnet/csv.h"
#include "magnet/curation.h"
#include "magnet/exporter.h"
#include "magnet/harvester.h"
#include "magnet/json_codec.h"
#include "magnet/matcher.h"
#include "magnet/ror_registry.h"
#include "magnet/service.h"
#include "magnet/store.h"

namespace magnet::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::string_view kRegistryFile = "registry.jsonl";
constexpr std::string_view kHarvestFile = "harvest.json";

// Operational failure carrying the message shown to the operator.
struct Failure {
  std::string message;
};

// Invocation problems detected after parsing.
struct UsageFailure {
  std::string message;
};

template <typename T>
T Check(absl::StatusOr<T> value, std::string_view context) {
  if (!value.ok()) {
    throw Failure{std::string(context) + ": " + value.status().ToString()};
  }
  return *std::move(value);
}

void Check(const absl::Status& status, std::string_view context) {
  if (!status.ok()) throw Failure{std::string(context) + ": " + status.ToString()};
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read " + path.string()};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteText(const fs::path& path, std::string_view contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const auto tmp = fs::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << contents;
    out.flush();
    if (!out) throw Failure{"cannot write " + tmp.string()};
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Failure{"cannot rename " + tmp.string() + ": " + ec.message()};
}

struct Globals {
  std::string store = "magnet-store";
};

fs::path RegistryPath(const Globals& g) { return fs::path(g.store) / kRegistryFile; }

std::optional<RegistryIndex> LoadStoredRegistry(const Globals& g) {
  if (!fs::exists(RegistryPath(g))) return std::nullopt;
  return Check(LoadRorDump(RegistryPath(g)), "registry");
}

RegistryIndex RequireRegistry(const Globals& g) {
  auto registry = LoadStoredRegistry(g);
  if (!registry) {
    throw Failure{"no registry loaded in " + g.store +
                  "; run 'magnet load-ror <dump>' first"};
  }
  return *std::move(registry);
}

std::unique_ptr<CorrectionStore> OpenStore(const Globals& g) {
  return Check(CorrectionStore::Open(g.store), "store");
}

std::string FormatScore(double score) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << score;
  return s.str();
}

// load-ror -------------------------------------------------------------------

struct LoadRorArgs {
  std::string path;
};

int LoadRor(const Globals& g, const LoadRorArgs& a, std::ostream& out) {
  auto registry = Check(LoadRorDump(a.path), a.path);
  Check(MatchIndex::Build(registry).status(), "index");
  WriteText(RegistryPath(g), WriteRorDump(registry));
  std::size_t active = 0, withdrawn = 0;
  for (const auto& [id, r] : registry.records()) {
    active += r.active();
    withdrawn += r.withdrawn();
  }
  out << "loaded " << registry.record_count() << " records (" << active
      << " active, " << withdrawn << " withdrawn) into "
      << RegistryPath(g).string() << "\n";
  return kExitOk;
}

// harvest --------------------------------------------------------------------

struct HarvestArgs {
  std::string ror;
  std::string affiliation;
  std::string doi_file;
  std::optional<int> from_year;
  std::optional<int> to_year;
  std::string endpoint;
  std::string mailto;
  long long cap = kDefaultHarvestCap;
  std::string out;
};

std::vector<std::string> ReadDoiFile(const std::string& path) {
  std::vector<std::string> dois;
  std::istringstream lines(ReadText(path));
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    dois.push_back(line);
  }
  return dois;
}

int Harvest(const Globals& g, const HarvestArgs& a, std::ostream& out,
            std::ostream& err) {
  HarvestQuery query;
  if (!a.ror.empty()) {
    query.mode = HarvestMode::kByRor;
    query.value = CanonicalRorId(a.ror);
  } else if (!a.affiliation.empty()) {
    query.mode = HarvestMode::kByAffiliationSearch;
    query.value = a.affiliation;
  } else {
    query.mode = HarvestMode::kByDoiList;
    query.dois = ReadDoiFile(a.doi_file);
  }
  query.year_from = a.from_year;
  query.year_to = a.to_year;
  if (auto valid = ValidateQuery(query); !valid.ok()) {
    throw UsageFailure{std::string(valid.message())};
  }
  if (a.endpoint.empty()) {
    throw UsageFailure{"no works API endpoint; pass --endpoint or set MAGNET_ENDPOINT"};
  }

  HarvestConfig config;
  config.endpoint = a.endpoint;
  if (!a.mailto.empty()) config.mailto = a.mailto;
  config.harvest_cap = a.cap;
  HarvestObserver observer;
  observer.on_progress = [&err](const HarvestProgress& p) {
    err << "page " << p.pages_fetched << ": " << p.works_received << "/"
        << p.total_count << " works\n";
  };
  auto result = Check(FetchAllWorks(config, query, observer), "harvest");
  const auto works = DeduplicateWorks(std::move(result.works));
  auto groups = GroupWorks(works);

  const auto registry = LoadStoredRegistry(g);
  if (registry) {
    auto index = Check(MatchIndex::Build(*registry), "index");
    for (auto& group : groups) group = SuggestMatches(std::move(group), index);
  } else {
    err << "note: no registry loaded; groups carry no suggestions\n";
  }

  json doc = {{"query", ToJson(query)},
              {"total_count", result.total_count},
              {"works", works.size()},
              {"groups", json::array()}};
  for (const auto& group : groups) doc["groups"].push_back(ToJson(group));
  const fs::path path = a.out.empty() ? fs::path(g.store) / kHarvestFile : fs::path(a.out);
  WriteText(path, doc.dump(1) + "\n");
  out << "harvested " << works.size() << " works in " << result.pages
      << " pages (" << result.retries << " retries); " << groups.size()
      << " affiliation groups written to " << path.string() << "\n";
  return kExitOk;
}

// match ----------------------------------------------------------------------

struct MatchArgs {
  std::string text;
  bool json = false;
};

int Match(const Globals& g, const MatchArgs& a, std::ostream& out) {
  const auto registry = RequireRegistry(g);
  const auto index = Check(MatchIndex::Build(registry), "index");
  const auto candidates = MatchAffiliation(index, a.text);
  if (a.json) {
    json list = json::array();
    for (const auto& c : candidates) {
      auto j = ToJson(c);
      j["name"] = registry.records().at(c.ror_id).primary_name;
      list.push_back(std::move(j));
    }
    out << json{{"query", a.text}, {"candidates", std::move(list)}}.dump() << "\n";
    return kExitOk;
  }
  if (candidates.empty()) {
    out << "no candidates\n";
    return kExitOk;
  }
  int rank = 0;
  for (const auto& c : candidates) {
    const auto& record = registry.records().at(c.ror_id);
    out << ++rank << "\t" << c.ror_id << "\t" << FormatScore(c.score) << "\t"
        << record.primary_name << " (" << record.country_code << ")";
    if (c.evidence.exact_name) out << " [exact]";
    if (c.evidence.acronym_match) out << " [acronym]";
    out << "\n";
  }
  return kExitOk;
}

// decide ---------------------------------------------------------------------

struct DecideArgs {
  std::string groups;
  std::string decisions;
  int accept_top = 0;
  std::string contact;
};

std::vector<AffiliationGroup> ReadGroups(const fs::path& path) {
  const json doc = json::parse(ReadText(path), nullptr, false);
  const json* list = &doc;
  if (doc.is_object() && doc.contains("groups")) list = &doc["groups"];
  if (!list->is_array()) throw Failure{path.string() + ": no groups array"};
  std::vector<AffiliationGroup> groups;
  for (const auto& j : *list) {
    groups.push_back(Check(AffiliationGroupFromJson(j), path.string()));
  }
  return groups;
}

std::vector<CurationDecision> ReadDecisions(const fs::path& path) {
  const json doc = json::parse(ReadText(path), nullptr, false);
  const json* list = &doc;
  if (doc.is_object() && doc.contains("decisions")) list = &doc["decisions"];
  if (!list->is_array()) throw Failure{path.string() + ": no decisions array"};
  std::vector<CurationDecision> decisions;
  for (const auto& j : *list) {
    decisions.push_back(Check(CurationDecisionFromJson(j), path.string()));
  }
  return decisions;
}

int Decide(const Globals& g, const DecideArgs& a, std::ostream& out,
           std::ostream& err) {
  const fs::path groups_path =
      a.groups.empty() ? fs::path(g.store) / kHarvestFile : fs::path(a.groups);
  const auto groups = ReadGroups(groups_path);

  std::vector<CurationDecision> decisions;
  if (!a.decisions.empty()) {
    decisions = ReadDecisions(a.decisions);
  } else {
    if (a.contact.empty()) throw UsageFailure{"--accept-top requires --contact"};
    for (const auto& group : groups) {
      if (static_cast<int>(decisions.size()) == a.accept_top) break;
      if (group.suggestions.empty()) continue;
      const auto& top = group.suggestions.front().ror_id;
      const auto& current = group.current_ror_ids;
      if (std::find(current.begin(), current.end(), top) != current.end()) continue;
      decisions.push_back({group.group_id, {top}, {}, a.contact});
    }
    if (static_cast<int>(decisions.size()) < a.accept_top) {
      err << "note: only " << decisions.size()
          << " groups have a top suggestion to accept\n";
    }
  }

  auto store = OpenStore(g);
  int failures = 0;
  for (const auto& decision : decisions) {
    auto group = std::find_if(groups.begin(), groups.end(), [&](const auto& gr) {
      return gr.group_id == decision.group_id;
    });
    if (group == groups.end()) {
      err << decision.group_id << ": unknown group\n";
      ++failures;
      continue;
    }
    auto request = ApplyDecision(*store, *group, decision);
    if (!request.ok()) {
      err << decision.group_id << ": " << request.status().message() << "\n";
      ++failures;
      continue;
    }
    out << decision.group_id << "\trequest " << request->request_id << "\t"
        << group->raw_string << "\n";
  }
  return failures == 0 ? kExitOk : kExitError;
}

// export / sync / stats ------------------------------------------------------

struct TrackerArgs {
  std::string url;
  std::string token;
};

std::unique_ptr<IssueTracker> MakeTracker(const TrackerArgs& t) {
  if (t.url.empty()) {
    throw Failure{"no issue tracker configured; set MAGNET_TRACKER_URL"};
  }
  return std::make_unique<HttpIssueTracker>(HttpTrackerOptions{t.url, t.token});
}

struct ExportArgs {
  std::string format;
  std::string out;
};

int Export(const Globals& g, const ExportArgs& a, const TrackerArgs& t,
           std::ostream& out) {
  auto store = OpenStore(g);
  if (a.format == "csv") {
    const auto csv = ExportCsv(store->Snapshot());
    if (a.out.empty()) {
      out << csv;
    } else {
      WriteText(a.out, csv);
      out << "wrote " << store->size() << " requests to " << a.out << "\n";
    }
    return kExitOk;
  }
  auto tracker = MakeTracker(t);
  const auto report = Check(ExportIssues(*store, *tracker), "export");
  out << "attempted: " << report.attempted << "\n"
      << "succeeded: " << report.succeeded << "\n"
      << "failed: " << report.failed.size() << "\n"
      << "remaining_backlog: " << report.remaining_backlog << "\n";
  for (const auto& f : report.failed) {
    out << "  request " << f.request_id << ": " << f.reason << "\n";
  }
  return kExitOk;
}

int Sync(const Globals& g, const TrackerArgs& t, std::ostream& out) {
  auto store = OpenStore(g);
  auto tracker = MakeTracker(t);
  const auto updates = Check(SyncStatuses(*store, *tracker), "sync");
  out << "updated: " << updates << "\n";
  return kExitOk;
}

int Stats(const Globals& g, bool as_json, std::ostream& out) {
  auto store = OpenStore(g);
  const auto stats = ComputeStats(*store);
  if (as_json) {
    out << ToJson(stats).dump() << "\n";
    return kExitOk;
  }
  out << "total: " << stats.total << "\n"
      << "pending: " << stats.pending_count << "\n"
      << "exported: " << stats.exported_count << "\n"
      << "open: " << stats.open_count << "\n"
      << "closed: " << stats.closed_count << "\n";
  if (!stats.top_domains.empty()) out << "top domains:\n";
  for (const auto& [domain, count] : stats.top_domains) {
    out << "  " << domain << "\t" << count << "\n";
  }
  if (!stats.per_previous_ror.empty()) out << "per previous ror:\n";
  for (const auto& [id, count] : stats.per_previous_ror) {
    out << "  " << id << "\t" << count << "\n";
  }
  return kExitOk;
}

// serve ----------------------------------------------------------------------

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string endpoint;
};

int Serve(const Globals& g, const ServeArgs& a, const TrackerArgs& t,
          std::ostream& out) {
  std::shared_ptr<const MatchIndex> index;
  if (auto registry = LoadStoredRegistry(g)) {
    index = std::make_shared<const MatchIndex>(
        Check(MatchIndex::Build(*registry), "index"));
  }
  std::shared_ptr<IssueTracker> tracker;
  if (!t.url.empty()) tracker = MakeTracker(t);
  auto store = OpenStore(g);

  ServiceConfig config;
  config.harvest.endpoint = a.endpoint;
  Service service(config, index, *store, tracker);
  out << "serving on http://" << a.host << ":" << a.port << "\n" << std::flush;
  Check(service.Listen(a.host, a.port), "serve");
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Affiliation curation: registry matching, harvesting and "
               "correction publishing.",
               "magnet"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "magnet 0.1.0");

  Globals globals;
  app.add_option("--store", globals.store, "Store directory")
      ->envname("MAGNET_STORE_PATH")
      ->capture_default_str();

  TrackerArgs tracker;
  auto add_tracker = [&tracker](CLI::App* sub) {
    sub->add_option("--tracker-url", tracker.url, "Issue tracker base URL")
        ->envname("MAGNET_TRACKER_URL");
    sub->add_option("--tracker-token", tracker.token, "Issue tracker token")
        ->envname("MAGNET_TRACKER_TOKEN");
  };

  LoadRorArgs load;
  auto* load_cmd = app.add_subcommand("load-ror", "Load a registry dump into the store");
  load_cmd->add_option("path", load.path, "Dump file (JSON array or JSON lines)")
      ->required();

  HarvestArgs harvest;
  auto* harvest_cmd = app.add_subcommand("harvest", "Harvest works and group affiliations");
  auto* mode = harvest_cmd->add_option_group("mode");
  mode->add_option("--ror", harvest.ror, "Works of one registry id");
  mode->add_option("--affiliation", harvest.affiliation, "Raw affiliation search");
  mode->add_option("--doi-file", harvest.doi_file, "File with one DOI per line");
  mode->require_option(1);
  harvest_cmd->add_option("--from-year", harvest.from_year, "First publication year");
  harvest_cmd->add_option("--to-year", harvest.to_year, "Last publication year");
  harvest_cmd->add_option("--endpoint", harvest.endpoint, "Works API base URL")
      ->envname("MAGNET_ENDPOINT");
  harvest_cmd->add_option("--mailto", harvest.mailto, "Contact for the polite pool")
      ->envname("MAGNET_MAILTO");
  harvest_cmd->add_option("--cap", harvest.cap, "Maximum works per harvest")
      ->envname("MAGNET_HARVEST_CAP")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  harvest_cmd->add_option("--out", harvest.out, "Output file (default <store>/harvest.json)");

  MatchArgs match;
  auto* match_cmd = app.add_subcommand("match", "Rank registry candidates for one string");
  match_cmd->add_option("text", match.text, "Raw affiliation string")->required();
  match_cmd->add_flag("--json", match.json, "Structured output");

  DecideArgs decide;
  auto* decide_cmd = app.add_subcommand("decide", "Record curator decisions as correction requests");
  decide_cmd->add_option("--groups", decide.groups, "Harvest output (default <store>/harvest.json)");
  auto* source = decide_cmd->add_option_group("source");
  source->add_option("--decisions", decide.decisions, "JSON file of decisions");
  source->add_option("--accept-top", decide.accept_top,
                     "Accept the top suggestion of the first N groups")
      ->check(CLI::PositiveNumber);
  source->require_option(1);
  decide_cmd->add_option("--contact", decide.contact, "Curator e-mail (only the domain is kept)")
      ->envname("MAGNET_CONTACT");

  ExportArgs exp;
  auto* export_cmd = app.add_subcommand("export", "Publish corrections as issues or CSV");
  export_cmd->add_option("--format", exp.format, "issues or csv")
      ->required()
      ->check(CLI::IsMember({"issues", "csv"}));
  export_cmd->add_option("--out", exp.out, "CSV output file (default stdout)");
  add_tracker(export_cmd);

  auto* sync_cmd = app.add_subcommand("sync", "Close requests whose issues are closed");
  add_tracker(sync_cmd);

  bool stats_json = false;
  auto* stats_cmd = app.add_subcommand("stats", "Correction statistics");
  stats_cmd->add_flag("--json", stats_json, "Structured output");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
  serve_cmd->add_option("--port", serve.port, "Listen port")
      ->envname("MAGNET_PORT")
      ->check(CLI::Range(1, 65535))
      ->capture_default_str();
  serve_cmd->add_option("--host", serve.host, "Listen address")->capture_default_str();
  serve_cmd->add_option("--endpoint", serve.endpoint, "Works API base URL")
      ->envname("MAGNET_ENDPOINT");
  add_tracker(serve_cmd);

  std::vector<std::string> argv_storage = {"magnet"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "magnet: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (load_cmd->parsed()) return LoadRor(globals, load, out);
    if (harvest_cmd->parsed()) return Harvest(globals, harvest, out, err);
    if (match_cmd->parsed()) return Match(globals, match, out);
    if (decide_cmd->parsed()) return Decide(globals, decide, out, err);
    if (export_cmd->parsed()) return Export(globals, exp, tracker, out);
    if (sync_cmd->parsed()) return Sync(globals, tracker, out);
    if (stats_cmd->parsed()) return Stats(globals, stats_json, out);
    if (serve_cmd->parsed()) return Serve(globals, serve, tracker, out);
  } catch (const UsageFailure& e) {
    err << "magnet: " << e.message << "\n\n" << app.help();
    return kExitUsage;
  } catch (const Failure& e) {
    err << "magnet: " << e.message << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "magnet: " << e.what() << "\n";
    return kExitError;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace magnet::cli
