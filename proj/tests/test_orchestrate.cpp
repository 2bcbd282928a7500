#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <fstream>

#include "pythag/orchestrate.hpp"
#include "pythag/split.hpp"
#include "support.hpp"

using namespace pythag;
using testsupport::make_doc;

namespace {

std::vector<std::pair<Cube, CnfDocument>> fano_cubes() {
  auto [doc, table] = encode(TripleSystem::from_edges(testsupport::fano_edges()),
                             UpperBound{7});
  return split(doc, table, {1, 2});
}

std::vector<std::pair<Cube, CnfDocument>> n60_cubes(int m) {
  auto sys = TripleSystem::from_triples(enumerate_triples(UpperBound{60}));
  auto [doc, table] = encode(sys, UpperBound{60});
  return split(doc, table, choose_bfs(sys, m).specials);
}

bool has_event(const CampaignResult& r, const std::string& kind) {
  for (const CampaignEvent& e : r.events)
    if (e.kind == kind) return true;
  return false;
}

}  // namespace

TEST_CASE("campaign on a satisfiable split") {
  for (int pool : {1, 3}) {
    PoolConfig config;
    config.pool_size = pool;
    CampaignResult r = run_campaign(n60_cubes(2), config);
    CHECK(r.outcome == Verdict::Sat);
    REQUIRE(r.winning_cube >= 0);
    CHECK_FALSE(r.model.empty());
    CHECK(has_event(r, "campaign_sat"));
  }
}

TEST_CASE("all cubes of an unsatisfiable formula refute") {
  PoolConfig config;
  config.pool_size = 2;
  CampaignResult r = run_campaign(fano_cubes(), config);
  CHECK(r.outcome == Verdict::Unsat);
  CHECK(r.winning_cube == -1);
  for (const CubeRecord& rec : r.records) {
    CHECK(rec.verdict == Verdict::Unsat);
    CHECK(rec.started);
  }
}

TEST_CASE("campaign verdict equals direct solve across plans") {
  for (int bound = 10; bound <= 60; bound += 10) {
    auto sys = TripleSystem::from_triples(enumerate_triples(UpperBound{bound}));
    auto [doc, table] = encode(sys, UpperBound{bound});
    Verdict direct = solve(doc).verdict;
    for (int m = 1; m <= 3; ++m) {
      if (m > static_cast<int>(sys.vertices().size())) continue;
      for (bool use_bfs : {true, false}) {
        SplitPlan plan = use_bfs ? choose_bfs(sys, m) : choose_random(sys, m, bound + m);
        PoolConfig config;
        config.pool_size = 2;
        CampaignResult r = run_campaign(split(doc, table, plan.specials), config);
        CHECK(r.outcome == direct);
      }
    }
  }
}

TEST_CASE("campaign verdict equals direct solve over every m<=2 plan at N=30") {
  auto sys = TripleSystem::from_triples(enumerate_triples(UpperBound{30}));
  auto [doc, table] = encode(sys, UpperBound{30});
  Verdict direct = solve(doc).verdict;
  const auto& verts = sys.vertices();
  PoolConfig config;
  config.pool_size = 4;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    CHECK(run_campaign(split(doc, table, {verts[i]}), config).outcome == direct);
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      CampaignResult r = run_campaign(split(doc, table, {verts[i], verts[j]}), config);
      CHECK(r.outcome == direct);
    }
  }
}

TEST_CASE("early termination cancels slow jobs") {
  // cube 0 answers after a short delay; the rest would sit much longer
  std::vector<std::pair<Cube, CnfDocument>> cubes;
  for (int i = 0; i < 4; ++i) cubes.emplace_back(Cube{}, make_doc(2, {{1}, {2}}));
  PoolConfig config;
  config.pool_size = 4;
  config.inject_start_delay_ms = {100, 900, 900, 900};

  auto t0 = std::chrono::steady_clock::now();
  CampaignResult r = run_campaign(cubes, config);
  double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  CHECK(r.outcome == Verdict::Sat);
  CHECK(r.winning_cube == 0);
  CHECK(took < 2.5);  // sequential execution sits through 2.8s of delays
  int cancelled = 0;
  for (const CubeRecord& rec : r.records)
    if (rec.cancelled) ++cancelled;
  CHECK(cancelled == 3);
  bool cancel_logged = has_event(r, "job_cancelled") || has_event(r, "job_skipped");
  CHECK(cancel_logged);
}

TEST_CASE("no job starts after the winning verdict") {
  // pool of 1 forces strict ordering: cube 0 answers SAT, the rest never run
  std::vector<std::pair<Cube, CnfDocument>> cubes;
  for (int i = 0; i < 4; ++i) cubes.emplace_back(Cube{}, make_doc(1, {{1}}));
  PoolConfig config;
  config.pool_size = 1;
  CampaignResult r = run_campaign(cubes, config);
  CHECK(r.outcome == Verdict::Sat);
  CHECK(r.winning_cube == 0);
  double sat_at = -1;
  for (const CampaignEvent& e : r.events)
    if (e.kind == "campaign_sat") sat_at = e.at_seconds;
  REQUIRE(sat_at >= 0);
  for (const CampaignEvent& e : r.events)
    if (e.kind == "job_started") CHECK(e.at_seconds <= sat_at);
  for (int i = 1; i < 4; ++i) {
    CHECK_FALSE(r.records[i].started);
    CHECK(r.records[i].cancelled);
  }
}

TEST_CASE("worker crash marks the cube indeterminate and the campaign continues") {
  auto cubes = fano_cubes();
  PoolConfig config;
  config.pool_size = 2;
  ExternalSolverConfig broken;
  broken.path = "/bin/false";  // exits 1 with no output
  broken.timeout_seconds = 10;
  config.external = broken;
  CampaignResult r = run_campaign(cubes, config);
  CHECK(r.outcome == Verdict::Indeterminate);
  CHECK(r.unresolved().size() == cubes.size());
  for (const CubeRecord& rec : r.records) CHECK_FALSE(rec.diagnostic.empty());
}

TEST_CASE("budget exhaustion surfaces as indeterminate") {
  // pigeonhole: guaranteed to conflict well past any 10-conflict budget
  CnfDocument hard;
  int holes = 8, pigeons = 9;
  hard.var_count = pigeons * holes;
  auto var = [&](int p, int h) { return p * holes + h + 1; };
  for (int p = 0; p < pigeons; ++p) {
    std::vector<int> clause;
    for (int h = 0; h < holes; ++h) clause.push_back(var(p, h));
    hard.clauses.push_back(clause);
  }
  for (int h = 0; h < holes; ++h)
    for (int p1 = 0; p1 < pigeons; ++p1)
      for (int p2 = p1 + 1; p2 < pigeons; ++p2)
        hard.clauses.push_back({-var(p1, h), -var(p2, h)});

  std::vector<std::pair<Cube, CnfDocument>> cubes;
  cubes.emplace_back(Cube{}, hard);
  cubes.emplace_back(Cube{}, hard);
  PoolConfig config;
  config.pool_size = 2;
  config.max_conflicts_per_job = 10;
  CampaignResult r = run_campaign(cubes, config);
  CHECK(r.outcome == Verdict::Indeterminate);
  CHECK(r.unresolved().size() == 2);
}

TEST_CASE("empty cube list is rejected") {
  CHECK_THROWS_AS(run_campaign({}, PoolConfig{}), std::invalid_argument);
  PoolConfig bad;
  bad.pool_size = 0;
  CHECK_THROWS_AS(run_campaign(fano_cubes(), bad), std::invalid_argument);
}

TEST_CASE("file bridge with a stub solver") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "pytc-bridge-sat";
  fs::remove_all(dir);
  fs::create_directories(dir);

  // stub: sleep briefly, then claim SAT with the all-true model (right for
  // cubes whose appended units are positive, wrong for the others -- those
  // fail re-verification and stay unresolved, which still ends the campaign)
  fs::path stub = dir / "stub-solver.sh";
  {
    std::ofstream f(stub);
    f << "#!/bin/sh\nsleep 0.2\necho 's SATISFIABLE'\necho 'v 1 2 -3 4 5 -6 0'\n";
  }
  fs::permissions(stub, fs::perms::owner_all);

  auto [doc, table] = encode(TripleSystem::from_triples(enumerate_triples(UpperBound{10})),
                             UpperBound{10});
  auto cubes = split(doc, table, {3, 4});

  BridgeConfig bridge;
  bridge.dir = dir;
  bridge.pool_size = 2;
  bridge.poll_timeout_seconds = 30;
  bridge.solver_command = stub.string();
  CampaignResult r = run_file_campaign(cubes, bridge);
  CHECK(r.outcome == Verdict::Sat);
  CHECK(r.winning_cube >= 0);
  CHECK(model_satisfies(cubes[r.winning_cube].second, r.model));
  CHECK(fs::exists(dir / "cube_0.cnf"));

  write_campaign_log(r, dir / "campaign.jsonl");
  std::ifstream log(dir / "campaign.jsonl");
  std::string first_line;
  std::getline(log, first_line);
  CHECK(first_line.find("\"campaign\"") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("file bridge treats garbage output as indeterminate") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "pytc-bridge-junk";
  fs::remove_all(dir);
  fs::create_directories(dir);
  fs::path stub = dir / "stub.sh";
  {
    std::ofstream f(stub);
    f << "#!/bin/sh\necho 'segmentation fault (core dumped)'\n";
  }
  fs::permissions(stub, fs::perms::owner_all);

  auto cubes = fano_cubes();
  BridgeConfig bridge;
  bridge.dir = dir;
  bridge.pool_size = 2;
  bridge.poll_timeout_seconds = 20;
  bridge.solver_command = stub.string();
  CampaignResult r = run_file_campaign(cubes, bridge);
  CHECK(r.outcome == Verdict::Indeterminate);
  CHECK(r.unresolved().size() == cubes.size());
  fs::remove_all(dir);
}

TEST_CASE("file bridge poll-only mode times out to indeterminate") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "pytc-bridge-empty";
  fs::remove_all(dir);
  BridgeConfig bridge;
  bridge.dir = dir;
  bridge.launch = false;  // nobody will ever produce outputs
  bridge.poll_timeout_seconds = 0.4;
  bridge.poll_interval_seconds = 0.05;
  CampaignResult r = run_file_campaign(fano_cubes(), bridge);
  CHECK(r.outcome == Verdict::Indeterminate);
  bool timed_out = false;
  for (const CampaignEvent& e : r.events)
    if (e.kind == "poll_timeout") timed_out = true;
  CHECK(timed_out);
  fs::remove_all(dir);
}
