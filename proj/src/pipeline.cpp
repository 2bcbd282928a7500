#include "pythag/pipeline.hpp"

#include <chrono>
#include <fstream>

#include <json.hpp>

namespace pythag {

namespace {

void write_text_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + p.string());
}

nlohmann::json trace_to_json(const ReductionTrace& trace) {
  nlohmann::json j = nlohmann::json::array();
  for (const PendantRemoval& r : trace.removals) {
    nlohmann::json item;
    item["edge"] = {r.edge[0], r.edge[1], r.edge[2]};
    item["degree_one"] = r.degree_one;
    j.push_back(item);
  }
  return j;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
  namespace fs = std::filesystem;
  const bool persist = !config.out_dir.empty();
  if (persist) fs::create_directories(config.out_dir);

  PipelineResult result;
  UpperBound bound{config.bound};

  std::vector<Triple> triples = enumerate_triples(bound);
  result.triple_count = static_cast<int>(triples.size());
  TripleSystem full = TripleSystem::from_triples(triples);

  TripleSystem working = full;
  ReductionTrace trace;
  if (config.reduce) {
    auto [reduced, t] = remove_pendants(full);
    working = std::move(reduced);
    trace = std::move(t);
  }
  result.reduced_edge_count = static_cast<int>(working.edges().size());

  auto [doc, table] = encode(working, bound);

  std::vector<std::pair<Cube, CnfDocument>> cubes;
  if (config.m >= 1 && !working.empty() &&
      config.m <= static_cast<int>(working.vertices().size())) {
    result.plan = config.method == SplitMethod::Bfs
                      ? choose_bfs(working, config.m)
                      : choose_random(working, config.m, config.seed);
    cubes = split(doc, table, result.plan.specials);
  } else {
    result.split_skipped = config.m >= 1;
    cubes.emplace_back(Cube{}, doc);  // direct solve
  }

  PoolConfig pool;
  pool.pool_size = config.pool_size;
  pool.max_conflicts_per_job = config.max_conflicts_per_job;
  pool.max_seconds_per_job = config.max_seconds_per_job;
  pool.external = config.external;
  pool.solver_seed = config.seed;
  result.campaign = run_campaign(cubes, pool);
  result.verdict = result.campaign.outcome;

  if (result.verdict == Verdict::Sat) {
    Coloring reduced_coloring = decode_model(result.campaign.model, table);
    result.coloring = config.reduce ? restore_coloring(trace, reduced_coloring)
                                    : reduced_coloring;
    result.violations = verify(bound, result.coloring);
  }

  if (persist) {
    write_text_file(config.out_dir / "triples.json", triples_to_json(triples) + "\n");
    if (config.reduce) {
      std::vector<Triple> reduced_triples;
      for (const Edge& e : working.edges())
        reduced_triples.push_back(Triple{e[0], e[1], e[2]});
      write_text_file(config.out_dir / "reduced.json",
                      triples_to_json(reduced_triples) + "\n");
      write_text_file(config.out_dir / "trace.json", trace_to_json(trace).dump() + "\n");
    }
    write_text_file(config.out_dir / "problem.cnf", emit(doc));
    write_text_file(config.out_dir / "remap.json", table.to_json() + "\n");
    if (cubes.size() > 1) {
      fs::create_directories(config.out_dir / "cubes");
      for (std::size_t i = 0; i < cubes.size(); ++i)
        write_text_file(config.out_dir / "cubes" / ("cube_" + std::to_string(i) + ".cnf"),
                        emit(cubes[i].second));
    }
    write_campaign_log(result.campaign, config.out_dir / "campaign.jsonl");
    if (result.verdict == Verdict::Sat) {
      save_coloring(result.coloring, config.out_dir / "coloring.json");
      write_text_file(config.out_dir / "violations.json",
                      violations_to_json(result.violations) + "\n");
      int height = config.render_height > 0 ? config.render_height
                                            : default_column_height(bound);
      write_ppm(render(bound, result.coloring, height),
                config.out_dir / "coloring.ppm");
    }

    nlohmann::json manifest;
    manifest["tool"] = "pytc";
    manifest["version"] = "0.1.0";
    manifest["created_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count();
    manifest["bound"] = config.bound;
    manifest["reduce"] = config.reduce;
    manifest["m"] = config.m;
    manifest["method"] = to_string(config.method);
    manifest["seed"] = config.seed;
    manifest["pool_size"] = config.pool_size;
    manifest["solver"] = config.external ? config.external->path : "embedded";
    if (config.external) {
      manifest["solver_args"] = config.external->args;
      manifest["solver_timeout_seconds"] = config.external->timeout_seconds;
    }
    if (config.max_conflicts_per_job)
      manifest["max_conflicts_per_job"] = *config.max_conflicts_per_job;
    if (config.max_seconds_per_job)
      manifest["max_seconds_per_job"] = *config.max_seconds_per_job;
    manifest["render_height"] = config.render_height > 0
                                    ? config.render_height
                                    : default_column_height(bound);
    manifest["triple_count"] = result.triple_count;
    manifest["reduced_edge_count"] = result.reduced_edge_count;
    manifest["specials"] = result.plan.specials;
    manifest["split_skipped"] = result.split_skipped;
    manifest["verdict"] = to_string(result.verdict);
    write_text_file(config.out_dir / "manifest.json", manifest.dump(2) + "\n");
  }
  return result;
}

}  // namespace pythag
