#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "pythag/orchestrate.hpp"
#include "pythag/split.hpp"
#include "pythag/verify_render.hpp"

namespace pythag {

// gen -> reduce -> encode -> split -> campaign -> decode -> restore ->
// verify -> render, the full chain in order.
struct PipelineConfig {
  int bound = 100;
  bool reduce = true;
  int m = 2;  // 0 = direct solve, no split
  SplitMethod method = SplitMethod::Bfs;
  std::uint64_t seed = 0;
  int pool_size = 2;
  std::optional<ExternalSolverConfig> external;
  std::optional<std::int64_t> max_conflicts_per_job;
  std::optional<double> max_seconds_per_job;
  std::filesystem::path out_dir;  // empty = keep everything in memory
  int render_height = 0;          // 0 = ceil(sqrt(bound))
};

struct PipelineResult {
  Verdict verdict = Verdict::Indeterminate;
  Coloring coloring;                  // verified full coloring when SAT
  std::vector<Violation> violations;  // empty when the coloring verifies
  CampaignResult campaign;
  SplitPlan plan;
  int triple_count = 0;
  int reduced_edge_count = 0;
  bool split_skipped = false;  // reduced system had no edges to split on
};

PipelineResult run_pipeline(const PipelineConfig&);

}  // namespace pythag
