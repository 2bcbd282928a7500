#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pythag/cnf.hpp"
#include "pythag/hypergraph.hpp"
#include "pythag/solver.hpp"

namespace pythag {

enum class SplitMethod { Bfs, Random };

const char* to_string(SplitMethod);

struct SplitPlan {
  std::vector<int> specials;
  SplitMethod method = SplitMethod::Bfs;
  Edge seed{};         // BFS provenance
  int levels_used = 0;
  std::string note;    // degeneracy warnings

  int m() const { return static_cast<int>(specials.size()); }
};

// Picks m far-apart vertices. Seed = lexicographically smallest edge; the
// second special comes from a triple of the deepest BFS level, preferring
// the vertex farthest from the first. Further specials greedily maximize the
// minimum distance to those already chosen (ties to the smaller vertex;
// unreachable counts as infinitely far).
SplitPlan choose_bfs(const TripleSystem&, int m);

// Uniform sample of m distinct vertices; identical plan for identical seed.
SplitPlan choose_random(const TripleSystem&, int m, std::uint64_t seed);

enum class CostMetric { Decisions, WallTime };

struct IndependenceReport {
  std::vector<int> specials;
  int m = 0;
  int trials_requested = 0;
  int trials_completed = 0;
  double removal_fraction = 0.0;
  CostMetric metric = CostMetric::Decisions;
  std::uint64_t seed = 0;

  // costs[assignment][trial]; -1 marks solves from incomplete trials
  std::vector<std::vector<double>> costs;
  std::vector<double> assignment_means;  // over completed trials
  double variance = 0.0;                 // sample variance of the means
  std::vector<int> incomplete_trials;

  std::string to_json() const;
  std::string to_csv() const;  // assignment bits, trial, cost
};

// Per trial: delete removal_fraction of the edges uniformly at random (one
// sample per trial, shared by all 2^m assignments), encode, and solve every
// cube, recording the cost. Reports per-assignment mean costs over completed
// trials and the sample variance of those means. A trial is incomplete --
// excluded and reported -- when any solve is Indeterminate or when removal
// erased every edge through some special vertex.
IndependenceReport independence_score(const TripleSystem&, const SplitPlan&,
                                      int trials, double removal_fraction,
                                      CostMetric metric = CostMetric::Decisions,
                                      std::uint64_t seed = 0,
                                      const SolveLimits& per_solve = {});

}  // namespace pythag
