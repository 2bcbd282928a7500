#include "pythag/split.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pythag/rng.hpp"

namespace pythag {

const char* to_string(SplitMethod m) {
  return m == SplitMethod::Bfs ? "bfs" : "random";
}

namespace {

constexpr int kUnreached = std::numeric_limits<int>::max();

// distances from a source to every vertex, in edges traversed
std::map<int, int> distances_from(const TripleSystem& sys, int source) {
  std::map<int, int> dist;
  dist[source] = 0;
  std::deque<int> queue{source};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int ei : sys.incident(x)) {
      for (int y : sys.edges()[ei]) {
        if (dist.count(y)) continue;
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

}  // namespace

SplitPlan choose_bfs(const TripleSystem& sys, int m) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (sys.empty()) throw std::invalid_argument("cannot split an empty system");
  if (m > static_cast<int>(sys.vertices().size()))
    throw std::invalid_argument("m exceeds the number of vertices");

  SplitPlan plan;
  plan.method = SplitMethod::Bfs;
  plan.seed = sys.edges().front();  // lexicographically smallest edge
  BfsLevels levels = bfs_levels(sys, plan.seed);
  plan.levels_used = static_cast<int>(levels.levels.size());

  plan.specials.push_back(plan.seed[0]);
  std::vector<std::map<int, int>> dist{distances_from(sys, plan.specials[0])};

  if (m >= 2) {
    // one vertex of a deepest-level triple, as far from the first as possible
    const Edge& deep = levels.levels.back().front();
    int best = -1, best_d = -1;
    for (int v : deep) {
      if (v == plan.specials[0]) continue;
      auto it = dist[0].find(v);
      int d = it == dist[0].end() ? kUnreached : it->second;
      if (d > best_d) {
        best = v;
        best_d = d;
      }
    }
    plan.specials.push_back(best);
    dist.push_back(distances_from(sys, best));
    if (best_d <= 1) plan.note = "degenerate split: specials share an edge";
  }

  while (static_cast<int>(plan.specials.size()) < m) {
    // greedy max-min distance to the chosen set
    long long best_score = -1;
    int best = -1;
    for (int v : sys.vertices()) {
      if (std::find(plan.specials.begin(), plan.specials.end(), v) !=
          plan.specials.end())
        continue;
      long long score = kUnreached;
      for (const auto& d : dist) {
        auto it = d.find(v);
        long long dv = it == d.end() ? kUnreached : it->second;
        score = std::min(score, dv);
      }
      if (score > best_score) {
        best_score = score;
        best = v;
      }
    }
    plan.specials.push_back(best);
    dist.push_back(distances_from(sys, best));
  }
  return plan;
}

SplitPlan choose_random(const TripleSystem& sys, int m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (m > static_cast<int>(sys.vertices().size()))
    throw std::invalid_argument("m exceeds the number of vertices");
  Rng rng(mix_seed(seed, 0x5eedULL));
  auto picks = rng.sample_indices(sys.vertices().size(), m);
  SplitPlan plan;
  plan.method = SplitMethod::Random;
  for (std::size_t i : picks) plan.specials.push_back(sys.vertices()[i]);
  std::sort(plan.specials.begin(), plan.specials.end());
  return plan;
}

namespace {

std::string assignment_bits(std::size_t q, int m) {
  std::string bits(m, '0');
  for (int j = 0; j < m; ++j)
    if ((q >> (m - 1 - j)) & 1) bits[j] = '1';
  return bits;
}

}  // namespace

IndependenceReport independence_score(const TripleSystem& sys, const SplitPlan& plan,
                                      int trials, double removal_fraction,
                                      CostMetric metric, std::uint64_t seed,
                                      const SolveLimits& per_solve) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (removal_fraction < 0.0 || removal_fraction >= 1.0)
    throw std::invalid_argument("removal fraction must lie in [0, 1)");
  if (plan.specials.empty()) throw std::invalid_argument("plan has no specials");

  const int m = plan.m();
  const std::size_t assignments = std::size_t{1} << m;
  IndependenceReport report;
  report.specials = plan.specials;
  report.m = m;
  report.trials_requested = trials;
  report.removal_fraction = removal_fraction;
  report.metric = metric;
  report.seed = seed;
  report.costs.assign(assignments, std::vector<double>(trials, -1.0));

  const auto& all_edges = sys.edges();
  int bound = sys.vertices().empty() ? 1 : sys.vertices().back();
  auto drop = static_cast<std::size_t>(
      std::floor(removal_fraction * static_cast<double>(all_edges.size())));

  for (int trial = 0; trial < trials; ++trial) {
    // one removal sample per trial, shared across the 2^m assignments
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(trial)));
    auto removed = rng.sample_indices(all_edges.size(), drop);
    std::vector<bool> gone(all_edges.size(), false);
    for (std::size_t i : removed) gone[i] = true;
    std::vector<Edge> kept;
    kept.reserve(all_edges.size() - drop);
    for (std::size_t i = 0; i < all_edges.size(); ++i)
      if (!gone[i]) kept.push_back(all_edges[i]);
    TripleSystem reduced = TripleSystem::from_edges(std::move(kept));

    bool specials_present = true;
    for (int s : plan.specials)
      if (!reduced.has_vertex(s)) specials_present = false;
    if (!specials_present) {
      report.incomplete_trials.push_back(trial);
      continue;
    }

    auto [doc, table] = encode(reduced, UpperBound{bound});
    auto cubes = split(doc, table, plan.specials);
    bool complete = true;
    std::vector<double> trial_costs(assignments, -1.0);
    for (std::size_t q = 0; q < assignments; ++q) {
      SolveResult r = solve(cubes[q].second, per_solve);
      if (r.verdict == Verdict::Indeterminate) {
        complete = false;
        break;
      }
      trial_costs[q] = metric == CostMetric::Decisions
                           ? static_cast<double>(r.stats.decisions)
                           : r.stats.seconds;
    }
    if (!complete) {
      report.incomplete_trials.push_back(trial);
      continue;
    }
    for (std::size_t q = 0; q < assignments; ++q)
      report.costs[q][trial] = trial_costs[q];
    ++report.trials_completed;
  }

  report.assignment_means.assign(assignments, 0.0);
  if (report.trials_completed > 0) {
    for (std::size_t q = 0; q < assignments; ++q) {
      double sum = 0.0;
      for (double c : report.costs[q])
        if (c >= 0.0) sum += c;
      report.assignment_means[q] = sum / report.trials_completed;
    }
    double mean_of_means = 0.0;
    for (double v : report.assignment_means) mean_of_means += v;
    mean_of_means /= static_cast<double>(assignments);
    double acc = 0.0;
    for (double v : report.assignment_means) {
      double d = v - mean_of_means;
      acc += d * d;
    }
    report.variance = assignments > 1 ? acc / static_cast<double>(assignments - 1) : 0.0;
  }
  return report;
}

std::string IndependenceReport::to_json() const {
  nlohmann::json j;
  j["specials"] = specials;
  j["m"] = m;
  j["trials_requested"] = trials_requested;
  j["trials_completed"] = trials_completed;
  j["removal_fraction"] = removal_fraction;
  j["metric"] = metric == CostMetric::Decisions ? "decisions" : "wall_time";
  j["seed"] = seed;
  j["assignment_means"] = assignment_means;
  j["variance"] = variance;
  j["incomplete_trials"] = incomplete_trials;
  nlohmann::json costs_json = nlohmann::json::object();
  for (std::size_t q = 0; q < costs.size(); ++q)
    costs_json[assignment_bits(q, m)] = costs[q];
  j["costs"] = costs_json;
  return j.dump(2);
}

std::string IndependenceReport::to_csv() const {
  std::ostringstream out;
  out << "assignment,trial,cost\n";
  for (std::size_t q = 0; q < costs.size(); ++q)
    for (std::size_t t = 0; t < costs[q].size(); ++t)
      if (costs[q][t] >= 0.0)
        out << assignment_bits(q, m) << ',' << t << ',' << costs[q][t] << '\n';
  return out.str();
}

}  // namespace pythag
