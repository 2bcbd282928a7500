#include "pythag/hypergraph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pythag {

namespace {

std::runtime_error unknown_vertex(int v) {
  std::ostringstream msg;
  msg << "unknown vertex " << v;
  return std::runtime_error(msg.str());
}

}  // namespace

TripleSystem TripleSystem::from_edges(std::vector<Edge> edges) {
  TripleSystem sys;
  for (Edge& e : edges) e = make_edge(e[0], e[1], e[2]);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  sys.edges_ = std::move(edges);

  std::set<int> verts;
  for (const Edge& e : sys.edges_) verts.insert(e.begin(), e.end());
  sys.vertices_.assign(verts.begin(), verts.end());
  for (int i = 0; i < static_cast<int>(sys.vertices_.size()); ++i)
    sys.index_[sys.vertices_[i]] = i;

  sys.incident_.resize(sys.vertices_.size());
  for (int ei = 0; ei < static_cast<int>(sys.edges_.size()); ++ei)
    for (int v : sys.edges_[ei]) sys.incident_[sys.index_[v]].push_back(ei);

  // Linear iff no vertex pair lies in two edges.
  std::set<std::pair<int, int>> pairs;
  sys.linear_ = true;
  for (const Edge& e : sys.edges_) {
    std::pair<int, int> p01{e[0], e[1]}, p02{e[0], e[2]}, p12{e[1], e[2]};
    for (const auto& p : {p01, p02, p12})
      if (!pairs.insert(p).second) sys.linear_ = false;
  }
  return sys;
}

TripleSystem TripleSystem::from_triples(const std::vector<Triple>& triples) {
  std::vector<Edge> edges;
  edges.reserve(triples.size());
  for (const Triple& t : triples) edges.push_back(Edge{t.a, t.b, t.c});
  return from_edges(std::move(edges));
}

bool TripleSystem::has_edge(const Edge& e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

int TripleSystem::vertex_index(int v) const {
  auto it = index_.find(v);
  if (it == index_.end()) throw unknown_vertex(v);
  return it->second;
}

int TripleSystem::degree(int v) const {
  return static_cast<int>(incident(v).size());
}

const std::vector<int>& TripleSystem::incident(int v) const {
  return incident_[vertex_index(v)];
}

LinkGraph TripleSystem::link(int v) const {
  LinkGraph lg;
  lg.center = v;
  for (int ei : incident(v)) {
    const Edge& e = edges_[ei];
    std::pair<int, int> p;
    if (e[0] == v) p = {e[1], e[2]};
    else if (e[1] == v) p = {e[0], e[2]};
    else p = {e[0], e[1]};
    lg.pairs.push_back(p);
  }
  std::sort(lg.pairs.begin(), lg.pairs.end());
  return lg;
}

std::pair<TripleSystem, ReductionTrace> remove_pendants(const TripleSystem& sys) {
  std::vector<Edge> edges = sys.edges();  // already lex sorted
  std::map<int, int> degree;
  for (const Edge& e : edges)
    for (int v : e) ++degree[v];

  std::vector<bool> removed(edges.size(), false);
  ReductionTrace trace;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (removed[i]) continue;
      PendantRemoval rec;
      rec.edge = edges[i];
      for (int v : edges[i])
        if (degree[v] == 1) rec.degree_one.push_back(v);
      if (rec.degree_one.empty()) continue;
      removed[i] = true;
      for (int v : edges[i]) --degree[v];
      trace.removals.push_back(std::move(rec));
      changed = true;
    }
  }

  std::vector<Edge> kept;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (!removed[i]) kept.push_back(edges[i]);
  return {TripleSystem::from_edges(std::move(kept)), std::move(trace)};
}

Coloring restore_coloring(const ReductionTrace& trace, Coloring coloring) {
  for (auto it = trace.removals.rbegin(); it != trace.removals.rend(); ++it) {
    const Edge& e = it->edge;
    std::vector<int> free_verts;
    std::optional<bool> anchor;
    for (int v : e) {
      auto found = coloring.find(v);
      if (found == coloring.end()) free_verts.push_back(v);
      else if (!anchor) anchor = found->second;
    }
    if (free_verts.empty()) {
      bool c0 = coloring.at(e[0]);
      if (coloring.at(e[1]) == c0 && coloring.at(e[2]) == c0) {
        std::ostringstream msg;
        msg << "coloring invalid before restoration: edge {" << e[0] << "," << e[1]
            << "," << e[2] << "} already monochromatic";
        throw std::invalid_argument(msg.str());
      }
      continue;
    }
    if (anchor) {
      // smallest free vertex opposite the first colored one, rest true
      coloring[free_verts.front()] = !*anchor;
      for (std::size_t i = 1; i < free_verts.size(); ++i)
        coloring[free_verts[i]] = true;
    } else {
      coloring[free_verts.front()] = false;
      for (std::size_t i = 1; i < free_verts.size(); ++i)
        coloring[free_verts[i]] = true;
    }
  }
  return coloring;
}

BfsLevels bfs_levels(const TripleSystem& sys, const Edge& seed) {
  if (!sys.has_edge(seed)) {
    std::ostringstream msg;
    msg << "seed {" << seed[0] << "," << seed[1] << "," << seed[2]
        << "} is not an edge of the system";
    throw std::invalid_argument(msg.str());
  }
  const auto& edges = sys.edges();
  int seed_idx = static_cast<int>(
      std::lower_bound(edges.begin(), edges.end(), seed) - edges.begin());

  std::vector<int> level(edges.size(), -1);
  level[seed_idx] = 0;
  std::deque<int> queue{seed_idx};
  int max_level = 0;
  while (!queue.empty()) {
    int ei = queue.front();
    queue.pop_front();
    for (int v : edges[ei]) {
      for (int nj : sys.incident(v)) {
        if (level[nj] != -1) continue;
        level[nj] = level[ei] + 1;
        max_level = std::max(max_level, level[nj]);
        queue.push_back(nj);
      }
    }
  }

  BfsLevels out;
  out.seed = seed;
  out.levels.resize(max_level + 1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (level[i] == -1) out.unreachable.push_back(edges[i]);
    else out.levels[level[i]].push_back(edges[i]);
  }
  return out;
}

std::optional<int> vertex_distance(const TripleSystem& sys, int u, int v) {
  if (!sys.has_vertex(u)) throw unknown_vertex(u);
  if (!sys.has_vertex(v)) throw unknown_vertex(v);
  if (u == v) return 0;

  std::map<int, int> dist;
  dist[u] = 0;
  std::deque<int> queue{u};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int ei : sys.incident(x)) {
      for (int y : sys.edges()[ei]) {
        if (dist.count(y)) continue;
        dist[y] = dist[x] + 1;
        if (y == v) return dist[y];
        queue.push_back(y);
      }
    }
  }
  return std::nullopt;
}

}  // namespace pythag
