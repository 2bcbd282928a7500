#pragma once

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pythag/triples.hpp"
#include "pythag/types.hpp"

namespace pythag {

// The pairs completing one vertex to an edge.
struct LinkGraph {
  int center = 0;
  std::vector<std::pair<int, int>> pairs;  // each pair ascending, list sorted
};

// Immutable triple system: a vertex set with a set of unordered 3-edges,
// ordered by the natural order on the integers. Linearity (no two edges
// sharing two vertices) is checked at build time and recorded, not assumed.
class TripleSystem {
 public:
  TripleSystem() = default;

  static TripleSystem from_edges(std::vector<Edge> edges);
  static TripleSystem from_triples(const std::vector<Triple>& triples);

  const std::vector<int>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool linear() const { return linear_; }
  bool empty() const { return edges_.empty(); }

  bool has_vertex(int v) const { return index_.count(v) != 0; }
  bool has_edge(const Edge& e) const;
  int degree(int v) const;
  // Indices into edges() of the edges containing v. Throws on unknown vertex.
  const std::vector<int>& incident(int v) const;
  LinkGraph link(int v) const;

 private:
  int vertex_index(int v) const;

  std::vector<int> vertices_;  // sorted ascending
  std::vector<Edge> edges_;    // sorted lexicographically, unique
  std::unordered_map<int, int> index_;
  std::vector<std::vector<int>> incident_;
  bool linear_ = true;
};

struct PendantRemoval {
  Edge edge{};
  std::vector<int> degree_one;  // vertices with degree 1 at removal time
};

// Ordered record of pendant removals; replaying forward is legal, and the
// reverse order drives coloring restoration.
struct ReductionTrace {
  std::vector<PendantRemoval> removals;
};

// Iterated pendant removal to fixpoint: afterwards no surviving edge has a
// degree-1 vertex. Deterministic; each pass scans survivors lexicographically
// with degrees updated as edges come out. Reduced edges and trace edges
// partition the original edge set.
std::pair<TripleSystem, ReductionTrace> remove_pendants(const TripleSystem&);

// Extends a coloring valid on the reduced system over the trace edges in
// reverse removal order. Each recorded degree-1 vertex is uncolored at its
// restoration step and receives a color opposite to some colored vertex of
// its edge; if the whole edge is free the smallest vertex gets false and the
// rest true. Throws if a fully-colored trace edge turns out monochromatic.
Coloring restore_coloring(const ReductionTrace&, Coloring coloring);

// Breadth-first levels in the triple intersection graph (triples adjacent
// iff they share a vertex). Level 0 is the seed alone; the level of a triple
// is its shortest intersection-graph distance from the seed.
struct BfsLevels {
  Edge seed{};
  std::vector<std::vector<Edge>> levels;
  std::vector<Edge> unreachable;
};

BfsLevels bfs_levels(const TripleSystem&, const Edge& seed);

// Shortest path between vertices counted in edges traversed (two vertices of
// one triple are at distance 1); nullopt when disconnected. This is the
// incidence-graph metric.
std::optional<int> vertex_distance(const TripleSystem&, int u, int v);

}  // namespace pythag
