#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pythag/hypergraph.hpp"
#include "pythag/types.hpp"

namespace pythag {

struct SumPropertyReport {
  bool holds = true;
  // A violating ordered pair of edges, present exactly when !holds.
  std::optional<std::pair<Edge, Edge>> witness;
};

// Sum property over every ordered pair of edges (a,b,c), (a',b',c') written
// ascending, c and c' the maxima: (a <= a') and (b < b') imply (c < c').
SumPropertyReport check_sum_property(const TripleSystem&);

// Upper variant, over edge pairs sharing their minimum element:
// (b > b') implies (c > c').
SumPropertyReport check_upper_sum_property(const TripleSystem&);

// Lower variant, over edge pairs sharing their maximum element:
// (a > a') implies (b < b').
SumPropertyReport check_lower_sum_property(const TripleSystem&);

// Restatements over link graphs, for partial triple systems: the pairs lying
// above a vertex (the vertex is its edge's minimum) must form a non-nesting
// matching; the pairs lying below (the vertex is its edge's maximum) must be
// fully nested. Each is equivalent to the corresponding inequality form on
// linear systems.
bool upper_sum_by_link_matchings(const TripleSystem&);
bool lower_sum_by_link_matchings(const TripleSystem&);

// k-bicycle: 2k+2 vertices, 2k edges. Antipode `a` sits in the edges
// {a, rim[2j], rim[2j+1]}, antipode `b` in {b, rim[2j-1], rim[2j]},
// rim indices mod 2k.
struct Bicycle {
  int k = 0;
  std::pair<int, int> antipodes{0, 0};
  std::vector<int> rim;

  std::vector<Edge> edges() const;
  std::vector<int> all_vertices() const;  // sorted, 2k+2 entries
};

// True iff every vertex pair lies in exactly one edge.
bool is_steiner(const TripleSystem&);

// Builds a k-bicycle (k >= 2) with the given antipodes inside a nontrivial
// Steiner triple system: take the edge {v,w,z}, drop it from both links to
// get two perfect matchings on the remaining points, and walk one of the
// even alternating cycles of their union. Throws when the input is not an
// STS, has fewer than 7 points, or v == w.
Bicycle find_bicycle_in_sts(const TripleSystem&, int v, int w);

// All bicycles with 2 <= k <= max_k, one canonical representative per
// (antipode pair, rim cycle): smaller antipode first, rim rotated/reflected
// to its lexicographic minimum. A Pasch configuration shows up once per
// valid antipode pair (it has three).
std::vector<Bicycle> find_bicycles(const TripleSystem&, int max_k);

// True iff no bicycle in the list has the two largest of its 2k+2 vertices
// as its antipode pair.
bool check_bicycle_antipode_theorem(const TripleSystem&, const std::vector<Bicycle>&);

// Exhaustive backtracking search for an embedded Steiner triple system of
// the given order (7 or 9), pruning on pair coverage. Returns its edge set,
// or nullopt when none exists.
std::optional<std::vector<Edge>> find_sub_sts(const TripleSystem&, int order);

// Every edge fully colored and bichromatic.
bool is_bipartite_coloring(const TripleSystem&, const Coloring&);

}  // namespace pythag
