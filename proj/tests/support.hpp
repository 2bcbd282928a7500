// Shared fixtures and independent oracles for the test suites. Oracles here
// must stay independent of the library code paths they check: the cubic
// triple scan, the truth-table solver and the 4-edge Pasch scan are written
// from the definitions, not from the implementations under test.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "pythag/cnf.hpp"
#include "pythag/hypergraph.hpp"
#include "pythag/rng.hpp"
#include "pythag/triples.hpp"
#include "pythag/types.hpp"

namespace testsupport {

using pythag::Edge;

// O(N^3) enumeration straight from the definition a^2 + b^2 = c^2.
inline std::vector<pythag::Triple> cubic_triples(int bound) {
  std::vector<pythag::Triple> out;
  for (int a = 1; a <= bound; ++a)
    for (int b = a + 1; b <= bound; ++b)
      for (int c = b + 1; c <= bound; ++c)
        if (static_cast<long long>(a) * a + static_cast<long long>(b) * b ==
            static_cast<long long>(c) * c)
          out.push_back({a, b, c});
  return out;
}

inline std::vector<Edge> fano_edges() {
  return {Edge{1, 2, 3}, Edge{1, 4, 5}, Edge{1, 6, 7}, Edge{2, 4, 6},
          Edge{2, 5, 7}, Edge{3, 4, 7}, Edge{3, 5, 6}};
}

// AG(2,3): rows, columns and both diagonal families of the 3x3 grid.
inline std::vector<Edge> sts9_edges() {
  return {Edge{1, 2, 3}, Edge{4, 5, 6}, Edge{7, 8, 9}, Edge{1, 4, 7},
          Edge{2, 5, 8}, Edge{3, 6, 9}, Edge{1, 5, 9}, Edge{2, 6, 7},
          Edge{3, 4, 8}, Edge{1, 6, 8}, Edge{2, 4, 9}, Edge{3, 5, 7}};
}

// 3-bicycle fixture on points {a,b,d,e,f,g,h,i} -> {1,2,3,4,5,6,7,8}:
// edges afh, aei, adg, beh, bdi, bfg.
inline std::vector<Edge> hexagon_edges() {
  return {Edge{1, 5, 7}, Edge{1, 4, 8}, Edge{1, 3, 6},
          Edge{2, 4, 7}, Edge{2, 3, 8}, Edge{2, 5, 6}};
}

// Pasch configuration rigged so the antipodes are the two maxima.
inline std::vector<Edge> pasch_max_antipodes_edges() {
  return {Edge{1, 2, 8}, Edge{3, 4, 8}, Edge{2, 3, 9}, Edge{1, 4, 9}};
}

inline std::vector<Edge> schur_edges(int n) {
  std::vector<Edge> out;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; a + b <= n; ++b) out.push_back(Edge{a, b, a + b});
  return out;
}

// Exhaustive 2^v check of a CNF document (v <= 25 or so). Returns a model as
// signed literals when satisfiable.
inline std::optional<std::vector<int>> truth_table_model(const pythag::CnfDocument& doc) {
  const int v = doc.var_count;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << v); ++mask) {
    bool ok = true;
    for (const auto& clause : doc.clauses) {
      bool sat = false;
      for (int lit : clause) {
        bool value = (mask >> (std::abs(lit) - 1)) & 1;
        if ((lit > 0) == value) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::vector<int> model;
      for (int i = 1; i <= v; ++i)
        model.push_back(((mask >> (i - 1)) & 1) ? i : -i);
      return model;
    }
  }
  return std::nullopt;
}

// Exhaustive 2-colorability of a triple system over its own vertex set.
inline bool exhaustively_two_colorable(const pythag::TripleSystem& sys) {
  const auto& verts = sys.vertices();
  const int v = static_cast<int>(verts.size());
  std::map<int, int> pos;
  for (int i = 0; i < v; ++i) pos[verts[i]] = i;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << v); ++mask) {
    bool ok = true;
    for (const Edge& e : sys.edges()) {
      bool c0 = (mask >> pos[e[0]]) & 1;
      bool c1 = (mask >> pos[e[1]]) & 1;
      bool c2 = (mask >> pos[e[2]]) & 1;
      if (c0 == c1 && c1 == c2) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return sys.edges().empty();
}

inline pythag::CnfDocument make_doc(int var_count, std::vector<std::vector<int>> clauses) {
  pythag::CnfDocument doc;
  doc.var_count = var_count;
  doc.clauses = std::move(clauses);
  return doc;
}

inline pythag::CnfDocument random_cnf(pythag::Rng& rng, int max_vars, int max_clauses) {
  int vars = 1 + static_cast<int>(rng.below(max_vars));
  int clauses = 1 + static_cast<int>(rng.below(max_clauses));
  pythag::CnfDocument doc;
  doc.var_count = vars;
  for (int i = 0; i < clauses; ++i) {
    int len = 1 + static_cast<int>(rng.below(4));
    std::vector<int> clause;
    for (int k = 0; k < len; ++k) {
      int var = 1 + static_cast<int>(rng.below(vars));
      clause.push_back(rng.below(2) ? var : -var);
    }
    doc.clauses.push_back(std::move(clause));
  }
  return doc;
}

// Random linear (partial) triple system: candidate edges accepted only when
// they share at most one vertex with every accepted edge.
inline pythag::TripleSystem random_linear_system(pythag::Rng& rng, int max_vertex,
                                                 int target_edges) {
  std::set<std::pair<int, int>> used_pairs;
  std::vector<Edge> edges;
  int attempts = 0;
  while (static_cast<int>(edges.size()) < target_edges && attempts < 40 * target_edges) {
    ++attempts;
    int a = 1 + static_cast<int>(rng.below(max_vertex));
    int b = 1 + static_cast<int>(rng.below(max_vertex));
    int c = 1 + static_cast<int>(rng.below(max_vertex));
    if (a == b || b == c || a == c) continue;
    Edge e = pythag::make_edge(a, b, c);
    std::pair<int, int> p01{e[0], e[1]}, p02{e[0], e[2]}, p12{e[1], e[2]};
    if (used_pairs.count(p01) || used_pairs.count(p02) || used_pairs.count(p12)) continue;
    used_pairs.insert(p01);
    used_pairs.insert(p02);
    used_pairs.insert(p12);
    edges.push_back(e);
  }
  return pythag::TripleSystem::from_edges(std::move(edges));
}

// Random subsystem of the Schur system: inherits the sum property.
inline pythag::TripleSystem random_schur_subsystem(pythag::Rng& rng, int n) {
  std::vector<Edge> pool = schur_edges(n);
  std::vector<Edge> chosen;
  for (const Edge& e : pool)
    if (rng.below(3) == 0) chosen.push_back(e);
  return pythag::TripleSystem::from_edges(std::move(chosen));
}

// Independent shortest-path levels in the triple intersection graph,
// via Floyd-Warshall over an explicit adjacency matrix.
inline std::vector<int> intersection_graph_levels_oracle(const pythag::TripleSystem& sys,
                                                         const Edge& seed) {
  const auto& es = sys.edges();
  const int n = static_cast<int>(es.size());
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool meet = false;
      for (int x : es[i])
        for (int y : es[j])
          if (x == y) meet = true;
      if (meet) d[i][j] = d[j][i] = 1;
    }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  int s = static_cast<int>(std::lower_bound(es.begin(), es.end(), seed) - es.begin());
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = d[s][i] >= inf ? -1 : d[s][i];
  return out;
}

}  // namespace testsupport
