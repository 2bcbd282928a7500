#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

namespace pythag {

// An unordered 3-element edge, stored with its vertices ascending.
using Edge = std::array<int, 3>;

inline Edge make_edge(int a, int b, int c) {
  Edge e{a, b, c};
  std::sort(e.begin(), e.end());
  if (e[0] == e[1] || e[1] == e[2])
    throw std::invalid_argument("edge vertices must be distinct");
  return e;
}

// Partial 2-coloring of the integers. Integers absent from the map are
// uncolored ("white"): they occur in no in-scope triple.
using Coloring = std::map<int, bool>;

}  // namespace pythag
