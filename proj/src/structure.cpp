#include "pythag/structure.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pythag {

namespace {

inline std::pair<int, int> ordered(int a, int b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

// pairs sorted internally; nesting means one strictly inside the other
inline bool nested(std::pair<int, int> p, std::pair<int, int> q) {
  return (p.first < q.first && q.second < p.second) ||
         (q.first < p.first && p.second < q.second);
}

inline bool share_endpoint(std::pair<int, int> p, std::pair<int, int> q) {
  return p.first == q.first || p.first == q.second || p.second == q.first ||
         p.second == q.second;
}

}  // namespace

SumPropertyReport check_sum_property(const TripleSystem& sys) {
  const auto& es = sys.edges();
  for (std::size_t i = 0; i < es.size(); ++i) {
    for (std::size_t j = 0; j < es.size(); ++j) {
      if (i == j) continue;
      const Edge& e = es[i];
      const Edge& f = es[j];
      if (e[0] <= f[0] && e[1] < f[1] && !(e[2] < f[2]))
        return {false, std::make_pair(e, f)};
    }
  }
  return {true, std::nullopt};
}

SumPropertyReport check_upper_sum_property(const TripleSystem& sys) {
  std::map<int, std::vector<const Edge*>> by_min;
  for (const Edge& e : sys.edges()) by_min[e[0]].push_back(&e);
  for (const auto& entry : by_min) {
    const auto& group = entry.second;
    for (const Edge* e : group) {
      for (const Edge* f : group) {
        if (e == f) continue;
        if ((*e)[1] > (*f)[1] && !((*e)[2] > (*f)[2]))
          return {false, std::make_pair(*e, *f)};
      }
    }
  }
  return {true, std::nullopt};
}

SumPropertyReport check_lower_sum_property(const TripleSystem& sys) {
  std::map<int, std::vector<const Edge*>> by_max;
  for (const Edge& e : sys.edges()) by_max[e[2]].push_back(&e);
  for (const auto& entry : by_max) {
    const auto& group = entry.second;
    for (const Edge* e : group) {
      for (const Edge* f : group) {
        if (e == f) continue;
        if ((*e)[0] > (*f)[0] && !((*e)[1] < (*f)[1]))
          return {false, std::make_pair(*e, *f)};
      }
    }
  }
  return {true, std::nullopt};
}

bool upper_sum_by_link_matchings(const TripleSystem& sys) {
  for (int x : sys.vertices()) {
    std::vector<std::pair<int, int>> above;
    for (int ei : sys.incident(x)) {
      const Edge& e = sys.edges()[ei];
      if (e[0] == x) above.emplace_back(e[1], e[2]);
    }
    for (std::size_t i = 0; i < above.size(); ++i)
      for (std::size_t j = i + 1; j < above.size(); ++j)
        if (share_endpoint(above[i], above[j]) || nested(above[i], above[j]))
          return false;
  }
  return true;
}

bool lower_sum_by_link_matchings(const TripleSystem& sys) {
  for (int x : sys.vertices()) {
    std::vector<std::pair<int, int>> below;
    for (int ei : sys.incident(x)) {
      const Edge& e = sys.edges()[ei];
      if (e[2] == x) below.emplace_back(e[0], e[1]);
    }
    for (std::size_t i = 0; i < below.size(); ++i)
      for (std::size_t j = i + 1; j < below.size(); ++j)
        if (share_endpoint(below[i], below[j]) || !nested(below[i], below[j]))
          return false;
  }
  return true;
}

std::vector<Edge> Bicycle::edges() const {
  const int len = 2 * k;
  std::vector<Edge> out;
  out.reserve(len);
  for (int j = 0; j < k; ++j) {
    out.push_back(make_edge(antipodes.first, rim[2 * j], rim[2 * j + 1]));
    out.push_back(make_edge(antipodes.second, rim[((2 * j - 1) % len + len) % len],
                            rim[2 * j]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Bicycle::all_vertices() const {
  std::vector<int> vs = rim;
  vs.push_back(antipodes.first);
  vs.push_back(antipodes.second);
  std::sort(vs.begin(), vs.end());
  return vs;
}

bool is_steiner(const TripleSystem& sys) {
  const std::size_t n = sys.vertices().size();
  return sys.linear() && 6 * sys.edges().size() == n * (n - 1);
}

namespace {

void validate_bicycle(const Bicycle& b, const TripleSystem& sys) {
  if (b.k < 2) throw std::logic_error("bicycle has k < 2");
  if (static_cast<int>(b.rim.size()) != 2 * b.k)
    throw std::logic_error("bicycle rim size mismatch");
  std::set<int> vs(b.rim.begin(), b.rim.end());
  vs.insert(b.antipodes.first);
  vs.insert(b.antipodes.second);
  if (static_cast<int>(vs.size()) != 2 * b.k + 2)
    throw std::logic_error("bicycle vertices not distinct");
  for (const Edge& e : b.edges())
    if (!sys.has_edge(e)) throw std::logic_error("bicycle edge missing from system");
}

std::vector<int> canonical_rim(const std::vector<int>& rim) {
  const int len = static_cast<int>(rim.size());
  std::vector<int> best = rim;
  std::vector<int> cand(len);
  for (int t = 0; t < len; t += 2) {
    for (int i = 0; i < len; ++i) cand[i] = rim[(i + t) % len];
    if (cand < best) best = cand;
    // reflection i -> 1 - i preserves which rim pairs belong to which antipode
    for (int i = 0; i < len; ++i) cand[i] = rim[(((1 - i + t) % len) + len) % len];
    if (cand < best) best = cand;
  }
  return best;
}

}  // namespace

Bicycle find_bicycle_in_sts(const TripleSystem& sts, int v, int w) {
  if (v == w) throw std::invalid_argument("antipodes must be distinct vertices");
  if (!sts.has_vertex(v) || !sts.has_vertex(w))
    throw std::invalid_argument("antipode is not a vertex of the system");
  if (sts.vertices().size() < 7)
    throw std::invalid_argument("Steiner triple system is trivial (fewer than 7 points)");
  if (!is_steiner(sts))
    throw std::invalid_argument("input is not a Steiner triple system");

  // the unique edge through {v,w}
  int z = -1;
  for (const auto& [p, q] : sts.link(v).pairs) {
    if (p == w) z = q;
    else if (q == w) z = p;
  }
  if (z == -1) throw std::logic_error("STS is missing the edge through the antipodes");

  // perfect matchings on S - {v,w,z}
  std::map<int, int> m1, m2;
  for (const auto& [p, q] : sts.link(v).pairs) {
    if (p == w || q == w) continue;
    m1[p] = q;
    m1[q] = p;
  }
  for (const auto& [p, q] : sts.link(w).pairs) {
    if (p == v || q == v) continue;
    m2[p] = q;
    m2[q] = p;
  }

  // one alternating cycle of m1 ∪ m2, from the smallest remaining vertex
  int start = m1.begin()->first;
  std::vector<int> rim{start};
  int cur = start;
  bool use_m1 = true;
  for (;;) {
    int nxt = use_m1 ? m1.at(cur) : m2.at(cur);
    use_m1 = !use_m1;
    if (nxt == start) break;
    rim.push_back(nxt);
    cur = nxt;
  }

  Bicycle b;
  b.k = static_cast<int>(rim.size()) / 2;
  b.antipodes = {v, w};
  b.rim = std::move(rim);
  validate_bicycle(b, sts);
  return b;
}

namespace {

struct BicycleSearch {
  const TripleSystem& sys;
  int max_k;
  std::vector<Bicycle> found;

  // per-pair state
  std::map<int, std::vector<int>> adj_a, adj_b;
  int start = 0;
  std::pair<int, int> antipodes;
  std::vector<int> path;
  std::set<int> on_path;

  void search_pair(int u, int w, const std::vector<std::pair<int, int>>& link_u,
                   const std::vector<std::pair<int, int>>& link_w) {
    adj_a.clear();
    adj_b.clear();
    int usable_a = 0, usable_b = 0;
    for (const auto& [p, q] : link_u) {
      if (p == w || q == w) continue;
      adj_a[p].push_back(q);
      adj_a[q].push_back(p);
      ++usable_a;
    }
    for (const auto& [p, q] : link_w) {
      if (p == u || q == u) continue;
      adj_b[p].push_back(q);
      adj_b[q].push_back(p);
      ++usable_b;
    }
    if (usable_a < 2 || usable_b < 2) return;
    antipodes = {u, w};
    // each cycle surfaces once: start at its minimum vertex, leave via the
    // antipode-u pair
    for (const auto& [s, nbrs] : adj_a) {
      if (!adj_b.count(s)) continue;
      start = s;
      path.assign(1, s);
      on_path = {s};
      extend(s, true);
    }
  }

  void extend(int cur, bool via_a) {
    auto& adj = via_a ? adj_a : adj_b;
    auto it = adj.find(cur);
    if (it == adj.end()) return;
    for (int nxt : it->second) {
      if (nxt == start) {
        if (!via_a && path.size() >= 4 && path.size() % 2 == 0) record();
        continue;
      }
      if (nxt < start || on_path.count(nxt)) continue;
      if (static_cast<int>(path.size()) + 1 > 2 * max_k) continue;
      path.push_back(nxt);
      on_path.insert(nxt);
      extend(nxt, !via_a);
      path.pop_back();
      on_path.erase(nxt);
    }
  }

  void record() {
    Bicycle b;
    b.k = static_cast<int>(path.size()) / 2;
    b.antipodes = antipodes;
    b.rim = canonical_rim(path);
    validate_bicycle(b, sys);
    found.push_back(std::move(b));
  }
};

}  // namespace

std::vector<Bicycle> find_bicycles(const TripleSystem& sys, int max_k) {
  if (max_k < 2) throw std::invalid_argument("max_k must be at least 2");
  std::vector<int> candidates;
  for (int v : sys.vertices())
    if (sys.degree(v) >= 2) candidates.push_back(v);

  std::map<int, std::vector<std::pair<int, int>>> links;
  for (int v : candidates) links[v] = sys.link(v).pairs;

  BicycleSearch search{sys, max_k, {}, {}, {}, 0, {0, 0}, {}, {}};
  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (std::size_t j = i + 1; j < candidates.size(); ++j)
      search.search_pair(candidates[i], candidates[j], links[candidates[i]],
                         links[candidates[j]]);

  std::sort(search.found.begin(), search.found.end(),
            [](const Bicycle& x, const Bicycle& y) {
              return std::tie(x.k, x.antipodes, x.rim) <
                     std::tie(y.k, y.antipodes, y.rim);
            });
  return search.found;
}

bool check_bicycle_antipode_theorem(const TripleSystem& sys,
                                    const std::vector<Bicycle>& bicycles) {
  for (const Bicycle& b : bicycles) {
    validate_bicycle(b, sys);
    std::vector<int> vs = b.all_vertices();  // sorted ascending
    int top1 = vs[vs.size() - 1];
    int top2 = vs[vs.size() - 2];
    auto [a1, a2] = ordered(b.antipodes.first, b.antipodes.second);
    if (a1 == top2 && a2 == top1) return false;
  }
  return true;
}

namespace {

struct SubStsSearch {
  const TripleSystem& sys;
  int order;
  std::map<std::pair<int, int>, std::vector<int>> edges_through;
  std::set<int> verts;
  std::set<std::pair<int, int>> covered;
  std::vector<Edge> chosen;

  explicit SubStsSearch(const TripleSystem& s, int ord) : sys(s), order(ord) {
    for (int ei = 0; ei < static_cast<int>(sys.edges().size()); ++ei) {
      const Edge& e = sys.edges()[ei];
      edges_through[ordered(e[0], e[1])].push_back(ei);
      edges_through[ordered(e[0], e[2])].push_back(ei);
      edges_through[ordered(e[1], e[2])].push_back(ei);
    }
  }

  void push_edge(const Edge& e) {
    for (int v : e) verts.insert(v);
    covered.insert(ordered(e[0], e[1]));
    covered.insert(ordered(e[0], e[2]));
    covered.insert(ordered(e[1], e[2]));
    chosen.push_back(e);
  }

  void pop_edge(const Edge& e, const std::set<int>& verts_before) {
    verts = verts_before;
    covered.erase(ordered(e[0], e[1]));
    covered.erase(ordered(e[0], e[2]));
    covered.erase(ordered(e[1], e[2]));
    chosen.pop_back();
  }

  // smallest pair of current vertices not covered by a chosen edge
  std::optional<std::pair<int, int>> uncovered_pair() const {
    for (auto i = verts.begin(); i != verts.end(); ++i) {
      auto j = i;
      for (++j; j != verts.end(); ++j) {
        std::pair<int, int> p{*i, *j};
        if (!covered.count(p)) return p;
      }
    }
    return std::nullopt;
  }

  bool run(int growth_from) {
    auto missing = uncovered_pair();
    if (!missing) {
      if (static_cast<int>(verts.size()) == order) return true;
      // grow: any edge meeting the current vertices in at most one point;
      // growth steps take edges in increasing index order
      for (int ei = growth_from; ei < static_cast<int>(sys.edges().size()); ++ei) {
        const Edge& e = sys.edges()[ei];
        int overlap = static_cast<int>(verts.count(e[0])) + verts.count(e[1]) +
                      verts.count(e[2]);
        if (overlap >= 2) continue;
        if (static_cast<int>(verts.size()) + 3 - overlap > order) continue;
        auto before = verts;
        push_edge(e);
        if (run(ei + 1)) return true;
        pop_edge(e, before);
      }
      return false;
    }
    // forced: the pair must be covered by some edge through both endpoints
    auto it = edges_through.find(*missing);
    if (it == edges_through.end()) return false;
    for (int ei : it->second) {
      const Edge& e = sys.edges()[ei];
      int third = e[0] + e[1] + e[2] - missing->first - missing->second;
      if (verts.count(third)) {
        if (covered.count(ordered(third, missing->first)) ||
            covered.count(ordered(third, missing->second)))
          continue;  // would cover a pair twice
      } else if (static_cast<int>(verts.size()) >= order) {
        continue;
      }
      auto before = verts;
      push_edge(e);
      if (run(growth_from)) return true;
      pop_edge(e, before);
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<Edge>> find_sub_sts(const TripleSystem& sys, int order) {
  if (order != 7 && order != 9) {
    std::ostringstream msg;
    msg << "sub-STS search supports orders 7 and 9, got " << order;
    throw std::invalid_argument(msg.str());
  }
  SubStsSearch search(sys, order);
  if (search.run(0)) {
    std::sort(search.chosen.begin(), search.chosen.end());
    return search.chosen;
  }
  return std::nullopt;
}

bool is_bipartite_coloring(const TripleSystem& sys, const Coloring& coloring) {
  for (const Edge& e : sys.edges()) {
    int values = 0;  // bit 0: saw false, bit 1: saw true
    for (int v : e) {
      auto it = coloring.find(v);
      if (it == coloring.end()) return false;
      values |= it->second ? 2 : 1;
    }
    if (values != 3) return false;
  }
  return true;
}

}  // namespace pythag
