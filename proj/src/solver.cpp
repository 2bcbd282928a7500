#include "pythag/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>

#include "pythag/rng.hpp"

namespace pythag {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Sat: return "SAT";
    case Verdict::Unsat: return "UNSAT";
    case Verdict::Indeterminate: return "INDETERMINATE";
  }
  return "?";
}

bool model_satisfies(const CnfDocument& doc, const std::vector<int>& model) {
  std::vector<int> sign(doc.var_count + 1, 0);
  for (int lit : model) {
    if (lit == 0) continue;
    int v = std::abs(lit);
    if (v <= doc.var_count) sign[v] = lit > 0 ? 1 : -1;
  }
  for (const auto& clause : doc.clauses) {
    bool sat = false;
    for (int lit : clause) {
      int s = sign[std::abs(lit)];
      if (s != 0 && (lit > 0) == (s > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

namespace {

// Literal encoding: variable v in [0,n) gives codes 2v (positive) and 2v+1
// (negative).
inline int mk_lit(int var, bool positive) { return 2 * var + (positive ? 0 : 1); }
inline int neg_lit(int lit) { return lit ^ 1; }
inline int lit_var(int lit) { return lit >> 1; }
inline bool lit_positive(int lit) { return (lit & 1) == 0; }

constexpr signed char kUnset = -1;
constexpr int kNoReason = -1;

struct Clause {
  std::vector<int> lits;
  bool learnt = false;
  double activity = 0.0;
};

struct Watcher {
  int clause;
  int blocker;
};

class Cdcl {
 public:
  Cdcl(const CnfDocument& doc, const SolveLimits& limits, std::uint64_t seed)
      : doc_(doc), limits_(limits) {
    n_ = doc.var_count;
    assign_.assign(n_, kUnset);
    reason_.assign(n_, kNoReason);
    level_.assign(n_, 0);
    saved_phase_.assign(n_, kUnset);
    activity_.assign(n_, 0.0);
    seen_.assign(n_, 0);
    watches_.assign(2 * std::size_t(n_), {});
    heap_pos_.assign(n_, -1);
    if (seed != 0) {
      // Tiny per-variable jitter; sign-blind, so formula symmetries survive.
      std::uint64_t s = seed;
      for (int v = 0; v < n_; ++v) {
        std::uint64_t h = s + 0x9e3779b97f4a7c15ULL * (v + 1);
        activity_[v] = 1e-9 * static_cast<double>(splitmix64(h) >> 40);
      }
    }
    for (int v = 0; v < n_; ++v) heap_insert(v);
  }

  SolveResult run() {
    auto t0 = std::chrono::steady_clock::now();
    SolveResult result;
    result.verdict = search();
    result.stats = stats_;
    result.stats.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.diagnostic = diagnostic_;
    if (result.verdict == Verdict::Sat) {
      result.model.reserve(n_);
      for (int v = 0; v < n_; ++v)
        result.model.push_back(assign_[v] == 1 ? v + 1 : -(v + 1));
      if (!model_satisfies(doc_, result.model)) {
        // Should be unreachable; report honestly rather than return a bad model.
        result.verdict = Verdict::Indeterminate;
        result.diagnostic = "internal error: model failed verification";
        result.model.clear();
      }
    }
    return result;
  }

 private:
  // ---- assignment ----------------------------------------------------
  signed char value(int lit) const {
    signed char a = assign_[lit_var(lit)];
    if (a == kUnset) return kUnset;
    return lit_positive(lit) ? a : static_cast<signed char>(1 - a);
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  bool enqueue(int lit, int reason) {
    signed char val = value(lit);
    if (val != kUnset) return val == 1;
    int v = lit_var(lit);
    assign_[v] = lit_positive(lit) ? 1 : 0;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(lit);
    return true;
  }

  void backtrack(int target_level) {
    if (decision_level() <= target_level) return;
    int bound = trail_lim_[target_level];
    for (int i = static_cast<int>(trail_.size()) - 1; i >= bound; --i) {
      int v = lit_var(trail_[i]);
      saved_phase_[v] = assign_[v];
      assign_[v] = kUnset;
      reason_[v] = kNoReason;
      heap_insert(v);
    }
    trail_.resize(bound);
    trail_lim_.resize(target_level);
    qhead_ = trail_.size();
  }

  // ---- clauses -------------------------------------------------------
  // Returns false on immediate top-level inconsistency.
  bool add_input_clause(const std::vector<int>& dimacs) {
    std::vector<int> lits;
    lits.reserve(dimacs.size());
    for (int dl : dimacs) {
      int lit = mk_lit(std::abs(dl) - 1, dl > 0);
      bool duplicate = false;
      for (int other : lits) {
        if (other == lit) duplicate = true;  // "x x x 0" collapses to a unit
        if (other == neg_lit(lit)) return true;  // tautology
      }
      if (!duplicate) lits.push_back(lit);
    }
    if (lits.empty()) return false;
    if (lits.size() == 1) return enqueue(lits[0], kNoReason);
    attach(add_clause(std::move(lits), false));
    return true;
  }

  int add_clause(std::vector<int> lits, bool learnt) {
    clauses_.push_back(Clause{std::move(lits), learnt, 0.0});
    if (learnt) ++learnt_count_;
    return static_cast<int>(clauses_.size()) - 1;
  }

  void attach(int ci) {
    const Clause& c = clauses_[ci];
    watches_[neg_lit(c.lits[0])].push_back({ci, c.lits[1]});
    watches_[neg_lit(c.lits[1])].push_back({ci, c.lits[0]});
  }

  // ---- propagation ---------------------------------------------------
  int propagate() {
    int conflict = kNoReason;
    while (qhead_ < trail_.size()) {
      int p = trail_[qhead_++];
      ++stats_.propagations;
      std::vector<Watcher>& ws = watches_[p];  // clauses watching ~p
      std::size_t i = 0, j = 0;
      while (i < ws.size()) {
        Watcher w = ws[i];
        if (value(w.blocker) == 1) {
          ws[j++] = ws[i++];
          continue;
        }
        Clause& c = clauses_[w.clause];
        int false_lit = neg_lit(p);
        if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
        ++i;
        int first = c.lits[0];
        if (first != w.blocker && value(first) == 1) {
          ws[j++] = {w.clause, first};
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.lits.size(); ++k) {
          if (value(c.lits[k]) != 0) {
            std::swap(c.lits[1], c.lits[k]);
            watches_[neg_lit(c.lits[1])].push_back({w.clause, first});
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = {w.clause, first};
        if (value(first) == 0) {
          conflict = w.clause;
          qhead_ = trail_.size();
          while (i < ws.size()) ws[j++] = ws[i++];
        } else {
          enqueue(first, w.clause);
        }
      }
      ws.resize(j);
    }
    return conflict;
  }

  // ---- conflict analysis ---------------------------------------------
  void bump_var(int v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
      for (double& a : activity_) a *= 1e-100;
      var_inc_ *= 1e-100;
    }
    heap_update(v);
  }

  void bump_clause(Clause& c) {
    c.activity += cla_inc_;
    if (c.activity > 1e20) {
      for (Clause& cl : clauses_)
        if (cl.learnt) cl.activity *= 1e-20;
      cla_inc_ *= 1e-20;
    }
  }

  int analyze(int conflict, std::vector<int>& learnt) {
    learnt.clear();
    learnt.push_back(0);  // slot for the asserting literal
    int path = 0;
    int p = -1;
    std::size_t index = trail_.size();

    for (;;) {
      Clause& c = clauses_[conflict];
      if (c.learnt) bump_clause(c);
      for (std::size_t k = (p == -1 ? 0 : 1); k < c.lits.size(); ++k) {
        int q = c.lits[k];
        int v = lit_var(q);
        if (seen_[v] || level_[v] == 0) continue;
        seen_[v] = 1;
        bump_var(v);
        if (level_[v] >= decision_level()) ++path;
        else learnt.push_back(q);
      }
      while (!seen_[lit_var(trail_[--index])]) {}
      p = trail_[index];
      seen_[lit_var(p)] = 0;
      if (--path == 0) break;
      conflict = reason_[lit_var(p)];
    }
    learnt[0] = neg_lit(p);

    // Cheap minimization: a literal is redundant when its reason clause is
    // entirely made of seen or root literals. Dropped literals keep their
    // seen flag for the rest of the pass (implication is transitive), so the
    // flags to clear are recorded up front.
    std::vector<int> to_clear(learnt.begin() + 1, learnt.end());
    std::size_t kept = 1;
    for (std::size_t k = 1; k < learnt.size(); ++k) {
      int v = lit_var(learnt[k]);
      int r = reason_[v];
      bool redundant = r != kNoReason;
      if (redundant) {
        for (std::size_t t = 1; t < clauses_[r].lits.size() && redundant; ++t) {
          int u = lit_var(clauses_[r].lits[t]);
          if (!seen_[u] && level_[u] > 0) redundant = false;
        }
      }
      if (!redundant) learnt[kept++] = learnt[k];
    }
    learnt.resize(kept);
    for (int q : to_clear) seen_[lit_var(q)] = 0;

    if (learnt.size() == 1) return 0;
    std::size_t max_at = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k)
      if (level_[lit_var(learnt[k])] > level_[lit_var(learnt[max_at])]) max_at = k;
    std::swap(learnt[1], learnt[max_at]);
    return level_[lit_var(learnt[1])];
  }

  // ---- clause deletion -----------------------------------------------
  void reduce_db() {
    std::vector<int> cands;
    for (int ci = 0; ci < static_cast<int>(clauses_.size()); ++ci) {
      const Clause& c = clauses_[ci];
      if (!c.learnt || c.lits.size() <= 2) continue;
      if (locked(ci)) continue;
      cands.push_back(ci);
    }
    std::sort(cands.begin(), cands.end(), [&](int a, int b) {
      if (clauses_[a].activity != clauses_[b].activity)
        return clauses_[a].activity < clauses_[b].activity;
      return a < b;
    });
    std::vector<bool> drop(clauses_.size(), false);
    for (std::size_t i = 0; i < cands.size() / 2; ++i) drop[cands[i]] = true;

    std::vector<int> remap(clauses_.size(), -1);
    std::vector<Clause> kept;
    kept.reserve(clauses_.size());
    for (int ci = 0; ci < static_cast<int>(clauses_.size()); ++ci) {
      if (drop[ci]) continue;
      remap[ci] = static_cast<int>(kept.size());
      kept.push_back(std::move(clauses_[ci]));
    }
    clauses_ = std::move(kept);
    learnt_count_ = 0;
    for (const Clause& c : clauses_)
      if (c.learnt) ++learnt_count_;
    for (int& r : reason_)
      if (r != kNoReason) r = remap[r];
    for (auto& ws : watches_) ws.clear();
    for (int ci = 0; ci < static_cast<int>(clauses_.size()); ++ci) attach(ci);
  }

  bool locked(int ci) const {
    int v = lit_var(clauses_[ci].lits[0]);
    return assign_[v] != kUnset && reason_[v] == ci;
  }

  // ---- decision heuristic ----------------------------------------------
  bool heap_less(int u, int v) const {  // priority order
    if (activity_[u] != activity_[v]) return activity_[u] > activity_[v];
    return u < v;
  }
  void heap_insert(int v) {
    if (heap_pos_[v] != -1) return;
    heap_pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_up(heap_pos_[v]);
  }
  void heap_update(int v) {
    if (heap_pos_[v] != -1) heap_up(heap_pos_[v]);
  }
  void heap_up(int i) {
    int v = heap_[i];
    while (i > 0) {
      int parent = (i - 1) / 2;
      if (!heap_less(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      heap_pos_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
  }
  void heap_down(int i) {
    int v = heap_[i];
    int size = static_cast<int>(heap_.size());
    for (;;) {
      int child = 2 * i + 1;
      if (child >= size) break;
      if (child + 1 < size && heap_less(heap_[child + 1], heap_[child])) ++child;
      if (!heap_less(heap_[child], v)) break;
      heap_[i] = heap_[child];
      heap_pos_[heap_[i]] = i;
      i = child;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
  }
  int heap_pop() {
    int top = heap_[0];
    heap_pos_[top] = -1;
    heap_[0] = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      heap_pos_[heap_[0]] = 0;
      heap_down(0);
    }
    return top;
  }

  int pick_branch_var() {
    while (!heap_.empty()) {
      int v = heap_pop();
      if (assign_[v] == kUnset) return v;
    }
    return -1;
  }

  // Decision polarity. Saved phase when the variable has been assigned
  // before; otherwise follow the first root-level assignment. That keeps the
  // search equivariant under negating every literal of the formula, which is
  // what makes the costs of complementary cubes of a sign-symmetric encoding
  // coincide exactly.
  bool decision_phase(int v) const {
    if (saved_phase_[v] != kUnset) return saved_phase_[v] == 1;
    if (!trail_.empty()) return lit_positive(trail_[0]);
    return false;
  }

  // ---- main loop -------------------------------------------------------
  Verdict search() {
    for (const auto& clause : doc_.clauses)
      if (!add_input_clause(clause)) return Verdict::Unsat;
    if (propagate() != kNoReason) return Verdict::Unsat;

    std::int64_t restart_limit = 100;
    std::int64_t conflicts_since_restart = 0;
    std::int64_t max_learnts =
        std::max<std::int64_t>(2000, static_cast<std::int64_t>(doc_.clauses.size()) / 3);
    auto start = std::chrono::steady_clock::now();
    std::vector<int> learnt;

    for (;;) {
      if (limits_.stop && limits_.stop->load(std::memory_order_relaxed)) {
        diagnostic_ = "cancelled";
        return Verdict::Indeterminate;
      }
      int conflict = propagate();
      if (conflict != kNoReason) {
        ++stats_.conflicts;
        ++conflicts_since_restart;
        if (decision_level() == 0) return Verdict::Unsat;
        int back_level = analyze(conflict, learnt);
        backtrack(back_level);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          int ci = add_clause(learnt, true);
          bump_clause(clauses_[ci]);
          attach(ci);
          enqueue(learnt[0], ci);
        }
        var_inc_ /= 0.95;
        cla_inc_ /= 0.999;
        if (limits_.max_conflicts && stats_.conflicts >= *limits_.max_conflicts) {
          diagnostic_ = "conflict budget exhausted";
          return Verdict::Indeterminate;
        }
        if (limits_.max_seconds && (stats_.conflicts & 255) == 0 &&
            elapsed(start) > *limits_.max_seconds) {
          diagnostic_ = "time budget exhausted";
          return Verdict::Indeterminate;
        }
      } else {
        if (conflicts_since_restart >= restart_limit) {
          restart_limit = static_cast<std::int64_t>(restart_limit * 1.5);
          conflicts_since_restart = 0;
          ++stats_.restarts;
          backtrack(0);
          continue;
        }
        if (learnt_count_ >= max_learnts) {
          reduce_db();
          max_learnts = static_cast<std::int64_t>(max_learnts * 1.1) + 16;
        }
        int v = pick_branch_var();
        if (v == -1) return Verdict::Sat;  // run() verifies before reporting
        ++stats_.decisions;
        if (limits_.max_seconds && (stats_.decisions & 1023) == 0 &&
            elapsed(start) > *limits_.max_seconds) {
          diagnostic_ = "time budget exhausted";
          return Verdict::Indeterminate;
        }
        trail_lim_.push_back(static_cast<int>(trail_.size()));
        enqueue(mk_lit(v, decision_phase(v)), kNoReason);
      }
    }
  }

  static double elapsed(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }

  const CnfDocument& doc_;
  SolveLimits limits_;
  int n_ = 0;

  std::vector<Clause> clauses_;
  std::int64_t learnt_count_ = 0;
  std::vector<std::vector<Watcher>> watches_;

  std::vector<signed char> assign_;
  std::vector<int> trail_;
  std::vector<int> trail_lim_;
  std::vector<int> reason_;
  std::vector<int> level_;
  std::size_t qhead_ = 0;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  std::vector<int> heap_;
  std::vector<int> heap_pos_;
  std::vector<signed char> saved_phase_;
  std::vector<signed char> seen_;

  SolveStats stats_;
  std::string diagnostic_;
};

}  // namespace

SolveResult solve(const CnfDocument& doc, const SolveLimits& limits, std::uint64_t seed) {
  for (const auto& clause : doc.clauses)
    for (int lit : clause)
      if (lit == 0 || std::abs(lit) > doc.var_count)
        throw std::invalid_argument("document has a literal out of range");
  Cdcl solver(doc, limits, seed);
  return solver.run();
}

}  // namespace pythag
