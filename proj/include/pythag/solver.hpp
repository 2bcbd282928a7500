#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pythag/cnf.hpp"

namespace pythag {

enum class Verdict { Sat, Unsat, Indeterminate };

const char* to_string(Verdict);

struct SolveStats {
  std::int64_t decisions = 0;
  std::int64_t propagations = 0;
  std::int64_t conflicts = 0;
  std::int64_t restarts = 0;
  double seconds = 0.0;
};

// Budget limits. Exhaustion yields Indeterminate, never Unsat. The stop flag
// is polled at every decision and conflict, so cancellation is observed
// within one conflict.
struct SolveLimits {
  std::optional<std::int64_t> max_conflicts;
  std::optional<double> max_seconds;
  std::atomic<bool>* stop = nullptr;
};

struct SolveResult {
  Verdict verdict = Verdict::Indeterminate;
  std::vector<int> model;  // SAT only: one signed literal per variable, ascending
  SolveStats stats;
  std::string diagnostic;
};

// Complete CDCL solver: two-watched-literal propagation, VSIDS-style decision
// order, first-UIP learning, geometric restarts, activity-based clause
// deletion. Deterministic for a fixed (document, seed); SAT models are
// checked against every clause before they are returned.
SolveResult solve(const CnfDocument&, const SolveLimits& = {}, std::uint64_t seed = 0);

struct ExternalSolverConfig {
  std::string path;
  std::vector<std::string> args;  // placed before the CNF file argument
  double timeout_seconds = 3600.0;
  std::atomic<bool>* stop = nullptr;  // cooperative cancel; sends SIGTERM
};

// Writes the document to a temporary DIMACS file, runs the binary, and parses
// SAT-competition style output ("s SATISFIABLE|UNSATISFIABLE", "v" literal
// lines ending in 0). SAT models are re-verified against the document before
// acceptance; timeouts, unknown exits and unparseable output come back as
// Indeterminate with diagnostics. A missing or non-executable binary is a
// configuration error and throws.
SolveResult solve_external(const CnfDocument&, const ExternalSolverConfig&);

// Parses "s"/"v" solver output; used by the external adapter and the file
// bridge. Returns Indeterminate when no verdict line is present.
std::pair<Verdict, std::vector<int>> parse_solver_output(const std::string& text);

bool model_satisfies(const CnfDocument&, const std::vector<int>& model);

}  // namespace pythag
