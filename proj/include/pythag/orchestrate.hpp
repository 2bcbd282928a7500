#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pythag/cnf.hpp"
#include "pythag/solver.hpp"

namespace pythag {

struct PoolConfig {
  int pool_size = 1;  // worker slots, the in-process stand-in for nodes
  std::optional<std::int64_t> max_conflicts_per_job;
  std::optional<double> max_seconds_per_job;
  std::optional<ExternalSolverConfig> external;  // unset = embedded solver
  std::uint64_t solver_seed = 0;
  // test fixture: per-cube startup delay, interruptible by cancellation
  std::vector<int> inject_start_delay_ms;
};

struct CubeRecord {
  int index = -1;
  bool started = false;
  bool cancelled = false;
  Verdict verdict = Verdict::Indeterminate;
  SolveStats stats;
  double start_seconds = 0.0;
  double stop_seconds = 0.0;
  std::string diagnostic;
};

struct CampaignEvent {
  double at_seconds = 0.0;
  std::string kind;  // job_started, job_finished, job_skipped, job_cancelled,
                     // campaign_sat, output_found, poll_timeout
  int cube = -1;
  std::string detail;
};

struct CampaignResult {
  Verdict outcome = Verdict::Indeterminate;
  int winning_cube = -1;
  std::vector<int> model;            // model of the winning cube document
  std::vector<CubeRecord> records;   // indexed by cube, regardless of finish order
  std::vector<CampaignEvent> events;

  std::vector<int> unresolved() const;  // cubes neither SAT nor UNSAT
};

// Runs the cube documents over a bounded worker pool. First SAT wins: all
// other jobs get a cancellation signal and pending ones never start. UNSAT
// only when every cube is individually UNSAT; otherwise Indeterminate with
// the unresolved cubes listed. A crashing worker marks its cube
// Indeterminate and the campaign continues.
CampaignResult run_campaign(const std::vector<std::pair<Cube, CnfDocument>>& cubes,
                            const PoolConfig&);

// File-polling driver with batch-queue shape: one CNF + launcher script per
// cube under dir, results read back from cube_<i>.out (written via atomic
// rename by the script). With launch=true the scripts are executed locally,
// at most pool_size at a time; with launch=false the directory is only
// polled, for schedulers that run the scripts elsewhere.
struct BridgeConfig {
  std::filesystem::path dir;
  int pool_size = 1;
  double poll_interval_seconds = 0.05;
  double poll_timeout_seconds = 60.0;
  bool launch = true;
  std::string solver_command;  // e.g. "/usr/bin/kissat -q"; CNF path appended
};

CampaignResult run_file_campaign(const std::vector<std::pair<Cube, CnfDocument>>& cubes,
                                 const BridgeConfig&);

// One JSON object per line: a summary, then per-cube records, then events.
void write_campaign_log(const CampaignResult&, const std::filesystem::path&);

}  // namespace pythag
