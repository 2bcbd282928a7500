#include "pythag/orchestrate.hpp"

#include <signal.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace pythag {

std::vector<int> CampaignResult::unresolved() const {
  std::vector<int> out;
  for (const CubeRecord& r : records)
    if (r.verdict == Verdict::Indeterminate) out.push_back(r.index);
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct EventLog {
  Clock::time_point t0 = Clock::now();
  std::mutex mu;
  std::vector<CampaignEvent>* events;

  void add(const std::string& kind, int cube, const std::string& detail = "") {
    std::lock_guard<std::mutex> lock(mu);
    events->push_back({seconds_since(t0), kind, cube, detail});
  }
};

void finish_outcome(CampaignResult& result) {
  if (result.winning_cube >= 0) {
    result.outcome = Verdict::Sat;
    return;
  }
  bool all_unsat = true;
  for (const CubeRecord& r : result.records)
    if (r.verdict != Verdict::Unsat) all_unsat = false;
  result.outcome = all_unsat ? Verdict::Unsat : Verdict::Indeterminate;
}

}  // namespace

CampaignResult run_campaign(const std::vector<std::pair<Cube, CnfDocument>>& cubes,
                            const PoolConfig& config) {
  if (cubes.empty()) throw std::invalid_argument("campaign needs at least one cube");
  if (config.pool_size < 1) throw std::invalid_argument("pool_size must be at least 1");

  const int n = static_cast<int>(cubes.size());
  CampaignResult result;
  result.records.resize(n);
  for (int i = 0; i < n; ++i) result.records[i].index = i;

  EventLog log;
  log.events = &result.events;
  std::atomic<bool> stop{false};
  std::atomic<int> next{0};
  std::mutex winner_mu;

  auto worker = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= n) return;
      CubeRecord& rec = result.records[i];
      if (stop.load()) {
        rec.cancelled = true;
        log.add("job_skipped", i);
        continue;
      }
      rec.started = true;
      rec.start_seconds = seconds_since(log.t0);
      log.add("job_started", i);

      if (i < static_cast<int>(config.inject_start_delay_ms.size())) {
        int remaining = config.inject_start_delay_ms[i];
        while (remaining > 0 && !stop.load()) {
          int slice = std::min(remaining, 5);
          std::this_thread::sleep_for(std::chrono::milliseconds(slice));
          remaining -= slice;
        }
        if (stop.load()) {
          rec.cancelled = true;
          rec.stop_seconds = seconds_since(log.t0);
          log.add("job_cancelled", i, "cancelled during injected delay");
          continue;
        }
      }

      SolveResult sr;
      try {
        if (config.external) {
          ExternalSolverConfig ext = *config.external;
          ext.stop = &stop;
          sr = solve_external(cubes[i].second, ext);
        } else {
          SolveLimits limits;
          limits.max_conflicts = config.max_conflicts_per_job;
          limits.max_seconds = config.max_seconds_per_job;
          limits.stop = &stop;
          sr = solve(cubes[i].second, limits, config.solver_seed);
        }
      } catch (const std::exception& e) {
        sr = SolveResult{};
        sr.diagnostic = std::string("worker exception: ") + e.what();
      }

      rec.verdict = sr.verdict;
      rec.stats = sr.stats;
      rec.diagnostic = sr.diagnostic;
      rec.stop_seconds = seconds_since(log.t0);
      if (sr.verdict == Verdict::Indeterminate && stop.load()) {
        rec.cancelled = true;
        log.add("job_cancelled", i, sr.diagnostic);
        continue;
      }
      log.add("job_finished", i, to_string(sr.verdict));

      if (sr.verdict == Verdict::Sat) {
        std::lock_guard<std::mutex> lock(winner_mu);
        // races decided by cube index so reruns agree
        if (result.winning_cube < 0 || i < result.winning_cube) {
          result.winning_cube = i;
          result.model = std::move(sr.model);
        }
        if (!stop.exchange(true)) log.add("campaign_sat", i);
      }
    }
  };

  int threads = std::min(config.pool_size, n);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  finish_outcome(result);
  return result;
}

namespace {

std::filesystem::path cube_cnf_path(const BridgeConfig& cfg, int i) {
  return cfg.dir / ("cube_" + std::to_string(i) + ".cnf");
}
std::filesystem::path cube_out_path(const BridgeConfig& cfg, int i) {
  return cfg.dir / ("cube_" + std::to_string(i) + ".out");
}
std::filesystem::path cube_script_path(const BridgeConfig& cfg, int i) {
  return cfg.dir / ("cube_" + std::to_string(i) + ".sh");
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + p.string());
}

pid_t launch_script(const std::filesystem::path& script) {
  pid_t pid = ::fork();
  if (pid < 0) throw std::runtime_error("fork failed");
  if (pid == 0) {
    std::string path = script.string();
    ::execl("/bin/sh", "sh", path.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  return pid;
}

}  // namespace

CampaignResult run_file_campaign(const std::vector<std::pair<Cube, CnfDocument>>& cubes,
                                 const BridgeConfig& config) {
  if (cubes.empty()) throw std::invalid_argument("campaign needs at least one cube");
  if (config.pool_size < 1) throw std::invalid_argument("pool_size must be at least 1");
  namespace fs = std::filesystem;
  fs::create_directories(config.dir);

  if (config.launch && config.solver_command.empty())
    throw std::invalid_argument("launch mode needs a solver command");

  const int n = static_cast<int>(cubes.size());
  CampaignResult result;
  result.records.resize(n);
  for (int i = 0; i < n; ++i) result.records[i].index = i;

  EventLog log;
  log.events = &result.events;

  for (int i = 0; i < n; ++i) {
    write_text(cube_cnf_path(config, i), emit(cubes[i].second));
    if (config.launch) {
      // output appears atomically: write to .tmp, then rename
      std::ostringstream script;
      std::string out = cube_out_path(config, i).string();
      script << "#!/bin/sh\n"
             << config.solver_command << " '" << cube_cnf_path(config, i).string()
             << "' > '" << out << ".tmp' 2>&1\n"
             << "mv '" << out << ".tmp' '" << out << "'\n";
      fs::path sp = cube_script_path(config, i);
      write_text(sp, script.str());
      ::chmod(sp.c_str(), 0755);
    }
  }

  std::vector<pid_t> pids(n, -1);
  std::vector<bool> done(n, false);
  int next_launch = 0;
  int running = 0;
  bool sat_found = false;

  auto reap = [&]() {
    for (int i = 0; i < n; ++i) {
      if (pids[i] <= 0) continue;
      int status = 0;
      if (::waitpid(pids[i], &status, WNOHANG) == pids[i]) {
        pids[i] = -1;
        --running;
      }
    }
  };

  auto harvest_outputs = [&]() {
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      fs::path out = cube_out_path(config, i);
      std::error_code ec;
      if (!fs::exists(out, ec)) continue;
      done[i] = true;
      log.add("output_found", i);
      std::ifstream f(out, std::ios::binary);
      std::ostringstream buf;
      buf << f.rdbuf();
      auto [verdict, model] = parse_solver_output(buf.str());
      CubeRecord& rec = result.records[i];
      rec.started = true;
      rec.stop_seconds = seconds_since(log.t0);
      if (verdict == Verdict::Sat) {
        std::vector<int> full(cubes[i].second.var_count);
        for (int v = 1; v <= cubes[i].second.var_count; ++v) full[v - 1] = -v;
        for (int lit : model) {
          int v = std::abs(lit);
          if (v >= 1 && v <= cubes[i].second.var_count) full[v - 1] = lit;
        }
        if (model_satisfies(cubes[i].second, full)) {
          rec.verdict = Verdict::Sat;
          if (result.winning_cube < 0) {
            result.winning_cube = i;
            result.model = std::move(full);
            sat_found = true;
            log.add("campaign_sat", i);
          }
        } else {
          rec.diagnostic = "output claims SAT but the model fails verification";
          log.add("job_finished", i, rec.diagnostic);
          continue;
        }
      } else if (verdict == Verdict::Unsat) {
        rec.verdict = Verdict::Unsat;
      } else {
        rec.diagnostic = "unparseable solver output";
      }
      log.add("job_finished", i, to_string(rec.verdict));
    }
  };

  auto all_done = [&]() {
    for (int i = 0; i < n; ++i)
      if (!done[i]) return false;
    return true;
  };

  while (true) {
    if (config.launch) {
      while (!sat_found && running < config.pool_size && next_launch < n) {
        pids[next_launch] = launch_script(cube_script_path(config, next_launch));
        result.records[next_launch].started = true;
        result.records[next_launch].start_seconds = seconds_since(log.t0);
        log.add("job_started", next_launch);
        ++running;
        ++next_launch;
      }
      reap();
    }
    harvest_outputs();
    if (sat_found || all_done()) break;
    if (seconds_since(log.t0) > config.poll_timeout_seconds) {
      log.add("poll_timeout", -1);
      break;
    }
    std::this_thread::sleep_for(
        std::chrono::duration<double>(config.poll_interval_seconds));
  }

  if (config.launch) {
    for (int i = 0; i < n; ++i) {
      if (pids[i] > 0) {
        ::kill(pids[i], SIGTERM);
        result.records[i].cancelled = true;
        log.add("job_cancelled", i);
      }
    }
    for (int i = 0; i < n; ++i) {
      if (pids[i] > 0) {
        int status = 0;
        ::waitpid(pids[i], &status, 0);
      }
    }
    for (int i = next_launch; i < n; ++i) {
      if (!done[i]) {
        result.records[i].cancelled = true;
        log.add("job_skipped", i);
      }
    }
  }

  finish_outcome(result);
  return result;
}

void write_campaign_log(const CampaignResult& result, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  nlohmann::json summary;
  summary["type"] = "campaign";
  summary["outcome"] = to_string(result.outcome);
  summary["winning_cube"] = result.winning_cube;
  summary["cubes"] = result.records.size();
  f << summary.dump() << '\n';
  for (const CubeRecord& r : result.records) {
    nlohmann::json j;
    j["type"] = "cube";
    j["index"] = r.index;
    j["started"] = r.started;
    j["cancelled"] = r.cancelled;
    j["verdict"] = to_string(r.verdict);
    j["decisions"] = r.stats.decisions;
    j["conflicts"] = r.stats.conflicts;
    j["start_seconds"] = r.start_seconds;
    j["stop_seconds"] = r.stop_seconds;
    if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
    f << j.dump() << '\n';
  }
  for (const CampaignEvent& e : result.events) {
    nlohmann::json j;
    j["type"] = "event";
    j["at_seconds"] = e.at_seconds;
    j["kind"] = e.kind;
    j["cube"] = e.cube;
    if (!e.detail.empty()) j["detail"] = e.detail;
    f << j.dump() << '\n';
  }
}

}  // namespace pythag
