#include <fcntl.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include "pythag/cnf.hpp"
#include "pythag/solver.hpp"

namespace pythag {

namespace {

std::filesystem::path unique_temp_path(const char* suffix) {
  static std::atomic<unsigned> counter{0};
  std::ostringstream name;
  name << "pytc-" << ::getpid() << '-' << counter.fetch_add(1) << suffix;
  return std::filesystem::temp_directory_path() / name.str();
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const char* suffix) : path(unique_temp_path(suffix)) {}
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
};

}  // namespace

std::pair<Verdict, std::vector<int>> parse_solver_output(const std::string& text) {
  Verdict verdict = Verdict::Indeterminate;
  std::vector<int> model;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("s ", 0) == 0) {
      std::string rest = line.substr(2);
      if (rest.find("UNSATISFIABLE") != std::string::npos) verdict = Verdict::Unsat;
      else if (rest.find("SATISFIABLE") != std::string::npos) verdict = Verdict::Sat;
    } else if (line.rfind("v", 0) == 0 && (line.size() == 1 || line[1] == ' ')) {
      std::istringstream body(line.substr(1));
      int lit;
      while (body >> lit)
        if (lit != 0) model.push_back(lit);
    }
  }
  return {verdict, std::move(model)};
}

SolveResult solve_external(const CnfDocument& doc, const ExternalSolverConfig& cfg) {
  namespace fs = std::filesystem;
  if (cfg.path.empty() || !fs::exists(cfg.path))
    throw std::runtime_error("external solver not found: " + cfg.path);
  if (::access(cfg.path.c_str(), X_OK) != 0)
    throw std::runtime_error("external solver not executable: " + cfg.path);

  SolveResult result;
  auto t0 = std::chrono::steady_clock::now();
  if (cfg.timeout_seconds <= 0) {
    result.diagnostic = "timeout budget exhausted before launch";
    return result;
  }

  TempFile cnf_file(".cnf");
  TempFile out_file(".out");
  {
    std::ofstream f(cnf_file.path, std::ios::binary);
    f << emit(doc);
    if (!f) throw std::runtime_error("cannot write " + cnf_file.path.string());
  }

  std::vector<std::string> arg_strings;
  arg_strings.push_back(cfg.path);
  for (const std::string& a : cfg.args) arg_strings.push_back(a);
  arg_strings.push_back(cnf_file.path.string());
  std::vector<char*> argv;
  for (std::string& s : arg_strings) argv.push_back(s.data());
  argv.push_back(nullptr);

  pid_t pid = ::fork();
  if (pid < 0) throw std::runtime_error("fork failed");
  if (pid == 0) {
    int fd = ::open(out_file.path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
    if (fd >= 0) {
      ::dup2(fd, STDOUT_FILENO);
      ::dup2(fd, STDERR_FILENO);
      ::close(fd);
    }
    ::execv(argv[0], argv.data());
    _exit(127);
  }

  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  bool killed = false;
  bool cancelled = false;
  int status = 0;
  for (;;) {
    pid_t done = ::waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (done < 0) {
      result.diagnostic = std::string("waitpid failed: ") + std::strerror(errno);
      return result;
    }
    if (cfg.stop && cfg.stop->load(std::memory_order_relaxed)) cancelled = true;
    if (cancelled || elapsed() > cfg.timeout_seconds) {
      ::kill(pid, killed ? SIGKILL : SIGTERM);
      killed = true;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  result.stats.seconds = elapsed();

  if (cancelled) {
    result.diagnostic = "cancelled";
    return result;
  }
  if (killed) {
    result.diagnostic = "timeout after " + std::to_string(cfg.timeout_seconds) + "s";
    return result;
  }

  std::string output = read_file(out_file.path);
  auto [verdict, model] = parse_solver_output(output);
  if (verdict == Verdict::Unsat) {
    result.verdict = Verdict::Unsat;
    return result;
  }
  if (verdict == Verdict::Sat) {
    // Fill any variables the solver left out, then re-verify before accepting.
    std::vector<int> full(doc.var_count);
    for (int v = 1; v <= doc.var_count; ++v) full[v - 1] = -v;
    for (int lit : model) {
      int v = std::abs(lit);
      if (v >= 1 && v <= doc.var_count) full[v - 1] = lit;
    }
    if (!model_satisfies(doc, full)) {
      result.diagnostic = "solver claimed SAT but its model fails verification";
      return result;
    }
    result.verdict = Verdict::Sat;
    result.model = std::move(full);
    return result;
  }

  std::ostringstream diag;
  diag << "no verdict line in solver output";
  if (WIFEXITED(status)) diag << " (exit " << WEXITSTATUS(status) << ")";
  else if (WIFSIGNALED(status)) diag << " (signal " << WTERMSIG(status) << ")";
  if (!output.empty()) diag << ": " << output.substr(0, 400);
  result.diagnostic = diag.str();
  return result;
}

}  // namespace pythag
