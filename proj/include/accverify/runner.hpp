// Compile/execute orchestration: per-language compiler invocation with
// hooks and timeouts, a bounded worker pool, and an incrementally written
// environment snapshot that lets an interrupted suite resume.
#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "accverify/config.hpp"
#include "accverify/corpus.hpp"
#include "accverify/process.hpp"

namespace accv::runner {

enum class CompileStatus { ok, error, timeout };
enum class ExecStatus { pass, fail, timeout, skipped };

inline const char* token(CompileStatus s) {
  switch (s) {
    case CompileStatus::ok: return "ok";
    case CompileStatus::error: return "error";
    case CompileStatus::timeout: return "timeout";
  }
  return "?";
}

inline const char* token(ExecStatus s) {
  switch (s) {
    case ExecStatus::pass: return "pass";
    case ExecStatus::fail: return "fail";
    case ExecStatus::timeout: return "timeout";
    case ExecStatus::skipped: return "skipped";
  }
  return "?";
}

struct CompileResult {
  CompileStatus status = CompileStatus::error;
  int exit_code = 0;
  long long duration_ms = 0;
  std::string out, err;
  std::string command;
};

struct ExecResult {
  ExecStatus status = ExecStatus::fail;
  int exit_code = 0;
  long long duration_ms = 0;
  std::string out, err;
};

struct RunRecord {
  TestCase test;
  std::optional<std::string> skip_reason;  // set: nothing was compiled or run
  CompileResult compile;
  std::optional<ExecResult> execute;

  // pass | fail | compile_error | timeout | skipped
  std::string overall_status() const {
    if (skip_reason) return "skipped";
    if (compile.status == CompileStatus::error) return "compile_error";
    if (compile.status == CompileStatus::timeout) return "timeout";
    if (!execute) return "compile_error";  // unreachable for well-formed records
    return token(execute->status);
  }
};

struct MissingCompiler : std::runtime_error {
  explicit MissingCompiler(Language lang)
      : std::runtime_error(std::string("no compiler configured for ") + display_name(lang)) {}
};

struct SnapshotError : std::runtime_error {
  explicit SnapshotError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

inline std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out.push_back(c);
  }
  out += "'";
  return out;
}

inline std::string binary_name(const std::string& rel_path) {
  std::string out;
  for (char c : rel_path) out.push_back(c == '/' ? '_' : c);
  auto dot = out.rfind('.');
  if (dot != std::string::npos) out.resize(dot);
  return out + ".bin";
}

}  // namespace detail

// JSON shape shared by snapshots and reports.
inline nlohmann::json to_json(const TestCase& tc) {
  return {{"path", tc.path},
          {"language", token(tc.language)},
          {"tags", tc.tags},
          {"min_version", tc.min_version.str()}};
}

inline TestCase test_case_from_json(const nlohmann::json& j) {
  TestCase tc;
  tc.path = j.at("path").get<std::string>();
  if (auto lang = language_from_token(j.at("language").get<std::string>())) tc.language = *lang;
  tc.tags = j.at("tags").get<std::vector<std::string>>();
  if (auto v = SpecVersion::parse(j.at("min_version").get<std::string>())) tc.min_version = *v;
  return tc;
}

inline nlohmann::json to_json(const RunRecord& r) {
  nlohmann::json j;
  j["test"] = to_json(r.test);
  j["status"] = r.overall_status();
  if (r.skip_reason) {
    j["skip_reason"] = *r.skip_reason;
    return j;
  }
  j["compile"] = {{"status", token(r.compile.status)}, {"exit_code", r.compile.exit_code},
                  {"duration_ms", r.compile.duration_ms}, {"stdout", r.compile.out},
                  {"stderr", r.compile.err}, {"command", r.compile.command}};
  if (r.execute) {
    j["execute"] = {{"status", token(r.execute->status)}, {"exit_code", r.execute->exit_code},
                    {"duration_ms", r.execute->duration_ms}, {"stdout", r.execute->out},
                    {"stderr", r.execute->err}};
  }
  return j;
}

inline RunRecord record_from_json(const nlohmann::json& j) {
  RunRecord r;
  r.test = test_case_from_json(j.at("test"));
  if (j.contains("skip_reason")) {
    r.skip_reason = j.at("skip_reason").get<std::string>();
    return r;
  }
  const auto& c = j.at("compile");
  std::string cs = c.at("status").get<std::string>();
  r.compile.status = cs == "ok" ? CompileStatus::ok
                     : cs == "timeout" ? CompileStatus::timeout
                                       : CompileStatus::error;
  r.compile.exit_code = c.at("exit_code").get<int>();
  r.compile.duration_ms = c.at("duration_ms").get<long long>();
  r.compile.out = c.at("stdout").get<std::string>();
  r.compile.err = c.at("stderr").get<std::string>();
  r.compile.command = c.at("command").get<std::string>();
  if (j.contains("execute")) {
    ExecResult e;
    const auto& je = j.at("execute");
    std::string es = je.at("status").get<std::string>();
    e.status = es == "pass" ? ExecStatus::pass
               : es == "timeout" ? ExecStatus::timeout
               : es == "skipped" ? ExecStatus::skipped
                                 : ExecStatus::fail;
    e.exit_code = je.at("exit_code").get<int>();
    e.duration_ms = je.at("duration_ms").get<long long>();
    e.out = je.at("stdout").get<std::string>();
    e.err = je.at("stderr").get<std::string>();
    r.execute = std::move(e);
  }
  return r;
}

struct EnvSnapshot {
  std::string config_digest;
  std::vector<std::pair<std::string, bool>> progress;  // (case path, done)
  std::vector<RunRecord> records;                      // completed only

  nlohmann::json to_json_value() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["config_digest"] = config_digest;
    nlohmann::json prog = nlohmann::json::array();
    for (const auto& [path, done] : progress) prog.push_back({{"path", path}, {"done", done}});
    j["progress"] = prog;
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : records) recs.push_back(to_json(r));
    j["records"] = recs;
    return j;
  }

  static EnvSnapshot from_json_value(const nlohmann::json& j) {
    EnvSnapshot s;
    s.config_digest = j.at("config_digest").get<std::string>();
    for (const auto& p : j.at("progress"))
      s.progress.emplace_back(p.at("path").get<std::string>(), p.at("done").get<bool>());
    for (const auto& r : j.at("records")) s.records.push_back(record_from_json(r));
    return s;
  }
};

inline void write_snapshot(const EnvSnapshot& snapshot, const std::filesystem::path& path) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw SnapshotError("cannot write snapshot at " + path.string());
    out << snapshot.to_json_value().dump(1) << "\n";
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw SnapshotError("cannot move snapshot into place at " + path.string());
}

inline EnvSnapshot load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SnapshotError("cannot read snapshot at " + path.string());
  nlohmann::json j;
  try {
    in >> j;
    return EnvSnapshot::from_json_value(j);
  } catch (const nlohmann::json::exception& e) {
    throw SnapshotError("snapshot " + path.string() + " is not valid: " + e.what());
  }
}

namespace detail {

struct HookOutcome {
  bool ran_clean = true;
  proc::CommandResult result;
};

inline HookOutcome run_hook(const std::optional<std::string>& hook, int timeout,
                            const std::map<std::string, std::string>& env) {
  HookOutcome outcome;
  if (!hook || hook->empty()) return outcome;
  outcome.result = proc::run_shell(*hook, timeout, env);
  outcome.ran_clean = !outcome.result.timed_out && !outcome.result.spawn_failed &&
                      outcome.result.exit_code == 0;
  return outcome;
}

}  // namespace detail

// Builds <workdir>/<mangled>.bin from the case source. Hooks and the
// compiler itself all run under the configured timeout.
inline CompileResult compile_one(const TestCase& tc, const HarnessConfig& cfg,
                                 const std::filesystem::path& workdir) {
  const std::string* compiler = cfg.compiler_for(tc.language);
  if (!compiler) throw MissingCompiler(tc.language);

  std::filesystem::create_directories(workdir);
  std::filesystem::path source = std::filesystem::path(cfg.tests_root()) / tc.path;
  std::filesystem::path binary = workdir / detail::binary_name(tc.path);
  std::map<std::string, std::string> env = {{"SOURCE", source.string()},
                                            {"BINARY", binary.string()},
                                            {"WORKDIR", workdir.string()}};

  CompileResult result;

  auto pre = detail::run_hook(cfg.pre_compile, cfg.timeout(), env);
  if (!pre.ran_clean) {
    result.status = pre.result.timed_out ? CompileStatus::timeout : CompileStatus::error;
    result.exit_code = pre.result.exit_code;
    result.duration_ms = pre.result.duration_ms;
    result.command = *cfg.pre_compile;
    result.out = pre.result.out;
    result.err = "pre_compile hook failed: " + pre.result.err;
    return result;
  }

  std::string command = *compiler;
  for (const auto& flag : cfg.flags_for(tc.language)) command += " " + flag;
  command += " " + detail::shell_quote(source.string()) + " -o " +
             detail::shell_quote(binary.string());

  proc::CommandResult run = proc::run_shell(command, cfg.timeout(), env);
  result.command = command;
  result.exit_code = run.exit_code;
  result.duration_ms = run.duration_ms;
  result.out = run.out;
  result.err = run.err;
  if (run.timed_out) result.status = CompileStatus::timeout;
  else if (run.spawn_failed || run.exit_code != 0) result.status = CompileStatus::error;
  else result.status = CompileStatus::ok;

  if (result.status == CompileStatus::ok) {
    auto post = detail::run_hook(cfg.post_compile, cfg.timeout(), env);
    if (!post.ran_clean) {
      result.status = post.result.timed_out ? CompileStatus::timeout : CompileStatus::error;
      result.exit_code = post.result.exit_code;
      result.err += "\npost_compile hook failed: " + post.result.err;
    }
  }
  return result;
}

// Runs the compiled binary; exit 0 is a pass, nonzero within the timeout
// a fail. The binary path is taken from the compile command's -o target.
inline ExecResult run_one(const TestCase& tc, const HarnessConfig& cfg,
                          const std::filesystem::path& workdir) {
  std::filesystem::path source = std::filesystem::path(cfg.tests_root()) / tc.path;
  std::filesystem::path binary = workdir / detail::binary_name(tc.path);
  std::map<std::string, std::string> env = {{"SOURCE", source.string()},
                                            {"BINARY", binary.string()},
                                            {"WORKDIR", workdir.string()}};

  ExecResult result;

  auto pre = detail::run_hook(cfg.pre_run, cfg.timeout(), env);
  if (!pre.ran_clean) {
    result.status = pre.result.timed_out ? ExecStatus::timeout : ExecStatus::fail;
    result.exit_code = pre.result.exit_code;
    result.duration_ms = pre.result.duration_ms;
    result.err = "pre_run hook failed: " + pre.result.err;
    return result;
  }

  proc::CommandResult run = proc::run_shell(detail::shell_quote(binary.string()), cfg.timeout(), env);
  result.exit_code = run.exit_code;
  result.duration_ms = run.duration_ms;
  result.out = run.out;
  result.err = run.err;
  if (run.timed_out) result.status = ExecStatus::timeout;
  else if (run.spawn_failed) { result.status = ExecStatus::fail; result.err += "\nspawn failed"; }
  else result.status = run.exit_code == 0 ? ExecStatus::pass : ExecStatus::fail;

  auto post = detail::run_hook(cfg.post_run, cfg.timeout(), env);
  if (!post.ran_clean)
    result.err += "\npost_run hook failed (status unchanged): " + post.result.err;
  return result;
}

struct RunOptions {
  int workers = 1;
  std::filesystem::path workdir;                 // defaults to cfg.work_root()
  std::filesystem::path snapshot_path;           // written when non-empty
  std::optional<std::filesystem::path> resume_from;
  std::function<bool(size_t completed)> should_stop;  // graceful interruption
  std::function<void(const RunRecord&)> on_record;    // progress reporting
};

struct SuiteRun {
  std::vector<RunRecord> records;  // ordered by case path
  EnvSnapshot snapshot;
};

// Runs every case through compile+execute. Records land in case-path order
// regardless of worker interleaving; the snapshot is rewritten after each
// completion so a killed run can resume with `resume_from`.
inline SuiteRun run_suite(const std::vector<TestCase>& cases, const HarnessConfig& cfg,
                          const RunOptions& options = {}) {
  std::filesystem::path workdir =
      options.workdir.empty() ? std::filesystem::path(cfg.work_root()) : options.workdir;
  std::filesystem::create_directories(workdir);

  std::map<std::string, RunRecord> done;
  std::string digest = config_digest(cfg);

  if (options.resume_from) {
    EnvSnapshot prior = load_snapshot(*options.resume_from);
    if (prior.config_digest != digest)
      throw SnapshotError("snapshot was produced by a different configuration (digest " +
                          prior.config_digest + " != " + digest + ")");
    for (auto& rec : prior.records) done[rec.test.path] = std::move(rec);
  }

  std::vector<const TestCase*> pending;
  for (const auto& tc : cases)
    if (!done.count(tc.path)) pending.push_back(&tc);

  std::mutex mu;
  std::atomic<size_t> next{0};
  std::atomic<bool> stop{false};
  size_t completed_at_start = done.size();

  auto snapshot_of = [&](const std::map<std::string, RunRecord>& records_by_path) {
    EnvSnapshot snap;
    snap.config_digest = digest;
    for (const auto& tc : cases)
      snap.progress.emplace_back(tc.path, records_by_path.count(tc.path) > 0);
    for (const auto& [_, rec] : records_by_path) snap.records.push_back(rec);
    return snap;
  };

  auto pipeline = [&](const TestCase& tc) {
    RunRecord rec;
    rec.test = tc;
    if (cfg.excluded_languages.count(tc.language)) {
      rec.skip_reason = std::string(display_name(tc.language)) + " is excluded by configuration";
      return rec;
    }
    if (!cfg.compiler_for(tc.language)) {
      rec.skip_reason = std::string("no compiler configured for ") + display_name(tc.language);
      return rec;
    }
    rec.compile = compile_one(tc, cfg, workdir);
    if (rec.compile.status == CompileStatus::ok) rec.execute = run_one(tc, cfg, workdir);
    return rec;
  };

  auto worker = [&] {
    while (!stop.load()) {
      size_t i = next.fetch_add(1);
      if (i >= pending.size()) return;
      RunRecord rec = pipeline(*pending[i]);
      std::lock_guard<std::mutex> lock(mu);
      done[rec.test.path] = rec;
      if (!options.snapshot_path.empty()) write_snapshot(snapshot_of(done), options.snapshot_path);
      if (options.on_record) options.on_record(rec);
      if (options.should_stop && options.should_stop(done.size() - completed_at_start))
        stop.store(true);
    }
  };

  int workers = std::max(1, options.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SuiteRun result;
  result.snapshot = snapshot_of(done);
  for (const auto& tc : cases) {
    auto it = done.find(tc.path);
    if (it != done.end()) result.records.push_back(it->second);
  }
  if (!options.snapshot_path.empty()) write_snapshot(result.snapshot, options.snapshot_path);
  return result;
}

}  // namespace accv::runner
