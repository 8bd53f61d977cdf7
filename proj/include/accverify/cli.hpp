// Command-line front end: flag parsing, config merging, and the run /
// compare / export / validate pipelines. main() stays a thin wrapper so
// tests can drive run_cli() directly.
//
// Exit codes: 0 = pipeline completed (test failures are data, not errors),
// 1 = usage error, 2 = harness-internal error.
#pragma once

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "accverify/config.hpp"
#include "accverify/corpus.hpp"
#include "accverify/exporter.hpp"
#include "accverify/legality.hpp"
#include "accverify/parser.hpp"
#include "accverify/report.hpp"
#include "accverify/runner.hpp"

namespace accv::cli {

enum class Verbosity { quiet, normal, all };

struct CliInvocation {
  std::string subcommand;
  std::vector<std::string> config_paths;   // run: -c, repeatable
  std::vector<std::string> positional;     // compare: reports; export/validate: corpus
  std::string output_path;                 // -o, used as a stem by `run`
  std::string env_path;                    // -env
  std::string system_label;                // -system
  Verbosity verbosity = Verbosity::normal; // -verbose quiet|normal|all
  bool each = false;                       // run each config separately
  int workers = 1;
  std::optional<int> timeout_override;
  std::optional<SpecVersion> version;      // validate
  std::string profile = "nvidia";          // validate
  std::string rules_path;                  // validate: legality table
  std::string template_path;               // export
  std::string run_prefix;                  // export
};

struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

inline const char* usage_text() {
  return
      "usage: accverify <subcommand> [options]\n"
      "\n"
      "subcommands:\n"
      "  run       -c FILE [-c FILE...] [-o STEM] [-env PATH] [-system LABEL]\n"
      "            [-verbose LEVEL] [--workers N] [--timeout S] [--each]\n"
      "  compare   REPORT.json REPORT.json... [-o FILE]\n"
      "  export    CORPUS_DIR -o FILE [--template FILE] [--run-prefix CMD]\n"
      "  validate  CORPUS_DIR [--version V] [--profile NAME] [--rules FILE]\n"
      "\n"
      "options:\n"
      "  -c FILE        configuration file; repeat to merge left-to-right\n"
      "  -o PATH        output file (run: path stem, extension appended)\n"
      "  -env PATH      where to write the resumable environment snapshot\n"
      "  -system LABEL  label for the system under test\n"
      "  -verbose LVL   quiet | normal | all\n"
      "  --each         run once per -c file instead of merging\n"
      "  --workers N    parallel test workers (default 1)\n"
      "  --timeout S    override the configured timeout\n";
}

inline CliInvocation parse_invocation(const std::vector<std::string>& args) {
  CliInvocation inv;
  if (args.empty()) throw UsageError("missing subcommand");
  inv.subcommand = args[0];
  if (inv.subcommand != "run" && inv.subcommand != "compare" && inv.subcommand != "export" &&
      inv.subcommand != "validate")
    throw UsageError("unknown subcommand '" + inv.subcommand + "'");

  size_t i = 1;
  auto value_of = [&](const std::string& flag, const std::string& arg) -> std::string {
    auto eq = arg.find('=');
    if (eq != std::string::npos) return arg.substr(eq + 1);
    if (++i >= args.size()) throw UsageError(flag + " needs a value");
    return args[i];
  };

  for (; i < args.size(); ++i) {
    const std::string& arg = args[i];
    std::string name = arg.substr(0, arg.find('='));
    if (name == "-c" || name == "--config") inv.config_paths.push_back(value_of(name, arg));
    else if (name == "-o" || name == "--output") inv.output_path = value_of(name, arg);
    else if (name == "-env" || name == "--env") inv.env_path = value_of(name, arg);
    else if (name == "-system" || name == "--system") inv.system_label = value_of(name, arg);
    else if (name == "-verbose" || name == "--verbose") {
      std::string level = value_of(name, arg);
      if (level == "quiet") inv.verbosity = Verbosity::quiet;
      else if (level == "normal") inv.verbosity = Verbosity::normal;
      else if (level == "all") inv.verbosity = Verbosity::all;
      else throw UsageError("verbosity must be quiet, normal or all");
    } else if (name == "--each") inv.each = true;
    else if (name == "--workers") {
      try { inv.workers = std::stoi(value_of(name, arg)); }
      catch (const std::exception&) { throw UsageError("--workers needs an integer"); }
      if (inv.workers < 1) throw UsageError("--workers must be >= 1");
    } else if (name == "--timeout") {
      try { inv.timeout_override = std::stoi(value_of(name, arg)); }
      catch (const std::exception&) { throw UsageError("--timeout needs an integer"); }
      if (*inv.timeout_override < 1) throw UsageError("--timeout must be >= 1");
    } else if (name == "--version") {
      auto v = SpecVersion::parse(value_of(name, arg));
      if (!v) throw UsageError("--version needs MAJOR.MINOR");
      inv.version = *v;
    } else if (name == "--profile") inv.profile = value_of(name, arg);
    else if (name == "--rules") inv.rules_path = value_of(name, arg);
    else if (name == "--template") inv.template_path = value_of(name, arg);
    else if (name == "--run-prefix") inv.run_prefix = value_of(name, arg);
    else if (!arg.empty() && arg[0] == '-') throw UsageError("unknown flag '" + arg + "'");
    else inv.positional.push_back(arg);
  }

  if (inv.subcommand == "run" && inv.config_paths.empty())
    throw UsageError("run needs at least one -c configuration file");
  if (inv.subcommand == "compare" && inv.positional.size() < 2)
    throw UsageError("compare needs at least two report files");
  if (inv.subcommand == "export" && (inv.positional.size() != 1 || inv.output_path.empty()))
    throw UsageError("export needs a corpus directory and -o");
  if (inv.subcommand == "validate" && inv.positional.size() != 1)
    throw UsageError("validate needs a corpus directory");
  return inv;
}

namespace detail {

struct InternalError : std::runtime_error {
  explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InternalError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::string compiler_id(const HarnessConfig& cfg) {
  std::vector<std::string> seen;
  for (Language lang : {Language::c, Language::cxx, Language::fortran}) {
    const std::string* cc = cfg.compiler_for(lang);
    if (!cc) continue;
    // invocation may carry args and a directory prefix; keep the tool name
    std::string head = cc->substr(0, cc->find(' '));
    head = std::filesystem::path(head).filename().string();
    if (std::find(seen.begin(), seen.end(), head) == seen.end()) seen.push_back(head);
  }
  std::string out;
  for (size_t i = 0; i < seen.size(); ++i) out += (i ? "+" : "") + seen[i];
  return out.empty() ? "unknown" : out;
}

inline std::string locate_rules(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("ACCVERIFY_RULES"); env && *env) return env;
  return "data/acc_legality.conf";
}

inline const char* extension(OutputFormat f) {
  switch (f) {
    case OutputFormat::json: return ".json";
    case OutputFormat::txt: return ".txt";
    case OutputFormat::html: return ".html";
  }
  return "";
}

}  // namespace detail

// --- run ----------------------------------------------------------------

inline int run_suite_once(const CliInvocation& inv, HarnessConfig cfg,
                          const std::string& out_stem, std::ostream& out, std::ostream& err) {
  cfg.validate();
  if (inv.timeout_override) cfg.timeout_seconds = inv.timeout_override;

  DiscoveryResult discovered = discover(cfg.tests_root());
  for (const auto& io : discovered.errors)
    err << "warning: " << io.path << ": " << io.message << "\n";
  std::vector<TestCase> cases = filter(discovered.cases, cfg);

  runner::RunOptions options;
  options.workers = inv.workers;
  options.workdir = cfg.work_root();
  options.snapshot_path = inv.env_path.empty()
                              ? options.workdir / "env.json"
                              : std::filesystem::path(inv.env_path);
  if (cfg.resume_env) options.resume_from = *cfg.resume_env;
  if (inv.verbosity != Verbosity::quiet) {
    options.on_record = [&](const runner::RunRecord& rec) {
      long long ms = rec.execute ? rec.execute->duration_ms : rec.compile.duration_ms;
      out << "[" << rec.overall_status() << "] " << rec.test.path << " (" << ms << " ms)\n";
      if (inv.verbosity == Verbosity::all && !rec.skip_reason) {
        out << "    " << rec.compile.command << "\n";
        if (!rec.compile.err.empty() && rec.compile.status != runner::CompileStatus::ok)
          out << "    compile stderr: " << rec.compile.err << "\n";
        if (rec.execute && !rec.execute->err.empty() &&
            rec.execute->status != runner::ExecStatus::pass)
          out << "    execute stderr: " << rec.execute->err << "\n";
      }
    };
  }

  runner::SuiteRun run = runner::run_suite(cases, cfg, options);

  report::SuiteReport rep = report::aggregate(
      run.records, inv.system_label.empty() ? "unlabeled" : inv.system_label,
      detail::compiler_id(cfg));
  rep.timestamp = detail::utc_timestamp();

  std::filesystem::path report_path = out_stem + detail::extension(cfg.format());
  report::emit(rep, cfg.format(), report_path);

  out << "ran " << rep.totals.total << " tests: " << rep.totals.pass << " pass, "
      << rep.totals.fail << " fail, " << rep.totals.compile_error << " compile_error, "
      << rep.totals.timeout << " timeout, " << rep.totals.skipped << " skipped ("
      << report::format_rate(rep.totals.pass_rate()) << ")\n";
  out << "report: " << report_path.string() << "\n";
  return 0;
}

inline int cmd_run(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  std::string stem = inv.output_path.empty() ? "results" : inv.output_path;
  if (inv.each) {
    int rc = 0;
    for (const auto& path : inv.config_paths) {
      HarnessConfig cfg = parse_config_fragment(detail::read_file(path));
      std::string conf_stem = std::filesystem::path(path).stem().string();
      rc = run_suite_once(inv, cfg, stem + "-" + conf_stem, out, err);
      if (rc != 0) return rc;
    }
    return rc;
  }
  HarnessConfig cfg;
  for (const auto& path : inv.config_paths)
    cfg = merge_configs(cfg, parse_config_fragment(detail::read_file(path)));
  return run_suite_once(inv, cfg, stem, out, err);
}

// --- compare --------------------------------------------------------------

inline int cmd_compare(const CliInvocation& inv, std::ostream& out, std::ostream&) {
  std::vector<report::SuiteReport> reports;
  for (const auto& path : inv.positional)
    reports.push_back(report::parse_report(detail::read_file(path)));
  report::ComparisonMatrix matrix = report::compare(reports);
  std::string rendered = report::render_comparison(matrix);
  if (inv.output_path.empty()) {
    out << rendered;
  } else {
    std::ofstream file(inv.output_path);
    if (!file) throw detail::InternalError("cannot write " + inv.output_path);
    file << rendered;
    out << "comparison: " << inv.output_path << "\n";
  }
  return 0;
}

// --- export -----------------------------------------------------------------

inline int cmd_export(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  DiscoveryResult discovered = discover(inv.positional[0]);
  for (const auto& io : discovered.errors)
    err << "warning: " << io.path << ": " << io.message << "\n";

  exporter::ExportPlan plan;
  plan.corpus_root = inv.positional[0];
  plan.run_prefix = inv.run_prefix;
  if (!inv.template_path.empty()) plan.stanza_template = detail::read_file(inv.template_path);

  std::string contents = exporter::export_build_file(plan, discovered.cases);
  std::ofstream file(inv.output_path);
  if (!file) throw detail::InternalError("cannot write " + inv.output_path);
  file << contents;
  out << "build file: " << inv.output_path << "\n";
  return 0;
}

// --- validate ----------------------------------------------------------------

inline int cmd_validate(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  acc::LegalityTables tables =
      acc::parse_legality(detail::read_file(detail::locate_rules(inv.rules_path)));
  SpecVersion version = inv.version.value_or(kLatestSpec);

  DiscoveryResult discovered = discover(inv.positional[0]);
  for (const auto& io : discovered.errors)
    err << "warning: " << io.path << ": " << io.message << "\n";

  for (const auto& tc : discovered.cases) {
    std::string source =
        detail::read_file((std::filesystem::path(inv.positional[0]) / tc.path).string());
    acc::ScanResult scan = acc::scan_file(source, tc.language, tc.path);
    for (const auto& parse_err : scan.errors)
      err << tc.path << ":" << parse_err.location.line << ": error: " << parse_err.message
          << "\n";
    for (const auto& d : scan.directives) {
      acc::ValidationResult res = acc::validate(d, version, tables.versions, tables.keywords,
                                                inv.profile);
      for (const auto& v : res.violations)
        out << tc.path << ":" << v.location.line << " " << v.directive << " "
            << (v.clause.empty() ? "-" : v.clause) << " " << v.rule << "\n";
      for (const auto& u : res.unknowns) {
        if (u.kind == acc::UnknownEntity::Kind::directive)
          err << tc.path << ":" << u.location.line << ": note: unknown directive '"
              << u.directive << "'\n";
        else
          err << tc.path << ":" << u.location.line << ": note: unknown clause '" << u.clause
              << "' on '" << u.directive << "'\n";
      }
    }
  }
  return 0;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliInvocation inv;
  try {
    inv = parse_invocation(args);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << usage_text();
    return 1;
  }
  try {
    if (inv.subcommand == "run") return cmd_run(inv, out, err);
    if (inv.subcommand == "compare") return cmd_compare(inv, out, err);
    if (inv.subcommand == "export") return cmd_export(inv, out, err);
    return cmd_validate(inv, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace accv::cli
