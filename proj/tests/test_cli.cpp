#include <doctest.h>

#include <sstream>

#include "accverify/cli.hpp"
#include "test_util.hpp"

using namespace accv;
using namespace accv::cli;

namespace {

struct CliRun {
  int exit_code;
  std::string out;
  std::string err;
};

CliRun invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int rc = run_cli(args, out, err);
  return {rc, out.str(), err.str()};
}

std::string mock_config_text(const testutil::TempDir& tmp) {
  return "cc=" + (testutil::fixture_dir() / "mock/mockcc").string() +
         "\ntest_dir=" + (testutil::fixture_dir() / "mock/corpus").string() +
         "\nbuild_dir=" + (tmp.path / "work").string() + "\ntimeout=2\n";
}

}  // namespace

TEST_CASE("usage errors exit 1 with usage text on stderr") {
  for (auto args : {std::vector<std::string>{},
                    {"frobnicate"},
                    {"run"},                       // no -c
                    {"compare", "only-one.json"},  // needs two
                    {"export", "corpus"},          // needs -o
                    {"validate"},
                    {"run", "-c"},                 // dangling value
                    {"run", "-c", "x", "--workers", "zero"}}) {
    CliRun r = invoke(args);
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("usage:") != std::string::npos);
  }
}

TEST_CASE("flag spellings: -flag value and -flag=value both work") {
  CliInvocation inv = parse_invocation(
      {"run", "-c=a.conf", "-c", "b.conf", "-system=darwin", "-verbose", "all", "-o", "out",
       "--workers", "8", "--timeout=30", "-env", "snap.json"});
  CHECK(inv.config_paths == std::vector<std::string>{"a.conf", "b.conf"});
  CHECK(inv.system_label == "darwin");
  CHECK(inv.verbosity == Verbosity::all);
  CHECK(inv.output_path == "out");
  CHECK(inv.workers == 8);
  CHECK(inv.timeout_override == 30);
  CHECK(inv.env_path == "snap.json");
}

TEST_CASE("unreadable config is a harness error, exit 2") {
  CliRun r = invoke({"run", "-c", "/nonexistent/path.conf"});
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("run: suite with failing tests still exits 0 and writes the report") {
  testutil::TempDir tmp;
  testutil::write_file(tmp.path / "mock.conf", mock_config_text(tmp));

  CliRun r = invoke({"run", "-c", (tmp.path / "mock.conf").string(), "-o",
                     (tmp.path / "results").string(), "-system", "testbox", "-verbose", "quiet"});
  CHECK(r.exit_code == 0);
  REQUIRE(std::filesystem::exists(tmp.path / "results.json"));

  report::SuiteReport rep =
      report::parse_report(testutil::read_file(tmp.path / "results.json"));
  CHECK(rep.system_label == "testbox");
  CHECK(rep.compiler_id == "mockcc");
  CHECK(rep.totals.total == 10);
  CHECK(rep.totals.fail >= 2);
  CHECK(rep.totals.compile_error >= 1);
  CHECK(rep.totals.timeout >= 1);

  // snapshot written under the configured build dir by default
  CHECK(std::filesystem::exists(tmp.path / "work" / "env.json"));
}

TEST_CASE("run: overlay config and --timeout override merge left to right") {
  testutil::TempDir tmp;
  testutil::write_file(tmp.path / "base.conf", mock_config_text(tmp));
  testutil::write_file(tmp.path / "overlay.conf", "tags=pass\nformat=txt\n");

  CliRun r = invoke({"run", "-c", (tmp.path / "base.conf").string(), "-c",
                     (tmp.path / "overlay.conf").string(), "-o", (tmp.path / "out").string(),
                     "-verbose", "quiet"});
  CHECK(r.exit_code == 0);
  REQUIRE(std::filesystem::exists(tmp.path / "out.txt"));
  std::string txt = testutil::read_file(tmp.path / "out.txt");
  // the tag filter kept only the six pass cases
  CHECK(txt.find("total 6  pass 6") != std::string::npos);
}

TEST_CASE("run --each produces one report per config") {
  testutil::TempDir tmp;
  testutil::write_file(tmp.path / "one.conf", mock_config_text(tmp) + "tags=pass\n");
  testutil::write_file(tmp.path / "two.conf", mock_config_text(tmp) + "tags=cerr\n");

  CliRun r = invoke({"run", "--each", "-c", (tmp.path / "one.conf").string(), "-c",
                     (tmp.path / "two.conf").string(), "-o", (tmp.path / "res").string(),
                     "-verbose", "quiet"});
  CHECK(r.exit_code == 0);
  CHECK(std::filesystem::exists(tmp.path / "res-one.json"));
  CHECK(std::filesystem::exists(tmp.path / "res-two.json"));
}

TEST_CASE("validate: the init+if violation shows up below 3.0") {
  testutil::TempDir tmp;
  testutil::write_file(tmp.path / "corpus" / "acc_init_if.c",
                       "// T: acc_init, if  V: 3.0\n"
                       "#pragma acc init if(x == x)\n");

  CliRun strict = invoke({"validate", (tmp.path / "corpus").string(), "--version", "2.7",
                          "--rules", (testutil::data_dir() / "acc_legality.conf").string()});
  CHECK(strict.exit_code == 0);
  CHECK(strict.out.find("acc_init_if.c:2 init if") != std::string::npos);

  CliRun lax = invoke({"validate", (tmp.path / "corpus").string(), "--version", "3.0",
                       "--rules", (testutil::data_dir() / "acc_legality.conf").string()});
  CHECK(lax.exit_code == 0);
  CHECK(lax.out.empty());
}

TEST_CASE("validate: device_type keyword check per profile") {
  testutil::TempDir tmp;
  testutil::write_file(tmp.path / "corpus" / "dt.c",
                       "// T: device_type  V: 2.0\n"
                       "#pragma acc init device_type(radeon)\n");

  CliRun nvidia = invoke({"validate", (tmp.path / "corpus").string(), "--rules",
                          (testutil::data_dir() / "acc_legality.conf").string()});
  CHECK(nvidia.out.find("radeon") != std::string::npos);

  CliRun amd = invoke({"validate", (tmp.path / "corpus").string(), "--profile", "amd", "--rules",
                       (testutil::data_dir() / "acc_legality.conf").string()});
  CHECK(amd.out.empty());
}

TEST_CASE("validate: empty corpus gives an empty listing") {
  testutil::TempDir tmp;
  std::filesystem::create_directories(tmp.path / "corpus");
  CliRun r = invoke({"validate", (tmp.path / "corpus").string(), "--rules",
                     (testutil::data_dir() / "acc_legality.conf").string()});
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
}

TEST_CASE("export subcommand writes the build file") {
  testutil::TempDir tmp;
  testutil::write_file(tmp.path / "corpus" / "a.c", "// T: t V: 1.0\n");
  testutil::write_file(tmp.path / "corpus" / "b.cpp", "// T: t V: 1.0\n");
  testutil::write_file(tmp.path / "corpus" / "c.f90", "! T: t V: 1.0\n");

  CliRun r = invoke({"export", (tmp.path / "corpus").string(), "-o",
                     (tmp.path / "generated.cmake").string()});
  CHECK(r.exit_code == 0);
  std::string contents = testutil::read_file(tmp.path / "generated.cmake");
  CHECK(contents.find("a.c") != std::string::npos);
  CHECK(contents.find("b.cpp") != std::string::npos);
  CHECK(contents.find("c.f90") == std::string::npos);
}

TEST_CASE("compare subcommand renders the matrix") {
  testutil::TempDir tmp;
  testutil::write_file(tmp.path / "corpus" / "p.c", "// T: t V: 1.0\n// MOCK-RUN-EXIT=0\n");

  auto run_into = [&](const std::string& name, const std::string& label) {
    std::string conf = "cc=" + (testutil::fixture_dir() / "mock/mockcc").string() +
                       "\ntest_dir=" + (tmp.path / "corpus").string() +
                       "\nbuild_dir=" + (tmp.path / ("w-" + name)).string() + "\ntimeout=2\n";
    testutil::write_file(tmp.path / (name + ".conf"), conf);
    CliRun r = invoke({"run", "-c", (tmp.path / (name + ".conf")).string(), "-o",
                       (tmp.path / name).string(), "-system", label, "-verbose", "quiet"});
    REQUIRE(r.exit_code == 0);
  };
  run_into("first", "sysA");
  run_into("second", "sysB");

  CliRun r = invoke({"compare", (tmp.path / "first.json").string(),
                     (tmp.path / "second.json").string()});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("sysA/mockcc") != std::string::npos);
  CHECK(r.out.find("sysB/mockcc") != std::string::npos);
  CHECK(r.out.find("p.c") != std::string::npos);
  CHECK(r.out.find("100.0%") != std::string::npos);
}
