#include <doctest.h>

#include <random>

#include "accverify/corpus.hpp"
#include "test_util.hpp"

using namespace accv;

TEST_CASE("discover extracts languages, tags and versions") {
  testutil::TempDir tmp;
  testutil::write_file(tmp.path / "acc_init_if.c", "// T: acc_init, if  V: 3.0\nint main(){}\n");
  testutil::write_file(tmp.path / "x.f90", "! T: data  V: 2.0\nprogram x\nend program x\n");
  testutil::write_file(tmp.path / "sub" / "y.cpp", "/* T: routine, bind\n * V: 2.7 */\nint main(){}\n");
  testutil::write_file(tmp.path / "notes.txt", "not a test\n");

  DiscoveryResult result = discover(tmp.path);
  REQUIRE(result.cases.size() == 3);
  CHECK(result.errors.empty());

  // lexicographic by relative path
  CHECK(result.cases[0].path == "acc_init_if.c");
  CHECK(result.cases[1].path == "sub/y.cpp");
  CHECK(result.cases[2].path == "x.f90");

  CHECK(result.cases[0].language == Language::c);
  CHECK(result.cases[0].tags == std::vector<std::string>{"acc_init", "if"});
  CHECK(result.cases[0].min_version == SpecVersion{3, 0});

  CHECK(result.cases[1].language == Language::cxx);
  CHECK(result.cases[1].tags == std::vector<std::string>{"routine", "bind"});
  CHECK(result.cases[1].min_version == SpecVersion{2, 7});

  CHECK(result.cases[2].language == Language::fortran);
  CHECK(result.cases[2].min_version == SpecVersion{2, 0});
}

TEST_CASE("discover: empty directory and headerless files") {
  testutil::TempDir tmp;
  CHECK(discover(tmp.path).cases.empty());

  testutil::write_file(tmp.path / "plain.c", "int main(){}\n");
  DiscoveryResult result = discover(tmp.path);
  REQUIRE(result.cases.size() == 1);
  CHECK(result.cases[0].tags.empty());
  CHECK(result.cases[0].min_version == SpecVersion{1, 0});
}

TEST_CASE("discover the shipped fixture corpus") {
  DiscoveryResult result = discover(testutil::fixture_dir() / "corpus");
  CHECK(result.errors.empty());
  CHECK(result.cases.size() >= 10);
  bool saw_fortran = false;
  for (const auto& tc : result.cases) {
    CAPTURE(tc.path);
    CHECK(!tc.tags.empty());
    if (tc.language == Language::fortran) saw_fortran = true;
  }
  CHECK(saw_fortran);
}

TEST_CASE("filter: no filters set returns the input unchanged") {
  testutil::TempDir tmp;
  testutil::write_file(tmp.path / "a.c", "// T: a  V: 1.0\n");
  testutil::write_file(tmp.path / "b.f90", "! T: b  V: 2.0\n");
  auto cases = discover(tmp.path).cases;
  HarnessConfig cfg;
  cfg.compilers[Language::c] = "true";
  CHECK(filter(cases, cfg) == cases);
}

TEST_CASE("filter: version gate omits later-tagged tests") {
  TestCase newer{"x.c", Language::c, {"t"}, SpecVersion{3, 1}};
  TestCase older{"y.c", Language::c, {"t"}, SpecVersion{2, 0}};
  HarnessConfig cfg;
  cfg.max_spec_version = SpecVersion{3, 0};
  auto kept = filter({newer, older}, cfg);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].path == "y.c");
}

TEST_CASE("filter: language exclusion leaves only the remaining language") {
  TestCase c{"a.c", Language::c, {"t"}, {1, 0}};
  TestCase cxx{"b.cpp", Language::cxx, {"t"}, {1, 0}};
  TestCase f{"c.f90", Language::fortran, {"t"}, {1, 0}};
  HarnessConfig cfg;
  cfg.excluded_languages = {Language::c, Language::cxx};
  auto kept = filter({c, cxx, f}, cfg);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].language == Language::fortran);
}

TEST_CASE("filter: dir filter matches whole path components") {
  TestCase inside{"init/a.c", Language::c, {"t"}, {1, 0}};
  TestCase lookalike{"initials/b.c", Language::c, {"t"}, {1, 0}};
  HarnessConfig cfg;
  cfg.dir_filter = "init";
  auto kept = filter({inside, lookalike}, cfg);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].path == "init/a.c");
}

// --- randomized equivalence against a brute-force predicate -------------

namespace {

// Brute-force restatement of the filter contract, kept deliberately
// independent of corpus.hpp internals.
bool keeps(const TestCase& tc, const HarnessConfig& cfg) {
  if (cfg.dir_filter) {
    std::string want = *cfg.dir_filter;
    bool under = tc.path == want || tc.path.rfind(want + "/", 0) == 0;
    if (!under) return false;
  }
  if (cfg.tag_filter) {
    bool any = false;
    for (const auto& tag : tc.tags)
      if (cfg.tag_filter->count(tag)) any = true;
    if (!any) return false;
  }
  SpecVersion cap = cfg.max_spec_version.value_or(SpecVersion{3, 2});
  if (cap < tc.min_version) return false;
  if (cfg.excluded_languages.count(tc.language)) return false;
  return true;
}

TestCase random_case(std::mt19937& rng, int index) {
  static const char* dirs[] = {"init", "data", "routine", "compute"};
  static const char* tags[] = {"acc_init", "if", "copyout", "bind", "mock"};
  TestCase tc;
  Language lang = static_cast<Language>(rng() % 3);
  const char* ext = lang == Language::c ? ".c" : lang == Language::cxx ? ".cpp" : ".f90";
  tc.path = std::string(dirs[rng() % 4]) + "/t" + std::to_string(index) + ext;
  tc.language = lang;
  size_t tag_count = rng() % 3;
  for (size_t i = 0; i < tag_count; ++i) {
    std::string tag = tags[rng() % 5];
    if (!tc.has_tag(tag)) tc.tags.push_back(tag);
  }
  tc.min_version = SpecVersion{1 + static_cast<int>(rng() % 3), static_cast<int>(rng() % 8)};
  return tc;
}

HarnessConfig random_filter_config(std::mt19937& rng) {
  static const char* tags[] = {"acc_init", "if", "copyout", "bind", "mock"};
  HarnessConfig cfg;
  cfg.compilers[Language::c] = "true";
  if (rng() % 2) {
    std::set<std::string> want;
    size_t n = 1 + rng() % 2;
    for (size_t i = 0; i < n; ++i) want.insert(tags[rng() % 5]);
    cfg.tag_filter = want;
  }
  if (rng() % 2) {
    static const char* dirs[] = {"init", "data", "routine", "compute", "other"};
    cfg.dir_filter = dirs[rng() % 5];
  }
  if (rng() % 2)
    cfg.max_spec_version = SpecVersion{1 + static_cast<int>(rng() % 3), static_cast<int>(rng() % 8)};
  if (rng() % 3 == 0) cfg.excluded_languages.insert(static_cast<Language>(rng() % 3));
  return cfg;
}

}  // namespace

TEST_CASE("filter equals the brute-force predicate on random corpora") {
  std::mt19937 rng(424242);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<TestCase> cases;
    for (int i = 0; i < 100; ++i) cases.push_back(random_case(rng, i));
    HarnessConfig cfg = random_filter_config(rng);

    std::vector<TestCase> expected;
    for (const auto& tc : cases)
      if (keeps(tc, cfg)) expected.push_back(tc);

    auto got = filter(cases, cfg);
    CHECK(got == expected);

    // idempotent, and a subset of the input
    CHECK(filter(got, cfg) == got);
    CHECK(got.size() <= cases.size());
  }
}
