#include <doctest.h>

#include "accverify/corpus.hpp"
#include "accverify/parser.hpp"
#include "test_util.hpp"

using namespace accv;
using namespace accv::acc;

TEST_CASE("parse init with device_type clause") {
  Directive d = parse_directive("#pragma acc init device_type(host)", Language::c);
  CHECK(d.name == "init");
  REQUIRE(d.clauses.size() == 1);
  CHECK(d.clauses[0].name == "device_type");
  REQUIRE(d.clauses[0].args.size() == 1);
  CHECK(d.clauses[0].args[0].text == "host");
}

TEST_CASE("parse routine with named target, vector and bind") {
  Directive d = parse_directive(
      "#pragma acc routine(host_array_array) vector bind(device_array_array)", Language::c);
  CHECK(d.name == "routine");
  REQUIRE(d.named_target.has_value());
  CHECK(*d.named_target == "host_array_array");
  REQUIRE(d.clauses.size() == 2);
  CHECK(d.clauses[0].name == "vector");
  CHECK(d.clauses[0].args.empty());
  CHECK(d.clauses[1].name == "bind");
  CHECK(d.clauses[1].args[0].text == "device_array_array");
}

TEST_CASE("bind accepts both string-literal and identifier forms") {
  Directive lit = parse_directive("#pragma acc routine vector bind(\"device_array_array\")",
                                  Language::c);
  Directive ident = parse_directive("#pragma acc routine vector bind(device_array_array)",
                                    Language::c);
  CHECK(lit.clauses[1].args[0].text == "\"device_array_array\"");
  CHECK(ident.clauses[1].args[0].text == "device_array_array");
}

TEST_CASE("fortran sentinel, combined construct without clauses") {
  Directive d = parse_directive("!$acc parallel loop", Language::fortran);
  CHECK(d.name == "parallel loop");
  CHECK(d.clauses.empty());
  CHECK(!d.named_target.has_value());
}

TEST_CASE("whitespace never changes the parse") {
  Directive tight = parse_directive("#pragma acc data copyin(a[0:n],b[0:n]) copy(c[0:n])",
                                    Language::c);
  Directive airy = parse_directive(
      "  #  pragma   acc   data   copyin( a[ 0 : n ] , b[0:n] )   copy ( c[0:n] )", Language::c);
  CHECK(tight.structurally_equal(airy));
}

TEST_CASE("array sections carry name and bounds") {
  Directive d = parse_directive("#pragma acc data copyin(a[0:n], b[0:n]) copy(c[0:n])",
                                Language::c);
  REQUIRE(d.clauses.size() == 2);
  REQUIRE(d.clauses[0].args.size() == 2);
  REQUIRE(d.clauses[0].args[0].section.has_value());
  CHECK(d.clauses[0].args[0].section->name == "a");
  CHECK(d.clauses[0].args[0].section->lower == "0");
  CHECK(d.clauses[0].args[0].section->length == "n");
  CHECK(d.clauses[0].args[0].var() == "a");
  // plain identifiers stay opaque
  Directive plain = parse_directive("#pragma acc data copy(total)", Language::c);
  CHECK(!plain.clauses[0].args[0].section.has_value());
  CHECK(plain.clauses[0].args[0].var() == "total");
}

TEST_CASE("reduction operator and variable") {
  Directive d = parse_directive("#pragma acc loop reduction(+:returned)", Language::c);
  REQUIRE(d.clauses.size() == 1);
  CHECK(d.clauses[0].reduction_op == "+");
  REQUIRE(d.clauses[0].args.size() == 1);
  CHECK(d.clauses[0].args[0].text == "returned");

  Directive minus = parse_directive("#pragma acc loop reduction(-:returned)", Language::c);
  CHECK(minus.clauses[0].reduction_op == "-");

  CHECK_THROWS_AS(parse_directive("#pragma acc loop reduction(%:x)", Language::c), ParseError);
  CHECK_THROWS_AS(parse_directive("#pragma acc loop reduction(x)", Language::c), ParseError);
}

TEST_CASE("expressions in clause args stay opaque") {
  Directive d = parse_directive("#pragma acc init if(device_num == device_num)", Language::c);
  REQUIRE(d.clauses.size() == 1);
  CHECK(d.clauses[0].name == "if");
  CHECK(d.clauses[0].args[0].text == "device_num == device_num");
}

TEST_CASE("wait directive takes a queue list as its directive argument") {
  Directive d = parse_directive("#pragma acc wait(1, 2) async(3)", Language::c);
  CHECK(d.name == "wait");
  REQUIRE(d.named_target.has_value());
  CHECK(*d.named_target == "1, 2");
  REQUIRE(d.clauses.size() == 1);
  CHECK(d.clauses[0].name == "async");
}

TEST_CASE("missing prefix and parse errors") {
  CHECK_THROWS_AS(parse_directive("int x = 0;", Language::c), NotADirective);
  CHECK_THROWS_AS(parse_directive("#pragma omp parallel", Language::c), NotADirective);
  CHECK_THROWS_AS(parse_directive("#pragma acc parallel loop", Language::fortran), NotADirective);

  try {
    parse_directive("#pragma acc data copyin(a[0:n]", Language::c);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.column > 0);
  }
  CHECK_THROWS_AS(parse_directive("#pragma acc init 3device(x)", Language::c), ParseError);
}

TEST_CASE("scan_file: the reference-count listing yields its three directives") {
  std::string source = testutil::read_file(testutil::fixture_dir() / "corpus/data/ref_count_zero.c");
  ScanResult scan = scan_file(source, Language::c, "data/ref_count_zero.c");
  CHECK(scan.errors.empty());
  REQUIRE(scan.directives.size() == 3);
  CHECK(scan.directives[0].name == "data");
  REQUIRE(scan.directives[0].clauses.size() == 2);
  CHECK(scan.directives[0].clauses[0].name == "copyin");
  CHECK(scan.directives[0].clauses[1].name == "copy");
  CHECK(scan.directives[1].name == "parallel loop");
  CHECK(scan.directives[2].name == "exit data");
  CHECK(scan.directives[2].clauses[0].name == "copyout");
  // locations point at the pragma lines
  CHECK(scan.directives[0].location.path == "data/ref_count_zero.c");
  CHECK(scan.directives[0].location.line > 0);
}

TEST_CASE("scan_file: no directives, and error isolation") {
  CHECK(scan_file("int main() { return 0; }\n", Language::c).directives.empty());

  std::string source =
      "#pragma acc parallel loop\n"
      "#pragma acc data copyin(a[0:n]\n"  // unbalanced
      "#pragma acc exit data delete(a)\n";
  ScanResult scan = scan_file(source, Language::c);
  CHECK(scan.directives.size() == 2);
  REQUIRE(scan.errors.size() == 1);
  CHECK(scan.errors[0].location.line == 2);
}

TEST_CASE("scan_file joins C backslash continuations") {
  std::string source =
      "#pragma acc parallel loop present(a[0:n], \\\n"
      "  b[0:n], c[0:n]) async(1)\n";
  ScanResult scan = scan_file(source, Language::c);
  REQUIRE(scan.errors.empty());
  REQUIRE(scan.directives.size() == 1);
  const Directive& d = scan.directives[0];
  CHECK(d.name == "parallel loop");
  REQUIRE(d.clauses.size() == 2);
  CHECK(d.clauses[0].args.size() == 3);
  CHECK(d.clauses[0].args[2].var() == "c");
}

TEST_CASE("scan_file joins Fortran ampersand continuations") {
  std::string source =
      "!$acc data copyin(a(1:n), b(1:n)) &\n"
      "!$acc& copyout(c(1:n))\n"
      "!$acc parallel loop\n"
      "!$acc end data\n";
  ScanResult scan = scan_file(source, Language::fortran);
  REQUIRE(scan.errors.empty());
  REQUIRE(scan.directives.size() == 3);
  CHECK(scan.directives[0].name == "data");
  REQUIRE(scan.directives[0].clauses.size() == 2);
  CHECK(scan.directives[0].clauses[1].name == "copyout");
  CHECK(scan.directives[2].name == "end data");
}

TEST_CASE("round-trip: every fixture directive reparses structurally equal") {
  DiscoveryResult corpus = discover(testutil::fixture_dir() / "corpus");
  REQUIRE(!corpus.cases.empty());
  int directive_count = 0;
  for (const auto& tc : corpus.cases) {
    std::string source = testutil::read_file(testutil::fixture_dir() / "corpus" / tc.path);
    ScanResult scan = scan_file(source, tc.language, tc.path);
    CAPTURE(tc.path);
    CHECK(scan.errors.empty());
    for (const auto& d : scan.directives) {
      ++directive_count;
      Directive reparsed = parse_directive(pretty_print(d), Language::c);
      CAPTURE(pretty_print(d));
      CHECK(d.structurally_equal(reparsed));
    }
  }
  CHECK(directive_count >= 30);
}
