// Build-system integration file generator: one stanza per C/C++ corpus
// source, rendered from a template with {{source}}, {{target}} and
// {{run_prefix}} placeholders. Output is a pure function of the plan and
// the sorted case list, so repeated exports are byte-identical.
#pragma once

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "accverify/corpus.hpp"
#include "accverify/language.hpp"

namespace accv::exporter {

inline constexpr const char* kGeneratorVersion = "1";

// Default stanza, following the llvm test-suite external-project macros.
inline constexpr const char* kDefaultTemplate =
    "llvm_test_run({{run_prefix}})\n"
    "llvm_test_executable({{target}} {{source}})\n";

struct ExportPlan {
  std::string corpus_root;
  std::set<Language> languages = {Language::c, Language::cxx};
  std::string run_prefix;                    // e.g. a timeout wrapper
  std::string stanza_template = kDefaultTemplate;
};

struct EmptyPlan : std::runtime_error {
  EmptyPlan() : std::runtime_error("no corpus source matches the export plan") {}
};

namespace detail {

inline std::string substitute(std::string text, const std::string& key, const std::string& value) {
  std::string needle = "{{" + key + "}}";
  size_t pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    text.replace(pos, needle.size(), value);
    pos += value.size();
  }
  return text;
}

inline std::string target_name(const std::string& rel_path) {
  std::string out;
  for (char c : rel_path)
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return out;
}

inline std::string corpus_digest(const std::vector<std::string>& sorted_paths) {
  uint64_t h = 1469598103934665603ull;
  for (const auto& path : sorted_paths) {
    for (unsigned char c : path) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= '\n';
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace detail

inline std::string export_build_file(const ExportPlan& plan, const std::vector<TestCase>& cases) {
  std::vector<std::string> paths;
  for (const auto& tc : cases)
    if (plan.languages.count(tc.language)) paths.push_back(tc.path);
  if (paths.empty()) throw EmptyPlan{};
  std::sort(paths.begin(), paths.end());

  std::ostringstream out;
  out << "# Generated build file; do not edit.\n"
      << "# generator-version: " << kGeneratorVersion << "\n"
      << "# corpus-root: " << plan.corpus_root << "\n"
      << "# corpus-digest: " << detail::corpus_digest(paths) << "\n\n";
  for (const auto& path : paths) {
    std::string stanza = plan.stanza_template;
    stanza = detail::substitute(stanza, "source", plan.corpus_root.empty()
                                                      ? path
                                                      : plan.corpus_root + "/" + path);
    stanza = detail::substitute(stanza, "target", detail::target_name(path));
    stanza = detail::substitute(stanza, "run_prefix", plan.run_prefix);
    out << stanza << "\n";
  }
  return out.str();
}

}  // namespace accv::exporter
