// Test discovery and filtering. Each test file may carry a header comment
// block whose first lines tag it:
//
//   // T: acc_init, if  V: 3.0
//
// 'T:' lists feature tags, 'V:' the first spec version the test applies to.
// The grammar works across C ('//', '/* */') and Fortran ('!') comments.
#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "accverify/config.hpp"
#include "accverify/language.hpp"
#include "accverify/spec_version.hpp"

namespace accv {

struct TestCase {
  std::string path;  // relative to the corpus root, '/'-separated
  Language language = Language::c;
  std::vector<std::string> tags;  // ordered, duplicates removed
  SpecVersion min_version{1, 0};

  friend bool operator==(const TestCase&, const TestCase&) = default;

  bool has_tag(const std::string& t) const {
    return std::find(tags.begin(), tags.end(), t) != tags.end();
  }
};

struct CorpusIoError {
  std::string path;
  std::string message;
};

struct DiscoveryResult {
  std::vector<TestCase> cases;
  std::vector<CorpusIoError> errors;
};

namespace detail {

// Strips one line down to comment payload, or returns false once we are
// past the leading comment block.
inline bool comment_payload(const std::string& line, bool& in_block, std::string& out) {
  std::string t = trim(line);
  if (in_block) {
    auto end = t.find("*/");
    if (end == std::string::npos) {
      out = t;
    } else {
      out = t.substr(0, end);
      in_block = false;
    }
    if (!out.empty() && out[0] == '*') out = trim(out.substr(1));
    return true;
  }
  if (t.empty()) return true;  // blank lines do not end the header block
  if (t.rfind("//", 0) == 0) {
    out = trim(t.substr(2));
    return true;
  }
  if (t.rfind("!", 0) == 0 && t.rfind("!$", 0) != 0) {
    out = trim(t.substr(1));
    return true;
  }
  if (t.rfind("/*", 0) == 0) {
    auto end = t.find("*/", 2);
    if (end == std::string::npos) {
      in_block = true;
      out = trim(t.substr(2));
    } else {
      out = trim(t.substr(2, end - 2));
    }
    return true;
  }
  return false;
}

}  // namespace detail

// Scans the first comment block for 'T:' (comma-separated tags) and
// 'V:' (MAJOR.MINOR). Unreadable markers are simply ignored.
inline void extract_header(std::istream& in, std::vector<std::string>& tags, SpecVersion& min_version) {
  std::string line;
  bool in_block = false;
  bool saw_comment = false;
  while (std::getline(in, line)) {
    std::string payload;
    if (!detail::comment_payload(line, in_block, payload)) break;
    if (payload.empty()) {
      // Stop at the first blank line after the comment block ended.
      if (saw_comment && !in_block && detail::trim(line).empty()) break;
      continue;
    }
    saw_comment = true;
    auto tpos = payload.find("T:");
    auto vpos = payload.find("V:");
    if (tpos != std::string::npos) {
      std::string tag_text = payload.substr(tpos + 2);
      if (vpos != std::string::npos && vpos > tpos) tag_text = payload.substr(tpos + 2, vpos - tpos - 2);
      for (const auto& tag : detail::split(tag_text, ',')) {
        if (std::find(tags.begin(), tags.end(), tag) == tags.end()) tags.push_back(tag);
      }
    }
    if (vpos != std::string::npos) {
      std::string ver_text = detail::trim(payload.substr(vpos + 2));
      // Take the leading token; trailing prose is allowed.
      auto ws = ver_text.find_first_of(" \t");
      if (ws != std::string::npos) ver_text = ver_text.substr(0, ws);
      if (auto v = SpecVersion::parse(ver_text)) min_version = *v;
    }
  }
}

// Walks test_dir recursively; the result is sorted by relative path no
// matter the traversal order the filesystem happens to give us.
inline DiscoveryResult discover(const std::filesystem::path& test_dir) {
  namespace fs = std::filesystem;
  DiscoveryResult result;
  std::error_code ec;
  fs::recursive_directory_iterator it(test_dir, fs::directory_options::skip_permission_denied, ec);
  if (ec) {
    result.errors.push_back({test_dir.string(), ec.message()});
    return result;
  }
  for (const auto& entry : it) {
    if (!entry.is_regular_file(ec)) continue;
    auto rel = fs::relative(entry.path(), test_dir, ec);
    if (ec) continue;
    std::string rel_str = rel.generic_string();
    auto lang = language_from_extension(rel_str);
    if (!lang) continue;

    TestCase tc;
    tc.path = rel_str;
    tc.language = *lang;
    std::ifstream in(entry.path());
    if (!in) {
      result.errors.push_back({rel_str, "unreadable"});
      continue;
    }
    extract_header(in, tc.tags, tc.min_version);
    result.cases.push_back(std::move(tc));
  }
  std::sort(result.cases.begin(), result.cases.end(),
            [](const TestCase& a, const TestCase& b) { return a.path < b.path; });
  return result;
}

inline bool path_under(const std::string& path, const std::string& dir) {
  if (dir.empty() || dir == ".") return true;
  std::string prefix = dir;
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  if (path.size() < prefix.size()) return false;
  if (path.compare(0, prefix.size(), prefix) != 0) return false;
  return path.size() == prefix.size() || path[prefix.size()] == '/';
}

// Keeps a case iff it passes every configured filter; order is preserved.
inline std::vector<TestCase> filter(const std::vector<TestCase>& cases, const HarnessConfig& cfg) {
  std::vector<TestCase> out;
  for (const TestCase& tc : cases) {
    if (cfg.dir_filter && !path_under(tc.path, *cfg.dir_filter)) continue;
    if (cfg.tag_filter) {
      bool any = false;
      for (const auto& tag : tc.tags)
        if (cfg.tag_filter->count(tag)) { any = true; break; }
      if (!any) continue;
    }
    if (tc.min_version > cfg.max_version()) continue;
    if (cfg.excluded_languages.count(tc.language)) continue;
    out.push_back(tc);
  }
  return out;
}

}  // namespace accv
