// Harness configuration: a line-oriented key=value file with '#' comments
// and dotted keys for per-language values.
//
//   cc=nvc                 # C compiler invocation
//   flags.c=-acc=gpu       # space-separated flag list
//   timeout=10
//   format=json
//
// Fields keep track of whether they were set explicitly, so that merging
// overlay files preserves base values and defaults never shadow either.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "accverify/language.hpp"
#include "accverify/spec_version.hpp"

namespace accv {

enum class OutputFormat { json, txt, html };

inline const char* token(OutputFormat f) {
  switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::txt: return "txt";
    case OutputFormat::html: return "html";
  }
  return "?";
}

inline std::optional<OutputFormat> format_from_token(std::string_view t) {
  if (t == "json") return OutputFormat::json;
  if (t == "txt") return OutputFormat::txt;
  if (t == "html") return OutputFormat::html;
  return std::nullopt;
}

struct ConfigError : std::runtime_error {
  enum class Kind { missing_compiler, unknown_key, malformed_value };
  Kind kind;
  int line;  // 1-based; 0 when not tied to a line

  ConfigError(Kind k, int line_no, const std::string& msg)
      : std::runtime_error(msg), kind(k), line(line_no) {}
};

struct HarnessConfig {
  std::map<Language, std::string> compilers;
  std::map<Language, std::vector<std::string>> flags;
  std::optional<std::string> test_dir;
  std::optional<std::string> build_dir;
  std::optional<std::set<std::string>> tag_filter;
  std::optional<std::string> dir_filter;
  std::optional<SpecVersion> max_spec_version;
  std::set<Language> excluded_languages;
  std::optional<int> timeout_seconds;
  std::optional<OutputFormat> output_format;
  std::optional<std::string> pre_compile, post_compile, pre_run, post_run;
  std::optional<std::string> resume_env;

  friend bool operator==(const HarnessConfig&, const HarnessConfig&) = default;

  // Accessors apply the documented defaults without overriding explicit values.
  int timeout() const { return timeout_seconds.value_or(10); }
  OutputFormat format() const { return output_format.value_or(OutputFormat::json); }
  std::string tests_root() const { return test_dir.value_or("."); }
  std::string work_root() const { return build_dir.value_or("acc-build"); }
  SpecVersion max_version() const { return max_spec_version.value_or(kLatestSpec); }

  const std::string* compiler_for(Language lang) const {
    auto it = compilers.find(lang);
    return it == compilers.end() ? nullptr : &it->second;
  }

  std::vector<std::string> flags_for(Language lang) const {
    auto it = flags.find(lang);
    return it == flags.end() ? std::vector<std::string>{} : it->second;
  }

  // A config must name at least one compiler, and every language that has
  // flags must also have a compiler.
  void validate() const {
    if (compilers.empty())
      throw ConfigError(ConfigError::Kind::missing_compiler, 0,
                        "no compiler configured (set cc=, cxx= or fc=)");
    for (const auto& [lang, _] : flags)
      if (!compilers.count(lang))
        throw ConfigError(ConfigError::Kind::missing_compiler, 0,
                          std::string("flags given for ") + display_name(lang) +
                              " but no compiler is configured for it");
    if (timeout_seconds && *timeout_seconds < 1)
      throw ConfigError(ConfigError::Kind::malformed_value, 0,
                        "timeout must be >= 1 second");
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= s.size()) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(s.substr(start)));
      break;
    }
    out.push_back(trim(s.substr(start, pos - start)));
    start = pos + 1;
  }
  out.erase(std::remove(out.begin(), out.end(), std::string{}), out.end());
  return out;
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace detail

// Parses a config fragment: syntax and per-value checks only. Fragments may
// be compiler-less; merge them first, then call validate() on the result.
inline HarnessConfig parse_config_fragment(std::string_view text) {
  using Kind = ConfigError::Kind;
  HarnessConfig cfg;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(Kind::malformed_value, line_no,
                        "line " + std::to_string(line_no) + ": expected key=value, got '" + line + "'");
    std::string key = detail::trim(line.substr(0, eq));
    std::string value = detail::trim(line.substr(eq + 1));

    auto malformed = [&](const std::string& why) {
      return ConfigError(Kind::malformed_value, line_no,
                         "line " + std::to_string(line_no) + ": " + key + ": " + why);
    };

    if (key == "cc") cfg.compilers[Language::c] = value;
    else if (key == "cxx") cfg.compilers[Language::cxx] = value;
    else if (key == "fc") cfg.compilers[Language::fortran] = value;
    else if (key == "flags.c") cfg.flags[Language::c] = detail::split_ws(value);
    else if (key == "flags.cxx") cfg.flags[Language::cxx] = detail::split_ws(value);
    else if (key == "flags.f") cfg.flags[Language::fortran] = detail::split_ws(value);
    else if (key == "test_dir") cfg.test_dir = value;
    else if (key == "build_dir") cfg.build_dir = value;
    else if (key == "tags") {
      auto tags = detail::split(value, ',');
      cfg.tag_filter = std::set<std::string>(tags.begin(), tags.end());
    } else if (key == "dir") cfg.dir_filter = value;
    else if (key == "max_version") {
      auto v = SpecVersion::parse(value);
      if (!v) throw malformed("'" + value + "' is not a MAJOR.MINOR version");
      cfg.max_spec_version = *v;
    } else if (key == "exclude_languages") {
      for (const auto& tok : detail::split(value, ',')) {
        auto lang = language_from_token(tok);
        if (!lang) throw malformed("'" + tok + "' is not a language (c, cxx, fortran)");
        cfg.excluded_languages.insert(*lang);
      }
    } else if (key == "timeout") {
      try {
        size_t used = 0;
        int t = std::stoi(value, &used);
        if (used != value.size() || t < 1) throw std::invalid_argument(value);
        cfg.timeout_seconds = t;
      } catch (const std::exception&) {
        throw malformed("'" + value + "' is not a positive integer");
      }
    } else if (key == "format") {
      auto f = format_from_token(value);
      if (!f) throw malformed("'" + value + "' is not one of json, txt, html");
      cfg.output_format = *f;
    } else if (key == "pre_compile") cfg.pre_compile = value;
    else if (key == "post_compile") cfg.post_compile = value;
    else if (key == "pre_run") cfg.pre_run = value;
    else if (key == "post_run") cfg.post_run = value;
    else if (key == "resume_env") cfg.resume_env = value;
    else
      throw ConfigError(Kind::unknown_key, line_no,
                        "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
  return cfg;
}

// Parse and validate a standalone config file.
inline HarnessConfig parse_config(std::string_view text) {
  HarnessConfig cfg = parse_config_fragment(text);
  cfg.validate();
  return cfg;
}

// Overlay wins on every key it sets explicitly; everything else inherits.
inline HarnessConfig merge_configs(const HarnessConfig& base, const HarnessConfig& overlay) {
  HarnessConfig out = base;
  for (const auto& [lang, cc] : overlay.compilers) out.compilers[lang] = cc;
  for (const auto& [lang, fl] : overlay.flags) out.flags[lang] = fl;
  if (overlay.test_dir) out.test_dir = overlay.test_dir;
  if (overlay.build_dir) out.build_dir = overlay.build_dir;
  if (overlay.tag_filter) out.tag_filter = overlay.tag_filter;
  if (overlay.dir_filter) out.dir_filter = overlay.dir_filter;
  if (overlay.max_spec_version) out.max_spec_version = overlay.max_spec_version;
  for (Language lang : overlay.excluded_languages) out.excluded_languages.insert(lang);
  if (overlay.timeout_seconds) out.timeout_seconds = overlay.timeout_seconds;
  if (overlay.output_format) out.output_format = overlay.output_format;
  if (overlay.pre_compile) out.pre_compile = overlay.pre_compile;
  if (overlay.post_compile) out.post_compile = overlay.post_compile;
  if (overlay.pre_run) out.pre_run = overlay.pre_run;
  if (overlay.post_run) out.post_run = overlay.post_run;
  if (overlay.resume_env) out.resume_env = overlay.resume_env;
  return out;
}

// Emits explicitly-set keys only, in a fixed order, so that
// parse(serialize(parse(text))) == parse(text).
inline std::string serialize(const HarnessConfig& cfg) {
  std::ostringstream out;
  auto emit_compiler = [&](Language lang, const char* key) {
    auto it = cfg.compilers.find(lang);
    if (it != cfg.compilers.end()) out << key << "=" << it->second << "\n";
  };
  auto emit_flags = [&](Language lang, const char* key) {
    auto it = cfg.flags.find(lang);
    if (it == cfg.flags.end()) return;
    out << key << "=";
    for (size_t i = 0; i < it->second.size(); ++i) out << (i ? " " : "") << it->second[i];
    out << "\n";
  };
  emit_compiler(Language::c, "cc");
  emit_compiler(Language::cxx, "cxx");
  emit_compiler(Language::fortran, "fc");
  emit_flags(Language::c, "flags.c");
  emit_flags(Language::cxx, "flags.cxx");
  emit_flags(Language::fortran, "flags.f");
  if (cfg.test_dir) out << "test_dir=" << *cfg.test_dir << "\n";
  if (cfg.build_dir) out << "build_dir=" << *cfg.build_dir << "\n";
  if (cfg.tag_filter) {
    out << "tags=";
    bool first = true;
    for (const auto& t : *cfg.tag_filter) { out << (first ? "" : ",") << t; first = false; }
    out << "\n";
  }
  if (cfg.dir_filter) out << "dir=" << *cfg.dir_filter << "\n";
  if (cfg.max_spec_version) out << "max_version=" << cfg.max_spec_version->str() << "\n";
  if (!cfg.excluded_languages.empty()) {
    out << "exclude_languages=";
    bool first = true;
    for (Language lang : cfg.excluded_languages) { out << (first ? "" : ",") << token(lang); first = false; }
    out << "\n";
  }
  if (cfg.timeout_seconds) out << "timeout=" << *cfg.timeout_seconds << "\n";
  if (cfg.output_format) out << "format=" << token(*cfg.output_format) << "\n";
  if (cfg.pre_compile) out << "pre_compile=" << *cfg.pre_compile << "\n";
  if (cfg.post_compile) out << "post_compile=" << *cfg.post_compile << "\n";
  if (cfg.pre_run) out << "pre_run=" << *cfg.pre_run << "\n";
  if (cfg.post_run) out << "post_run=" << *cfg.post_run << "\n";
  if (cfg.resume_env) out << "resume_env=" << *cfg.resume_env << "\n";
  return out.str();
}

// FNV-1a over the canonical serialization; pins snapshots to the config
// that produced them. resume_env is excluded: pointing a config at a
// prior snapshot must not invalidate that snapshot.
inline std::string config_digest(const HarnessConfig& cfg) {
  HarnessConfig canonical = cfg;
  canonical.resume_env.reset();
  std::string text = serialize(canonical);
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace accv
