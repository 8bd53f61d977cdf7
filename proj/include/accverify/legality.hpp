// Data-driven directive/clause legality: minimum spec versions per
// directive and per (directive, clause) pair, plus vendor keyword
// profiles for device_type arguments.
//
// Table file format, one entry per line, '#' comments:
//
//   init = 2.0              # directive minimum
//   init.if = 3.0           # (directive, clause) minimum
//   profile.nvidia = host, multicore, default, nvidia
#pragma once

#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "accverify/config.hpp"  // reuses trim/split helpers and ConfigError
#include "accverify/directive.hpp"
#include "accverify/spec_version.hpp"

namespace accv::acc {

struct VersionTable {
  std::map<std::string, SpecVersion> directives;
  std::map<std::pair<std::string, std::string>, SpecVersion> pairs;

  bool knows_directive(const std::string& name) const { return directives.count(name) > 0; }

  const SpecVersion* pair_min(const std::string& directive, const std::string& clause) const {
    auto it = pairs.find({directive, clause});
    return it == pairs.end() ? nullptr : &it->second;
  }
};

struct DeviceTypeKeywords {
  std::map<std::string, std::set<std::string>> profiles;  // lowercase keywords

  const std::set<std::string>* keywords_for(const std::string& profile) const {
    auto it = profiles.find(profile);
    return it == profiles.end() ? nullptr : &it->second;
  }
};

struct LegalityTables {
  VersionTable versions;
  DeviceTypeKeywords keywords;
};

inline std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

// Parses the table text. Every pair's directive must also have a directive
// entry, versions must fall in [1.0, 3.2], and profiles must be non-empty.
inline LegalityTables parse_legality(std::string_view text) {
  using Kind = ConfigError::Kind;
  LegalityTables tables;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::string line = accv::detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(Kind::malformed_value, line_no,
                        "legality line " + std::to_string(line_no) + ": expected key = value");
    std::string key = accv::detail::trim(line.substr(0, eq));
    std::string value = accv::detail::trim(line.substr(eq + 1));

    if (key.rfind("profile.", 0) == 0) {
      std::string profile = key.substr(8);
      std::set<std::string> kws;
      for (const auto& kw : accv::detail::split(value, ',')) kws.insert(to_lower(kw));
      if (profile.empty() || kws.empty())
        throw ConfigError(Kind::malformed_value, line_no,
                          "legality line " + std::to_string(line_no) + ": empty profile");
      tables.keywords.profiles[profile] = std::move(kws);
      continue;
    }

    auto version = SpecVersion::parse(value);
    if (!version || *version < kOldestSpec || *version > kLatestSpec)
      throw ConfigError(Kind::malformed_value, line_no,
                        "legality line " + std::to_string(line_no) + ": '" + value +
                            "' is not a version in [1.0, 3.2]");
    auto dot = key.rfind('.');
    if (dot == std::string::npos) {
      tables.versions.directives[key] = *version;
    } else {
      std::string directive = accv::detail::trim(key.substr(0, dot));
      std::string clause = accv::detail::trim(key.substr(dot + 1));
      tables.versions.pairs[{directive, clause}] = *version;
    }
  }
  for (const auto& [key, _] : tables.versions.pairs)
    if (!tables.versions.knows_directive(key.first))
      throw ConfigError(ConfigError::Kind::malformed_value, 0,
                        "legality table: pair references unknown directive '" + key.first + "'");
  return tables;
}

struct Violation {
  SourceLocation location;
  std::string directive;
  std::string clause;  // empty for a directive-level violation
  std::string rule;
  std::optional<SpecVersion> first_legal;
};

// Entities the table has no entry for; distinct from a rule violation.
struct UnknownEntity {
  enum class Kind { directive, clause } kind;
  SourceLocation location;
  std::string directive;
  std::string clause;  // set for Kind::clause
};

struct ValidationResult {
  std::vector<Violation> violations;
  std::vector<UnknownEntity> unknowns;

  bool clean() const { return violations.empty() && unknowns.empty(); }
};

struct UnknownProfile : std::runtime_error {
  explicit UnknownProfile(const std::string& profile)
      : std::runtime_error("unknown device-type profile '" + profile + "'") {}
};

// Checks one directive at `version` against the version table and, for
// device_type clauses, the vendor profile's keyword set.
inline ValidationResult validate(const Directive& d, SpecVersion version,
                                 const VersionTable& table, const DeviceTypeKeywords& keywords,
                                 const std::string& profile) {
  ValidationResult result;
  const std::set<std::string>* allowed = keywords.keywords_for(profile);
  if (!allowed) throw UnknownProfile(profile);

  auto dir_it = table.directives.find(d.name);
  if (dir_it == table.directives.end()) {
    result.unknowns.push_back({UnknownEntity::Kind::directive, d.location, d.name, {}});
    return result;
  }
  if (version < dir_it->second) {
    result.violations.push_back({d.location, d.name, {},
                                 "directive requires version " + dir_it->second.str(),
                                 dir_it->second});
  }

  for (const auto& clause : d.clauses) {
    const SpecVersion* min = table.pair_min(d.name, clause.name);
    if (!min) {
      result.unknowns.push_back({UnknownEntity::Kind::clause, d.location, d.name, clause.name});
      continue;
    }
    if (version < *min) {
      result.violations.push_back({d.location, d.name, clause.name,
                                   "clause requires version " + min->str(), *min});
    }
    if (clause.name == "device_type") {
      for (const auto& arg : clause.args) {
        if (!allowed->count(to_lower(arg.text))) {
          result.violations.push_back(
              {d.location, d.name, clause.name,
               "device_type keyword '" + arg.text + "' not allowed for profile " + profile,
               std::nullopt});
        }
      }
    }
  }
  return result;
}

}  // namespace accv::acc
