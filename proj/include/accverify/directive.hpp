// Clause-level AST for OpenACC directives. Argument expressions stay
// opaque strings; only array sections (name[lo:len]) and reduction
// operators get structure.
#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace accv::acc {

struct SourceLocation {
  std::string path;
  int line = 0;

  friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

struct ArraySection {
  std::string name;
  std::string lower;   // nonnegative integer or opaque identifier/expression
  std::string length;

  friend bool operator==(const ArraySection&, const ArraySection&) = default;
};

struct ClauseArg {
  std::string text;  // normalized spelling
  std::optional<ArraySection> section;

  friend bool operator==(const ClauseArg&, const ClauseArg&) = default;

  // Variable name an arg refers to: the section base if there is one.
  const std::string& var() const { return section ? section->name : text; }
};

struct Clause {
  std::string name;
  std::vector<ClauseArg> args;
  std::string reduction_op;  // set only for reduction clauses

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct Directive {
  std::string name;  // combined constructs keep one name, e.g. "parallel loop"
  std::vector<Clause> clauses;
  std::optional<std::string> named_target;  // routine(NAME), wait(1,2), ...
  SourceLocation location;

  bool structurally_equal(const Directive& other) const {
    return name == other.name && clauses == other.clauses && named_target == other.named_target;
  }

  const Clause* find_clause(const std::string& clause_name) const {
    for (const auto& c : clauses)
      if (c.name == clause_name) return &c;
    return nullptr;
  }
};

// Canonical single-line form; reparsing it yields a structurally equal
// directive regardless of the whitespace in the original source.
inline std::string pretty_print(const Directive& d) {
  std::ostringstream out;
  out << "#pragma acc " << d.name;
  if (d.named_target) out << "(" << *d.named_target << ")";
  for (const auto& clause : d.clauses) {
    out << " " << clause.name;
    if (!clause.args.empty() || !clause.reduction_op.empty()) {
      out << "(";
      if (!clause.reduction_op.empty()) out << clause.reduction_op << ":";
      for (size_t i = 0; i < clause.args.size(); ++i)
        out << (i ? ", " : "") << clause.args[i].text;
      out << ")";
    }
  }
  return out.str();
}

}  // namespace accv::acc
