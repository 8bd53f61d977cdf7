// Directive line parser for C/C++ ("#pragma acc") and Fortran free-form
// ("!$acc") sources, plus a whole-file scanner that joins continuation
// lines and records per-line errors without aborting.
#pragma once

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "accverify/directive.hpp"
#include "accverify/language.hpp"

namespace accv::acc {

struct NotADirective : std::runtime_error {
  NotADirective() : std::runtime_error("line carries no directive prefix") {}
};

struct ParseError : std::runtime_error {
  int column;  // 1-based offset into the (joined) line

  ParseError(int col, const std::string& msg)
      : std::runtime_error(msg + " (column " + std::to_string(col) + ")"), column(col) {}
};

inline const std::vector<std::string_view>& reduction_operators() {
  static const std::vector<std::string_view> ops = {"+", "-", "*", "max", "min",
                                                    "&", "|", "^", "&&", "||"};
  return ops;
}

namespace detail {

struct Cursor {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() const { return pos < text.size() ? text[pos] : '\0'; }
  int column() const { return static_cast<int>(pos) + 1; }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    return std::string(text.substr(start, pos - start));
  }

  // Consumes a balanced (...) group and returns the inner text.
  std::string paren_group() {
    skip_ws();
    if (peek() != '(') throw ParseError(column(), "expected '('");
    int open_col = column();
    ++pos;
    size_t start = pos;
    int depth = 1;
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '(') ++depth;
      if (c == ')') {
        --depth;
        if (depth == 0) {
          std::string inner(text.substr(start, pos - start));
          ++pos;
          return inner;
        }
      }
      ++pos;
    }
    throw ParseError(open_col, "unbalanced parentheses");
  }
};

inline std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::string collapse_ws(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

inline std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    char c = i < s.size() ? s[i] : ',';
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      std::string piece = collapse_ws(s.substr(start, i - start));
      if (!piece.empty()) out.push_back(piece);
      start = i + 1;
    }
  }
  return out;
}

// "a[0:n]" (C) or "a(1:n)" (Fortran) -> section {a, lo, len}; anything
// else stays opaque. Multi-dimensional sections stay opaque too.
inline std::optional<ArraySection> match_section(std::string_view arg) {
  char open_ch = '[', close_ch = ']';
  auto open = arg.find('[');
  if (open == std::string_view::npos) {
    open = arg.find('(');
    open_ch = '(';
    close_ch = ')';
  }
  if (open == std::string_view::npos || open == 0 || arg.back() != close_ch) return std::nullopt;
  std::string_view name = arg.substr(0, open);
  while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return std::nullopt;
  std::string_view inner = arg.substr(open + 1, arg.size() - open - 2);
  auto colon = inner.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  if (inner.find(open_ch) != std::string_view::npos) return std::nullopt;
  std::string lower = collapse_ws(inner.substr(0, colon));
  std::string length = collapse_ws(inner.substr(colon + 1));
  if (lower.empty() || length.empty() || lower.find(':') != std::string::npos ||
      length.find(':') != std::string::npos)
    return std::nullopt;
  return ArraySection{std::string(name), lower, length};
}

// Where the directive payload starts, or npos if the prefix is absent.
inline size_t directive_payload(std::string_view line, Language language) {
  size_t i = 0;
  auto skip = [&] {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  };
  skip();
  if (language == Language::fortran) {
    // sentinel: !$acc (case-insensitive)
    static constexpr std::string_view sentinel = "!$acc";
    if (line.size() - i < sentinel.size()) return std::string_view::npos;
    for (size_t k = 0; k < sentinel.size(); ++k)
      if (std::tolower(static_cast<unsigned char>(line[i + k])) != sentinel[k])
        return std::string_view::npos;
    i += sentinel.size();
    // '&' right after the sentinel marks a continuation line.
    if (i < line.size() && !(line[i] == ' ' || line[i] == '\t' || line[i] == '&'))
      return std::string_view::npos;
    return i;
  }
  if (i >= line.size() || line[i] != '#') return std::string_view::npos;
  ++i;
  skip();
  if (line.compare(i, 6, "pragma") != 0) return std::string_view::npos;
  i += 6;
  skip();
  if (line.compare(i, 3, "acc") != 0) return std::string_view::npos;
  i += 3;
  if (i < line.size() && !(line[i] == ' ' || line[i] == '\t')) return std::string_view::npos;
  return i;
}

}  // namespace detail

inline bool is_directive_line(std::string_view line, Language language) {
  return detail::directive_payload(line, language) != std::string_view::npos;
}

// Word pairs that form a single combined construct. "end X" covers the
// Fortran region-ending directives.
inline std::string combine_directive_name(detail::Cursor& cur, const std::string& first) {
  if (first == "enter" || first == "exit") {
    size_t save = cur.pos;
    std::string next = cur.ident();
    if (next == "data") return first + " data";
    cur.pos = save;
    return first;
  }
  if (first == "parallel" || first == "kernels" || first == "serial") {
    size_t save = cur.pos;
    std::string next = cur.ident();
    if (next == "loop") return first + " loop";
    cur.pos = save;
  }
  if (first == "end") {
    size_t save = cur.pos;
    std::string next = cur.ident();
    if (!next.empty()) return "end " + combine_directive_name(cur, next);
    cur.pos = save;
  }
  return first;
}

inline Directive parse_directive(std::string_view line, Language language,
                                 SourceLocation location = {}) {
  size_t payload = detail::directive_payload(line, language);
  if (payload == std::string_view::npos) throw NotADirective{};

  detail::Cursor cur{line, payload};
  Directive d;
  d.location = std::move(location);

  std::string first = cur.ident();
  if (first.empty()) throw ParseError(cur.column(), "missing directive name");
  d.name = combine_directive_name(cur, first);

  // Directive-level argument, e.g. routine(NAME) or wait(1, 2).
  cur.skip_ws();
  if (cur.peek() == '(') d.named_target = detail::collapse_ws(cur.paren_group());

  while (!cur.done()) {
    if (cur.peek() == ',') {  // optional separators between clauses
      ++cur.pos;
      continue;
    }
    int clause_col = cur.column();
    Clause clause;
    clause.name = cur.ident();
    if (clause.name.empty())
      throw ParseError(cur.column(), "unexpected character in clause list");
    if (!clause.name.empty() && std::isdigit(static_cast<unsigned char>(clause.name[0])))
      throw ParseError(clause_col, "clause name cannot start with a digit");

    cur.skip_ws();
    if (cur.peek() == '(') {
      std::string inner = cur.paren_group();
      if (clause.name == "reduction") {
        auto colon = inner.find(':');
        if (colon == std::string::npos)
          throw ParseError(clause_col, "reduction clause requires operator:variable");
        std::string op = detail::collapse_ws(inner.substr(0, colon));
        bool known = false;
        for (auto candidate : reduction_operators())
          if (op == candidate) { known = true; break; }
        if (!known) throw ParseError(clause_col, "unknown reduction operator '" + op + "'");
        clause.reduction_op = op;
        inner = inner.substr(colon + 1);
        if (detail::collapse_ws(inner).empty())
          throw ParseError(clause_col, "reduction clause names no variable");
      }
      for (auto& piece : detail::split_top_level(inner)) {
        ClauseArg arg;
        arg.section = detail::match_section(piece);
        if (arg.section) {
          // canonical spelling, keeping the source's delimiter style
          char open_ch = piece.find('[') != std::string::npos ? '[' : '(';
          arg.text = arg.section->name + open_ch + arg.section->lower + ":" +
                     arg.section->length + (open_ch == '[' ? ']' : ')');
        } else {
          arg.text = std::move(piece);
        }
        clause.args.push_back(std::move(arg));
      }
    }
    d.clauses.push_back(std::move(clause));
  }
  return d;
}

struct ScanError {
  SourceLocation location;
  int column = 0;
  std::string message;
};

struct ScanResult {
  std::vector<Directive> directives;
  std::vector<ScanError> errors;
};

// Scans a whole file. C/C++ backslash continuations and Fortran '&'
// continuations are joined before parsing; each directive keeps the line
// number where it started.
inline ScanResult scan_file(std::string_view source, Language language,
                            const std::string& path = {}) {
  ScanResult result;
  std::vector<std::pair<int, std::string>> lines;  // (1-based line, text)
  {
    int n = 0;
    size_t pos = 0;
    while (pos <= source.size()) {
      size_t nl = source.find('\n', pos);
      std::string_view raw =
          source.substr(pos, nl == std::string_view::npos ? source.size() - pos : nl - pos);
      ++n;
      std::string text(raw);
      if (!text.empty() && text.back() == '\r') text.pop_back();
      lines.emplace_back(n, std::move(text));
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
  }

  for (size_t i = 0; i < lines.size(); ++i) {
    if (!is_directive_line(lines[i].second, language)) continue;
    int start_line = lines[i].first;
    std::string joined = lines[i].second;

    if (language == Language::fortran) {
      // "!$acc data copyin(a) &" continues on "!$acc& copyout(b)" or "!$acc ...".
      while (!joined.empty() && detail::trim(joined).back() == '&' && i + 1 < lines.size()) {
        std::string head = detail::trim(joined);
        head.pop_back();
        const std::string& next = lines[i + 1].second;
        size_t cont = detail::directive_payload(next, language);
        if (cont == std::string_view::npos) break;
        std::string tail(next.substr(cont));
        std::string tail_trim = detail::trim(tail);
        if (!tail_trim.empty() && tail_trim[0] == '&') tail_trim = tail_trim.substr(1);
        joined = head + " " + tail_trim;
        ++i;
      }
    } else {
      while (!joined.empty() && joined.back() == '\\' && i + 1 < lines.size()) {
        joined.pop_back();
        joined += " " + lines[i + 1].second;
        ++i;
      }
    }

    try {
      result.directives.push_back(
          parse_directive(joined, language, SourceLocation{path, start_line}));
    } catch (const ParseError& err) {
      result.errors.push_back({SourceLocation{path, start_line}, err.column, err.what()});
    } catch (const NotADirective&) {
      // Prefix matched but payload vanished after joining; treat as non-directive.
    }
  }
  return result;
}

}  // namespace accv::acc
