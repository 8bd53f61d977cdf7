// Suite aggregation and emission. JSON carries everything and is
// schema-versioned; txt logs per-test command lines plus a summary block;
// html is one self-contained page embedding a trimmed JSON payload under
// a fixed element id for downstream templates.
#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "accverify/config.hpp"
#include "accverify/runner.hpp"

namespace accv::report {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kHtmlPayloadId = "suite-report-data";

struct StatusTotals {
  int total = 0, pass = 0, fail = 0, compile_error = 0, timeout = 0, skipped = 0;

  friend bool operator==(const StatusTotals&, const StatusTotals&) = default;

  void count(const std::string& status) {
    ++total;
    if (status == "pass") ++pass;
    else if (status == "fail") ++fail;
    else if (status == "compile_error") ++compile_error;
    else if (status == "timeout") ++timeout;
    else if (status == "skipped") ++skipped;
    else throw std::logic_error("unknown status '" + status + "'");
  }

  // Rounded to 0.1%; skipped tests do not count against the denominator.
  std::optional<double> pass_rate() const {
    int denom = total - skipped;
    if (denom <= 0) return std::nullopt;
    return std::round(1000.0 * pass / denom) / 10.0;
  }
};

struct SuiteReport {
  std::string system_label;
  std::string compiler_id;
  std::string timestamp;  // set by the caller; kept verbatim
  StatusTotals totals;
  std::map<std::string, StatusTotals> per_language;  // keyed by language token
  std::map<std::string, StatusTotals> per_tag;
  std::vector<runner::RunRecord> records;  // ordered by case path
};

inline SuiteReport aggregate(const std::vector<runner::RunRecord>& records,
                             const std::string& system_label, const std::string& compiler_id) {
  SuiteReport rep;
  rep.system_label = system_label;
  rep.compiler_id = compiler_id;
  rep.records = records;
  std::sort(rep.records.begin(), rep.records.end(),
            [](const runner::RunRecord& a, const runner::RunRecord& b) {
              return a.test.path < b.test.path;
            });
  for (const auto& rec : rep.records) {
    std::string status = rec.overall_status();
    rep.totals.count(status);
    rep.per_language[token(rec.test.language)].count(status);
    for (const auto& tag : rec.test.tags) rep.per_tag[tag].count(status);
  }
  return rep;
}

inline std::string format_rate(std::optional<double> rate) {
  if (!rate) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", *rate);
  return buf;
}

namespace detail {

inline nlohmann::json totals_json(const StatusTotals& t) {
  return {{"total", t.total},         {"pass", t.pass},       {"fail", t.fail},
          {"compile_error", t.compile_error}, {"timeout", t.timeout}, {"skipped", t.skipped}};
}

inline StatusTotals totals_from_json(const nlohmann::json& j) {
  StatusTotals t;
  t.total = j.at("total").get<int>();
  t.pass = j.at("pass").get<int>();
  t.fail = j.at("fail").get<int>();
  t.compile_error = j.at("compile_error").get<int>();
  t.timeout = j.at("timeout").get<int>();
  t.skipped = j.at("skipped").get<int>();
  return t;
}

}  // namespace detail

inline nlohmann::json to_json(const SuiteReport& rep) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["system"] = rep.system_label;
  j["compiler"] = rep.compiler_id;
  j["timestamp"] = rep.timestamp;
  j["totals"] = detail::totals_json(rep.totals);
  auto rate = rep.totals.pass_rate();
  j["pass_rate"] = rate ? nlohmann::json(*rate) : nlohmann::json(nullptr);
  nlohmann::json langs = nlohmann::json::object();
  for (const auto& [lang, t] : rep.per_language) langs[lang] = detail::totals_json(t);
  j["per_language"] = langs;
  nlohmann::json tags = nlohmann::json::object();
  for (const auto& [tag, t] : rep.per_tag) tags[tag] = detail::totals_json(t);
  j["per_tag"] = tags;
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& rec : rep.records) recs.push_back(runner::to_json(rec));
  j["records"] = recs;
  return j;
}

inline SuiteReport report_from_json(const nlohmann::json& j) {
  SuiteReport rep;
  rep.system_label = j.at("system").get<std::string>();
  rep.compiler_id = j.at("compiler").get<std::string>();
  rep.timestamp = j.at("timestamp").get<std::string>();
  rep.totals = detail::totals_from_json(j.at("totals"));
  for (const auto& [lang, t] : j.at("per_language").items())
    rep.per_language[lang] = detail::totals_from_json(t);
  for (const auto& [tag, t] : j.at("per_tag").items())
    rep.per_tag[tag] = detail::totals_from_json(t);
  for (const auto& rec : j.at("records")) rep.records.push_back(runner::record_from_json(rec));
  return rep;
}

inline SuiteReport parse_report(const std::string& text) {
  return report_from_json(nlohmann::json::parse(text));
}

// --- emitters ---------------------------------------------------------

inline std::string render_json(const SuiteReport& rep) { return to_json(rep).dump(2) + "\n"; }

inline std::string render_txt(const SuiteReport& rep) {
  std::ostringstream out;
  out << "suite: system=" << rep.system_label << " compiler=" << rep.compiler_id
      << " time=" << rep.timestamp << "\n\n";
  out << "== commands ==\n";
  for (const auto& rec : rep.records) {
    out << "[" << rec.overall_status() << "] " << rec.test.path << "\n";
    if (rec.skip_reason) {
      out << "  skipped: " << *rec.skip_reason << "\n";
      continue;
    }
    out << "  compile: " << rec.compile.command << " -> " << token(rec.compile.status)
        << " (exit " << rec.compile.exit_code << ", " << rec.compile.duration_ms << " ms)\n";
    if (rec.execute)
      out << "  execute: " << token(rec.execute->status) << " (exit " << rec.execute->exit_code
          << ", " << rec.execute->duration_ms << " ms)\n";
  }
  out << "\n== summary ==\n";
  const auto& t = rep.totals;
  out << "total " << t.total << "  pass " << t.pass << "  fail " << t.fail << "  compile_error "
      << t.compile_error << "  timeout " << t.timeout << "  skipped " << t.skipped << "\n";
  out << "pass rate: " << format_rate(t.pass_rate()) << "\n";
  for (const auto& [lang, lt] : rep.per_language)
    out << "  " << lang << ": " << lt.pass << "/" << lt.total << " ("
        << format_rate(lt.pass_rate()) << ")\n";
  return out.str();
}

namespace detail {

inline std::string html_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// The embedded payload: the JSON report minus captured streams, which
// keeps pages small and safe to inline. Documented in docs/report-schema.md.
inline nlohmann::json html_payload(const SuiteReport& rep) {
  nlohmann::json j = to_json(rep);
  for (auto& rec : j["records"]) {
    if (rec.contains("compile")) {
      rec["compile"].erase("stdout");
      rec["compile"].erase("stderr");
    }
    if (rec.contains("execute")) {
      rec["execute"].erase("stdout");
      rec["execute"].erase("stderr");
    }
  }
  return j;
}

}  // namespace detail

inline std::string render_html(const SuiteReport& rep) {
  std::ostringstream out;
  out << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
      << "<title>Conformance report: " << detail::html_escape(rep.system_label) << " / "
      << detail::html_escape(rep.compiler_id) << "</title>\n"
      << "<style>\n"
      << "body { font-family: sans-serif; margin: 2em; }\n"
      << "table { border-collapse: collapse; }\n"
      << "td, th { border: 1px solid #999; padding: 4px 10px; text-align: left; }\n"
      << ".pass { background: #e4f7e4; } .fail, .compile_error { background: #f7e4e4; }\n"
      << ".timeout { background: #f7f0d8; } .skipped { background: #eee; }\n"
      << "</style>\n</head>\n<body>\n"
      << "<h1>" << detail::html_escape(rep.system_label) << " / "
      << detail::html_escape(rep.compiler_id) << "</h1>\n"
      << "<p>run at " << detail::html_escape(rep.timestamp) << " &mdash; pass rate "
      << format_rate(rep.totals.pass_rate()) << "</p>\n"
      << "<table>\n<tr><th>test</th><th>language</th><th>status</th></tr>\n";
  for (const auto& rec : rep.records) {
    std::string status = rec.overall_status();
    out << "<tr class=\"" << status << "\"><td>" << detail::html_escape(rec.test.path)
        << "</td><td>" << display_name(rec.test.language) << "</td><td>" << status
        << "</td></tr>\n";
  }
  std::string payload = detail::html_payload(rep).dump();
  // "</" would terminate the script element early.
  std::string safe;
  safe.reserve(payload.size());
  for (size_t i = 0; i < payload.size(); ++i) {
    if (payload[i] == '<' && i + 1 < payload.size() && payload[i + 1] == '/') {
      safe += "<\\/";
      ++i;
    } else {
      safe.push_back(payload[i]);
    }
  }
  out << "</table>\n<script type=\"application/json\" id=\"" << kHtmlPayloadId << "\">\n"
      << safe << "\n</script>\n</body>\n</html>\n";
  return out.str();
}

inline std::string render(const SuiteReport& rep, OutputFormat format) {
  switch (format) {
    case OutputFormat::json: return render_json(rep);
    case OutputFormat::txt: return render_txt(rep);
    case OutputFormat::html: return render_html(rep);
  }
  return {};
}

struct ReportIoError : std::runtime_error {
  explicit ReportIoError(const std::string& msg) : std::runtime_error(msg) {}
};

inline std::filesystem::path emit(const SuiteReport& rep, OutputFormat format,
                                  const std::filesystem::path& out_path) {
  std::ofstream out(out_path);
  if (!out) throw ReportIoError("cannot write report at " + out_path.string());
  out << render(rep, format);
  if (!out) throw ReportIoError("failed while writing " + out_path.string());
  return out_path;
}

// --- cross-compiler comparison ----------------------------------------

struct ComparisonColumn {
  std::string system_label;
  std::string compiler_id;
  std::optional<double> pass_rate;  // over this column's present, non-skipped cells
};

struct Disagreement {
  std::string path;
  std::vector<std::string> statuses;  // aligned with columns; "absent" where missing
};

struct ComparisonMatrix {
  std::vector<ComparisonColumn> columns;  // sorted by (system_label, compiler_id)
  std::vector<std::string> rows;          // union of test paths, sorted
  std::vector<std::vector<std::string>> cells;  // [row][column], "absent" where missing
  std::vector<Disagreement> disagreements;
};

struct DuplicateColumn : std::runtime_error {
  explicit DuplicateColumn(const std::string& what) : std::runtime_error(what) {}
};

inline ComparisonMatrix compare(const std::vector<SuiteReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("compare needs at least one report");

  std::vector<const SuiteReport*> ordered;
  for (const auto& rep : reports) ordered.push_back(&rep);
  std::sort(ordered.begin(), ordered.end(), [](const SuiteReport* a, const SuiteReport* b) {
    return std::tie(a->system_label, a->compiler_id) < std::tie(b->system_label, b->compiler_id);
  });

  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (const auto* rep : ordered)
    if (!seen.insert({rep->system_label, rep->compiler_id, rep->timestamp}).second)
      throw DuplicateColumn("two reports share system/compiler/timestamp " + rep->system_label +
                            "/" + rep->compiler_id + "/" + rep->timestamp);

  ComparisonMatrix m;
  std::set<std::string> paths;
  for (const auto* rep : ordered)
    for (const auto& rec : rep->records) paths.insert(rec.test.path);
  m.rows.assign(paths.begin(), paths.end());

  std::vector<std::map<std::string, std::string>> status_by_path(ordered.size());
  for (size_t c = 0; c < ordered.size(); ++c) {
    for (const auto& rec : ordered[c]->records)
      status_by_path[c][rec.test.path] = rec.overall_status();
    StatusTotals t;
    for (const auto& [_, status] : status_by_path[c]) t.count(status);
    m.columns.push_back({ordered[c]->system_label, ordered[c]->compiler_id, t.pass_rate()});
  }

  for (const auto& path : m.rows) {
    std::vector<std::string> row;
    std::set<std::string> distinct;
    for (size_t c = 0; c < ordered.size(); ++c) {
      auto it = status_by_path[c].find(path);
      std::string status = it == status_by_path[c].end() ? "absent" : it->second;
      if (status != "absent") distinct.insert(status);
      row.push_back(status);
    }
    if (distinct.size() > 1) m.disagreements.push_back({path, row});
    m.cells.push_back(std::move(row));
  }
  return m;
}

inline std::string render_comparison(const ComparisonMatrix& m) {
  std::ostringstream out;
  size_t path_width = 4;
  for (const auto& row : m.rows) path_width = std::max(path_width, row.size());

  out << std::string(path_width, ' ') << " |";
  for (const auto& col : m.columns) out << " " << col.system_label << "/" << col.compiler_id << " |";
  out << "\n";
  for (size_t r = 0; r < m.rows.size(); ++r) {
    out << m.rows[r] << std::string(path_width - m.rows[r].size(), ' ') << " |";
    for (size_t c = 0; c < m.columns.size(); ++c) {
      size_t w = m.columns[c].system_label.size() + m.columns[c].compiler_id.size() + 1;
      std::string cell = m.cells[r][c];
      if (cell.size() < w) cell += std::string(w - cell.size(), ' ');
      out << " " << cell << " |";
    }
    out << "\n";
  }
  out << std::string(path_width, ' ') << " |";
  for (const auto& col : m.columns) {
    size_t w = col.system_label.size() + col.compiler_id.size() + 1;
    std::string rate = format_rate(col.pass_rate);
    if (rate.size() < w) rate += std::string(w - rate.size(), ' ');
    out << " " << rate << " |";
  }
  out << "\n";
  if (!m.disagreements.empty()) {
    out << "\ndisagreements (" << m.disagreements.size() << "):\n";
    for (const auto& d : m.disagreements) {
      out << "  " << d.path << ":";
      for (size_t c = 0; c < d.statuses.size(); ++c)
        out << " " << m.columns[c].system_label << "/" << m.columns[c].compiler_id << "="
            << d.statuses[c];
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace accv::report
