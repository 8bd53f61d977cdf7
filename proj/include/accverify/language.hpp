// Source languages the harness drives, plus extension and token mapping.
#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace accv {

enum class Language { c, cxx, fortran };

inline const char* display_name(Language lang) {
  switch (lang) {
    case Language::c: return "C";
    case Language::cxx: return "C++";
    case Language::fortran: return "Fortran";
  }
  return "?";
}

// Canonical token used in config files and JSON output.
inline const char* token(Language lang) {
  switch (lang) {
    case Language::c: return "c";
    case Language::cxx: return "cxx";
    case Language::fortran: return "fortran";
  }
  return "?";
}

inline std::optional<Language> language_from_token(std::string_view t) {
  std::string low;
  low.reserve(t.size());
  for (char c : t) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (low == "c") return Language::c;
  if (low == "cxx" || low == "c++" || low == "cpp") return Language::cxx;
  if (low == "fortran" || low == "f" || low == "f90") return Language::fortran;
  return std::nullopt;
}

inline std::optional<Language> language_from_extension(std::string_view path) {
  auto dot = path.rfind('.');
  if (dot == std::string_view::npos) return std::nullopt;
  std::string_view ext = path.substr(dot);
  if (ext == ".c") return Language::c;
  if (ext == ".cpp" || ext == ".cc") return Language::cxx;
  if (ext == ".f90" || ext == ".F90") return Language::fortran;
  return std::nullopt;
}

}  // namespace accv
