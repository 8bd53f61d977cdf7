// Spec version numbers (MAJOR.MINOR), ordered and printable.
#pragma once

#include <compare>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace accv {

struct SpecVersion {
  int major = 1;
  int minor = 0;

  friend auto operator<=>(const SpecVersion&, const SpecVersion&) = default;

  std::string str() const {
    return std::to_string(major) + "." + std::to_string(minor);
  }

  // "3.0" -> {3, 0}. Rejects anything that is not exactly MAJOR.MINOR
  // with nonnegative components.
  static std::optional<SpecVersion> parse(std::string_view text) {
    auto dot = text.find('.');
    if (dot == std::string_view::npos || dot == 0 || dot + 1 == text.size())
      return std::nullopt;
    auto digits = [](std::string_view s) {
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    std::string_view maj = text.substr(0, dot);
    std::string_view min = text.substr(dot + 1);
    if (!digits(maj) || !digits(min)) return std::nullopt;
    return SpecVersion{std::stoi(std::string(maj)), std::stoi(std::string(min))};
  }
};

inline constexpr SpecVersion kOldestSpec{1, 0};
inline constexpr SpecVersion kLatestSpec{3, 2};

}  // namespace accv
