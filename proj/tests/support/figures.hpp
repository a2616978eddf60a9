#pragma once

// Shipped figure configs, the command that draws each one, and golden-file
// helpers. FRACSPACE_UPDATE_GOLDENS=1 rewrites the goldens instead of
// comparing against them.

#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "fracspace/scenes.hpp"

namespace figures {

struct Figure {
  const char* name;
  fracspace::Command command;
};

inline constexpr std::array<Figure, 6> kFigures{{
    {"fig1", fracspace::Command::tree},
    {"fig2", fracspace::Command::grid},
    {"fig3", fracspace::Command::project},
    {"fig4", fracspace::Command::tree},
    {"fig5", fracspace::Command::project},
    {"fig6", fracspace::Command::project},
}};

inline std::filesystem::path source_dir() { return FRACSPACE_SOURCE_DIR; }
inline std::filesystem::path config_path(const char* name) {
  return source_dir() / "configs" / (std::string(name) + ".json");
}
inline std::filesystem::path golden_path(const std::string& file) {
  return source_dir() / "tests" / "golden" / file;
}

inline bool updating() {
  const char* flag = std::getenv("FRACSPACE_UPDATE_GOLDENS");
  return flag != nullptr && std::string(flag) == "1";
}

inline std::optional<std::string> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

/// True when `actual` equals the golden (or the golden was just rewritten).
inline bool matches_golden(const std::string& file, const std::string& actual) {
  const auto path = golden_path(file);
  if (updating()) {
    std::ofstream(path, std::ios::binary) << actual;
    return true;
  }
  const auto expected = read_file(path);
  return expected && *expected == actual;
}

}  // namespace figures
