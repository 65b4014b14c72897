#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace bz::harness {

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct ConfigSection {
  std::string name;
  int line = 0;
  std::vector<ConfigEntry> entries;
};

// Line oriented "key = value" text with [scenario.<name>] headers. Entries
// before the first header are global. '#' starts a comment line.
struct Config {
  std::vector<ConfigEntry> globals;
  std::vector<ConfigSection> scenarios;
  // Directory that relative table paths resolve against.
  std::filesystem::path base_dir;
};

Config parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
Config load_config(const std::filesystem::path& path);

}  // namespace bz::harness
