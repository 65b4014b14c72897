#include "bz/harness/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "bz/errors.hpp"

namespace bz::harness {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Config parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  Config cfg;
  cfg.base_dir = base_dir;
  std::set<std::string> names;
  std::istringstream in{std::string(text)};
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", n);
      const std::string head = trim(std::string_view(line).substr(1, line.size() - 2));
      const std::string prefix = "scenario.";
      if (head.rfind(prefix, 0) != 0 || head.size() == prefix.size()) {
        throw ParseError("section header must be [scenario.<name>]", n);
      }
      const std::string name = head.substr(prefix.size());
      if (name.find_first_of(" \t/\\") != std::string::npos) {
        throw ParseError("scenario name '" + name + "' contains whitespace or slashes", n);
      }
      if (!names.insert(name).second) throw ParseError("duplicate scenario '" + name + "'", n);
      cfg.scenarios.push_back(ConfigSection{name, n, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", n);
    ConfigEntry e{trim(std::string_view(line).substr(0, eq)),
                  trim(std::string_view(line).substr(eq + 1)), n};
    if (e.key.empty()) throw ParseError("empty key", n);
    if (e.value.empty()) throw ParseError("empty value for '" + e.key + "'", n);
    if (cfg.scenarios.empty()) {
      cfg.globals.push_back(std::move(e));
    } else {
      cfg.scenarios.back().entries.push_back(std::move(e));
    }
  }
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config " + path.string(), 0);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str(), path.parent_path());
}

}  // namespace bz::harness
