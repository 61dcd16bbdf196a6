#include <fstream>
#include <sstream>

#include "atomdec/cli.hpp"
#include "atomdec/tables.hpp"

namespace atomdec::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

} // namespace

const std::string& Settings::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end())
    throw InputError("missing parameter '" + key + "'");
  return it->second;
}

long Settings::integer(const std::string& key) const {
  try {
    return parse_integer(text(key));
  } catch (const InputError&) {
    throw InputError("parameter '" + key + "' must be an integer, got '" + text(key) + "'");
  }
}

Real Settings::real(const std::string& key) const {
  try {
    return parse_real(text(key));
  } catch (const InputError&) {
    throw InputError("parameter '" + key + "' must be a number, got '" + text(key) + "'");
  }
}

std::vector<int> Settings::integers(const std::string& key) const {
  std::vector<int> out;
  for (const auto& field : split_csv_line(text(key))) {
    const std::string t = trim(field);
    if (t.empty())
      continue;
    try {
      out.push_back(int(parse_integer(t)));
    } catch (const InputError&) {
      throw InputError("parameter '" + key + "' must be a comma-separated integer list");
    }
  }
  return out;
}

std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> values;
  bool versioned = false;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("config line " + std::to_string(number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw InputError("config line " + std::to_string(number) + ": empty key");
    if (key == "schema_version") {
      if (value != std::to_string(schema_version))
        throw InputError("unsupported config schema_version '" + value + "'");
      versioned = true;
      continue;
    }
    if (!values.emplace(key, value).second)
      throw InputError("config key '" + key + "' given twice");
  }
  if (!versioned)
    throw InputError("config has no schema_version");
  return values;
}

std::map<std::string, std::string> load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot read config file " + path.string());
  return parse_config(in);
}

} // namespace atomdec::cli
