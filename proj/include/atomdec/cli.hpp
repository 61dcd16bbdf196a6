#ifndef ATOMDEC_CLI_HPP
#define ATOMDEC_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "atomdec/core.hpp"

namespace atomdec::cli {

enum ExitStatus : int { ok = 0, input_error = 1, gate_refused = 2 };

inline constexpr int schema_version = 1;

// Resolved parameters of one run, all kept as text until a command asks for
// a typed value. Typed getters throw InputError naming the key.
class Settings {
public:
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  const std::string& text(const std::string& key) const;
  long integer(const std::string& key) const;
  Real real(const std::string& key) const;
  // Comma-separated integers; empty text gives an empty list.
  std::vector<int> integers(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

private:
  std::map<std::string, std::string> values_;
};

// "key = value" lines, '#' comments. `schema_version` is mandatory and must
// match; it is not copied into the returned values.
std::map<std::string, std::string> parse_config(std::istream& in);
std::map<std::string, std::string> load_config(const std::filesystem::path& path);

// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace atomdec::cli

#endif
