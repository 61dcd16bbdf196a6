#ifndef ATOMDEC_CLI_COMMANDS_HPP
#define ATOMDEC_CLI_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "atomdec/cli.hpp"

namespace atomdec::cli {

struct Context {
  Settings settings;
  std::uint64_t seed = default_seed;
  std::filesystem::path out_dir;
  std::ostream& log;
};

struct Param {
  std::string name;
  std::string fallback;
  std::string help;
};

struct Command {
  std::string name;
  std::string help;
  std::vector<Param> params;
  // Returns an ExitStatus; throws InputError / GateRefusal after writing
  // whatever report the failure still allows.
  int (*run)(const Context&);
};

const std::vector<Command>& commands();

} // namespace atomdec::cli

#endif
