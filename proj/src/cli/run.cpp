#include <charconv>
#include <fstream>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "atomdec/cli.hpp"
#include "commands.hpp"

namespace atomdec::cli {

namespace {

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw InputError("seed must be an unsigned 64-bit integer, got '" + text + "'");
  return value;
}

void prepare_out_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw InputError("cannot create output directory " + dir.string());
  const auto probe = dir / ".atomdec-write-check";
  {
    std::ofstream out(probe);
    if (!out)
      throw InputError("output directory " + dir.string() + " is not writable");
  }
  std::filesystem::remove(probe, ec);
}

struct Binding {
  const Param* param;
  CLI::Option* option;
  std::string value;
};

int dispatch(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Atomic decompositions in graded spaces: exponential, Gabor and disc examples, "
               "perturbation and tail diagnostics."};
  app.name("atomdec");
  app.fallthrough();
  app.require_subcommand(1);

  std::string out_text, seed_text, config_path;
  auto* out_opt = app.add_option("--out", out_text, "Output directory (default .)");
  auto* seed_opt = app.add_option("--seed", seed_text, "Seed for generated probes and noise");
  app.add_option("--config", config_path, "key = value file with schema_version = 1; flags override it");

  std::map<std::string, std::vector<Binding>> bindings;
  std::map<std::string, CLI::App*> subs;
  for (const auto& cmd : commands()) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    subs[cmd.name] = sub;
    auto& list = bindings[cmd.name];
    list.reserve(cmd.params.size());
    for (const auto& p : cmd.params)
      list.push_back({&p, nullptr, {}});
    for (auto& b : list)
      b.option = sub->add_option("--" + b.param->name, b.value, b.param->help + " (default " +
                                                                   (b.param->fallback.empty() ? "none" : b.param->fallback) + ")");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    throw InputError(e.what());
  }

  const Command* chosen = nullptr;
  for (const auto& cmd : commands())
    if (subs[cmd.name]->parsed())
      chosen = &cmd;
  if (!chosen)
    throw InputError("no subcommand given");

  std::map<std::string, std::string> file_values;
  if (!config_path.empty())
    file_values = load_config(config_path);

  Settings settings;
  for (const auto& p : chosen->params)
    settings.set(p.name, p.fallback);
  std::string out_dir = ".";
  std::uint64_t seed = default_seed;
  for (const auto& [key, value] : file_values) {
    if (key == "seed")
      seed = parse_seed(value);
    else if (key == "out")
      out_dir = value;
    else if (settings.has(key))
      settings.set(key, value);
    else
      throw InputError("config key '" + key + "' is not a parameter of " + chosen->name);
  }
  for (const auto& b : bindings[chosen->name])
    if (b.option->count() > 0)
      settings.set(b.param->name, b.value);
  if (seed_opt->count() > 0)
    seed = parse_seed(seed_text);
  if (out_opt->count() > 0)
    out_dir = out_text;

  const std::filesystem::path dir = std::filesystem::absolute(out_dir);
  prepare_out_dir(dir);
  return chosen->run(Context{std::move(settings), seed, dir, out});
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out);
  } catch (const GateRefusal& e) {
    err << "atomdec: gate refused: " << e.what() << " (measured " << e.value() << ")\n";
    return gate_refused;
  } catch (const InputError& e) {
    err << "atomdec: input error: " << e.what() << '\n';
    return input_error;
  } catch (const Unsupported& e) {
    err << "atomdec: unsupported: " << e.what() << '\n';
    return input_error;
  } catch (const std::exception& e) {
    err << "atomdec: error: " << e.what() << '\n';
    return input_error;
  }
}

} // namespace atomdec::cli
