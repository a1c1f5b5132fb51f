#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "fewbody/error.hpp"
#include "fewbody_cli/config.hpp"
#include "fewbody_cli/run.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitPhysics = 3;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path));
  out << text;
  if (!out.flush()) throw std::runtime_error(fmt::format("cannot write '{}'", path));
}

}  // namespace

int main(int argc, char** argv) {
  using namespace fewbody;

  CLI::App app{"Few-body scattering interference calculator"};
  std::string config_path;
  std::optional<std::string> out_path;
  std::optional<std::string> units_text;
  bool quiet = false;
  app.add_option("--config", config_path, "Configuration file (key = value lines)")->required();
  app.add_option("--out", out_path, "Output CSV path (overrides the config 'output' key)");
  app.add_option("--units", units_text, "Unit system")->check(CLI::IsMember({"natural", "si"}));
  app.add_flag("--quiet", quiet, "Suppress warnings on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  cli::RunOutput result;
  std::optional<std::string> output;
  try {
    const cli::RunConfig config = cli::load_config(config_path);
    output = out_path ? out_path : config.output;
    std::optional<UnitMode> units;
    if (units_text) units = parse_unit_mode(*units_text);
    result = cli::run(config, units);
  } catch (const cli::ConfigError& e) {
    fmt::print(stderr, "fewbody: config error: {}\n", e.what());
    return kExitConfig;
  } catch (const PhysicsError& e) {
    fmt::print(stderr, "fewbody: {}\n", e.what());
    return kExitPhysics;
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "fewbody: {}\n", e.what());
    return kExitPhysics;
  }

  if (!quiet)
    for (const auto& w : result.warnings) fmt::print(stderr, "fewbody: warning: {}\n", w);

  const std::string csv = cli::to_csv(result.table, result.units);
  const std::optional<std::string> reports =
      result.reports ? std::optional(cli::to_csv(*result.reports, result.units)) : std::nullopt;
  try {
    if (output) {
      write_file(*output, csv);
      if (reports) write_file(cli::reports_path(*output), *reports);
    } else {
      std::cout << csv;
      if (reports) std::cout << '\n' << *reports;
      std::cout.flush();
    }
  } catch (const std::exception& e) {
    fmt::print(stderr, "fewbody: {}\n", e.what());
    return 1;
  }
  return 0;
}
