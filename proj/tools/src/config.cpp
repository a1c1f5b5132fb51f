#include "fewbody_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace fewbody::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(value))
    throw ConfigError(fmt::format("key '{}': '{}' is not a finite number", key, text));
  return value;
}

}  // namespace

double SweepSpec::value(std::size_t i) const {
  const double t = static_cast<double>(i) / static_cast<double>(count - 1);
  if (log) return std::exp(std::log(start) + t * (std::log(stop) - std::log(start)));
  return start + t * (stop - start);
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, std::string> entries;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(fmt::format("line {}: expected 'key = value'", line_no));
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(fmt::format("line {}: empty key", line_no));
    if (value.empty()) throw ConfigError(fmt::format("line {}: key '{}' has no value", line_no, key));
    if (!entries.emplace(key, value).second)
      throw ConfigError(fmt::format("line {}: duplicate key '{}'", line_no, key));
  }

  RunConfig config;
  auto take = [&](const char* key) -> std::optional<std::string> {
    const auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    std::string value = it->second;
    entries.erase(it);
    return value;
  };

  const auto command = take("command");
  if (!command) throw ConfigError("missing required key 'command'");
  config.command = *command;
  if (const auto units = take("units")) {
    try {
      config.units = parse_unit_mode(*units);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  config.output = take("output");

  const auto name = take("sweep");
  const auto start = take("sweep_start");
  const auto stop = take("sweep_stop");
  const auto count = take("sweep_count");
  const auto scale = take("sweep_scale");
  if (name || start || stop || count || scale) {
    if (!name || !start || !stop || !count)
      throw ConfigError("a sweep needs sweep, sweep_start, sweep_stop and sweep_count");
    SweepSpec sweep;
    sweep.parameter = *name;
    sweep.start = parse_double("sweep_start", *start);
    sweep.stop = parse_double("sweep_stop", *stop);
    const double n = parse_double("sweep_count", *count);
    if (n < 2 || n != std::floor(n) || n > 1e7)
      throw ConfigError(fmt::format("sweep_count must be an integer >= 2, got '{}'", *count));
    sweep.count = static_cast<std::size_t>(n);
    const std::string mode = scale.value_or("linear");
    if (mode == "log") {
      sweep.log = true;
      if (!(sweep.start > 0.0) || !(sweep.stop > 0.0))
        throw ConfigError("a log sweep needs positive sweep_start and sweep_stop");
    } else if (mode != "linear") {
      throw ConfigError(fmt::format("sweep_scale must be linear or log, got '{}'", mode));
    }
    config.sweep = sweep;
  }
  config.params = std::move(entries);
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot read config file '{}'", path));
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace fewbody::cli
