#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fewbody/units.hpp"

namespace fewbody::cli {

// Invalid configuration: unknown or missing key, bad value. Maps to exit 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 0;
  bool log = false;

  double value(std::size_t i) const;
};

struct RunConfig {
  std::string command;
  std::map<std::string, std::string> params;  // everything except the reserved keys
  std::optional<SweepSpec> sweep;
  std::optional<UnitMode> units;
  std::optional<std::string> output;
};

// Flat `key = value` lines; `#` starts a comment.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

}  // namespace fewbody::cli
