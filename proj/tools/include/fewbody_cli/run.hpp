#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fewbody_cli/config.hpp"
#include "fewbody/units.hpp"

namespace fewbody::cli {

enum class Dim { none, length, mass, velocity, momentum, wavevector, temperature, frequency, action, coupling };

// Header annotation: "natural" in natural mode, the SI unit otherwise.
std::string unit_label(Dim dim, UnitMode mode);
Dim dimension_of(const std::string& parameter);

struct Column {
  std::string name;
  Dim dim = Dim::none;
};

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
};

struct RunOutput {
  Table table;
  std::optional<Table> reports;  // TransitionReports, written beside the main table
  std::vector<std::string> warnings;
  UnitMode units = UnitMode::natural;
};

// Throws ConfigError for configuration problems and lets library errors
// (fewbody::PhysicsError, std::invalid_argument) through.
RunOutput run(const RunConfig& config, std::optional<UnitMode> units_override = std::nullopt);

// CSV with a unit-annotated header, 17 significant digits, LF endings.
std::string to_csv(const Table& table, UnitMode units);

// Sidecar path for the reports table: "out.csv" -> "out.reports.csv".
std::string reports_path(const std::string& output);

}  // namespace fewbody::cli
