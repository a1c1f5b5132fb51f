#include "fewbody_cli/run.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <utility>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "fewbody/codata.hpp"
#include "fewbody/coordinate_interference.hpp"
#include "fewbody/kinematics.hpp"
#include "fewbody/momentum_interference.hpp"
#include "fewbody/oracle.hpp"
#include "fewbody/pdf_grid.hpp"
#include "fewbody/spectral_analysis.hpp"
#include "fewbody/transitions.hpp"

namespace fewbody::cli {

namespace {

// Key-value access that remembers which keys a command consumed, so that
// leftovers can be reported as unknown.
class Params {
 public:
  explicit Params(std::map<std::string, std::string> values) : values_(std::move(values)) {}

  void set(const std::string& key, double value) { values_[key] = fmt::format("{:.17g}", value); }

  double number(const std::string& key) {
    const auto value = optional_number(key);
    if (!value) throw ConfigError(fmt::format("missing required key '{}'", key));
    return *value;
  }

  double number(const std::string& key, double fallback) { return optional_number(key).value_or(fallback); }

  std::optional<double> optional_number(const std::string& key) {
    used_.insert(key);
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(it->second, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != it->second.size() || !std::isfinite(value))
      throw ConfigError(fmt::format("key '{}': '{}' is not a finite number", key, it->second));
    return value;
  }

  int integer(const std::string& key, int fallback) {
    const double value = number(key, fallback);
    if (value != std::floor(value) || std::abs(value) > 1e9)
      throw ConfigError(fmt::format("key '{}' must be an integer", key));
    return static_cast<int>(value);
  }

  std::size_t count(const std::string& key, std::size_t fallback) {
    const int value = integer(key, static_cast<int>(fallback));
    if (value < 1) throw ConfigError(fmt::format("key '{}' must be a positive integer", key));
    return static_cast<std::size_t>(value);
  }

  std::string choice(const std::string& key, const std::vector<std::string>& allowed,
                     std::optional<std::string> fallback = std::nullopt) {
    used_.insert(key);
    const auto it = values_.find(key);
    if (it == values_.end()) {
      if (!fallback) throw ConfigError(fmt::format("missing required key '{}'", key));
      return *fallback;
    }
    for (const auto& a : allowed)
      if (a == it->second) return a;
    throw ConfigError(fmt::format("key '{}': '{}' is not one of {}", key, it->second, fmt::join(allowed, ", ")));
  }

  bool flag(const std::string& key, bool fallback) {
    return choice(key, {"true", "false"}, fallback ? "true" : "false") == "true";
  }

  void require_all_used() const {
    for (const auto& [key, value] : values_)
      if (!used_.count(key)) throw ConfigError(fmt::format("unknown key '{}'", key));
  }

 private:
  std::map<std::string, std::string> values_;
  std::set<std::string> used_;
};

struct Point {
  Table table;
  std::optional<Table> reports;
  std::vector<std::string> warnings;
};

using Job = std::function<Point()>;
using Command = std::function<Job(Params&, const UnitSystem&)>;

Cell verdict_cell(Verdict v) { return std::string(to_string(v)); }

Table report_table(const std::vector<TransitionReport>& reports) {
  Table t{{{"criterion"}, {"threshold"}, {"value"}, {"margin"}, {"verdict"}}, {}};
  for (const auto& r : reports)
    t.rows.push_back({r.criterion, r.threshold, r.value, r.margin, verdict_cell(r.verdict)});
  return t;
}

Model read_model(Params& p) { return parse_model(p.choice("model", {"sqi", "cqi"})); }

std::optional<double> positive_optional(Params& p, const std::string& key) {
  const auto value = p.optional_number(key);
  if (value && !(*value > 0.0)) throw ConfigError(fmt::format("key '{}' must be positive", key));
  return value;
}

std::vector<double> read_grid(Params& p) {
  const double lo = p.number("grid_min"), hi = p.number("grid_max");
  const std::size_t n = p.count("grid_count", 101);
  if (!(hi > lo)) throw ConfigError("grid_max must exceed grid_min");
  if (n < 2) throw ConfigError("grid_count must be at least 2");
  return linspace(lo, hi, n);
}

// Recoil -------------------------------------------------------------------

std::vector<Cell> residual_cells(const RecoilSolution& s) {
  return {s.momentum_residual(), s.energy_residual()};
}

Job recoil(Params& p, const UnitSystem& units) {
  const std::string model = p.choice("model", {"sqi", "cqi", "unequal", "ensemble", "ratio", "photon-ratio"});
  if (model == "sqi" || model == "cqi") {
    const double m = p.number("m"), v = p.number("v"), M = p.number("M"), V = p.number("V", 0.0);
    const int n_s = model == "cqi" ? p.integer("n_s", 2) : 1;
    return [=, &units] {
      const RecoilSolution s = model == "sqi" ? solve_two_body_recoil(m, v, M, V, units)
                                              : solve_collective_recoil(m, v, M, V, n_s, units);
      Table t{{{"v1r", Dim::velocity}, {"V2r", Dim::velocity}, {"k1r", Dim::wavevector},
               {"K2r", Dim::wavevector}, {"momentum_residual"}, {"energy_residual"}},
              {}};
      // K2r is the wavevector of one scatterer.
      std::vector<Cell> row{s.particle_velocity(), s.scatterer_velocity(), s.particles[0].wavevector,
                            M * s.scatterer_velocity() / units.hbar};
      for (auto& c : residual_cells(s)) row.push_back(c);
      t.rows.push_back(std::move(row));
      return Point{std::move(t), std::nullopt, {}};
    };
  }
  if (model == "unequal") {
    const double m = p.number("m"), v = p.number("v");
    const double M2 = p.number("M2"), V2 = p.number("V2", 0.0), M3 = p.number("M3"), V3 = p.number("V3", 0.0);
    return [=, &units] {
      const RecoilSolution s = solve_unequal_scatterer_recoil(m, v, M2, V2, M3, V3, units);
      Table t{{{"v1r", Dim::velocity}, {"V2r", Dim::velocity}, {"V3r", Dim::velocity}, {"k1r", Dim::wavevector},
               {"momentum_residual"}, {"energy_residual"}},
              {}};
      std::vector<Cell> row{s.particle_velocity(), s.scatterer_velocity(0), s.scatterer_velocity(1),
                            s.particles[0].wavevector};
      for (auto& c : residual_cells(s)) row.push_back(c);
      t.rows.push_back(std::move(row));
      return Point{std::move(t), std::nullopt, {}};
    };
  }
  if (model == "ensemble") {
    EnsembleSpec e;
    e.N_p = p.integer("N_p", 1);
    e.N_s = p.integer("N_s", 1);
    e.R_p = p.number("R_p", 1.0);
    e.R_s = p.number("R_s", 1.0);
    e.m = p.number("m");
    e.M = p.number("M");
    e.V_p = p.number("V_p");
    e.V_s = p.number("V_s", 0.0);
    return [=, &units] {
      const RecoilSolution s = solve_ensemble_conservation(e, units);
      Table t{{{"V_pr", Dim::velocity}, {"V_sr", Dim::velocity}, {"dV_p", Dim::velocity}, {"dV_s", Dim::velocity},
               {"branch"}, {"momentum_residual"}, {"energy_residual"}},
              {}};
      std::vector<Cell> row{s.particle_velocity(), s.scatterer_velocity(), s.particle_velocity() - e.V_p,
                            s.scatterer_velocity() - e.V_s, s.branch};
      for (auto& c : residual_cells(s)) row.push_back(c);
      t.rows.push_back(std::move(row));
      return Point{std::move(t), std::nullopt, {}};
    };
  }
  if (model == "ratio") {
    const double m = p.number("m"), M = p.number("M"), v = p.number("v"), V = p.number("V", 0.0);
    return [=, &units] {
      const WavevectorRatio r = wavevector_ratio_massive(m, M, v, V, units);
      Table t{{{"printed"}, {"signed_cross_check"}, {"magnitude_cross_check"}}, {}};
      t.rows.push_back({r.printed, r.signed_cross_check, r.magnitude_cross_check});
      return Point{std::move(t), std::nullopt, {}};
    };
  }
  const double nu = p.number("nu"), M = p.number("M");
  return [=, &units] {
    Table t{{{"ratio"}}, {}};
    t.rows.push_back({wavevector_ratio_photon(nu, M, units)});
    return Point{std::move(t), std::nullopt, {}};
  };
}

// Coordinate space ------------------------------------------------------------

ScatteringScenario read_scenario(Params& p, Model model) {
  ScatteringScenario s =
      make_three_body(p.number("m"), p.number("v"), p.number("M"), p.number("V", 0.0), p.number("x0"), model);
  s.particles[0].coherence_length = positive_optional(p, "l_coh");
  const auto L = positive_optional(p, "L_coh");
  s.scatterers[0].coherence_length = L;
  s.scatterers[1].coherence_length = L;
  return s;
}

Job pdf_coordinate(Params& p, const UnitSystem& units) {
  const std::string model = p.choice("model", {"sqi", "cqi", "cqi4"});
  if (model == "cqi4") {
    const double m = p.number("m"), v = p.number("v"), M = p.number("M"), V = p.number("V", 0.0);
    const double x0 = p.number("x0");
    return [=, &units] {
      Table t{{{"pdf"}, {"fringe_period", Dim::length}}, {}};
      t.rows.push_back({pdf_cqi_4body(m, M, v, V, x0, units), cqi4_fringe_period(m, M, v, V, units.hbar)});
      return Point{std::move(t), std::nullopt, {}};
    };
  }
  const ScatteringScenario s = read_scenario(p, parse_model(model));
  const double x1 = p.number("x1", 0.0), x2 = p.number("x2", 0.0), x3 = p.number("x3", s.x0);
  return [=, &units] {
    const double m = s.particle().mass, v = s.particle().velocity;
    const double M = s.scatterers[0].mass, V = s.scatterers[0].velocity;
    const VisibilityReport vis = overlap_visibility(s, units);
    Table t{{{"pdf"}, {"visibility"}, {"fringe_period", Dim::length}, {"particle_offset", Dim::length},
             {"scatterer_offset", Dim::length}, {"verdict"}},
            {}};
    if (s.model == Model::sqi) {
      const SqiOffsets o = phase_offsets_sqi(m, M, s.x0);
      t.rows.push_back({pdf_sqi_3body(s, x1, x2, x3, units), vis.factor,
                        sqi_fringe_period(m, M, v, V, units.hbar), o.particle, o.scatterer, vis.verdict});
    } else {
      const CqiOffsets o = phase_offsets_cqi(m, M, s.x0);
      t.rows.push_back({pdf_cqi_3body(s, s.x0, units), vis.factor, cqi_fringe_period(m, M, v, V, units.hbar),
                        o.particle, o.scatterer, vis.verdict});
    }
    return Point{std::move(t), std::nullopt, {}};
  };
}

// Momentum space --------------------------------------------------------------

MomentumScenario read_momentum_scenario(Params& p) {
  MomentumScenario s;
  s.m = p.number("m");
  s.v = p.number("v");
  s.M = p.number("M");
  s.V = p.number("V", 0.0);
  s.x0 = p.number("x0");
  s.dp_scatterer = p.number("dp");
  s.dp_particle = positive_optional(p, "dp_particle");
  return s;
}

Job pdf_momentum(Params& p, const UnitSystem& units) {
  const Model model = read_model(p);
  const MomentumScenario s = read_momentum_scenario(p);
  const double p1 = p.number("p1", 0.0), p2 = p.number("p2", s.M * s.V), p3 = p.number("p3", s.M * s.V);
  return [=, &units] {
    Table t{{{"pdf"}}, {}};
    t.rows.push_back({pdf_momentum(model, p1, p2, p3, s, units)});
    return Point{std::move(t), std::nullopt, {}};
  };
}

// Marginals ---------------------------------------------------------------

Job marginal(Params& p, const UnitSystem& units) {
  const std::string space = p.choice("space", {"coordinate", "momentum"}, "coordinate");
  const Model model = read_model(p);
  const std::vector<double> grid = read_grid(p);
  if (space == "coordinate") {
    const ScatteringScenario s = read_scenario(p, model);
    const double periods = p.number("periods", 10.0);
    const std::size_t samples = p.count("samples", 401);
    return [=, &units] {
      MarginalOptions opt = default_marginal_window(s, periods, units);
      opt.samples = samples;
      const MarginalResult r = marginal_particle_pdf(model, s, grid, opt, units);
      const PdfGrid normalized = normalize(r.grid);
      Table t{{{"x1", Dim::length}, {"marginal"}, {"normalized", Dim::none}}, {}};
      for (std::size_t i = 0; i < grid.size(); ++i)
        t.rows.push_back({grid[i], r.grid.values()[i], normalized.values()[i]});
      Point out{std::move(t), std::nullopt, {}};
      if (r.warning) out.warnings.push_back(*r.warning);
      return out;
    };
  }
  const MomentumScenario s = read_momentum_scenario(p);
  MomentumMarginalOptions opt;
  opt.window = p.number("window", opt.window);
  opt.per_window = p.count("per_window", opt.per_window);
  return [=, &units] {
    const PdfGrid r = momentum_particle_marginal(model, s, grid, opt, units);
    const PdfGrid normalized = normalize(r);
    Table t{{{"p1", Dim::momentum}, {"marginal"}, {"normalized"}}, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) t.rows.push_back({grid[i], r.values()[i], normalized.values()[i]});
    return Point{std::move(t), std::nullopt, {}};
  };
}

// Transitions ---------------------------------------------------------------

Job transitions(Params& p, const UnitSystem& units) {
  const std::string criterion = p.choice("criterion", {"slab", "thermal", "dimer", "momentum"});
  if (criterion == "slab") {
    SlabSpec s;
    s.D = p.number("D");
    s.M = p.number("M");
    s.m_atom = p.number("m_atom");
    s.n_g = p.number("n_g");
    s.T = p.number("T");
    if (p.choice("probe", {"photon", "neutron"}) == "photon") {
      const auto nu = p.optional_number("nu");
      const auto wavelength = p.optional_number("wavelength");
      if (nu.has_value() == wavelength.has_value())
        throw ConfigError("photon probe needs exactly one of 'nu' and 'wavelength'");
      s.probe = PhotonProbe{nu ? *nu : units.c / *wavelength};
    } else {
      const double fallback = units.mode == UnitMode::si ? codata::neutron_mass : 1.0;
      s.probe = NeutronProbe{p.number("neutron_mass", fallback), p.number("neutron_speed", 0.0)};
    }
    return [=, &units] {
      const TransitionReport r = slab_transition(s, units);
      Table t{{{"displacement_slab", Dim::length}, {"displacement_atom", Dim::length},
               {"coherence_length", Dim::length}, {"margin"}, {"verdict"}},
              {}};
      t.rows.push_back({slab_displacement(s, DisplacedBody::slab, units),
                        slab_displacement(s, DisplacedBody::atom, units), r.threshold, r.margin,
                        verdict_cell(r.verdict)});
      return Point{std::move(t), report_table({r}), {}};
    };
  }
  if (criterion == "thermal") {
    const double M = p.number("M"), T = p.number("T");
    return [=, &units] {
      Table t{{{"coherence_length", Dim::length}}, {}};
      t.rows.push_back({thermal_coherence_length(M, T, units)});
      return Point{std::move(t), std::nullopt, {}};
    };
  }
  if (criterion == "dimer") {
    const double d0 = p.number("d0");
    // delta_L defaults to one hbar of the active unit system.
    const double dL = p.number("delta_L", units.hbar);
    const double lambda0 = p.number("lambda0");
    return [=, &units] {
      const TransitionReport r = dimer_transition({d0, dL, lambda0}, units);
      Table t{{{"threshold", Dim::length}, {"margin"}, {"verdict"}}, {}};
      t.rows.push_back({r.threshold, r.margin, verdict_cell(r.verdict)});
      return Point{std::move(t), report_table({r}), {}};
    };
  }
  const double L_c = p.number("L_c"), lambda0 = p.number("lambda0");
  return [=] {
    const TransitionReport r = momentum_transition(L_c, lambda0);
    Table t{{{"threshold", Dim::length}, {"margin"}, {"verdict"}}, {}};
    t.rows.push_back({r.threshold, r.margin, verdict_cell(r.verdict)});
    return Point{std::move(t), report_table({r}), {}};
  };
}

// Oracle ---------------------------------------------------------------

Job oracle(Params& p, const UnitSystem& units) {
  const std::string mode = p.choice("mode", {"spectrum", "wavepacket", "chain"}, "spectrum");
  const double m = p.number("m"), M = p.number("M"), g = p.number("g"), x0 = p.number("x0");
  if (mode == "spectrum") {
    const double k_min = p.number("k_min"), k_max = p.number("k_max");
    const std::size_t samples = p.count("samples", 401);
    return [=, &units] {
      const DoubleDeltaPotential pot = DoubleDeltaPotential::from_masses(m, M, g, x0);
      const ReflectionSpectrum s = reflection_spectrum(k_min, k_max, samples, pot, units.hbar);
      // The fitted periods repeat on every row so the file stays one table.
      Table t{{{"k", Dim::wavevector}, {"reflectance"}, {"single_reflectance"}, {"period_k", Dim::wavevector},
               {"expected_period_k", Dim::wavevector}, {"weak"}},
              {}};
      for (std::size_t i = 0; i < s.k.size(); ++i)
        t.rows.push_back({s.k[i], s.reflectance[i], pot.single_reflectance(s.k[i], units.hbar), s.period_k,
                          s.expected_period_k, std::string(s.weak ? "true" : "false")});
      Point out{std::move(t), std::nullopt, {}};
      if (s.warning) out.warnings.push_back(*s.warning);
      return out;
    };
  }
  if (mode == "wavepacket") {
    WavepacketSettings settings;
    settings.k0 = p.number("k0");
    settings.grid.points = p.count("points", settings.grid.points);
    settings.grid.dx = p.number("dx", settings.grid.dx);
    settings.width = p.number("width", settings.width);
    settings.dt = p.number("dt", 0.0);
    settings.hbar = units.hbar;
    return [=, &units] {
      const DoubleDeltaPotential pot = DoubleDeltaPotential::from_masses(m, M, g, x0);
      const WavepacketSpectrum w = wavepacket_reflection_spectrum(pot, settings);
      Table t{{{"k", Dim::wavevector}, {"reflectance_wavepacket"}, {"reflectance_transfer"},
               {"period_k", Dim::wavevector}, {"reflected_fraction"}},
              {}};
      for (std::size_t i = 0; i < w.k.size(); ++i)
        t.rows.push_back({w.k[i], w.reflectance[i],
                          transfer_matrix_double_delta(w.k[i], pot, units.hbar).reflectance(), w.period_k,
                          w.reflected_fraction});
      Point out{std::move(t), std::nullopt, {}};
      out.warnings.push_back(fmt::format("{} steps, norm drift {:.2e}", w.steps, w.norm_drift));
      return out;
    };
  }
  const double v_rel = p.number("v") - p.number("V", 0.0);
  const bool packet = p.flag("wavepacket", true);
  return [=, &units] {
    const OracleComparison c = compare_cqi_period(m, M, v_rel, x0, g, packet, units.hbar);
    Table t{{{"k_rel", Dim::wavevector}, {"closed_form_period", Dim::length}, {"transfer_period", Dim::length},
             {"wavepacket_period", Dim::length}, {"transfer_error"}, {"wavepacket_error"}, {"weak"}},
            {}};
    t.columns.push_back({"band_periods"});
    t.rows.push_back({c.k_rel, c.closed_form_period, c.transfer_period, c.wavepacket_period, c.transfer_error,
                      c.wavepacket_error, std::string(c.weak ? "true" : "false"), c.band_periods});
    Point out{std::move(t), std::nullopt, {}};
    if (c.warning) out.warnings.push_back(*c.warning);
    return out;
  };
}

// SQI vs CQI ---------------------------------------------------------------

Job compare(Params& p, const UnitSystem& units) {
  const ScatteringScenario sqi = read_scenario(p, Model::sqi);
  const auto dp = positive_optional(p, "dp");
  MomentumMarginalOptions opt;
  opt.per_window = p.count("per_window", 65);
  return [=, &units] {
    ScatteringScenario cqi = sqi;
    cqi.model = Model::cqi;
    const double m = sqi.particle().mass, v = sqi.particle().velocity;
    const double M = sqi.scatterers[0].mass, V = sqi.scatterers[0].velocity;
    // SQI fringes run in x3 - x2; with the scatterers at their initial
    // positions that separation is x0.
    Table t{{{"x0", Dim::length}, {"pdf_sqi"}, {"pdf_cqi"}, {"period_sqi", Dim::length},
             {"period_cqi", Dim::length}, {"visibility_sqi"}, {"visibility_cqi"}},
            {}};
    std::vector<Cell> row{sqi.x0,
                          pdf_sqi_3body(sqi, 0.0, 0.0, sqi.x0, units),
                          pdf_cqi_3body(cqi, cqi.x0, units),
                          sqi_fringe_period(m, M, v, V, units.hbar),
                          cqi_fringe_period(m, M, v, V, units.hbar),
                          overlap_visibility(sqi, units).factor,
                          overlap_visibility(cqi, units).factor};
    std::vector<TransitionReport> reports;
    if (dp) {
      MomentumScenario ms;
      ms.m = m;
      ms.v = v;
      ms.M = M;
      ms.V = V;
      ms.x0 = sqi.x0;
      ms.dp_scatterer = *dp;
      t.columns.push_back({"p1_visibility_sqi"});
      t.columns.push_back({"p1_visibility_cqi"});
      t.columns.push_back({"p1_visibility_overlap"});
      row.push_back(p1_fringe_visibility(Model::sqi, ms, opt, units));
      row.push_back(p1_fringe_visibility(Model::cqi, ms, opt, units));
      row.push_back(sqi_visibility(m, v, M, *dp, V, units).visibility);
      const double L_c = units.hbar / (2.0 * *dp);
      const double lambda0 = units.h / (m * std::abs(v - V));
      reports.push_back(momentum_transition(L_c, lambda0));
    }
    t.rows.push_back(std::move(row));
    return Point{std::move(t), report_table(reports), {}};
  };
}

const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table{
      {"recoil", recoil},         {"pdf-coordinate", pdf_coordinate}, {"pdf-momentum", pdf_momentum},
      {"marginal", marginal},     {"transitions", transitions},       {"oracle", oracle},
      {"compare", compare},
  };
  return table;
}

void append(Table& into, Table&& from, const std::optional<Column>& prefix, double value) {
  if (into.columns.empty()) {
    if (prefix) into.columns.push_back(*prefix);
    into.columns.insert(into.columns.end(), from.columns.begin(), from.columns.end());
  }
  for (auto& row : from.rows) {
    if (prefix) row.insert(row.begin(), value);
    into.rows.push_back(std::move(row));
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string unit_label(Dim dim, UnitMode mode) {
  if (dim == Dim::none) return {};
  if (mode == UnitMode::natural) return "natural";
  switch (dim) {
    case Dim::length: return "m";
    case Dim::mass: return "kg";
    case Dim::velocity: return "m/s";
    case Dim::momentum: return "kg m/s";
    case Dim::wavevector: return "1/m";
    case Dim::temperature: return "K";
    case Dim::frequency: return "Hz";
    case Dim::action: return "J s";
    case Dim::coupling: return "J m";
    case Dim::none: break;
  }
  return {};
}

Dim dimension_of(const std::string& parameter) {
  static const std::map<std::string, Dim> dims{
      {"x0", Dim::length},       {"x1", Dim::length},         {"x2", Dim::length},
      {"x3", Dim::length},       {"l_coh", Dim::length},      {"L_coh", Dim::length},
      {"L_c", Dim::length},      {"lambda0", Dim::length},    {"d0", Dim::length},
      {"D", Dim::length},        {"wavelength", Dim::length}, {"dx", Dim::length},
      {"width", Dim::length},    {"m", Dim::mass},            {"M", Dim::mass},
      {"M2", Dim::mass},         {"M3", Dim::mass},           {"m_atom", Dim::mass},
      {"neutron_mass", Dim::mass}, {"v", Dim::velocity},      {"V", Dim::velocity},
      {"V2", Dim::velocity},     {"V3", Dim::velocity},       {"V_p", Dim::velocity},
      {"V_s", Dim::velocity},    {"neutron_speed", Dim::velocity}, {"dp", Dim::momentum},
      {"dp_particle", Dim::momentum}, {"p1", Dim::momentum},  {"p2", Dim::momentum},
      {"p3", Dim::momentum},     {"k_min", Dim::wavevector},  {"k_max", Dim::wavevector},
      {"k0", Dim::wavevector},   {"T", Dim::temperature},     {"nu", Dim::frequency},
      {"delta_L", Dim::action},  {"g", Dim::coupling},
  };
  const auto it = dims.find(parameter);
  return it == dims.end() ? Dim::none : it->second;
}

RunOutput run(const RunConfig& config, std::optional<UnitMode> units_override) {
  const auto it = commands().find(config.command);
  if (it == commands().end()) throw ConfigError(fmt::format("unknown command '{}'", config.command));
  const UnitMode mode = units_override.value_or(
      config.units.value_or(config.command == "transitions" ? UnitMode::si : UnitMode::natural));
  const UnitSystem& units = mode == UnitMode::si ? si_units() : natural_units();

  RunOutput out;
  out.units = mode;
  const std::size_t count = config.sweep ? config.sweep->count : 1;

  // Parse every point before computing any, so configuration errors win.
  std::vector<Job> jobs;
  std::vector<double> values;
  for (std::size_t i = 0; i < count; ++i) {
    Params params(config.params);
    double value = 0.0;
    if (config.sweep) {
      value = config.sweep->value(i);
      params.set(config.sweep->parameter, value);
    }
    jobs.push_back(it->second(params, units));
    params.require_all_used();
    values.push_back(value);
  }

  std::optional<Column> prefix;
  for (std::size_t i = 0; i < count; ++i) {
    Point point = jobs[i]();
    if (config.sweep && i == 0) {
      const std::string& name = config.sweep->parameter;
      if (point.table.columns.empty() || point.table.columns.front().name != name)
        prefix = Column{name, dimension_of(name)};
    }
    append(out.table, std::move(point.table), prefix, values[i]);
    if (point.reports && !point.reports->rows.empty()) {
      if (!out.reports) out.reports = Table{};
      append(*out.reports, std::move(*point.reports), prefix, values[i]);
    }
    for (auto& w : point.warnings) {
      if (config.sweep) w = fmt::format("{} = {:.6g}: {}", config.sweep->parameter, values[i], w);
      out.warnings.push_back(std::move(w));
    }
  }
  return out;
}

std::string to_csv(const Table& table, UnitMode units) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i].name;
    if (const std::string label = unit_label(table.columns[i].dim, units); !label.empty())
      out += fmt::format("[{}]", label);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const double* d = std::get_if<double>(&row[i]))
        out += fmt::format("{:.17g}", *d);
      else
        out += csv_escape(std::get<std::string>(row[i]));
    }
    out += '\n';
  }
  return out;
}

std::string reports_path(const std::string& output) {
  const auto slash = output.find_last_of('/');
  const auto dot = output.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return output + ".reports.csv";
  return output.substr(0, dot) + ".reports" + output.substr(dot);
}

}  // namespace fewbody::cli
