#pragma once

// Run configuration: the full description of a simulation, parseable from a
// sectioned key=value file and echoable back to one such that re-parsing the
// echo reproduces the RunConfig exactly (doubles round-trip at 17 significant
// digits).
//
// Sections and keys (defaults in parentheses):
//   [grid]    n_q, n_p, momentum_dims (1), q_min, q_max, p_min, p_max,
//             q_boundary (periodic | dirichlet_inflow)
//   [fields]  b_ext_x/y/z (0), alpha_rashba (0), beta_dresselhaus (0),
//             g_s (2), zeeman_scale (g_s/2), e_ext (0),
//             rashba_field_scaled (false),
//             v_device (none | linear:<slope> | barrier:<h>:<c>:<w>),
//             use_poisson (false)
//   [closure] variant (none | relaxation_time | table), tau_p, t1, t2,
//             m_eq_x/y/z (0), relax_axis_x/y/z (b_ext direction, else z),
//             weight_sigma (1), spin_isotropize (false), c_a (1),
//             table_dir (path, table variant only)
//   [toggles] drift, lorentz, precession, scattering_out, scattering_in,
//             torque_gamma, re_sigma_corrections, re_xi_torque,
//             charge_coupling, scalar_spin_coupling, lorentz_half_factor
//   [run]     scenario (custom), dt, n_steps, output_cadence (1),
//             snapshot_cadence (0 = off), cfl_strict (true), seed (0),
//             precision (17), init (uniform | gaussian | gaussian_p),
//             init_amplitude, init_center_q, init_sigma_q, init_center_px,
//             init_center_py, init_sigma_p, init_pol_x/y/z
//   [poisson] epsilon (1), rho_background (0), phi_left (0), phi_right (0)
//
// Unknown sections or keys, malformed values, and invariant violations are
// ConfigError with the line number or dotted key name. A scenario preset
// (file key run.scenario or the --scenario flag) supplies the base config;
// explicit file keys override preset values.

#include <optional>
#include <string>

#include "smqt/fields.hpp"
#include "smqt/grid.hpp"
#include "smqt/poisson.hpp"
#include "smqt/selfenergy.hpp"
#include "smqt/transport.hpp"

namespace smqt {

enum class Scenario {
  custom,
  larmor,
  t2_decay,
  t1_recovery,
  ballistic_drift,
  bloch_limit,
  rashba_precession,
  dp_narrowing,
  self_consistent_pileup,
};

const char* to_string(Scenario s);
std::optional<Scenario> scenario_from_string(const std::string& name);

struct InitConfig {
  enum class Kind { uniform, gaussian, gaussian_p };
  Kind kind = Kind::uniform;
  double amplitude = 1.0;
  double center_q = 0.0;
  double sigma_q = 1.0;
  double center_px = 0.0;
  double center_py = 0.0;
  double sigma_p = 1.0;
  Vec3 polarization{0.0, 0.0, 0.0};

  bool operator==(const InitConfig&) const = default;
};

struct ClosureConfig {
  SelfEnergyClosure::Kind kind = SelfEnergyClosure::Kind::none;
  RelaxationParams relax;
  bool relax_axis_explicit = false;  // retained so the echo is faithful
  double c_a = 1.0;
  std::string table_dir;

  bool operator==(const ClosureConfig&) const = default;
};

struct RunConfig {
  Scenario scenario = Scenario::custom;
  GridConfig grid;
  FieldConfig fields;
  ClosureConfig closure;
  TermToggles toggles;
  bool lorentz_half_factor = true;
  InitConfig init;
  PoissonConfig poisson;
  double dt = 0.0;
  long n_steps = 0;
  long output_cadence = 1;
  long snapshot_cadence = 0;
  bool cfl_strict = true;
  unsigned long seed = 0;  // reserved; every preset is deterministic
  int precision = 17;

  bool operator==(const RunConfig&) const = default;
};

// Fully populated preset for a scenario (custom yields the neutral defaults
// above, which do not validate until grid/run values are supplied).
RunConfig scenario_preset(Scenario s);

// Parse a config file; scenario_override substitutes for any run.scenario key
// before the preset base is chosen. Throws ConfigError.
RunConfig parse_config(const std::string& path,
                       std::optional<Scenario> scenario_override = {});
RunConfig parse_config_text(const std::string& text, const std::string& origin,
                            std::optional<Scenario> scenario_override = {});

// Validation shared by parsing and programmatic construction; throws
// ConfigError naming the dotted key.
void validate_config(const RunConfig& cfg);

// Serialize every key; parse_config_text on the result yields an equal
// RunConfig.
std::string format_config(const RunConfig& cfg);
void write_config(const RunConfig& cfg, const std::string& path);

}  // namespace smqt
