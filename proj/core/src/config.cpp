#include "smqt/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "smqt/errors.hpp"

namespace smqt {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string fmt_double(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct Entry {
  std::string section, key, value;
  int line = 0;
};

[[noreturn]] void fail_at(const std::string& origin, int line,
                          const std::string& msg) {
  std::ostringstream os;
  os << origin << ":" << line << ": " << msg;
  throw ConfigError(os.str());
}

double parse_double(const Entry& e, const std::string& origin) {
  const std::string v = trim(e.value);
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size())
    fail_at(origin, e.line,
            "value for " + e.section + "." + e.key + " is not a number: '" +
                e.value + "'");
  return x;
}

long parse_long(const Entry& e, const std::string& origin) {
  const std::string v = trim(e.value);
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size())
    fail_at(origin, e.line,
            "value for " + e.section + "." + e.key + " is not an integer: '" +
                e.value + "'");
  return x;
}

bool parse_bool(const Entry& e, const std::string& origin) {
  const std::string v = trim(e.value);
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  fail_at(origin, e.line,
          "value for " + e.section + "." + e.key + " is not a boolean: '" +
              e.value + "'");
}

DevicePotential parse_device(const Entry& e, const std::string& origin) {
  const std::string v = trim(e.value);
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t c = v.find(':', pos);
    parts.push_back(v.substr(pos, c - pos));
    if (c == std::string::npos) break;
    pos = c + 1;
  }
  auto num = [&](const std::string& s) {
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
      fail_at(origin, e.line,
              "bad numeric part '" + s + "' in fields.v_device");
    return x;
  };
  DevicePotential dev;
  if (parts[0] == "none" && parts.size() == 1) {
    return dev;
  } else if (parts[0] == "linear" && parts.size() == 2) {
    dev.kind = DevicePotential::Kind::linear;
    dev.slope = num(parts[1]);
    return dev;
  } else if (parts[0] == "barrier" && parts.size() == 4) {
    dev.kind = DevicePotential::Kind::barrier;
    dev.height = num(parts[1]);
    dev.center = num(parts[2]);
    dev.width = num(parts[3]);
    return dev;
  }
  fail_at(origin, e.line,
          "fields.v_device must be none, linear:<slope>, or "
          "barrier:<height>:<center>:<width>, got '" + e.value + "'");
}

std::string device_to_string(const DevicePotential& d) {
  switch (d.kind) {
    case DevicePotential::Kind::none:
      return "none";
    case DevicePotential::Kind::linear:
      return "linear:" + fmt_double(d.slope);
    case DevicePotential::Kind::barrier:
      return "barrier:" + fmt_double(d.height) + ":" + fmt_double(d.center) +
             ":" + fmt_double(d.width);
  }
  return "none";
}

Vec3 resolved_relax_axis(const Vec3& b_ext) {
  const double n = norm(b_ext);
  if (n > 0.0) return (1.0 / n) * b_ext;
  return Vec3{0.0, 0.0, 1.0};
}

}  // namespace

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::custom: return "custom";
    case Scenario::larmor: return "larmor";
    case Scenario::t2_decay: return "t2_decay";
    case Scenario::t1_recovery: return "t1_recovery";
    case Scenario::ballistic_drift: return "ballistic_drift";
    case Scenario::bloch_limit: return "bloch_limit";
    case Scenario::rashba_precession: return "rashba_precession";
    case Scenario::dp_narrowing: return "dp_narrowing";
    case Scenario::self_consistent_pileup: return "self_consistent_pileup";
  }
  return "custom";
}

std::optional<Scenario> scenario_from_string(const std::string& name) {
  for (Scenario s :
       {Scenario::custom, Scenario::larmor, Scenario::t2_decay,
        Scenario::t1_recovery, Scenario::ballistic_drift, Scenario::bloch_limit,
        Scenario::rashba_precession, Scenario::dp_narrowing,
        Scenario::self_consistent_pileup})
    if (name == to_string(s)) return s;
  return std::nullopt;
}

RunConfig scenario_preset(Scenario s) {
  RunConfig c;
  c.scenario = s;
  switch (s) {
    case Scenario::custom:
      return c;  // neutral defaults; caller supplies grid and run values

    case Scenario::larmor:
      // uniform fully x-polarized gas precessing about an external z field;
      // ten periods at |B_eff| = 1
      c.grid = {8, 5, 1, 0.0, 8.0, -2.0, 2.0, QBoundary::periodic};
      c.fields.b_ext = {0.0, 0.0, 1.0};
      c.toggles = TermToggles::none();
      c.toggles.precession = true;
      c.init.kind = InitConfig::Kind::uniform;
      c.init.amplitude = 1.0;
      c.init.polarization = {1.0, 0.0, 0.0};
      c.dt = 0.01;
      c.n_steps = 6284;
      c.output_cadence = 10;
      break;

    case Scenario::t2_decay:
      // transverse polarization decaying at 1/T2; run ends exactly at t = T2
      c.grid = {8, 5, 1, 0.0, 8.0, -2.0, 2.0, QBoundary::periodic};
      c.closure.kind = SelfEnergyClosure::Kind::relaxation_time;
      c.closure.relax.tau_p = 0.2;
      c.closure.relax.t1 = 1.0;
      c.closure.relax.t2 = 0.5;
      c.toggles = TermToggles::none();
      c.toggles.precession = true;
      c.toggles.scattering_out = true;
      c.toggles.scattering_in = true;
      c.init.kind = InitConfig::Kind::uniform;
      c.init.amplitude = 1.0;
      c.init.polarization = {1.0, 0.0, 0.0};
      c.dt = 0.0025;
      c.n_steps = 200;
      break;

    case Scenario::t1_recovery:
      // unpolarized gas recovering longitudinal magnetization toward m_eq
      c.grid = {8, 5, 1, 0.0, 8.0, -2.0, 2.0, QBoundary::periodic};
      c.closure.kind = SelfEnergyClosure::Kind::relaxation_time;
      c.closure.relax.tau_p = 0.2;
      c.closure.relax.t1 = 1.0;
      c.closure.relax.t2 = 0.5;
      c.closure.relax.m_eq = {0.0, 0.0, 0.6};
      c.toggles = TermToggles::none();
      c.toggles.precession = true;
      c.toggles.scattering_out = true;
      c.toggles.scattering_in = true;
      c.init.kind = InitConfig::Kind::uniform;
      c.init.amplitude = 1.0;
      c.dt = 0.005;
      c.n_steps = 400;
      break;

    case Scenario::ballistic_drift:
      // free streaming of a right-moving packet around a periodic channel
      c.grid = {32, 5, 1, 0.0, 16.0, -2.0, 2.0, QBoundary::periodic};
      c.toggles = TermToggles::none();
      c.toggles.drift = true;
      c.toggles.lorentz = true;
      c.toggles.precession = true;
      c.init.kind = InitConfig::Kind::gaussian;
      c.init.amplitude = 1.0;
      c.init.center_q = 4.0;
      c.init.sigma_q = 1.0;
      c.init.center_px = 1.0;
      c.init.sigma_p = 0.5;
      c.init.polarization = {0.0, 0.0, 0.5};
      c.dt = 0.05;
      c.n_steps = 1000;
      c.output_cadence = 10;
      break;

    case Scenario::bloch_limit:
      // strong momentum scattering: charge diffuses, magnetization follows
      // the classical T1/T2 kinetics on the same channel
      c.grid = {64, 32, 1, 0.0, 40.0, -4.0, 4.0, QBoundary::periodic};
      c.closure.kind = SelfEnergyClosure::Kind::relaxation_time;
      c.closure.relax.tau_p = 0.1;
      c.closure.relax.t1 = 10.0;
      c.closure.relax.t2 = 10.0;
      c.closure.relax.weight_sigma = 1.0;
      c.closure.relax.spin_isotropize = true;
      c.toggles = TermToggles::none();
      c.toggles.drift = true;
      c.toggles.precession = true;
      c.toggles.scattering_out = true;
      c.toggles.scattering_in = true;
      c.init.kind = InitConfig::Kind::gaussian;
      c.init.amplitude = 1.0;
      c.init.center_q = 20.0;
      c.init.sigma_q = 3.0;
      c.init.center_px = 0.0;
      c.init.sigma_p = 1.0;
      c.init.polarization = {0.8, 0.0, 0.5};
      c.dt = 0.05;
      c.n_steps = 200;
      c.snapshot_cadence = 10;
      break;

    case Scenario::rashba_precession:
      // collisionless spin rotation about the momentum-dependent Rashba
      // field; the uniform z polarization dephases across the spectrum
      c.grid = {8, 17, 1, 0.0, 8.0, -2.0, 2.0, QBoundary::periodic};
      c.fields.alpha_rashba = 0.5;
      c.toggles = TermToggles::none();
      c.toggles.precession = true;
      c.init.kind = InitConfig::Kind::uniform;
      c.init.amplitude = 1.0;
      c.init.polarization = {0.0, 0.0, 1.0};
      c.dt = 0.01;
      c.n_steps = 1000;
      c.output_cadence = 10;
      break;

    case Scenario::dp_narrowing:
      // motional narrowing of spin-orbit dephasing: faster momentum
      // scattering slows the polarization decay
      c.grid = {4, 21, 2, 0.0, 4.0, -4.0, 4.0, QBoundary::periodic};
      c.fields.alpha_rashba = 0.35;
      c.closure.kind = SelfEnergyClosure::Kind::relaxation_time;
      c.closure.relax.tau_p = 0.25;
      c.closure.relax.t1 = 1.0e9;
      c.closure.relax.t2 = 1.0e9;
      c.closure.relax.weight_sigma = 1.0;
      c.closure.relax.spin_isotropize = true;
      c.toggles = TermToggles::none();
      c.toggles.precession = true;
      c.toggles.scattering_out = true;
      c.toggles.scattering_in = true;
      c.init.kind = InitConfig::Kind::gaussian_p;
      c.init.amplitude = 1.0;
      c.init.sigma_p = 1.0;
      c.init.polarization = {0.0, 0.0, 1.0};
      c.dt = 0.02;
      c.n_steps = 2000;
      c.output_cadence = 10;
      break;

    case Scenario::self_consistent_pileup:
      // open channel with the self-consistent channel field switched on
      c.grid = {32, 9, 1, 0.0, 16.0, -2.0, 2.0, QBoundary::dirichlet_inflow};
      c.fields.use_poisson = true;
      c.closure.kind = SelfEnergyClosure::Kind::relaxation_time;
      c.closure.relax.tau_p = 0.5;
      c.closure.relax.t1 = 1.0e9;
      c.closure.relax.t2 = 1.0e9;
      c.toggles = TermToggles::none();
      c.toggles.drift = true;
      c.toggles.lorentz = true;
      c.toggles.scattering_out = true;
      c.toggles.scattering_in = true;
      c.init.kind = InitConfig::Kind::gaussian;
      c.init.amplitude = 1.0;
      c.init.center_q = 8.0;
      c.init.sigma_q = 2.0;
      c.init.center_px = 0.0;
      c.init.sigma_p = 0.8;
      c.dt = 0.02;
      c.n_steps = 500;
      c.output_cadence = 10;
      break;
  }
  c.closure.relax.relax_axis = resolved_relax_axis(c.fields.b_ext);
  return c;
}

RunConfig parse_config_text(const std::string& text, const std::string& origin,
                            std::optional<Scenario> scenario_override) {
  std::vector<Entry> entries;
  std::string section;
  int section_line = 0;
  {
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
      ++line;
      const std::size_t hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      const std::string s = trim(raw);
      if (s.empty()) continue;
      if (s.front() == '[') {
        if (s.back() != ']')
          fail_at(origin, line, "malformed section header '" + s + "'");
        section = trim(s.substr(1, s.size() - 2));
        section_line = line;
        if (section != "grid" && section != "fields" && section != "closure" &&
            section != "toggles" && section != "run" && section != "poisson")
          fail_at(origin, section_line, "unknown section [" + section + "]");
        continue;
      }
      const std::size_t eq = s.find('=');
      if (eq == std::string::npos)
        fail_at(origin, line, "expected key = value, got '" + s + "'");
      if (section.empty())
        fail_at(origin, line, "key before any [section] header");
      Entry e;
      e.section = section;
      e.key = trim(s.substr(0, eq));
      e.value = trim(s.substr(eq + 1));
      e.line = line;
      if (e.key.empty()) fail_at(origin, line, "empty key");
      entries.push_back(std::move(e));
    }
  }

  // the scenario decides the preset base; explicit keys then override it
  Scenario base = Scenario::custom;
  for (const Entry& e : entries)
    if (e.section == "run" && e.key == "scenario") {
      auto s = scenario_from_string(trim(e.value));
      if (!s)
        fail_at(origin, e.line, "unknown scenario '" + e.value + "'");
      base = *s;
    }
  if (scenario_override) base = *scenario_override;
  RunConfig cfg = scenario_preset(base);

  bool saw_g_s = false, saw_zeeman = false, saw_relax_axis = false;

  for (const Entry& e : entries) {
    const std::string& k = e.key;
    if (e.section == "grid") {
      if (k == "n_q") cfg.grid.n_q = static_cast<int>(parse_long(e, origin));
      else if (k == "n_p") cfg.grid.n_p = static_cast<int>(parse_long(e, origin));
      else if (k == "momentum_dims")
        cfg.grid.momentum_dims = static_cast<int>(parse_long(e, origin));
      else if (k == "q_min") cfg.grid.q_min = parse_double(e, origin);
      else if (k == "q_max") cfg.grid.q_max = parse_double(e, origin);
      else if (k == "p_min") cfg.grid.p_min = parse_double(e, origin);
      else if (k == "p_max") cfg.grid.p_max = parse_double(e, origin);
      else if (k == "q_boundary") {
        const std::string v = trim(e.value);
        if (v == "periodic") cfg.grid.q_boundary = QBoundary::periodic;
        else if (v == "dirichlet_inflow")
          cfg.grid.q_boundary = QBoundary::dirichlet_inflow;
        else
          fail_at(origin, e.line,
                  "grid.q_boundary must be periodic or dirichlet_inflow");
      } else
        fail_at(origin, e.line, "unknown key 'grid." + k + "'");
    } else if (e.section == "fields") {
      if (k == "b_ext_x") cfg.fields.b_ext.x = parse_double(e, origin);
      else if (k == "b_ext_y") cfg.fields.b_ext.y = parse_double(e, origin);
      else if (k == "b_ext_z") cfg.fields.b_ext.z = parse_double(e, origin);
      else if (k == "alpha_rashba")
        cfg.fields.alpha_rashba = parse_double(e, origin);
      else if (k == "beta_dresselhaus")
        cfg.fields.beta_dresselhaus = parse_double(e, origin);
      else if (k == "g_s") {
        cfg.fields.g_s = parse_double(e, origin);
        saw_g_s = true;
      } else if (k == "zeeman_scale") {
        cfg.fields.zeeman_scale = parse_double(e, origin);
        saw_zeeman = true;
      } else if (k == "e_ext") cfg.fields.e_ext = parse_double(e, origin);
      else if (k == "rashba_field_scaled")
        cfg.fields.rashba_field_scaled = parse_bool(e, origin);
      else if (k == "v_device") cfg.fields.v_device = parse_device(e, origin);
      else if (k == "use_poisson")
        cfg.fields.use_poisson = parse_bool(e, origin);
      else
        fail_at(origin, e.line, "unknown key 'fields." + k + "'");
    } else if (e.section == "closure") {
      if (k == "variant") {
        const std::string v = trim(e.value);
        if (v == "none") cfg.closure.kind = SelfEnergyClosure::Kind::none;
        else if (v == "relaxation_time")
          cfg.closure.kind = SelfEnergyClosure::Kind::relaxation_time;
        else if (v == "table") cfg.closure.kind = SelfEnergyClosure::Kind::table;
        else
          fail_at(origin, e.line,
                  "closure.variant must be none, relaxation_time, or table");
      } else if (k == "tau_p") cfg.closure.relax.tau_p = parse_double(e, origin);
      else if (k == "t1") cfg.closure.relax.t1 = parse_double(e, origin);
      else if (k == "t2") cfg.closure.relax.t2 = parse_double(e, origin);
      else if (k == "m_eq_x") cfg.closure.relax.m_eq.x = parse_double(e, origin);
      else if (k == "m_eq_y") cfg.closure.relax.m_eq.y = parse_double(e, origin);
      else if (k == "m_eq_z") cfg.closure.relax.m_eq.z = parse_double(e, origin);
      else if (k == "relax_axis_x") {
        cfg.closure.relax.relax_axis.x = parse_double(e, origin);
        saw_relax_axis = true;
      } else if (k == "relax_axis_y") {
        cfg.closure.relax.relax_axis.y = parse_double(e, origin);
        saw_relax_axis = true;
      } else if (k == "relax_axis_z") {
        cfg.closure.relax.relax_axis.z = parse_double(e, origin);
        saw_relax_axis = true;
      } else if (k == "weight_sigma")
        cfg.closure.relax.weight_sigma = parse_double(e, origin);
      else if (k == "spin_isotropize")
        cfg.closure.relax.spin_isotropize = parse_bool(e, origin);
      else if (k == "c_a") cfg.closure.c_a = parse_double(e, origin);
      else if (k == "table_dir") cfg.closure.table_dir = trim(e.value);
      else
        fail_at(origin, e.line, "unknown key 'closure." + k + "'");
    } else if (e.section == "toggles") {
      if (k == "drift") cfg.toggles.drift = parse_bool(e, origin);
      else if (k == "lorentz") cfg.toggles.lorentz = parse_bool(e, origin);
      else if (k == "precession")
        cfg.toggles.precession = parse_bool(e, origin);
      else if (k == "scattering_out")
        cfg.toggles.scattering_out = parse_bool(e, origin);
      else if (k == "scattering_in")
        cfg.toggles.scattering_in = parse_bool(e, origin);
      else if (k == "torque_gamma")
        cfg.toggles.torque_gamma = parse_bool(e, origin);
      else if (k == "re_sigma_corrections")
        cfg.toggles.re_sigma_corrections = parse_bool(e, origin);
      else if (k == "re_xi_torque")
        cfg.toggles.re_xi_torque = parse_bool(e, origin);
      else if (k == "charge_coupling")
        cfg.toggles.charge_coupling = parse_bool(e, origin);
      else if (k == "scalar_spin_coupling")
        cfg.toggles.scalar_spin_coupling = parse_bool(e, origin);
      else if (k == "lorentz_half_factor")
        cfg.lorentz_half_factor = parse_bool(e, origin);
      else
        fail_at(origin, e.line, "unknown key 'toggles." + k + "'");
    } else if (e.section == "run") {
      if (k == "scenario") {
        // consumed in the base pass above
      } else if (k == "dt") cfg.dt = parse_double(e, origin);
      else if (k == "n_steps") cfg.n_steps = parse_long(e, origin);
      else if (k == "output_cadence")
        cfg.output_cadence = parse_long(e, origin);
      else if (k == "snapshot_cadence")
        cfg.snapshot_cadence = parse_long(e, origin);
      else if (k == "cfl_strict") cfg.cfl_strict = parse_bool(e, origin);
      else if (k == "seed")
        cfg.seed = static_cast<unsigned long>(parse_long(e, origin));
      else if (k == "precision")
        cfg.precision = static_cast<int>(parse_long(e, origin));
      else if (k == "init") {
        const std::string v = trim(e.value);
        if (v == "uniform") cfg.init.kind = InitConfig::Kind::uniform;
        else if (v == "gaussian") cfg.init.kind = InitConfig::Kind::gaussian;
        else if (v == "gaussian_p")
          cfg.init.kind = InitConfig::Kind::gaussian_p;
        else
          fail_at(origin, e.line,
                  "run.init must be uniform, gaussian, or gaussian_p");
      } else if (k == "init_amplitude")
        cfg.init.amplitude = parse_double(e, origin);
      else if (k == "init_center_q")
        cfg.init.center_q = parse_double(e, origin);
      else if (k == "init_sigma_q") cfg.init.sigma_q = parse_double(e, origin);
      else if (k == "init_center_px")
        cfg.init.center_px = parse_double(e, origin);
      else if (k == "init_center_py")
        cfg.init.center_py = parse_double(e, origin);
      else if (k == "init_sigma_p") cfg.init.sigma_p = parse_double(e, origin);
      else if (k == "init_pol_x")
        cfg.init.polarization.x = parse_double(e, origin);
      else if (k == "init_pol_y")
        cfg.init.polarization.y = parse_double(e, origin);
      else if (k == "init_pol_z")
        cfg.init.polarization.z = parse_double(e, origin);
      else
        fail_at(origin, e.line, "unknown key 'run." + k + "'");
    } else if (e.section == "poisson") {
      if (k == "epsilon") cfg.poisson.epsilon = parse_double(e, origin);
      else if (k == "rho_background")
        cfg.poisson.rho_background = parse_double(e, origin);
      else if (k == "phi_left") cfg.poisson.phi_left = parse_double(e, origin);
      else if (k == "phi_right")
        cfg.poisson.phi_right = parse_double(e, origin);
      else
        fail_at(origin, e.line, "unknown key 'poisson." + k + "'");
    }
  }

  if (saw_relax_axis) cfg.closure.relax_axis_explicit = true;
  if (!cfg.closure.relax_axis_explicit)
    cfg.closure.relax.relax_axis = resolved_relax_axis(cfg.fields.b_ext);
  if (saw_g_s && !saw_zeeman) cfg.fields.zeeman_scale = 0.5 * cfg.fields.g_s;

  validate_config(cfg);
  return cfg;
}

RunConfig parse_config(const std::string& path,
                       std::optional<Scenario> scenario_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path, scenario_override);
}

void validate_config(const RunConfig& cfg) {
  try {
    (void)make_grid(cfg.grid);
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("grid: ") + err.what());
  }
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  auto finite = [](double x) { return std::isfinite(x); };

  require(finite(cfg.fields.b_ext.x) && finite(cfg.fields.b_ext.y) &&
              finite(cfg.fields.b_ext.z),
          "fields.b_ext_* must be finite");
  require(finite(cfg.fields.alpha_rashba) && finite(cfg.fields.beta_dresselhaus),
          "fields.alpha_rashba and fields.beta_dresselhaus must be finite");
  require(finite(cfg.fields.g_s) && finite(cfg.fields.zeeman_scale),
          "fields.g_s and fields.zeeman_scale must be finite");
  require(finite(cfg.fields.e_ext), "fields.e_ext must be finite");
  if (cfg.fields.v_device.kind == DevicePotential::Kind::barrier)
    require(cfg.fields.v_device.width > 0.0,
            "fields.v_device barrier width must be positive");

  if (cfg.closure.kind == SelfEnergyClosure::Kind::relaxation_time) {
    require(cfg.closure.relax.tau_p > 0.0, "closure.tau_p must be positive");
    require(cfg.closure.relax.t1 > 0.0, "closure.t1 must be positive");
    require(cfg.closure.relax.t2 > 0.0, "closure.t2 must be positive");
    require(cfg.closure.relax.weight_sigma > 0.0,
            "closure.weight_sigma must be positive");
    require(norm(cfg.closure.relax.relax_axis) > 0.0,
            "closure.relax_axis_* must not be the zero vector");
  }
  if (cfg.closure.kind == SelfEnergyClosure::Kind::table)
    require(!cfg.closure.table_dir.empty(),
            "closure.table_dir is required for the table variant");
  require(finite(cfg.closure.c_a), "closure.c_a must be finite");

  require(cfg.dt > 0.0 && finite(cfg.dt), "run.dt must be positive");
  require(cfg.n_steps >= 0, "run.n_steps must be >= 0");
  require(cfg.output_cadence >= 1, "run.output_cadence must be >= 1");
  require(cfg.snapshot_cadence >= 0, "run.snapshot_cadence must be >= 0");
  require(cfg.precision >= 6 && cfg.precision <= 17,
          "run.precision must lie in [6, 17]");

  require(cfg.init.amplitude > 0.0, "run.init_amplitude must be positive");
  if (cfg.init.kind != InitConfig::Kind::uniform)
    require(cfg.init.sigma_p > 0.0, "run.init_sigma_p must be positive");
  if (cfg.init.kind == InitConfig::Kind::gaussian)
    require(cfg.init.sigma_q > 0.0, "run.init_sigma_q must be positive");
  require(norm(cfg.init.polarization) <= 1.0 + 1e-12,
          "run.init_pol_* must have norm <= 1");

  require(cfg.poisson.epsilon > 0.0, "poisson.epsilon must be positive");
  require(finite(cfg.poisson.rho_background) && finite(cfg.poisson.phi_left) &&
              finite(cfg.poisson.phi_right),
          "poisson.* values must be finite");
}

std::string format_config(const RunConfig& cfg) {
  std::ostringstream os;
  auto d = [](double x) { return fmt_double(x); };
  auto b = [](bool v) { return v ? "true" : "false"; };

  os << "[grid]\n";
  os << "n_q = " << cfg.grid.n_q << "\n";
  os << "n_p = " << cfg.grid.n_p << "\n";
  os << "momentum_dims = " << cfg.grid.momentum_dims << "\n";
  os << "q_min = " << d(cfg.grid.q_min) << "\n";
  os << "q_max = " << d(cfg.grid.q_max) << "\n";
  os << "p_min = " << d(cfg.grid.p_min) << "\n";
  os << "p_max = " << d(cfg.grid.p_max) << "\n";
  os << "q_boundary = " << to_string(cfg.grid.q_boundary) << "\n";

  os << "\n[fields]\n";
  os << "b_ext_x = " << d(cfg.fields.b_ext.x) << "\n";
  os << "b_ext_y = " << d(cfg.fields.b_ext.y) << "\n";
  os << "b_ext_z = " << d(cfg.fields.b_ext.z) << "\n";
  os << "alpha_rashba = " << d(cfg.fields.alpha_rashba) << "\n";
  os << "beta_dresselhaus = " << d(cfg.fields.beta_dresselhaus) << "\n";
  os << "g_s = " << d(cfg.fields.g_s) << "\n";
  os << "zeeman_scale = " << d(cfg.fields.zeeman_scale) << "\n";
  os << "e_ext = " << d(cfg.fields.e_ext) << "\n";
  os << "rashba_field_scaled = " << b(cfg.fields.rashba_field_scaled) << "\n";
  os << "v_device = " << device_to_string(cfg.fields.v_device) << "\n";
  os << "use_poisson = " << b(cfg.fields.use_poisson) << "\n";

  os << "\n[closure]\n";
  const char* variant =
      cfg.closure.kind == SelfEnergyClosure::Kind::none ? "none"
      : cfg.closure.kind == SelfEnergyClosure::Kind::relaxation_time
          ? "relaxation_time"
          : "table";
  os << "variant = " << variant << "\n";
  os << "tau_p = " << d(cfg.closure.relax.tau_p) << "\n";
  os << "t1 = " << d(cfg.closure.relax.t1) << "\n";
  os << "t2 = " << d(cfg.closure.relax.t2) << "\n";
  os << "m_eq_x = " << d(cfg.closure.relax.m_eq.x) << "\n";
  os << "m_eq_y = " << d(cfg.closure.relax.m_eq.y) << "\n";
  os << "m_eq_z = " << d(cfg.closure.relax.m_eq.z) << "\n";
  if (cfg.closure.relax_axis_explicit) {
    os << "relax_axis_x = " << d(cfg.closure.relax.relax_axis.x) << "\n";
    os << "relax_axis_y = " << d(cfg.closure.relax.relax_axis.y) << "\n";
    os << "relax_axis_z = " << d(cfg.closure.relax.relax_axis.z) << "\n";
  }
  os << "weight_sigma = " << d(cfg.closure.relax.weight_sigma) << "\n";
  os << "spin_isotropize = " << b(cfg.closure.relax.spin_isotropize) << "\n";
  os << "c_a = " << d(cfg.closure.c_a) << "\n";
  if (!cfg.closure.table_dir.empty())
    os << "table_dir = " << cfg.closure.table_dir << "\n";

  os << "\n[toggles]\n";
  os << "drift = " << b(cfg.toggles.drift) << "\n";
  os << "lorentz = " << b(cfg.toggles.lorentz) << "\n";
  os << "precession = " << b(cfg.toggles.precession) << "\n";
  os << "scattering_out = " << b(cfg.toggles.scattering_out) << "\n";
  os << "scattering_in = " << b(cfg.toggles.scattering_in) << "\n";
  os << "torque_gamma = " << b(cfg.toggles.torque_gamma) << "\n";
  os << "re_sigma_corrections = " << b(cfg.toggles.re_sigma_corrections) << "\n";
  os << "re_xi_torque = " << b(cfg.toggles.re_xi_torque) << "\n";
  os << "charge_coupling = " << b(cfg.toggles.charge_coupling) << "\n";
  os << "scalar_spin_coupling = " << b(cfg.toggles.scalar_spin_coupling) << "\n";
  os << "lorentz_half_factor = " << b(cfg.lorentz_half_factor) << "\n";

  os << "\n[run]\n";
  os << "scenario = " << to_string(cfg.scenario) << "\n";
  os << "dt = " << d(cfg.dt) << "\n";
  os << "n_steps = " << cfg.n_steps << "\n";
  os << "output_cadence = " << cfg.output_cadence << "\n";
  os << "snapshot_cadence = " << cfg.snapshot_cadence << "\n";
  os << "cfl_strict = " << b(cfg.cfl_strict) << "\n";
  os << "seed = " << cfg.seed << "\n";
  os << "precision = " << cfg.precision << "\n";
  const char* init =
      cfg.init.kind == InitConfig::Kind::uniform ? "uniform"
      : cfg.init.kind == InitConfig::Kind::gaussian ? "gaussian"
                                                    : "gaussian_p";
  os << "init = " << init << "\n";
  os << "init_amplitude = " << d(cfg.init.amplitude) << "\n";
  os << "init_center_q = " << d(cfg.init.center_q) << "\n";
  os << "init_sigma_q = " << d(cfg.init.sigma_q) << "\n";
  os << "init_center_px = " << d(cfg.init.center_px) << "\n";
  os << "init_center_py = " << d(cfg.init.center_py) << "\n";
  os << "init_sigma_p = " << d(cfg.init.sigma_p) << "\n";
  os << "init_pol_x = " << d(cfg.init.polarization.x) << "\n";
  os << "init_pol_y = " << d(cfg.init.polarization.y) << "\n";
  os << "init_pol_z = " << d(cfg.init.polarization.z) << "\n";

  os << "\n[poisson]\n";
  os << "epsilon = " << d(cfg.poisson.epsilon) << "\n";
  os << "rho_background = " << d(cfg.poisson.rho_background) << "\n";
  os << "phi_left = " << d(cfg.poisson.phi_left) << "\n";
  os << "phi_right = " << d(cfg.poisson.phi_right) << "\n";
  return os.str();
}

void write_config(const RunConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config file: " + path);
  out << format_config(cfg);
}

}  // namespace smqt
