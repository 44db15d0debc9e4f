#include "smqt/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "smqt/errors.hpp"

namespace smqt {

namespace {

std::string fmt(double x, int precision) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, x);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t c = line.find(',', pos);
    std::string cell = line.substr(pos, c - pos);
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' '))
      cell.pop_back();
    std::size_t b = 0;
    while (b < cell.size() && cell[b] == ' ') ++b;
    out.push_back(cell.substr(b));
    if (c == std::string::npos) break;
    pos = c + 1;
  }
  return out;
}

[[noreturn]] void fail_at(const std::string& path, int line,
                          const std::string& msg) {
  std::ostringstream os;
  os << path << ":" << line << ": " << msg;
  throw ConfigError(os.str());
}

double cell_double(const std::string& cell, const std::string& path, int line) {
  char* end = nullptr;
  const double x = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size())
    fail_at(path, line, "not a number: '" + cell + "'");
  return x;
}

long cell_long(const std::string& cell, const std::string& path, int line) {
  char* end = nullptr;
  const long x = std::strtol(cell.c_str(), &end, 10);
  if (cell.empty() || end != cell.c_str() + cell.size())
    fail_at(path, line, "not an integer index: '" + cell + "'");
  return x;
}

}  // namespace

std::string observables_header() {
  return "t,total_charge,mx_mean,my_mean,mz_mean,m_norm_mean,phi_mid";
}

std::string format_observable_row(const ObservableRow& r, int precision) {
  std::ostringstream os;
  os << fmt(r.t, precision) << ',' << fmt(r.total_charge, precision) << ','
     << fmt(r.mx_mean, precision) << ',' << fmt(r.my_mean, precision) << ','
     << fmt(r.mz_mean, precision) << ',' << fmt(r.m_norm_mean, precision)
     << ',' << fmt(r.phi_mid, precision);
  return os.str();
}

void write_observables(const std::vector<ObservableRow>& rows,
                       const std::string& path, int precision) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write observables file: " + path);
  out << observables_header() << '\n';
  for (const auto& r : rows) out << format_observable_row(r, precision) << '\n';
}

void write_snapshot(const SpinChargeState& state, const PhaseSpaceGrid& grid,
                    const std::string& path, int precision) {
  if (!state.s0.conforms(grid))
    throw std::invalid_argument("write_snapshot: state does not match grid");
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write snapshot file: " + path);
  const bool two_d = grid.momentum_dims == 2;
  out << (two_d ? "q_index,p_x_index,p_y_index,s0,sx,sy,sz"
                : "q_index,p_x_index,s0,sx,sy,sz")
      << '\n';
  for (int iq = 0; iq < grid.n_q; ++iq)
    for (int ipy = 0; ipy < grid.n_py(); ++ipy)
      for (int ipx = 0; ipx < grid.n_px(); ++ipx) {
        const std::size_t k = state.s0.index(iq, ipy, ipx);
        out << iq << ',' << ipx;
        if (two_d) out << ',' << ipy;
        out << ',' << fmt(state.s0.v[k], precision) << ','
            << fmt(state.spin[0].v[k], precision) << ','
            << fmt(state.spin[1].v[k], precision) << ','
            << fmt(state.spin[2].v[k], precision) << '\n';
      }
}

SpinChargeState read_snapshot(const std::string& path,
                              const PhaseSpaceGrid& grid) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open snapshot file: " + path);
  const bool two_d = grid.momentum_dims == 2;
  const std::string expected = two_d
                                   ? "q_index,p_x_index,p_y_index,s0,sx,sy,sz"
                                   : "q_index,p_x_index,s0,sx,sy,sz";
  std::string line;
  int lineno = 0;
  bool have_header = false;
  SpinChargeState state = SpinChargeState::zeros(grid);
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (line.empty()) continue;
    if (!have_header) {
      if (line != expected)
        fail_at(path, lineno, "snapshot header must be '" + expected + "'");
      have_header = true;
      continue;
    }
    const auto cells = split_csv(line);
    const std::size_t want = two_d ? 7u : 6u;
    if (cells.size() != want)
      fail_at(path, lineno, "expected " + std::to_string(want) + " columns");
    const long iq = cell_long(cells[0], path, lineno);
    const long ipx = cell_long(cells[1], path, lineno);
    const long ipy = two_d ? cell_long(cells[2], path, lineno) : 0;
    if (iq < 0 || iq >= grid.n_q || ipx < 0 || ipx >= grid.n_px() || ipy < 0 ||
        ipy >= grid.n_py())
      fail_at(path, lineno, "node index out of range");
    const std::size_t base = two_d ? 3u : 2u;
    const std::size_t k = state.s0.index(static_cast<int>(iq),
                                         static_cast<int>(ipy),
                                         static_cast<int>(ipx));
    state.s0.v[k] = cell_double(cells[base + 0], path, lineno);
    state.spin[0].v[k] = cell_double(cells[base + 1], path, lineno);
    state.spin[1].v[k] = cell_double(cells[base + 2], path, lineno);
    state.spin[2].v[k] = cell_double(cells[base + 3], path, lineno);
  }
  if (!have_header) fail_at(path, lineno, "missing snapshot header");
  return state;
}

PhaseField read_phase_field_csv(const std::string& path,
                                const PhaseSpaceGrid& grid) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open table file: " + path);
  const bool two_d = grid.momentum_dims == 2;
  const std::string expected =
      two_d ? "p_x_index,p_y_index,q_index,value" : "p_x_index,q_index,value";
  std::string line;
  int lineno = 0;
  bool have_header = false;
  PhaseField f = PhaseField::zeros(grid);
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (line.empty()) continue;
    if (!have_header) {
      if (line != expected)
        fail_at(path, lineno, "table header must be '" + expected + "'");
      have_header = true;
      continue;
    }
    const auto cells = split_csv(line);
    const std::size_t want = two_d ? 4u : 3u;
    if (cells.size() != want)
      fail_at(path, lineno, "expected " + std::to_string(want) + " columns");
    const long ipx = cell_long(cells[0], path, lineno);
    const long ipy = two_d ? cell_long(cells[1], path, lineno) : 0;
    const long iq = cell_long(cells[two_d ? 2 : 1], path, lineno);
    if (iq < 0 || iq >= grid.n_q || ipx < 0 || ipx >= grid.n_px() || ipy < 0 ||
        ipy >= grid.n_py())
      fail_at(path, lineno, "node index out of range");
    f(static_cast<int>(iq), static_cast<int>(ipy), static_cast<int>(ipx)) =
        cell_double(cells[two_d ? 3 : 2], path, lineno);
  }
  if (!have_header) fail_at(path, lineno, "missing table header");
  return f;
}

SelfEnergySet load_selfenergy_tables(const std::string& dir,
                                     const PhaseSpaceGrid& grid) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw ConfigError("self-energy table directory not found: " + dir);
  auto load_if_present = [&](const std::string& name, PhaseField& dst) {
    const fs::path p = fs::path(dir) / (name + ".csv");
    if (fs::exists(p)) {
      dst = read_phase_field_csv(p.string(), grid);
      return true;
    }
    return false;
  };
  SelfEnergySet set = SelfEnergySet::zeros(grid);
  load_if_present("re_sigma_r", set.re_sigma_r);
  load_if_present("gamma_bar", set.gamma_bar);
  load_if_present("sigma_less", set.sigma_less);
  const bool have_a_bar = load_if_present("a_bar", set.a_bar);
  load_if_present("re_s0_r", set.re_s0_r);
  const bool have_im_s0 = load_if_present("im_s0_r", set.im_s0_r);
  static const char* axes[3] = {"x", "y", "z"};
  for (int c = 0; c < 3; ++c) {
    load_if_present(std::string("gamma_vec_") + axes[c], set.gamma_vec[c]);
    load_if_present(std::string("re_xi_r_") + axes[c], set.re_xi_r[c]);
    load_if_present(std::string("xi_less_") + axes[c], set.xi_less[c]);
    load_if_present(std::string("a_vec_") + axes[c], set.a_vec[c]);
    load_if_present(std::string("re_s_r_") + axes[c], set.re_s_r[c]);
  }
  if (have_im_s0 && !have_a_bar)
    set.a_bar = spectral_from_retarded(set.im_s0_r);
  try {
    validate_selfenergy(set, grid);
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("self-energy tables in ") + dir + ": " +
                      err.what());
  }
  return set;
}

}  // namespace smqt
