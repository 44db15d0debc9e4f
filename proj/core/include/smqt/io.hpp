#pragma once

// CSV input/output. All numeric formatting uses printf "%.*g" in the C locale
// with a configurable significant-digit count (default 17, which round-trips
// IEEE doubles exactly, making write/read a bitwise identity and repeated
// writes byte-identical).
//
// observables.csv  header exactly:
//   t,total_charge,mx_mean,my_mean,mz_mean,m_norm_mean,phi_mid
// snapshot CSV     header (2-D momentum adds p_y_index):
//   q_index,p_x_index[,p_y_index],s0,sx,sy,sz
// self-energy table CSV header:
//   p_x_index[,p_y_index],q_index,value
// with rows in any order; omitted nodes stay zero; indices out of range are
// errors.

#include <string>
#include <vector>

#include "smqt/selfenergy.hpp"
#include "smqt/state.hpp"

namespace smqt {

struct ObservableRow {
  double t = 0.0;
  double total_charge = 0.0;
  double mx_mean = 0.0;
  double my_mean = 0.0;
  double mz_mean = 0.0;
  double m_norm_mean = 0.0;
  double phi_mid = 0.0;
};

std::string observables_header();
std::string format_observable_row(const ObservableRow& row, int precision = 17);
void write_observables(const std::vector<ObservableRow>& rows,
                       const std::string& path, int precision = 17);

void write_snapshot(const SpinChargeState& state, const PhaseSpaceGrid& grid,
                    const std::string& path, int precision = 17);
SpinChargeState read_snapshot(const std::string& path,
                              const PhaseSpaceGrid& grid);

PhaseField read_phase_field_csv(const std::string& path,
                                const PhaseSpaceGrid& grid);

// Loads <dir>/<name>.csv for every self-energy member present (absent files
// stay zero): re_sigma_r, gamma_bar, sigma_less, a_bar, re_s0_r, im_s0_r,
// gamma_vec_{x,y,z}, re_xi_r_{x,y,z}, xi_less_{x,y,z}, a_vec_{x,y,z},
// re_s_r_{x,y,z}. When im_s0_r is given and a_bar is not, a_bar is derived as
// its spectral function. Validates the resulting set.
SelfEnergySet load_selfenergy_tables(const std::string& dir,
                                     const PhaseSpaceGrid& grid);

}  // namespace smqt
