#include "smqt/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smqt {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need >= 2 matched samples");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    sxx += dx * dx;
    sxy += dx * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissa");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

void unwrap_phase(std::vector<double>& phase) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double offset = 0.0;
  for (std::size_t i = 1; i < phase.size(); ++i) {
    double jump = phase[i] + offset - phase[i - 1];
    while (jump > std::numbers::pi) {
      offset -= two_pi;
      jump -= two_pi;
    }
    while (jump < -std::numbers::pi) {
      offset += two_pi;
      jump += two_pi;
    }
    phase[i] += offset;
  }
}

double fit_precession_frequency(const std::vector<double>& t,
                                const std::vector<double>& mx,
                                const std::vector<double>& my) {
  if (t.size() != mx.size() || t.size() != my.size())
    throw std::invalid_argument("fit_precession_frequency: size mismatch");
  std::vector<double> phase(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) phase[i] = std::atan2(my[i], mx[i]);
  unwrap_phase(phase);
  return fit_line(t, phase).slope;
}

double fit_decay_rate(const std::vector<double>& t, const std::vector<double>& y,
                      double y_inf, double floor) {
  if (t.size() != y.size())
    throw std::invalid_argument("fit_decay_rate: size mismatch");
  std::vector<double> ts, logs;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double dev = std::abs(y[i] - y_inf);
    if (dev <= floor) continue;
    ts.push_back(t[i]);
    logs.push_back(std::log(dev));
  }
  if (ts.size() < 2)
    throw std::invalid_argument("fit_decay_rate: too few samples above floor");
  return -fit_line(ts, logs).slope;
}

ProfileStats profile_stats(const std::vector<double>& f,
                           const ChannelGrid& grid) {
  if (static_cast<int>(f.size()) != grid.n_q)
    throw std::invalid_argument("profile_stats: size != n_q");
  ProfileStats st;
  double m1 = 0.0;
  for (int i = 0; i < grid.n_q; ++i) {
    st.total += f[i] * grid.dq;
    m1 += f[i] * grid.q_at(i) * grid.dq;
  }
  if (st.total != 0.0) {
    st.mean = m1 / st.total;
    double m2 = 0.0;
    for (int i = 0; i < grid.n_q; ++i) {
      const double d = grid.q_at(i) - st.mean;
      m2 += f[i] * d * d * grid.dq;
    }
    st.variance = m2 / st.total;
  }
  return st;
}

}  // namespace smqt
