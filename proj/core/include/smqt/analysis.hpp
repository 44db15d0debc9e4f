#pragma once

// Small deterministic fit and profile-statistics helpers used by the limit
// suite and the tests.

#include <vector>

#include "smqt/grid.hpp"

namespace smqt {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Least-squares line through (x, y); requires >= 2 points.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// In-place 2*pi unwrap; neighboring samples must differ by < pi.
void unwrap_phase(std::vector<double>& phase);

// Angular frequency of a transverse pair (mx, my) from the slope of the
// unwrapped phase atan2(my, mx) against t. Returns a signed rate.
double fit_precession_frequency(const std::vector<double>& t,
                                const std::vector<double>& mx,
                                const std::vector<double>& my);

// Rate r > 0 of y(t) ~ y_inf + (y0 - y_inf) exp(-r t), from a log-linear fit
// of |y - y_inf|; samples with |y - y_inf| <= floor are skipped.
double fit_decay_rate(const std::vector<double>& t, const std::vector<double>& y,
                      double y_inf, double floor = 0.0);

struct ProfileStats {
  double total = 0.0;     // sum f dq
  double mean = 0.0;      // charge-weighted centroid
  double variance = 0.0;  // centered second moment
};

ProfileStats profile_stats(const std::vector<double>& f, const ChannelGrid& grid);

}  // namespace smqt
