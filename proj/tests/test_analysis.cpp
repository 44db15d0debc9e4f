#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "smqt/analysis.hpp"

using namespace smqt;

TEST_CASE("line fits are exact on linear data") {
  std::vector<double> x, y;
  for (int i = 0; i < 7; ++i) {
    x.push_back(0.5 * i - 1.0);
    y.push_back(2.0 * x.back() + 1.25);
  }
  const LineFit fit = fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(fit.intercept == doctest::Approx(1.25).epsilon(1e-14));

  CHECK_THROWS_AS(fit_line({1.0}, {2.0}), std::invalid_argument);
  CHECK_THROWS_AS(fit_line({1.0, 1.0, 1.0}, {1.0, 2.0, 3.0}),
                  std::invalid_argument);
}

TEST_CASE("phase unwrapping recovers a line that wraps many times") {
  const double omega = 4.0;
  std::vector<double> t, wrapped;
  for (int i = 0; i <= 100; ++i) {
    t.push_back(0.05 * i);  // 5 time units, > 3 full turns
    wrapped.push_back(std::atan2(std::sin(omega * t.back()),
                                 std::cos(omega * t.back())));
  }
  std::vector<double> phase = wrapped;
  unwrap_phase(phase);
  for (std::size_t i = 0; i < t.size(); ++i)
    CHECK(phase[i] == doctest::Approx(omega * t[i]).epsilon(1e-12));
  // neighboring unwrapped samples never jump by more than the true increment
  for (std::size_t i = 1; i < phase.size(); ++i)
    CHECK(std::abs(phase[i] - phase[i - 1]) < std::numbers::pi);
}

TEST_CASE("precession frequency fit is signed") {
  std::vector<double> t, mx, my;
  for (int i = 0; i <= 200; ++i) {
    t.push_back(0.02 * i);
    mx.push_back(0.7 * std::cos(3.0 * t.back()));
    my.push_back(0.7 * std::sin(3.0 * t.back()));
  }
  CHECK(fit_precession_frequency(t, mx, my) ==
        doctest::Approx(3.0).epsilon(1e-10));
  for (double& v : my) v = -v;  // reverse the sense of rotation
  CHECK(fit_precession_frequency(t, mx, my) ==
        doctest::Approx(-3.0).epsilon(1e-10));
}

TEST_CASE("decay-rate fit recovers the exponent and honors the floor") {
  std::vector<double> t, y;
  for (int i = 0; i <= 50; ++i) {
    t.push_back(0.1 * i);
    y.push_back(0.4 + 1.5 * std::exp(-2.5 * t.back()));
  }
  CHECK(fit_decay_rate(t, y, 0.4) == doctest::Approx(2.5).epsilon(1e-10));

  // a floor above the tail deviations drops those samples but keeps the rate
  CHECK(fit_decay_rate(t, y, 0.4, 1.5 * std::exp(-2.5 * 3.0)) ==
        doctest::Approx(2.5).epsilon(1e-10));

  // the sign of the deviation does not matter
  for (double& v : y) v = 0.8 - (v - 0.4);
  CHECK(fit_decay_rate(t, y, 0.8) == doctest::Approx(2.5).epsilon(1e-10));

  // everything below the floor leaves nothing to fit
  CHECK_THROWS_AS(fit_decay_rate(t, y, 0.8, 10.0), std::invalid_argument);
}

TEST_CASE("profile statistics weigh position by the local density") {
  ChannelGrid g{64, 0.0, 32.0, 0.5, QBoundary::periodic};
  std::vector<double> f(64);
  for (int i = 0; i < 64; ++i) {
    const double d = g.q_at(i) - 16.0;
    f[i] = 2.0 * std::exp(-d * d / (2.0 * 2.25));  // sigma = 1.5
  }
  const ProfileStats s = profile_stats(f, g);
  CHECK(s.mean == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(s.variance == doctest::Approx(2.25).epsilon(1e-3));
  CHECK(s.total == doctest::Approx(2.0 * 1.5 * std::sqrt(2.0 * std::numbers::pi))
                       .epsilon(1e-6));

  const ProfileStats zero = profile_stats(std::vector<double>(64, 0.0), g);
  CHECK(zero.total == 0.0);
  CHECK(zero.mean == 0.0);
  CHECK(zero.variance == 0.0);
}
