#pragma once

// PhaseField: a real scalar field sampled on a PhaseSpaceGrid, stored
// row-major with the fast index along p_x: value(iq, ipy, ipx).
// Complex quantities are carried as explicit (re, im) field pairs.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "smqt/grid.hpp"

namespace smqt {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  bool operator==(const Vec3&) const = default;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

struct PhaseField {
  int n_q = 0, n_py = 1, n_px = 0;
  std::vector<double> v;

  PhaseField() = default;
  PhaseField(int nq, int npy, int npx)
      : n_q(nq), n_py(npy), n_px(npx),
        v(static_cast<std::size_t>(nq) * npy * npx, 0.0) {}

  static PhaseField zeros(const PhaseSpaceGrid& g) {
    return PhaseField(g.n_q, g.n_py(), g.n_px());
  }

  std::size_t index(int iq, int ipy, int ipx) const {
    return (static_cast<std::size_t>(iq) * n_py + ipy) * n_px + ipx;
  }
  double operator()(int iq, int ipy, int ipx) const { return v[index(iq, ipy, ipx)]; }
  double& operator()(int iq, int ipy, int ipx) { return v[index(iq, ipy, ipx)]; }

  std::size_t size() const { return v.size(); }
  bool same_shape(const PhaseField& o) const {
    return n_q == o.n_q && n_py == o.n_py && n_px == o.n_px;
  }
  bool conforms(const PhaseSpaceGrid& g) const {
    return n_q == g.n_q && n_py == g.n_py() && n_px == g.n_px();
  }

  void fill(double value) { v.assign(v.size(), value); }
};

using VectorField = std::array<PhaseField, 3>;

inline VectorField vector_zeros(const PhaseSpaceGrid& g) {
  return {PhaseField::zeros(g), PhaseField::zeros(g), PhaseField::zeros(g)};
}

inline void require_same_shape(const PhaseField& a, const PhaseField& b,
                               const char* where) {
  if (!a.same_shape(b))
    throw std::invalid_argument(std::string(where) + ": field shapes differ");
}

// dst += s * src, elementwise; the in-place accumulation everything that must
// be bitwise-additive (term groups, RK4 stage sums) is built from.
inline void add_scaled(PhaseField& dst, double s, const PhaseField& src) {
  require_same_shape(dst, src, "add_scaled");
  for (std::size_t i = 0; i < dst.v.size(); ++i) dst.v[i] += s * src.v[i];
}

}  // namespace smqt
