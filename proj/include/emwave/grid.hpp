#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace emwave {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<cplx, 3>;

inline Vec3 operator+(const Vec3 &a, const Vec3 &b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3 &a, const Vec3 &b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator*(double s, const Vec3 &a) {
  return {s * a[0], s * a[1], s * a[2]};
}
inline double dot(const Vec3 &a, const Vec3 &b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec3 cross(const Vec3 &a, const Vec3 &b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3 &a) { return std::sqrt(dot(a, a)); }

inline double norm(const CVec3 &a) {
  return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]));
}

inline cplx dot(const CVec3 &a, const CVec3 &b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline CVec3 cross(const CVec3 &a, const CVec3 &b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

/// Uniform Cartesian spacetime grid: identical spacing h on all three space
/// axes, nt frames dt apart. extent = (n-1)*h per axis by construction.
struct SpacetimeGrid {
  Vec3 origin{0, 0, 0};
  std::array<std::size_t, 3> n{3, 3, 3};
  double h = 1.0;
  double dt = 1.0;
  std::size_t nt = 1;
  double t0 = 0.0;

  SpacetimeGrid() = default;
  SpacetimeGrid(Vec3 origin_, std::array<std::size_t, 3> n_, double h_,
                double dt_, std::size_t nt_, double t0_ = 0.0)
      : origin(origin_), n(n_), h(h_), dt(dt_), nt(nt_), t0(t0_) {
    if (!(h > 0.0) || !(dt > 0.0))
      throw std::invalid_argument("SpacetimeGrid: h and dt must be positive");
    if (n[0] < 3 || n[1] < 3 || n[2] < 3)
      throw std::invalid_argument("SpacetimeGrid: need n >= 3 per axis");
    if (nt < 1)
      throw std::invalid_argument("SpacetimeGrid: nt >= 1");
  }

  Vec3 extent() const {
    return {double(n[0] - 1) * h, double(n[1] - 1) * h, double(n[2] - 1) * h};
  }
  std::size_t n_space() const { return n[0] * n[1] * n[2]; }
  std::size_t size() const { return nt * n_space(); }

  Vec3 point(std::size_t i, std::size_t j, std::size_t k) const {
    return {origin[0] + double(i) * h, origin[1] + double(j) * h,
            origin[2] + double(k) * h};
  }
  double time(std::size_t it) const { return t0 + double(it) * dt; }

  std::size_t index(std::size_t it, std::size_t i, std::size_t j,
                    std::size_t k) const {
    return ((it * n[0] + i) * n[1] + j) * n[2] + k;
  }

  bool congruent(const SpacetimeGrid &o) const {
    return n == o.n && nt == o.nt && origin == o.origin && h == o.h &&
           dt == o.dt && t0 == o.t0;
  }
};

namespace detail {
inline void require_congruent(const SpacetimeGrid &a, const SpacetimeGrid &b,
                              const char *who) {
  if (!a.congruent(b))
    throw std::invalid_argument(std::string(who) + ": grids are not congruent");
}
} // namespace detail

/// Complex scalar samples indexed (t, x, y, z). Immutable by convention after
/// construction; operations return fresh fields.
struct ScalarField {
  SpacetimeGrid grid;
  std::vector<cplx> values;

  ScalarField() = default;
  explicit ScalarField(const SpacetimeGrid &g) : grid(g), values(g.size()) {}

  cplx &at(std::size_t it, std::size_t i, std::size_t j, std::size_t k) {
    return values[grid.index(it, i, j, k)];
  }
  const cplx &at(std::size_t it, std::size_t i, std::size_t j,
                 std::size_t k) const {
    return values[grid.index(it, i, j, k)];
  }

  double max_abs() const {
    double m = 0;
    for (const auto &v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double max_imag() const {
    double m = 0;
    for (const auto &v : values) m = std::max(m, std::abs(v.imag()));
    return m;
  }
};

/// Complex 3-vector samples, one component array per axis, shapes congruent
/// with the ScalarField rule.
struct VectorField3 {
  SpacetimeGrid grid;
  std::array<std::vector<cplx>, 3> comp;

  VectorField3() = default;
  explicit VectorField3(const SpacetimeGrid &g) : grid(g) {
    for (auto &c : comp) c.assign(g.size(), cplx{});
  }

  CVec3 at(std::size_t it, std::size_t i, std::size_t j,
           std::size_t k) const {
    const std::size_t idx = grid.index(it, i, j, k);
    return {comp[0][idx], comp[1][idx], comp[2][idx]};
  }
  void set(std::size_t it, std::size_t i, std::size_t j, std::size_t k,
           const CVec3 &v) {
    const std::size_t idx = grid.index(it, i, j, k);
    comp[0][idx] = v[0];
    comp[1][idx] = v[1];
    comp[2][idx] = v[2];
  }

  double max_abs() const {
    double m = 0;
    for (const auto &c : comp)
      for (const auto &v : c) m = std::max(m, std::abs(v));
    return m;
  }
  double max_imag() const {
    double m = 0;
    for (const auto &c : comp)
      for (const auto &v : c) m = std::max(m, std::abs(v.imag()));
    return m;
  }
};

/// True when the field is real up to `tol` in max-norm of the imaginary part.
inline bool is_real(const ScalarField &f, double tol = 1e-10) {
  return f.max_imag() <= tol;
}
inline bool is_real(const VectorField3 &f, double tol = 1e-10) {
  return f.max_imag() <= tol;
}

inline ScalarField
sample_scalar(const SpacetimeGrid &grid,
              const std::function<cplx(double, const Vec3 &)> &f) {
  ScalarField out(grid);
  for (std::size_t it = 0; it < grid.nt; ++it)
    for (std::size_t i = 0; i < grid.n[0]; ++i)
      for (std::size_t j = 0; j < grid.n[1]; ++j)
        for (std::size_t k = 0; k < grid.n[2]; ++k) {
          const cplx v = f(grid.time(it), grid.point(i, j, k));
          if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::domain_error(
                "sample_scalar: non-finite sample at (t,i,j,k)=(" +
                std::to_string(it) + "," + std::to_string(i) + "," +
                std::to_string(j) + "," + std::to_string(k) + ")");
          out.at(it, i, j, k) = v;
        }
  return out;
}

inline VectorField3
sample_vector(const SpacetimeGrid &grid,
              const std::function<CVec3(double, const Vec3 &)> &f) {
  VectorField3 out(grid);
  for (std::size_t it = 0; it < grid.nt; ++it)
    for (std::size_t i = 0; i < grid.n[0]; ++i)
      for (std::size_t j = 0; j < grid.n[1]; ++j)
        for (std::size_t k = 0; k < grid.n[2]; ++k) {
          const CVec3 v = f(grid.time(it), grid.point(i, j, k));
          for (int a = 0; a < 3; ++a)
            if (!std::isfinite(v[a].real()) || !std::isfinite(v[a].imag()))
              throw std::domain_error(
                  "sample_vector: non-finite sample, component " +
                  std::to_string(a) + " at (t,i,j,k)=(" + std::to_string(it) +
                  "," + std::to_string(i) + "," + std::to_string(j) + "," +
                  std::to_string(k) + ")");
          out.set(it, i, j, k, v);
        }
  return out;
}

} // namespace emwave
