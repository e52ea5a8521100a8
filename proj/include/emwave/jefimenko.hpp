#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "emwave/constants.hpp"
#include "emwave/fields.hpp"
#include "emwave/grid.hpp"

namespace emwave {

/// Recorded (rho, J) history on a source grid, with precomputed time
/// derivatives for the Jefimenko integrands.
struct SourceHistory {
  ScalarField rho;
  VectorField3 J;
  ScalarField rho_dot;
  VectorField3 J_dot;
  double support_radius = 0; // from the grid centre; sources beyond are zero
  // per spatial cell: 1 if any recorded frame carries a nonzero value; cells
  // that are zero for all time contribute nothing and are skipped exactly
  std::vector<unsigned char> active_cell;

  SourceHistory(ScalarField rho_, VectorField3 J_, double support_radius_,
                double continuity_tol = 1e-2, double decay_tol = 1e-6)
      : rho(std::move(rho_)),
        J(std::move(J_)),
        rho_dot(rho.grid),
        J_dot(J.grid),
        support_radius(support_radius_) {
    detail::require_congruent(rho.grid, J.grid, "SourceHistory");
    if (rho.grid.nt < 3)
      throw std::invalid_argument("SourceHistory: nt >= 3 required");
    if (!(support_radius > 0))
      throw std::invalid_argument("SourceHistory: support_radius must be > 0");
    rho_dot = dt(rho);
    J_dot = dt(J);

    // standing hypotheses: continuity, and decay at the support boundary
    const ScalarField divJ = div(J);
    double cont = 0, scale = 0;
    for (std::size_t s = 0; s < rho.values.size(); ++s) {
      cont = std::max(cont, std::abs(rho_dot.values[s] + divJ.values[s]));
      scale = std::max(scale, std::abs(rho_dot.values[s]));
    }
    if (cont > continuity_tol * std::max(scale, 1e-300) && cont > continuity_tol)
      throw std::invalid_argument(
          "SourceHistory: continuity residual " + std::to_string(cont) +
          " exceeds tolerance");

    const Vec3 centre = grid_centre();
    double peak = 0, edge = 0;
    const auto &g = rho.grid;
    for (std::size_t it = 0; it < g.nt; ++it)
      for (std::size_t i = 0; i < g.n[0]; ++i)
        for (std::size_t j = 0; j < g.n[1]; ++j)
          for (std::size_t k = 0; k < g.n[2]; ++k) {
            const std::size_t s = g.index(it, i, j, k);
            double a = std::abs(rho.values[s]);
            for (int c = 0; c < 3; ++c) a = std::max(a, std::abs(J.comp[c][s]));
            peak = std::max(peak, a);
            Vec3 d = g.point(i, j, k);
            for (int c = 0; c < 3; ++c) d[c] -= centre[c];
            if (norm(d) >= support_radius) edge = std::max(edge, a);
          }
    if (peak > 0 && edge > decay_tol * peak)
      throw std::invalid_argument(
          "SourceHistory: |rho|,|J| have not decayed at the support boundary");

    const std::size_t nsp = g.n_space();
    active_cell.assign(nsp, 0);
    for (std::size_t it = 0; it < g.nt; ++it)
      for (std::size_t s = 0; s < nsp; ++s) {
        const std::size_t idx = it * nsp + s;
        if (rho.values[idx] != cplx{} || rho_dot.values[idx] != cplx{} ||
            J.comp[0][idx] != cplx{} || J.comp[1][idx] != cplx{} ||
            J.comp[2][idx] != cplx{} || J_dot.comp[0][idx] != cplx{} ||
            J_dot.comp[1][idx] != cplx{} || J_dot.comp[2][idx] != cplx{})
          active_cell[s] = 1;
      }
  }

  Vec3 grid_centre() const {
    const auto &g = rho.grid;
    Vec3 c;
    for (int a = 0; a < 3; ++a)
      c[a] = g.origin[a] + 0.5 * g.h * static_cast<double>(g.n[a] - 1);
    return c;
  }

  double t_min() const { return rho.grid.t0; }
  double t_max() const {
    return rho.grid.t0 + rho.grid.dt * static_cast<double>(rho.grid.nt - 1);
  }
};

namespace detail {

// linear interpolation of a recorded history in retarded time
struct RetardedSample {
  std::size_t frame0;
  std::size_t frame1;
  double w1; // weight of frame1
};

inline RetardedSample locate_retarded(const SpacetimeGrid &g, double tr) {
  const double s = (tr - g.t0) / g.dt;
  if (s < -1e-9)
    throw std::domain_error(
        "jefimenko: retarded time " + std::to_string(tr) +
        " precedes the recorded source history (coverage error)");
  double sc = std::max(s, 0.0);
  std::size_t f0 = static_cast<std::size_t>(sc);
  if (f0 >= g.nt - 1) {
    if (sc > static_cast<double>(g.nt - 1) + 1e-9)
      throw std::domain_error(
          "jefimenko: retarded time beyond the recorded source history");
    f0 = g.nt - 2;
    sc = static_cast<double>(g.nt - 1);
  }
  return {f0, f0 + 1, sc - static_cast<double>(f0)};
}

// Analytic spherical averages over a ball of volume h^3 (radius R): the
// direction-weighted integrands vanish by symmetry, so the self cell only
// contributes through the isotropic 1/r and 1/r^2 weights, whose ball
// averages are 3/(2R) and 3/R^2.
struct SelfCell {
  double inv_r;  // <1/r>
  double inv_r2; // <1/r^2>
};

inline SelfCell self_cell(double h) {
  const double R =
      std::cbrt(3.0 * h * h * h / (4.0 * std::numbers::pi));
  return {1.5 / R, 3.0 / (R * R)};
}

} // namespace detail

/// Retarded potentials V and A by midpoint-rule quadrature over the source
/// cells with linear interpolation in retarded time.
inline std::pair<ScalarField, VectorField3>
retarded_potentials(const SourceHistory &src, const SpacetimeGrid &eval_grid,
                    const PhysicalConstants &consts) {
  const auto &sg = src.rho.grid;
  const double cellV = sg.h * sg.h * sg.h;
  const double kV = 1.0 / (4.0 * std::numbers::pi * consts.epsilon0);
  const double kA = consts.mu0 / (4.0 * std::numbers::pi);
  const auto self = detail::self_cell(sg.h);
  const std::size_t nsp = sg.n[0] * sg.n[1] * sg.n[2];

  ScalarField V(eval_grid);
  VectorField3 A(eval_grid);
  const auto &eg = eval_grid;
  std::exception_ptr err; // exceptions must not escape the parallel region
#pragma omp parallel for collapse(2) schedule(dynamic)
  for (std::size_t it = 0; it < eg.nt; ++it)
    for (std::size_t ei = 0; ei < eg.n[0]; ++ei)
      for (std::size_t ej = 0; ej < eg.n[1]; ++ej)
        for (std::size_t ek = 0; ek < eg.n[2]; ++ek) try {
          if (err) continue;
          const Vec3 x = eg.point(ei, ej, ek);
          const double t = eg.time(it);
          cplx v = 0;
          CVec3 a{};
          for (std::size_t si = 0; si < sg.n[0]; ++si)
            for (std::size_t sj = 0; sj < sg.n[1]; ++sj)
              for (std::size_t sk = 0; sk < sg.n[2]; ++sk) {
                const std::size_t cell = (si * sg.n[1] + sj) * sg.n[2] + sk;
                if (!src.active_cell[cell]) continue;
                const Vec3 xs = sg.point(si, sj, sk);
                const Vec3 d{x[0] - xs[0], x[1] - xs[1], x[2] - xs[2]};
                const double r = norm(d);
                const double inv_r =
                    r < 0.5 * sg.h ? self.inv_r : 1.0 / r;
                const auto rs =
                    detail::locate_retarded(sg, t - r / consts.c);
                const std::size_t sidx = cell;
                const std::size_t i0 = rs.frame0 * nsp + sidx;
                const std::size_t i1 = rs.frame1 * nsp + sidx;
                const double w0 = 1.0 - rs.w1;
                v += inv_r * (w0 * src.rho.values[i0] +
                              rs.w1 * src.rho.values[i1]);
                for (int c = 0; c < 3; ++c)
                  a[c] += inv_r * (w0 * src.J.comp[c][i0] +
                                   rs.w1 * src.J.comp[c][i1]);
              }
          const std::size_t out = eg.index(it, ei, ej, ek);
          V.values[out] = kV * cellV * v;
          for (int c = 0; c < 3; ++c) A.comp[c][out] = kA * cellV * a[c];
        } catch (...) {
#pragma omp critical
          if (!err) err = std::current_exception();
        }
  if (err) std::rethrow_exception(err);
  return {std::move(V), std::move(A)};
}

namespace detail {

// shared driver for the two Jefimenko integrals; Mode selects the integrand
enum class JefimenkoField { E, B };

inline VectorField3 jefimenko_sum(const SourceHistory &src,
                                  const SpacetimeGrid &eval_grid,
                                  const PhysicalConstants &consts,
                                  JefimenkoField which) {
  const auto &sg = src.rho.grid;
  const double cellV = sg.h * sg.h * sg.h;
  const double c = consts.c;
  const double pref = which == JefimenkoField::E
                          ? 1.0 / (4.0 * std::numbers::pi * consts.epsilon0)
                          : consts.mu0 / (4.0 * std::numbers::pi);
  const auto self = self_cell(sg.h);
  const std::size_t nsp = sg.n[0] * sg.n[1] * sg.n[2];

  VectorField3 out(eval_grid);
  const auto &eg = eval_grid;
  std::exception_ptr err; // exceptions must not escape the parallel region
#pragma omp parallel for collapse(2) schedule(dynamic)
  for (std::size_t it = 0; it < eg.nt; ++it)
    for (std::size_t ei = 0; ei < eg.n[0]; ++ei)
      for (std::size_t ej = 0; ej < eg.n[1]; ++ej)
        for (std::size_t ek = 0; ek < eg.n[2]; ++ek) try {
          if (err) continue;
          const Vec3 x = eg.point(ei, ej, ek);
          const double t = eg.time(it);
          CVec3 acc{};
          for (std::size_t si = 0; si < sg.n[0]; ++si)
            for (std::size_t sj = 0; sj < sg.n[1]; ++sj)
              for (std::size_t sk = 0; sk < sg.n[2]; ++sk) {
                const std::size_t sidx = (si * sg.n[1] + sj) * sg.n[2] + sk;
                if (!src.active_cell[sidx]) continue;
                const Vec3 xs = sg.point(si, sj, sk);
                const Vec3 d{x[0] - xs[0], x[1] - xs[1], x[2] - xs[2]};
                const double r = norm(d);
                const bool self_cell_hit = r < 0.5 * sg.h;
                const auto rs = locate_retarded(sg, t - r / c);
                const std::size_t i0 = rs.frame0 * nsp + sidx;
                const std::size_t i1 = rs.frame1 * nsp + sidx;
                const double w0 = 1.0 - rs.w1;

                if (which == JefimenkoField::E) {
                  // direction-weighted terms average to zero over the self
                  // cell; only the isotropic J_dot/(c^2 r) term survives
                  const cplx jd[3] = {
                      w0 * src.J_dot.comp[0][i0] + rs.w1 * src.J_dot.comp[0][i1],
                      w0 * src.J_dot.comp[1][i0] + rs.w1 * src.J_dot.comp[1][i1],
                      w0 * src.J_dot.comp[2][i0] + rs.w1 * src.J_dot.comp[2][i1]};
                  const double inv_r = self_cell_hit ? self.inv_r : 1.0 / r;
                  if (!self_cell_hit) {
                    const Vec3 rhat{d[0] / r, d[1] / r, d[2] / r};
                    const cplx rho =
                        w0 * src.rho.values[i0] + rs.w1 * src.rho.values[i1];
                    const cplx rhod = w0 * src.rho_dot.values[i0] +
                                      rs.w1 * src.rho_dot.values[i1];
                    const cplx radial = rho / (r * r) + rhod / (c * r);
                    for (int a = 0; a < 3; ++a) acc[a] += radial * rhat[a];
                  }
                  for (int a = 0; a < 3; ++a)
                    acc[a] -= jd[a] * inv_r / (c * c);
                } else {
                  // both B terms carry rhat via the cross product, so the
                  // self cell averages to zero entirely
                  if (self_cell_hit) continue;
                  const Vec3 rhat{d[0] / r, d[1] / r, d[2] / r};
                  CVec3 w{};
                  for (int a = 0; a < 3; ++a)
                    w[a] = (w0 * src.J.comp[a][i0] +
                            rs.w1 * src.J.comp[a][i1]) /
                               (r * r) +
                           (w0 * src.J_dot.comp[a][i0] +
                            rs.w1 * src.J_dot.comp[a][i1]) /
                               (c * r);
                  const CVec3 rc{cplx(rhat[0]), cplx(rhat[1]), cplx(rhat[2])};
                  const CVec3 cr = cross(w, rc);
                  for (int a = 0; a < 3; ++a) acc[a] += cr[a];
                }
              }
          const std::size_t oidx = eg.index(it, ei, ej, ek);
          for (int a = 0; a < 3; ++a) out.comp[a][oidx] = pref * cellV * acc[a];
        } catch (...) {
#pragma omp critical
          if (!err) err = std::current_exception();
        }
  if (err) std::rethrow_exception(err);
  return out;
}

} // namespace detail

inline VectorField3 jefimenko_E(const SourceHistory &src,
                                const SpacetimeGrid &eval_grid,
                                const PhysicalConstants &consts) {
  return detail::jefimenko_sum(src, eval_grid, consts,
                               detail::JefimenkoField::E);
}

inline VectorField3 jefimenko_B(const SourceHistory &src,
                                const SpacetimeGrid &eval_grid,
                                const PhysicalConstants &consts) {
  return detail::jefimenko_sum(src, eval_grid, consts,
                               detail::JefimenkoField::B);
}

/// Max-norm of the Lorentz-gauge residual div A + mu0 eps0 dV/dt on the
/// interior of the evaluation grid.
inline double lorentz_gauge_residual(const ScalarField &V,
                                     const VectorField3 &A,
                                     const PhysicalConstants &consts) {
  detail::require_congruent(V.grid, A.grid, "lorentz_gauge_residual");
  const ScalarField divA = div(A);
  const ScalarField dtV = dt(V);
  const double me = consts.mu0 * consts.epsilon0;
  return detail::interior_max(
      V.grid, [&](std::size_t it, std::size_t i, std::size_t j,
                  std::size_t k) {
        const std::size_t s = V.grid.index(it, i, j, k);
        return std::abs(divA.values[s] + me * dtV.values[s]);
      });
}

} // namespace emwave
