#pragma once

#include <algorithm>
#include <stdexcept>

#include "emwave/constants.hpp"
#include "emwave/grid.hpp"

namespace emwave {

namespace detail {

// second-order first derivative along one axis: central on the interior,
// one-sided three-point at the ends
template <typename Get>
inline cplx d1(const Get &get, std::size_t i, std::size_t n, double h) {
  if (i == 0)
    return (-3.0 * get(0) + 4.0 * get(1) - get(2)) / (2.0 * h);
  if (i == n - 1)
    return (3.0 * get(n - 1) - 4.0 * get(n - 2) + get(n - 3)) / (2.0 * h);
  return (get(i + 1) - get(i - 1)) / (2.0 * h);
}

// second-order second derivative; four-point one-sided stencil at the ends
template <typename Get>
inline cplx d2(const Get &get, std::size_t i, std::size_t n, double h) {
  if (i == 0)
    return (2.0 * get(0) - 5.0 * get(1) + 4.0 * get(2) - get(3)) / (h * h);
  if (i == n - 1)
    return (2.0 * get(n - 1) - 5.0 * get(n - 2) + 4.0 * get(n - 3) -
            get(n - 4)) /
           (h * h);
  return (get(i + 1) - 2.0 * get(i) + get(i - 1)) / (h * h);
}

template <typename F>
inline void for_each_node(const SpacetimeGrid &g, F &&f) {
  for (std::size_t it = 0; it < g.nt; ++it)
    for (std::size_t i = 0; i < g.n[0]; ++i)
      for (std::size_t j = 0; j < g.n[1]; ++j)
        for (std::size_t k = 0; k < g.n[2]; ++k) f(it, i, j, k);
}

inline cplx dspatial(const std::vector<cplx> &v, const SpacetimeGrid &g,
                     int axis, std::size_t it, std::size_t i, std::size_t j,
                     std::size_t k) {
  const std::size_t idx[3] = {i, j, k};
  auto get = [&](std::size_t q) {
    std::size_t a = i, b = j, c = k;
    (axis == 0 ? a : axis == 1 ? b : c) = q;
    return v[g.index(it, a, b, c)];
  };
  return d1(get, idx[axis], g.n[axis], g.h);
}

inline cplx dspatial2(const std::vector<cplx> &v, const SpacetimeGrid &g,
                      int axis, std::size_t it, std::size_t i, std::size_t j,
                      std::size_t k) {
  const std::size_t idx[3] = {i, j, k};
  auto get = [&](std::size_t q) {
    std::size_t a = i, b = j, c = k;
    (axis == 0 ? a : axis == 1 ? b : c) = q;
    return v[g.index(it, a, b, c)];
  };
  return d2(get, idx[axis], g.n[axis], g.h);
}

inline cplx dtime(const std::vector<cplx> &v, const SpacetimeGrid &g,
                  std::size_t it, std::size_t i, std::size_t j,
                  std::size_t k) {
  auto get = [&](std::size_t q) { return v[g.index(q, i, j, k)]; };
  return d1(get, it, g.nt, g.dt);
}

inline cplx dtime2(const std::vector<cplx> &v, const SpacetimeGrid &g,
                   std::size_t it, std::size_t i, std::size_t j,
                   std::size_t k) {
  auto get = [&](std::size_t q) { return v[g.index(q, i, j, k)]; };
  return d2(get, it, g.nt, g.dt);
}

} // namespace detail

inline VectorField3 grad(const ScalarField &f) {
  VectorField3 out(f.grid);
  detail::for_each_node(f.grid, [&](std::size_t it, std::size_t i,
                                    std::size_t j, std::size_t k) {
    const std::size_t idx = f.grid.index(it, i, j, k);
    for (int a = 0; a < 3; ++a)
      out.comp[a][idx] = detail::dspatial(f.values, f.grid, a, it, i, j, k);
  });
  return out;
}

inline ScalarField div(const VectorField3 &F) {
  ScalarField out(F.grid);
  detail::for_each_node(F.grid, [&](std::size_t it, std::size_t i,
                                    std::size_t j, std::size_t k) {
    cplx s = 0;
    for (int a = 0; a < 3; ++a)
      s += detail::dspatial(F.comp[a], F.grid, a, it, i, j, k);
    out.values[F.grid.index(it, i, j, k)] = s;
  });
  return out;
}

inline VectorField3 curl(const VectorField3 &F) {
  VectorField3 out(F.grid);
  const auto &g = F.grid;
  detail::for_each_node(g, [&](std::size_t it, std::size_t i, std::size_t j,
                               std::size_t k) {
    const std::size_t idx = g.index(it, i, j, k);
    auto d = [&](int comp, int axis) {
      return detail::dspatial(F.comp[comp], g, axis, it, i, j, k);
    };
    out.comp[0][idx] = d(2, 1) - d(1, 2);
    out.comp[1][idx] = d(0, 2) - d(2, 0);
    out.comp[2][idx] = d(1, 0) - d(0, 1);
  });
  return out;
}

inline ScalarField laplacian(const ScalarField &f) {
  ScalarField out(f.grid);
  detail::for_each_node(f.grid, [&](std::size_t it, std::size_t i,
                                    std::size_t j, std::size_t k) {
    cplx s = 0;
    for (int a = 0; a < 3; ++a)
      s += detail::dspatial2(f.values, f.grid, a, it, i, j, k);
    out.values[f.grid.index(it, i, j, k)] = s;
  });
  return out;
}

inline VectorField3 laplacian(const VectorField3 &F) {
  VectorField3 out(F.grid);
  detail::for_each_node(F.grid, [&](std::size_t it, std::size_t i,
                                    std::size_t j, std::size_t k) {
    const std::size_t idx = F.grid.index(it, i, j, k);
    for (int a = 0; a < 3; ++a) {
      cplx s = 0;
      for (int ax = 0; ax < 3; ++ax)
        s += detail::dspatial2(F.comp[a], F.grid, ax, it, i, j, k);
      out.comp[a][idx] = s;
    }
  });
  return out;
}

inline ScalarField dt(const ScalarField &f) {
  if (f.grid.nt < 3) throw std::invalid_argument("dt: nt >= 3 required");
  ScalarField out(f.grid);
  detail::for_each_node(f.grid, [&](std::size_t it, std::size_t i,
                                    std::size_t j, std::size_t k) {
    out.values[f.grid.index(it, i, j, k)] =
        detail::dtime(f.values, f.grid, it, i, j, k);
  });
  return out;
}

inline VectorField3 dt(const VectorField3 &F) {
  if (F.grid.nt < 3) throw std::invalid_argument("dt: nt >= 3 required");
  VectorField3 out(F.grid);
  detail::for_each_node(F.grid, [&](std::size_t it, std::size_t i,
                                    std::size_t j, std::size_t k) {
    const std::size_t idx = F.grid.index(it, i, j, k);
    for (int a = 0; a < 3; ++a)
      out.comp[a][idx] = detail::dtime(F.comp[a], F.grid, it, i, j, k);
  });
  return out;
}

/// Wave operator lap - mu0 eps0 d^2/dt^2 with central stencils.
inline ScalarField dalembertian(const ScalarField &f,
                                const PhysicalConstants &consts) {
  if (f.grid.nt < 3)
    throw std::invalid_argument("dalembertian: nt >= 3 required");
  ScalarField out = laplacian(f);
  const double me = consts.mu0 * consts.epsilon0;
  detail::for_each_node(f.grid, [&](std::size_t it, std::size_t i,
                                    std::size_t j, std::size_t k) {
    out.values[f.grid.index(it, i, j, k)] -=
        me * detail::dtime2(f.values, f.grid, it, i, j, k);
  });
  return out;
}

inline VectorField3 dalembertian(const VectorField3 &F,
                                 const PhysicalConstants &consts) {
  if (F.grid.nt < 3)
    throw std::invalid_argument("dalembertian: nt >= 3 required");
  VectorField3 out = laplacian(F);
  const double me = consts.mu0 * consts.epsilon0;
  detail::for_each_node(F.grid, [&](std::size_t it, std::size_t i,
                                    std::size_t j, std::size_t k) {
    const std::size_t idx = F.grid.index(it, i, j, k);
    for (int a = 0; a < 3; ++a)
      out.comp[a][idx] -= me * detail::dtime2(F.comp[a], F.grid, it, i, j, k);
  });
  return out;
}

namespace detail {
// max-norm over interior spacetime nodes only; one-sided boundary stencils
// carry worse constants and would pollute convergence fits
template <typename F>
inline double interior_max(const SpacetimeGrid &g, F &&value) {
  if (g.nt < 3) throw std::invalid_argument("interior_max: nt >= 3 required");
  double m = 0;
  for (std::size_t it = 1; it + 1 < g.nt; ++it)
    for (std::size_t i = 1; i + 1 < g.n[0]; ++i)
      for (std::size_t j = 1; j + 1 < g.n[1]; ++j)
        for (std::size_t k = 1; k + 1 < g.n[2]; ++k)
          m = std::max(m, value(it, i, j, k));
  return m;
}
} // namespace detail

/// Max-norm residuals of the four Maxwell equations with sources, on the
/// interior spacetime nodes.
struct MaxwellResidual {
  double gauss_E = 0; // div E - rho/eps0
  double gauss_B = 0; // div B
  double faraday = 0; // curl E + dB/dt
  double ampere = 0;  // curl B - mu0 J - mu0 eps0 dE/dt
};

inline MaxwellResidual maxwell_residual(const VectorField3 &E,
                                        const VectorField3 &B,
                                        const ScalarField &rho,
                                        const VectorField3 &J,
                                        const PhysicalConstants &consts) {
  detail::require_congruent(E.grid, B.grid, "maxwell_residual");
  detail::require_congruent(E.grid, rho.grid, "maxwell_residual");
  detail::require_congruent(E.grid, J.grid, "maxwell_residual");
  const auto &g = E.grid;
  const ScalarField divE = div(E), divB = div(B);
  const VectorField3 curlE = curl(E), curlB = curl(B);
  const VectorField3 dtE = dt(E), dtB = dt(B);

  MaxwellResidual r;
  r.gauss_E = detail::interior_max(g, [&](std::size_t it, std::size_t i,
                                          std::size_t j, std::size_t k) {
    const std::size_t idx = g.index(it, i, j, k);
    return std::abs(divE.values[idx] - rho.values[idx] / consts.epsilon0);
  });
  r.gauss_B = detail::interior_max(g, [&](std::size_t it, std::size_t i,
                                          std::size_t j, std::size_t k) {
    return std::abs(divB.values[g.index(it, i, j, k)]);
  });
  r.faraday = detail::interior_max(g, [&](std::size_t it, std::size_t i,
                                          std::size_t j, std::size_t k) {
    const std::size_t idx = g.index(it, i, j, k);
    double m = 0;
    for (int a = 0; a < 3; ++a)
      m = std::max(m, std::abs(curlE.comp[a][idx] + dtB.comp[a][idx]));
    return m;
  });
  r.ampere = detail::interior_max(g, [&](std::size_t it, std::size_t i,
                                         std::size_t j, std::size_t k) {
    const std::size_t idx = g.index(it, i, j, k);
    double m = 0;
    for (int a = 0; a < 3; ++a)
      m = std::max(m, std::abs(curlB.comp[a][idx] -
                               consts.mu0 * J.comp[a][idx] -
                               consts.mu0 * consts.epsilon0 *
                                   dtE.comp[a][idx]));
    return m;
  });
  return r;
}

/// Residuals of box^2 E = grad(rho)/eps0 + mu0 dJ/dt and
/// box^2 B = -mu0 curl J, for fields expected to solve Maxwell.
struct SourceDalembertianResidual {
  double residual_E = 0;
  double residual_B = 0;
};

inline SourceDalembertianResidual
source_dalembertian_identity(const VectorField3 &E, const VectorField3 &B,
                             const ScalarField &rho, const VectorField3 &J,
                             const PhysicalConstants &consts) {
  detail::require_congruent(E.grid, B.grid, "source_dalembertian_identity");
  detail::require_congruent(E.grid, rho.grid, "source_dalembertian_identity");
  detail::require_congruent(E.grid, J.grid, "source_dalembertian_identity");
  const auto &g = E.grid;
  const VectorField3 boxE = dalembertian(E, consts);
  const VectorField3 boxB = dalembertian(B, consts);
  const VectorField3 gradRho = grad(rho);
  const VectorField3 dtJ = dt(J);
  const VectorField3 curlJ = curl(J);

  SourceDalembertianResidual r;
  r.residual_E = detail::interior_max(g, [&](std::size_t it, std::size_t i,
                                             std::size_t j, std::size_t k) {
    const std::size_t idx = g.index(it, i, j, k);
    double m = 0;
    for (int a = 0; a < 3; ++a)
      m = std::max(m, std::abs(boxE.comp[a][idx] -
                               gradRho.comp[a][idx] / consts.epsilon0 -
                               consts.mu0 * dtJ.comp[a][idx]));
    return m;
  });
  r.residual_B = detail::interior_max(g, [&](std::size_t it, std::size_t i,
                                             std::size_t j, std::size_t k) {
    const std::size_t idx = g.index(it, i, j, k);
    double m = 0;
    for (int a = 0; a < 3; ++a)
      m = std::max(m, std::abs(boxB.comp[a][idx] +
                               consts.mu0 * curlJ.comp[a][idx]));
    return m;
  });
  return r;
}

/// Poynting vector S = (1/mu0) E x B.
inline VectorField3 poynting(const VectorField3 &E, const VectorField3 &B,
                             const PhysicalConstants &consts) {
  detail::require_congruent(E.grid, B.grid, "poynting");
  VectorField3 out(E.grid);
  const double inv_mu0 = 1.0 / consts.mu0;
  detail::for_each_node(E.grid, [&](std::size_t it, std::size_t i,
                                    std::size_t j, std::size_t k) {
    const CVec3 s = cross(E.at(it, i, j, k), B.at(it, i, j, k));
    out.set(it, i, j, k, {inv_mu0 * s[0], inv_mu0 * s[1], inv_mu0 * s[2]});
  });
  return out;
}

inline ScalarField poynting_divergence(const VectorField3 &E,
                                       const VectorField3 &B,
                                       const PhysicalConstants &consts) {
  return div(poynting(E, B, consts));
}

/// log2 convergence order from residuals at h and h/2.
inline double richardson_order(double coarse, double fine) {
  if (!(coarse > 0.0) || !(fine > 0.0))
    throw std::invalid_argument("richardson_order: residuals must be positive");
  return std::log2(coarse / fine);
}

} // namespace emwave
