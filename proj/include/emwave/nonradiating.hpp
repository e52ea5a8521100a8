#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "emwave/constants.hpp"
#include "emwave/fft.hpp"
#include "emwave/fields.hpp"
#include "emwave/grid.hpp"

namespace emwave {

struct BoostParams {
  Vec3 v{};

  explicit BoostParams(const Vec3 &velocity, const PhysicalConstants &consts)
      : v(velocity) {
    if (!(norm(v) < consts.c))
      throw std::invalid_argument("BoostParams: |v| must be below c");
  }

  double speed() const { return norm(v); }

  double gamma(const PhysicalConstants &consts) const {
    const double b = speed() / consts.c;
    return 1.0 / std::sqrt(1.0 - b * b);
  }

  /// Unit direction of v; zero velocity has no direction (returns zero).
  Vec3 direction() const {
    const double s = speed();
    if (s == 0.0) return {0, 0, 0};
    return {v[0] / s, v[1] / s, v[2] / s};
  }
};

/// Non-radiating source pair: rho solves the wave equation, J is its
/// curl-free time integral so that grad(rho)/eps0 + mu0 dJ/dt = 0.
struct WaveSource {
  ScalarField rho;
  VectorField3 J;
};

/// Evolve an initial profile under the wave equation with zero initial
/// velocity: each spatial DFT mode is multiplied by cos(c|k|t).  The grid is
/// treated as one period per axis, so rho0 must have decayed at the boundary.
inline ScalarField evolve_rho(const ScalarField &rho0,
                              const PhysicalConstants &consts,
                              const SpacetimeGrid &grid,
                              double boundary_tol = 1e-6) {
  const auto &g0 = rho0.grid;
  if (g0.nt != 1)
    throw std::invalid_argument("evolve_rho: rho0 must be a single time slice");
  if (g0.n != grid.n || g0.h != grid.h)
    throw std::invalid_argument(
        "evolve_rho: rho0 and target grid must share the spatial lattice");

  // wrap-around guard: boundary amplitude relative to the peak
  double peak = 0, edge = 0;
  for (std::size_t i = 0; i < g0.n[0]; ++i)
    for (std::size_t j = 0; j < g0.n[1]; ++j)
      for (std::size_t k = 0; k < g0.n[2]; ++k) {
        const double a = std::abs(rho0.values[g0.index(0, i, j, k)]);
        peak = std::max(peak, a);
        const bool on_edge = i == 0 || j == 0 || k == 0 ||
                             i == g0.n[0] - 1 || j == g0.n[1] - 1 ||
                             k == g0.n[2] - 1;
        if (on_edge) edge = std::max(edge, a);
      }
  if (peak > 0 && edge > boundary_tol * peak)
    throw std::invalid_argument(
        "evolve_rho: rho0 has not decayed at the domain boundary "
        "(relative edge amplitude " +
        std::to_string(edge / peak) + "); spectral evolution would wrap");

  std::vector<cplx> hat(rho0.values);
  fft::transform3(hat, g0.n, false);

  ScalarField out(grid);
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<cplx> slice(hat.size());
  for (std::size_t it = 0; it < grid.nt; ++it) {
    const double t = grid.time(it);
    for (std::size_t i = 0; i < g0.n[0]; ++i) {
      const double kx = two_pi * fft::signed_frequency(i, g0.n[0]) /
                        (static_cast<double>(g0.n[0]) * g0.h);
      for (std::size_t j = 0; j < g0.n[1]; ++j) {
        const double ky = two_pi * fft::signed_frequency(j, g0.n[1]) /
                          (static_cast<double>(g0.n[1]) * g0.h);
        for (std::size_t k = 0; k < g0.n[2]; ++k) {
          const double kz = two_pi * fft::signed_frequency(k, g0.n[2]) /
                            (static_cast<double>(g0.n[2]) * g0.h);
          const double kn = std::sqrt(kx * kx + ky * ky + kz * kz);
          slice[(i * g0.n[1] + j) * g0.n[2] + k] =
              hat[(i * g0.n[1] + j) * g0.n[2] + k] *
              std::cos(consts.c * kn * t);
        }
      }
    }
    fft::transform3(slice, g0.n, true);
    std::copy(slice.begin(), slice.end(),
              out.values.begin() +
                  static_cast<std::ptrdiff_t>(it * g0.n[0] * g0.n[1] *
                                              g0.n[2]));
  }
  return out;
}

/// J(x,t) = -(1/(eps0 mu0)) integral_0^t grad(rho) ds via cumulative
/// trapezoid over the time frames; requires the history to start at t = 0.
inline VectorField3 build_J(const ScalarField &rho,
                            const PhysicalConstants &consts) {
  const auto &g = rho.grid;
  if (std::abs(g.t0) > 1e-14 * std::max(1.0, g.dt))
    throw std::invalid_argument("build_J: history must start at t = 0");
  const VectorField3 gradRho = grad(rho);
  VectorField3 J(g);
  const double scale = -1.0 / (consts.epsilon0 * consts.mu0);
  const std::size_t nspace = g.n[0] * g.n[1] * g.n[2];
  for (int a = 0; a < 3; ++a) {
    // frame 0 stays zero
    for (std::size_t it = 1; it < g.nt; ++it)
      for (std::size_t s = 0; s < nspace; ++s) {
        const std::size_t cur = it * nspace + s;
        const std::size_t prev = (it - 1) * nspace + s;
        J.comp[a][cur] = J.comp[a][prev] +
                         scale * 0.5 * g.dt *
                             (gradRho.comp[a][prev] + gradRho.comp[a][cur]);
      }
  }
  return J;
}

inline WaveSource make_wave_source(const ScalarField &rho0,
                                   const PhysicalConstants &consts,
                                   const SpacetimeGrid &grid) {
  ScalarField rho = evolve_rho(rho0, consts, grid);
  VectorField3 J = build_J(rho, consts);
  return {std::move(rho), std::move(J)};
}

namespace detail {
inline void split_parallel(const CVec3 &w, const Vec3 &nhat, CVec3 &par,
                           CVec3 &perp) {
  cplx wn = 0;
  for (int a = 0; a < 3; ++a) wn += w[a] * nhat[a];
  for (int a = 0; a < 3; ++a) {
    par[a] = wn * nhat[a];
    perp[a] = w[a] - par[a];
  }
}
} // namespace detail

/// rho' = gamma (rho - v.J/c^2),  J' = gamma (J_par - rho v) + J_perp,
/// evaluated at fixed event labels.
inline std::pair<ScalarField, VectorField3>
boost_source(const ScalarField &rho, const VectorField3 &J,
             const BoostParams &boost, const PhysicalConstants &consts) {
  detail::require_congruent(rho.grid, J.grid, "boost_source");
  const double gamma = boost.gamma(consts);
  const Vec3 nhat = boost.direction();
  const double c2 = consts.c * consts.c;
  ScalarField rhoP(rho.grid);
  VectorField3 JP(J.grid);
  const std::size_t total = rho.values.size();
  for (std::size_t s = 0; s < total; ++s) {
    const CVec3 j{J.comp[0][s], J.comp[1][s], J.comp[2][s]};
    cplx vj = 0;
    for (int a = 0; a < 3; ++a) vj += boost.v[a] * j[a];
    rhoP.values[s] = gamma * (rho.values[s] - vj / c2);
    CVec3 par, perp;
    detail::split_parallel(j, nhat, par, perp);
    for (int a = 0; a < 3; ++a)
      JP.comp[a][s] = gamma * (par[a] - rho.values[s] * boost.v[a]) + perp[a];
  }
  return {std::move(rhoP), std::move(JP)};
}

/// E'' = E_par + gamma (E_perp + v x B),  B'' = B_par + gamma (B_perp - v x E / c^2).
inline std::pair<VectorField3, VectorField3>
boost_fields(const VectorField3 &E, const VectorField3 &B,
             const BoostParams &boost, const PhysicalConstants &consts) {
  detail::require_congruent(E.grid, B.grid, "boost_fields");
  const double gamma = boost.gamma(consts);
  const Vec3 nhat = boost.direction();
  const double c2 = consts.c * consts.c;
  const CVec3 vc{cplx(boost.v[0]), cplx(boost.v[1]), cplx(boost.v[2])};
  VectorField3 EP(E.grid), BP(B.grid);
  const std::size_t total = E.comp[0].size();
  for (std::size_t s = 0; s < total; ++s) {
    const CVec3 e{E.comp[0][s], E.comp[1][s], E.comp[2][s]};
    const CVec3 b{B.comp[0][s], B.comp[1][s], B.comp[2][s]};
    CVec3 ePar, ePerp, bPar, bPerp;
    detail::split_parallel(e, nhat, ePar, ePerp);
    detail::split_parallel(b, nhat, bPar, bPerp);
    const CVec3 vxb = cross(vc, b);
    const CVec3 vxe = cross(vc, e);
    for (int a = 0; a < 3; ++a) {
      EP.comp[a][s] = ePar[a] + gamma * (ePerp[a] + vxb[a]);
      BP.comp[a][s] = bPar[a] + gamma * (bPerp[a] - vxe[a] / c2);
    }
  }
  return {std::move(EP), std::move(BP)};
}

/// Residuals of the boosted-curl identity
///   curl'(J') = gamma v x (grad rho + dJ/dt / c^2),
/// where curl' uses grad' = grad + (gamma-1) nhat (nhat.grad) + gamma v dt/c^2.
struct BoostedCurlResidual {
  double residual = 0;       // max |curl'(J') - closed form|
  double curl_prime_max = 0; // max |curl'(J')| itself
};

inline BoostedCurlResidual
boosted_curl_identity(const ScalarField &rho, const VectorField3 &J,
                      const BoostParams &boost,
                      const PhysicalConstants &consts) {
  detail::require_congruent(rho.grid, J.grid, "boosted_curl_identity");
  const auto &g = rho.grid;
  const double gamma = boost.gamma(consts);
  const Vec3 nhat = boost.direction();
  const double c2 = consts.c * consts.c;

  auto [rhoP, JP] = boost_source(rho, J, boost, consts);

  // grad' of each J' component
  std::array<VectorField3, 3> dJP{VectorField3(g), VectorField3(g),
                                  VectorField3(g)};
  for (int a = 0; a < 3; ++a) {
    ScalarField comp(g);
    comp.values = JP.comp[a];
    VectorField3 gr = grad(comp);
    ScalarField dtc = dt(comp);
    for (std::size_t s = 0; s < comp.values.size(); ++s) {
      cplx ngrad = 0;
      for (int b = 0; b < 3; ++b) ngrad += nhat[b] * gr.comp[b][s];
      for (int b = 0; b < 3; ++b)
        dJP[a].comp[b][s] = gr.comp[b][s] + (gamma - 1.0) * nhat[b] * ngrad +
                            gamma * boost.v[b] / c2 * dtc.values[s];
    }
  }

  const VectorField3 gradRho = grad(rho);
  const VectorField3 dtJ = dt(J);

  BoostedCurlResidual out;
  out.residual = detail::interior_max(g, [&](std::size_t it, std::size_t i,
                                             std::size_t j, std::size_t k) {
    const std::size_t s = g.index(it, i, j, k);
    // curl'(J')_a = eps_{abc} D'_b J'_c; dJP[c].comp[b] holds D'_b J'_c
    const CVec3 curlP{dJP[2].comp[1][s] - dJP[1].comp[2][s],
                      dJP[0].comp[2][s] - dJP[2].comp[0][s],
                      dJP[1].comp[0][s] - dJP[0].comp[1][s]};
    CVec3 w;
    for (int a = 0; a < 3; ++a)
      w[a] = gradRho.comp[a][s] + dtJ.comp[a][s] / c2;
    const CVec3 vc{cplx(boost.v[0]), cplx(boost.v[1]), cplx(boost.v[2])};
    const CVec3 rhs = cross(vc, w);
    double m = 0;
    for (int a = 0; a < 3; ++a)
      m = std::max(m, std::abs(curlP[a] - gamma * rhs[a]));
    return m;
  });
  out.curl_prime_max = detail::interior_max(
      g, [&](std::size_t it, std::size_t i, std::size_t j, std::size_t k) {
        const std::size_t s = g.index(it, i, j, k);
        const CVec3 curlP{dJP[2].comp[1][s] - dJP[1].comp[2][s],
                          dJP[0].comp[2][s] - dJP[2].comp[0][s],
                          dJP[1].comp[0][s] - dJP[0].comp[1][s]};
        double m = 0;
        for (int a = 0; a < 3; ++a) m = std::max(m, std::abs(curlP[a]));
        return m;
      });
  return out;
}

/// Lorentz map of one event label (x, t) into the boosted frame.
inline std::pair<Vec3, double> boost_event(const Vec3 &x, double t,
                                           const BoostParams &boost,
                                           const PhysicalConstants &consts) {
  const double gamma = boost.gamma(consts);
  const Vec3 nhat = boost.direction();
  const double c2 = consts.c * consts.c;
  const double xn = dot(x, nhat);
  Vec3 xp;
  for (int a = 0; a < 3; ++a)
    xp[a] = x[a] + (gamma - 1.0) * nhat[a] * xn - gamma * boost.v[a] * t;
  const double tp = gamma * (t - dot(boost.v, x) / c2);
  return {xp, tp};
}

} // namespace emwave
