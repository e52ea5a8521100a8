#pragma once

// The acceptance suite: twelve self-contained checks exercised by both the
// dedicated acceptance binary and the CLI `selftest` subcommand.  Each check
// returns pass/fail plus a one-line diagnostic; nothing here writes files.

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "emwave/cavity.hpp"
#include "emwave/constants.hpp"
#include "emwave/fields.hpp"
#include "emwave/freespace.hpp"
#include "emwave/grid.hpp"
#include "emwave/jefimenko.hpp"
#include "emwave/nonradiating.hpp"
#include "emwave/quadrature.hpp"
#include "emwave/specfun.hpp"

namespace emwave {
namespace selftest {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(3);
  ss << v;
  return ss.str();
}

// least-squares log2 slope over residuals at h, h/2, h/4
inline double fit_order(double r0, double r1, double r2) {
  return 0.5 * (std::log2(r0 / r1) + std::log2(r1 / r2));
}

// compactly supported quartic bump (1 - u^2)^4, g(0)=1, g(r)=0 for r>=R;
// polynomial inside the support, so all derivatives stay bounded and
// refinement constants stabilise already on coarse lattices
inline double bump(double r, double R) {
  const double u = r / R;
  if (u >= 1.0) return 0.0;
  const double d = 1.0 - u * u;
  return d * d * d * d;
}

inline double bump_prime(double r, double R) {
  const double u = r / R;
  if (u >= 1.0) return 0.0;
  const double d = 1.0 - u * u;
  return -8.0 * u * d * d * d / R;
}

} // namespace detail

// 1. j_0 zeros equal n pi to 1e-10 (n <= 20); 50th zero of j_l within
//    0.05 pi of pi(50 + l/2) for l <= 3.
inline CriterionResult criterion_1() {
  CriterionResult res{1, "bessel zeros vs exact and asymptotic positions"};
  const auto start = std::chrono::steady_clock::now();
  double worst0 = 0;
  const ZeroTable z0 = bessel_zeros(0, 1.0, 20);
  for (std::size_t n = 1; n <= 20; ++n)
    worst0 = std::max(worst0, std::abs(z0.zeros[n - 1] -
                                       double(n) * std::numbers::pi));
  double worst_asym = 0;
  for (int l = 0; l <= 3; ++l) {
    const ZeroTable zl = bessel_zeros(l, 1.0, 50);
    worst_asym = std::max(
        worst_asym, std::abs(zl.zeros[49] -
                             std::numbers::pi * (50.0 + 0.5 * l)));
  }
  res.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  res.pass = worst0 < 1e-10 && worst_asym < 0.05 * std::numbers::pi &&
             res.seconds < 1.0;
  res.detail = "max |k - n pi| = " + detail::fmt(worst0) +
               ", max asymptotic offset = " + detail::fmt(worst_asym) +
               ", t = " + detail::fmt(res.seconds) + " s";
  return res;
}

// 2. Gram matrix of the delta basis (l <= 3, 3 zeros, all m) is the identity
//    within 1e-6.  The ball quadrature is a tensor product, so the Gram
//    factorises into an angular Gram times radial overlap integrals.
inline CriterionResult criterion_2() {
  CriterionResult res{2, "delta-basis Gram matrix vs identity"};
  const auto start = std::chrono::steady_clock::now();
  const double r0 = 1.0;
  const int l_max = 3;
  const std::size_t kcount = 3;
  const SphereQuadOrders q{};

  struct Entry {
    int l, m;
    std::size_t n;
    double k;
  };
  std::vector<Entry> basis;
  std::vector<ZeroTable> tables;
  for (int l = 0; l <= l_max; ++l) tables.push_back(bessel_zeros(l, r0, kcount));
  for (int l = 0; l <= l_max; ++l)
    for (int m = -l; m <= l; ++m)
      for (std::size_t n = 0; n < kcount; ++n)
        basis.push_back({l, m, n, tables[std::size_t(l)].zeros[n]});

  // angular Gram over (l, m) pairs
  struct LM {
    int l, m;
  };
  std::vector<LM> lms;
  for (int l = 0; l <= l_max; ++l)
    for (int m = -l; m <= l; ++m) lms.push_back({l, m});
  const GaussLegendre gth(q.n_cos_theta);
  const double dphi = 2.0 * std::numbers::pi / double(q.n_phi);
  // precompute Y values on the angular nodes
  std::vector<std::vector<cplx>> Y(lms.size());
  for (std::size_t a = 0; a < lms.size(); ++a) {
    Y[a].resize(q.n_cos_theta * q.n_phi);
    for (std::size_t i = 0; i < q.n_cos_theta; ++i) {
      const double theta = std::acos(gth.x[i]);
      for (std::size_t j = 0; j < q.n_phi; ++j) {
        const double phi = -std::numbers::pi + dphi * double(j);
        Y[a][i * q.n_phi + j] =
            spherical_harmonic(lms[a].l, lms[a].m, theta, phi);
      }
    }
  }
  auto angular = [&](std::size_t a, std::size_t b) {
    cplx s = 0;
    for (std::size_t i = 0; i < q.n_cos_theta; ++i) {
      cplx ring = 0;
      for (std::size_t j = 0; j < q.n_phi; ++j)
        ring += Y[a][i * q.n_phi + j] * std::conj(Y[b][i * q.n_phi + j]);
      s += gth.w[i] * dphi * ring;
    }
    return s;
  };
  // radial overlaps on Gauss nodes
  const GaussLegendre gr = GaussLegendre(q.n_r).mapped(0.0, r0);
  auto radial = [&](int la, double ka, int lb, double kb) {
    double s = 0;
    for (std::size_t i = 0; i < q.n_r; ++i) {
      const double r = gr.x[i];
      s += gr.w[i] * r * r * radial_s(la, ka, r0, r) *
           radial_s(lb, kb, r0, r);
    }
    return s;
  };

  double worst = 0;
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a; b < basis.size(); ++b) {
      const auto &ea = basis[a];
      const auto &eb = basis[b];
      std::size_t ia = 0, ib = 0;
      for (std::size_t t = 0; t < lms.size(); ++t) {
        if (lms[t].l == ea.l && lms[t].m == ea.m) ia = t;
        if (lms[t].l == eb.l && lms[t].m == eb.m) ib = t;
      }
      const cplx g = angular(ia, ib) * radial(ea.l, ea.k, eb.l, eb.k);
      const double expect = (a == b) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(g - expect));
    }
  res.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  res.pass = worst < 1e-6 && res.seconds < 30.0;
  res.detail = "max |G - I| = " + detail::fmt(worst) + " over " +
               std::to_string(basis.size()) + " modes, t = " +
               detail::fmt(res.seconds) + " s";
  return res;
}

// 3. Lommel normalisation: numeric radial norm vs closed form for 6 pairs.
inline CriterionResult criterion_3() {
  CriterionResult res{3, "Lommel radial norm vs closed form"};
  const auto start = std::chrono::steady_clock::now();
  const double r0 = 1.0;
  const GaussLegendre gr = GaussLegendre(128).mapped(0.0, r0);
  const std::vector<std::pair<int, std::size_t>> pairs{
      {0, 0}, {0, 2}, {1, 0}, {2, 1}, {3, 0}, {3, 2}};
  double worst = 0;
  for (const auto &[l, n] : pairs) {
    const double k = bessel_zeros(l, r0, n + 1).zeros[n];
    double num = 0;
    for (std::size_t i = 0; i < gr.x.size(); ++i) {
      const double tau = radial_tau(l, k, gr.x[i]);
      num += gr.w[i] * gr.x[i] * gr.x[i] * tau * tau;
    }
    const double closed = radial_norm_squared(l, k, r0);
    worst = std::max(worst,
                     std::abs(num - closed) / std::max(1.0, std::abs(closed)));
  }
  res.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  res.pass = worst < 1e-8;
  res.detail = "max relative deviation = " + detail::fmt(worst);
  return res;
}

// 4. Static Gaussian ball: Jefimenko E vs analytic Coulomb field within 1%
//    outside 3 sigma; B identically zero.  48^3 source grid.
inline CriterionResult criterion_4() {
  CriterionResult res{4, "Jefimenko static limit vs Gaussian-ball Coulomb"};
  const auto start = std::chrono::steady_clock::now();
  const PhysicalConstants consts = natural_units();
  const double sigma = 0.5, q = 1.0, L = 3.0;
  const std::size_t n = 48;
  const double h = 2.0 * L / double(n - 1);
  const SpacetimeGrid sg(Vec3{-L, -L, -L}, {n, n, n}, h, 10.0, 3, -20.0);
  const double rho0 = q / (std::pow(2.0 * std::numbers::pi, 1.5) *
                           sigma * sigma * sigma);
  ScalarField rho = sample_scalar(sg, [&](double, const Vec3 &x) {
    return cplx(rho0 * std::exp(-dot(x, x) / (2.0 * sigma * sigma)));
  });
  VectorField3 J(sg); // zero current
  const SourceHistory src(std::move(rho), std::move(J), L);

  const SpacetimeGrid eg(Vec3{1.75, 1.75, 1.75}, {5, 5, 5}, 0.25, 1.0, 1,
                         0.0);
  const VectorField3 E = jefimenko_E(src, eg, consts);
  const VectorField3 B = jefimenko_B(src, eg, consts);

  double worst = 0;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      for (std::size_t k = 0; k < 5; ++k) {
        const Vec3 x = eg.point(i, j, k);
        const double r = norm(x);
        const double enc =
            q * (std::erf(r / (std::numbers::sqrt2 * sigma)) -
                 std::sqrt(2.0 / std::numbers::pi) * (r / sigma) *
                     std::exp(-r * r / (2.0 * sigma * sigma)));
        const double Er =
            enc / (4.0 * std::numbers::pi * consts.epsilon0 * r * r);
        const CVec3 e = E.at(0, i, j, k);
        for (int c = 0; c < 3; ++c)
          worst = std::max(worst,
                           std::abs(e[c] - Er * x[c] / r) / std::abs(Er));
      }
  res.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  res.pass = worst < 0.01 && B.max_abs() == 0.0 && res.seconds < 120.0;
  res.detail = "max relative E error = " + detail::fmt(worst) +
               ", max |B| = " + detail::fmt(B.max_abs()) + ", t = " +
               detail::fmt(res.seconds) + " s";
  return res;
}

namespace detail {

// analytic pulse for criteria 5: J = zhat sin(w t) g(|x - xc|),
// rho = -(1 - cos(w t))/w * d/dz g, continuity exact in the continuum.
// The centre is offset from the grid centre so no residual component sits
// at a symmetry-cancellation floor on the coarse levels.
struct Pulse {
  double R = 0.8;
  double omega = 2.0;
  Vec3 xc{0.13, -0.1, 0.07};

  CVec3 J(const Vec3 &x, double t) const {
    const Vec3 d{x[0] - xc[0], x[1] - xc[1], x[2] - xc[2]};
    return {cplx{}, cplx{}, cplx(std::sin(omega * t) * bump(norm(d), R))};
  }
  cplx rho(const Vec3 &x, double t) const {
    const Vec3 d{x[0] - xc[0], x[1] - xc[1], x[2] - xc[2]};
    const double r = norm(d);
    if (r == 0.0) return {};
    return cplx(-(1.0 - std::cos(omega * t)) / omega * bump_prime(r, R) *
                d[2] / r);
  }
};

inline MaxwellResidual dynamic_residual(int level,
                                        const PhysicalConstants &consts) {
  const Pulse pulse;
  const double Ls = 1.0;
  const std::size_t ns = 12 * (std::size_t(1) << level) + 1; // 13, 25, 49
  const double hs = 2.0 * Ls / double(ns - 1);
  const double dts = 0.55 * hs / consts.c;
  // the probe points sit outside the source support so the Jefimenko
  // integrand stays smooth over every source cell and the midpoint rule is
  // O(hs^2); eval frames live in [0.3 - dte, 0.3 + dte] and the history must
  // reach back by the largest source-to-probe distance over c
  const double t_end = 0.6;
  const double reach =
      std::sqrt((2.14 + Ls) * (2.14 + Ls) + 2.0 * (0.6 + Ls) * (0.6 + Ls)) /
      consts.c;
  const std::size_t nts = std::size_t(std::ceil((reach + t_end) / dts)) + 2;
  const double t0s = t_end - double(nts - 1) * dts;
  const SpacetimeGrid sg(Vec3{-Ls, -Ls, -Ls}, {ns, ns, ns}, hs, dts, nts,
                         t0s);
  ScalarField rho = sample_scalar(
      sg, [&](double t, const Vec3 &x) { return pulse.rho(x, t); });
  VectorField3 J = sample_vector(
      sg, [&](double t, const Vec3 &x) { return pulse.J(x, t); });
  const SourceHistory src(std::move(rho), std::move(J),
                          pulse.R + norm(pulse.xc) + 2.0 * hs,
                          /*continuity_tol=*/2.0);

  // Residuals are measured at a fixed set of physical probe points on every
  // level: each probe carries a 3x3x3x3 stencil grid with spacing (he, dte)
  // whose single interior node is the probe itself.  Comparing the same
  // points across levels avoids the max-norm under-sampling a coarse
  // interior lattice would suffer, and keeps the evaluation cost flat.
  const Vec3 probes[] = {{1.5, -0.2, 0.1},
                         {1.66, 0.14, -0.12},
                         {1.82, -0.06, 0.22},
                         {1.58, 0.28, 0.16}};
  const double he = 0.32 / double(std::size_t(1) << level);
  const double dte = 0.2 / double(std::size_t(1) << level);
  MaxwellResidual worst{0.0, 0.0, 0.0, 0.0};
  for (const Vec3 &p : probes) {
    const SpacetimeGrid eg(Vec3{p[0] - he, p[1] - he, p[2] - he}, {3, 3, 3},
                           he, dte, 3, 0.3 - dte);
    const VectorField3 E = jefimenko_E(src, eg, consts);
    const VectorField3 B = jefimenko_B(src, eg, consts);
    const ScalarField rho_e = sample_scalar(
        eg, [&](double t, const Vec3 &x) { return pulse.rho(x, t); });
    const VectorField3 J_e = sample_vector(
        eg, [&](double t, const Vec3 &x) { return pulse.J(x, t); });
    const MaxwellResidual r = maxwell_residual(E, B, rho_e, J_e, consts);
    worst.gauss_E = std::max(worst.gauss_E, r.gauss_E);
    worst.gauss_B = std::max(worst.gauss_B, r.gauss_B);
    worst.faraday = std::max(worst.faraday, r.faraday);
    worst.ampere = std::max(worst.ampere, r.ampere);
  }
  return worst;
}

} // namespace detail

// 5. Oscillating localized pulse: all four Maxwell residuals converge with
//    order in [1.8, 2.2] across the three refinement levels.
inline CriterionResult criterion_5() {
  CriterionResult res{5, "Jefimenko dynamic Maxwell-residual convergence"};
  const auto start = std::chrono::steady_clock::now();
  const PhysicalConstants consts = natural_units();
  const MaxwellResidual r0 = detail::dynamic_residual(0, consts);
  const MaxwellResidual r1 = detail::dynamic_residual(1, consts);
  const MaxwellResidual r2 = detail::dynamic_residual(2, consts);
  const double o_gE = detail::fit_order(r0.gauss_E, r1.gauss_E, r2.gauss_E);
  const double o_gB = detail::fit_order(r0.gauss_B, r1.gauss_B, r2.gauss_B);
  const double o_f = detail::fit_order(r0.faraday, r1.faraday, r2.faraday);
  const double o_a = detail::fit_order(r0.ampere, r1.ampere, r2.ampere);
  res.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  auto ok = [](double o) { return o >= 1.8 && o <= 2.2; };
  res.pass = ok(o_gE) && ok(o_gB) && ok(o_f) && ok(o_a);
  res.detail = "orders: gauss_E " + detail::fmt(o_gE) + ", gauss_B " +
               detail::fmt(o_gB) + ", faraday " + detail::fmt(o_f) +
               ", ampere " + detail::fmt(o_a) + ", t = " +
               detail::fmt(res.seconds) + " s";
  return res;
}

// 6. build_J: continuity and the relation grad(rho)/eps0 + mu0 dJ/dt = 0
//    with residuals converging at order ~2 under joint (h, dt) refinement.
inline CriterionResult criterion_6() {
  CriterionResult res{6, "wave-source continuity and relation (*)"};
  const auto start = std::chrono::steady_clock::now();
  const PhysicalConstants c = natural_units();
  // The relation (*) residual is an O(dt^2) artefact (trapezoid integration
  // vs central time difference) and the continuity residual is dominated by
  // the O(h^2) gap between the spectral Laplacian driving the evolution and
  // the stencil divergence of the trapezoid current; the two terms carry
  // opposite signs, so a joint (h, dt) path lets them partially cancel and
  // corrupts the fit. Each residual is therefore refined in its own
  // parameter with the other held fixed and small.
  const double L = 6.0, sigma = 1.0;
  auto wave_source = [&](std::size_t n, double dtv, std::size_t nt) {
    const double h = 2.0 * L / double(n - 1);
    const SpacetimeGrid slice(Vec3{-L, -L, -L}, {n, n, n}, h, dtv, 1, 0.0);
    const SpacetimeGrid grid(Vec3{-L, -L, -L}, {n, n, n}, h, dtv, nt, 0.0);
    ScalarField rho0 = sample_scalar(slice, [&](double, const Vec3 &x) {
      return cplx(std::exp(-dot(x, x) / (2.0 * sigma * sigma)));
    });
    return make_wave_source(rho0, c, grid);
  };
  double star[3], cont[3];
  for (int level = 0; level < 3; ++level) {
    // (*): time refinement at fixed 64^3 lattice, span 0.1 held constant
    {
      const std::size_t n = 64;
      const double h = 2.0 * L / double(n - 1);
      const double dtv = 0.0125 / double(std::size_t(1) << level);
      const std::size_t nt = 8 * (std::size_t(1) << level) + 1;
      const WaveSource ws = wave_source(n, dtv, nt);
      const auto &grid = ws.rho.grid;
      const std::size_t sj = grid.n[2], si = grid.n[1] * grid.n[2],
                        st = grid.n[0] * grid.n[1] * grid.n[2];
      const std::size_t stride[3] = {si, sj, 1};
      const auto &rv = ws.rho.values;
      star[level] = emwave::detail::interior_max(
          grid, [&](std::size_t it, std::size_t i, std::size_t j,
                    std::size_t k) {
            const std::size_t s = grid.index(it, i, j, k);
            double m = 0;
            for (int a = 0; a < 3; ++a) {
              const cplx gr =
                  (rv[s + stride[a]] - rv[s - stride[a]]) / (2 * h);
              const cplx dJ =
                  (ws.J.comp[a][s + st] - ws.J.comp[a][s - st]) / (2 * dtv);
              m = std::max(m, std::abs(gr / c.epsilon0 + c.mu0 * dJ));
            }
            return m;
          });
    }
    // continuity: spatial refinement at fixed small dt; stencils evaluated
    // on the fly because materialised derivative fields would not fit in
    // memory at the finest level
    {
      const std::size_t n = 32 * (std::size_t(1) << level);
      const double h = 2.0 * L / double(n - 1);
      const double dtv = 0.0125;
      const std::size_t nt = 9;
      const WaveSource ws = wave_source(n, dtv, nt);
      const auto &grid = ws.rho.grid;
      const std::size_t sj = grid.n[2], si = grid.n[1] * grid.n[2],
                        st = grid.n[0] * grid.n[1] * grid.n[2];
      const std::size_t stride[3] = {si, sj, 1};
      const auto &rv = ws.rho.values;
      cont[level] = emwave::detail::interior_max(
          grid, [&](std::size_t it, std::size_t i, std::size_t j,
                    std::size_t k) {
            const std::size_t s = grid.index(it, i, j, k);
            const cplx dRho = (rv[s + st] - rv[s - st]) / (2 * dtv);
            cplx divJ = 0;
            for (int a = 0; a < 3; ++a)
              divJ += (ws.J.comp[a][s + stride[a]] -
                       ws.J.comp[a][s - stride[a]]) /
                      (2 * h);
            return std::abs(dRho + divJ);
          });
    }
  }
  const double o_star = detail::fit_order(star[0], star[1], star[2]);
  const double o_cont = detail::fit_order(cont[0], cont[1], cont[2]);
  res.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  res.pass = o_star >= 1.8 && o_star <= 2.2 && o_cont >= 1.8 && o_cont <= 2.2;
  res.detail = "(*) residuals " + detail::fmt(star[0]) + " -> " +
               detail::fmt(star[2]) + " (order " + detail::fmt(o_star) +
               "), continuity order " + detail::fmt(o_cont);
  return res;
}

// 7. Boosted curl identity at the discretisation floor for three boost
//    speeds; a synthetic violation of (*) separates by >= 3 orders.
inline CriterionResult criterion_7() {
  CriterionResult res{7, "boosted curl identity and violation separation"};
  const auto start = std::chrono::steady_clock::now();
  const PhysicalConstants c = natural_units();
  const double L = 6.0, sigma = 1.0;
  const std::size_t n = 32;
  const double h = 2.0 * L / double(n - 1);
  // small dt pushes the conforming source's curl'(J') floor (an O(dt^2)
  // artefact of the trapezoid/central-difference mismatch) well below the
  // violating source's curl, so the separation test has headroom
  const double dtv = 0.0125;
  const std::size_t nt = 33;
  const SpacetimeGrid slice(Vec3{-L, -L, -L}, {n, n, n}, h, dtv, 1, 0.0);
  const SpacetimeGrid grid(Vec3{-L, -L, -L}, {n, n, n}, h, dtv, nt, 0.0);
  ScalarField rho0 = sample_scalar(slice, [&](double, const Vec3 &x) {
    return cplx(std::exp(-dot(x, x) / (2.0 * sigma * sigma)));
  });
  const WaveSource ws = make_wave_source(rho0, c, grid);

  // scale of the identity's right-hand side for relative floors
  double worst_rel = 0;
  for (double beta : {0.1, 0.5, 0.9}) {
    const BoostParams boost(Vec3{beta * c.c, 0, 0}, c);
    const auto r = boosted_curl_identity(ws.rho, ws.J, boost, c);
    const double scale = std::max(ws.rho.max_abs(), 1e-300);
    worst_rel = std::max(worst_rel, r.residual / scale);
  }

  // synthetic violation: J_s = J + t * grad(chi) stays curl-free but breaks
  // grad(rho) + dJ/dt / c^2 = 0 by grad(chi)/c^2
  ScalarField chi = sample_scalar(grid, [&](double t, const Vec3 &x) {
    return cplx(t * std::exp(-dot(x, x) / 2.0));
  });
  const VectorField3 gchi = grad(chi);
  VectorField3 Js = ws.J;
  for (int a = 0; a < 3; ++a)
    for (std::size_t s = 0; s < Js.comp[a].size(); ++s)
      Js.comp[a][s] += gchi.comp[a][s];
  const BoostParams boost(Vec3{0.5 * c.c, 0, 0}, c);
  const auto r_ok = boosted_curl_identity(ws.rho, ws.J, boost, c);
  const auto r_bad = boosted_curl_identity(ws.rho, Js, boost, c);
  const double separation =
      r_bad.curl_prime_max / std::max(r_ok.curl_prime_max, 1e-300);

  res.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  res.pass = worst_rel < 1e-10 &&
             r_bad.residual / r_bad.curl_prime_max < 1e-8 &&
             separation >= 1e3;
  res.detail = "max relative identity residual = " + detail::fmt(worst_rel) +
               ", violation separation = " + detail::fmt(separation) + "x";
  return res;
}

// 8. Free-space transverse superposition: Maxwell residuals converge at
//    order 2; longitudinal remainder curl sits at the stencil floor.
inline CriterionResult criterion_8() {
  CriterionResult res{8, "free-space modes: residual convergence and split"};
  const auto start = std::chrono::steady_clock::now();
  const PhysicalConstants c = natural_units();
  std::vector<PlaneWaveMode> modes;
  {
    PlaneWaveMode m1;
    m1.k = {2.0, 1.0, 0.5};
    m1.pol = {cplx(0.5, 0.25), cplx(-1.0, 0.5), cplx(0, 0)};
    // project out the longitudinal part to make a Maxwell mode
    auto [t, l] = split_transverse({m1});
    m1 = t[0];
    m1.sign = -1;
    m1.amplitude = cplx(1.0, 0.0);
    PlaneWaveMode m2 = m1; // conjugate partner for realness
    for (int a = 0; a < 3; ++a) {
      m2.k[a] = -m1.k[a];
      m2.pol[a] = std::conj(m1.pol[a]);
    }
    m2.sign = +1;
    m2.amplitude = std::conj(m1.amplitude);
    modes = {m1, m2};
  }

  double resmax[3];
  double curl_long[3];
  for (int level = 0; level < 3; ++level) {
    const std::size_t n = 8 * (std::size_t(1) << level) + 1; // 9, 17, 33
    const double h = 2.0 / double(n - 1);
    const double dtv = 0.1 / double(std::size_t(1) << level);
    const SpacetimeGrid g(Vec3{-1, -1, -1}, {n, n, n}, h, dtv, 3, -dtv);
    const VectorField3 E = synthesize_E(modes, g, c);
    const VectorField3 B = synthesize_E(induced_B(modes, c), g, c);
    const ScalarField zero_rho(g);
    const VectorField3 zero_J(g);
    const MaxwellResidual mr = maxwell_residual(E, B, zero_rho, zero_J, c);
    resmax[level] =
        std::max({mr.gauss_E, mr.gauss_B, mr.faraday, mr.ampere});

    // longitudinal remainder of a non-transverse mode
    PlaneWaveMode raw;
    raw.k = {2.0, 1.0, 0.5};
    raw.pol = {cplx(1.0, 0.3), cplx(0.2, -0.7), cplx(-0.4, 0.1)};
    auto [trans, longi] = split_transverse({raw});
    const VectorField3 Elong = synthesize_E(longi, g, c);
    const VectorField3 curlL = curl(Elong);
    curl_long[level] = emwave::detail::interior_max(
        g, [&](std::size_t it, std::size_t i, std::size_t j, std::size_t k) {
          double m = 0;
          const std::size_t s = g.index(it, i, j, k);
          for (int a = 0; a < 3; ++a)
            m = std::max(m, std::abs(curlL.comp[a][s]));
          return m;
        });
  }
  const double o_res = detail::fit_order(resmax[0], resmax[1], resmax[2]);
  const double o_curl =
      detail::fit_order(curl_long[0], curl_long[1], curl_long[2]);
  res.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  res.pass = o_res >= 1.8 && o_res <= 2.2 && o_curl >= 1.8 && o_curl <= 2.2 &&
             curl_long[2] < 1e-2;
  res.detail = "Maxwell residual order " + detail::fmt(o_res) +
               ", longitudinal curl order " + detail::fmt(o_curl) +
               " (floor " + detail::fmt(curl_long[2]) + ")";
  return res;
}

// 9. Quadrature energy of the synthesized fundamental field vs the closed
//    form, within 2%.
inline CriterionResult criterion_9() {
  CriterionResult res{9, "fundamental-field energy: quadrature vs closed form"};
  const auto start = std::chrono::steady_clock::now();
  const PhysicalConstants c = natural_units();
  const double r0 = 1.0, Q = 1.0;
  double worst = 0;
  const SphereQuadOrders q{64, 128, 64};
  for (const auto &[l0, nzero] :
       std::vector<std::pair<int, std::size_t>>{{0, 0}, {2, 0}, {2, 1}}) {
    const double k0 = bessel_zeros(l0, r0, nzero + 1).zeros[nzero];
    const WCoefficients W = parametric_w(l0, 4.0 * std::numbers::pi);
    const FundamentalField field(Q, l0, k0, r0, c, W);
    for (double t : {0.0, 0.37 / (c.c * k0)}) {
      const double quad =
          0.5 * c.epsilon0 *
          integrate_ball(
              r0,
              [&](double r, double th, double ph) {
                const Vec3 x{r * std::sin(th) * std::cos(ph),
                             r * std::sin(th) * std::sin(ph),
                             r * std::cos(th)};
                const CVec3 e = field.E_at(x, t);
                return std::norm(e[0]) + std::norm(e[1]) + std::norm(e[2]);
              },
              q);
      const double closed = energy_instant(Q, l0, k0, r0, t, c, W);
      worst = std::max(worst, std::abs(quad - closed) /
                                  std::max(std::abs(closed), 1e-300));
    }
  }
  res.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  res.pass = worst < 0.02;
  res.detail = "max relative deviation = " + detail::fmt(worst);
  return res;
}

// 10. Balmer differences for l0 = 0, n in [20, 40]: exact differences agree
//     with the asymptotic integer model at the 2% level of the spectrum
//     scale.  (For l0 = 0 both sides vanish identically — the Bessel ratio
//     is exactly flat — so the nontrivial 1/m^2 dependence is additionally
//     exercised at l0 = 4.)
inline CriterionResult criterion_10() {
  CriterionResult res{10, "Balmer difference model"};
  const auto start = std::chrono::steady_clock::now();
  const PhysicalConstants c = natural_units();
  const double r0 = 1.0, Q = 1.0;

  const WCoefficients W0 = parametric_w(0, 4.0 * std::numbers::pi);
  const BalmerTable t0 = balmer_differences(Q, 0, r0, c, W0, 20, 40);
  double worst0 = 0;
  for (const auto &row : t0.rows)
    worst0 = std::max(worst0, row.rel_dev_vs_scale);

  const WCoefficients W4 = parametric_w(4, 4.0 * std::numbers::pi);
  const BalmerTable t4 = balmer_differences(Q, 4, r0, c, W4, 30, 50);
  // ratio test: differences against the first pair cancel the prefactor
  double worst4 = 0;
  const auto &ref = t4.rows.front(); // (n0 = 30, n1 = 31)
  auto inv2 = [](int m) { return 1.0 / (double(m) * double(m)); };
  for (const auto &row : t4.rows) {
    if (row.n0 != ref.n0 || row.n1 == ref.n1) continue;
    const double got = row.dU_exact / ref.dU_exact;
    const double want = (inv2(row.m0) - inv2(row.m1)) /
                        (inv2(ref.m0) - inv2(ref.m1));
    worst4 = std::max(worst4, std::abs(got / want - 1.0));
  }
  res.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  res.pass = worst0 < 0.02 && worst4 < 0.02 && res.seconds < 5.0;
  res.detail = "l0=0 max model deviation = " + detail::fmt(worst0) +
               ", l0=4 max 1/m^2 ratio deviation = " + detail::fmt(worst4) +
               ", t = " + detail::fmt(res.seconds) + " s";
  return res;
}

// 11. Conservation: net charge drift over one period below 1e-10 for three
//     fundamental modes (via ball quadrature of rho), and <U> proportional
//     to Q^2 exactly.
inline CriterionResult criterion_11() {
  CriterionResult res{11, "charge conservation and Q^2 scaling"};
  const auto start = std::chrono::steady_clock::now();
  const PhysicalConstants c = natural_units();
  const double r0 = 1.0, Q = 1.0;
  double worst_drift = 0, worst_q2 = 0;
  const SphereQuadOrders q{32, 8, 64};
  for (const auto &[l0, nzero] :
       std::vector<std::pair<int, std::size_t>>{{0, 0}, {0, 2}, {2, 0}}) {
    const double k0 = bessel_zeros(l0, r0, nzero + 1).zeros[nzero];
    const ModeAmplitudes amps = alpha_from_Q(cplx(Q), l0, k0, r0, c);
    const double T = 2.0 * std::numbers::pi / (c.c * k0);
    auto charge_num = [&](double t) {
      return integrate_ball(
          r0,
          [&](double r, double, double) {
            return fundamental_rho(amps, r, t, c);
          },
          q);
    };
    const cplx q0 = charge_num(0.0), qT = charge_num(T);
    worst_drift = std::max(worst_drift, std::abs(qT - q0) / T);

    const WCoefficients W = parametric_w(l0, 4.0 * std::numbers::pi);
    const double u1 = energy_mean(Q, l0, k0, r0, c, W);
    const double u2 = energy_mean(2.0 * Q, l0, k0, r0, c, W);
    worst_q2 = std::max(worst_q2, std::abs(u2 - 4.0 * u1));
  }
  res.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  res.pass = worst_drift < 1e-10 && worst_q2 == 0.0;
  res.detail = "max |Q(T)-Q(0)|/T = " + detail::fmt(worst_drift) +
               ", max |<U>(2Q) - 4<U>(Q)| = " + detail::fmt(worst_q2);
  return res;
}

// 12. ball_fourier_integral (trig closed form) against the independent
//     half-integer Bessel route at 20 random (k, r0).
inline CriterionResult criterion_12() {
  CriterionResult res{12, "ball Fourier integral: trig vs Bessel route"};
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dk(0.1, 20.0), dr(0.1, 3.0);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const double k = dk(rng), r0 = dr(rng);
    const double trig = ball_fourier_integral(k, r0);
    const double bessel =
        std::pow(2.0 * std::numbers::pi * r0 / k, 1.5) *
        bessel_J_half(1, k * r0);
    const double scale =
        4.0 * std::numbers::pi / (k * k * k) * (1.0 + k * r0);
    worst = std::max(worst, std::abs(trig - bessel) / scale);
  }
  res.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  res.pass = worst < 1e-12;
  res.detail = "max scaled deviation = " + detail::fmt(worst);
  return res;
}

inline std::vector<CriterionResult> run_all() {
  return {criterion_1(), criterion_2(), criterion_3(), criterion_4(),
          criterion_5(), criterion_6(), criterion_7(), criterion_8(),
          criterion_9(), criterion_10(), criterion_11(), criterion_12()};
}

} // namespace selftest
} // namespace emwave
