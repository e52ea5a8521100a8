#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "emwave/constants.hpp"
#include "emwave/grid.hpp"
#include "emwave/quadrature.hpp"
#include "emwave/specfun.hpp"

namespace emwave {

/// Spherical cavity of radius r0 with precomputed zero tables k in S_l/r0.
struct CavityConfig {
  double r0 = 1.0;
  PhysicalConstants consts = natural_units();
  int l_max = 3;
  std::size_t zeros_per_l = 3;
  std::vector<ZeroTable> tables; // index l = 0..l_max

  CavityConfig(double r0_, const PhysicalConstants &consts_, int l_max_,
               std::size_t zeros_per_l_)
      : r0(r0_), consts(consts_), l_max(l_max_), zeros_per_l(zeros_per_l_) {
    if (!(r0 > 0)) throw std::invalid_argument("CavityConfig: r0 > 0 required");
    if (l_max < 0) throw std::invalid_argument("CavityConfig: l_max >= 0");
    if (zeros_per_l < 1)
      throw std::invalid_argument("CavityConfig: zeros_per_l >= 1");
    tables.reserve(static_cast<std::size_t>(l_max) + 1);
    for (int l = 0; l <= l_max; ++l)
      tables.push_back(bessel_zeros(l, r0, zeros_per_l));
  }

  double k_of(int l, std::size_t zero_index) const {
    if (l < 0 || l > l_max || zero_index >= zeros_per_l)
      throw std::out_of_range("CavityConfig: (l, n) outside the table");
    return tables[static_cast<std::size_t>(l)].zeros[zero_index];
  }
};

/// gamma_{l,m,k} = Y_{l,m}(theta,phi) tau_{l,k}(r), the unnormalised cavity
/// eigenfunction of the scalar Laplacian with eigenvalue -k^2.
inline cplx mode_gamma(const ModeIndex &mode, double r, double theta,
                       double phi) {
  if (!(r >= 0.0)) throw std::domain_error("mode_gamma: r >= 0 required");
  return spherical_harmonic(mode.l, mode.m, theta, phi) *
         radial_tau(mode.l, mode.k, r);
}

/// delta_{l,m,k} = Y_{l,m} s_{l,k}, the L^2(B(r0))-orthonormal mode; requires
/// k on the zero lattice.
inline cplx mode_delta(const ModeIndex &mode, double r, double theta,
                       double phi, double r0) {
  if (!(r >= 0.0)) throw std::domain_error("mode_delta: r >= 0 required");
  require_cavity_k(mode.l, mode.k, r0, "mode_delta");
  return spherical_harmonic(mode.l, mode.m, theta, phi) *
         radial_tau(mode.l, mode.k, r) / norm_constant(mode.l, mode.k, r0);
}

/// Max-norm of (lap + k^2) gamma_{l,m,k} over the interior nodes of a static
/// spatial grid, excluding a ball of radius 2h around the coordinate origin
/// where the spherical-coordinate factors are non-smooth in x.
inline double laplacian_eigen_check(const ModeIndex &mode,
                                    const SpacetimeGrid &grid) {
  if (grid.nt != 1)
    throw std::invalid_argument(
        "laplacian_eigen_check: expects a single-time-slice grid");
  auto sample = [&](std::size_t i, std::size_t j, std::size_t k) {
    const Vec3 x = grid.point(i, j, k);
    const double r = norm(x);
    const double theta = r > 0 ? std::acos(std::clamp(x[2] / r, -1.0, 1.0))
                               : 0.0;
    const double phi = std::atan2(x[1], x[0]);
    return mode_gamma(mode, r, theta, phi);
  };
  // precompute values once; the stencil then reads neighbours
  std::vector<cplx> vals(grid.n[0] * grid.n[1] * grid.n[2]);
  for (std::size_t i = 0; i < grid.n[0]; ++i)
    for (std::size_t j = 0; j < grid.n[1]; ++j)
      for (std::size_t k = 0; k < grid.n[2]; ++k)
        vals[grid.index(0, i, j, k)] = sample(i, j, k);

  const double h2 = grid.h * grid.h;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < grid.n[0]; ++i)
    for (std::size_t j = 1; j + 1 < grid.n[1]; ++j)
      for (std::size_t k = 1; k + 1 < grid.n[2]; ++k) {
        const Vec3 x = grid.point(i, j, k);
        if (norm(x) < 2.0 * grid.h) continue; // origin exclusion ball
        const cplx c = vals[grid.index(0, i, j, k)];
        const cplx lap = (vals[grid.index(0, i + 1, j, k)] +
                          vals[grid.index(0, i - 1, j, k)] +
                          vals[grid.index(0, i, j + 1, k)] +
                          vals[grid.index(0, i, j - 1, k)] +
                          vals[grid.index(0, i, j, k + 1)] +
                          vals[grid.index(0, i, j, k - 1)] - 6.0 * c) /
                         h2;
        worst = std::max(worst, std::abs(lap + mode.k * mode.k * c));
      }
  return worst;
}

/// Expansion coefficients W(l,m) = int_{S(1)} nhat conj(Y_{l,m}) dOmega of the
/// unit direction vector, with beta_l = sum_m |W(l,m)|^2.
struct WCoefficients {
  int l_max = 1;
  // W[l] holds 2l+1 vectors, m = -l..l
  std::vector<std::vector<CVec3>> W;
  std::vector<double> beta;

  const CVec3 &at(int l, int m) const {
    if (l < 0 || l > l_max || std::abs(m) > l)
      throw std::out_of_range("WCoefficients: (l,m) out of range");
    return W[static_cast<std::size_t>(l)][static_cast<std::size_t>(m + l)];
  }

  double total() const {
    double s = 0;
    for (double b : beta) s += b;
    return s;
  }
};

inline WCoefficients w_coefficients(int l_max,
                                    const SphereQuadOrders &orders = {}) {
  if (l_max < 1) throw std::invalid_argument("w_coefficients: l_max >= 1");
  if (orders.n_cos_theta < static_cast<std::size_t>(l_max) + 2 ||
      orders.n_phi < 2 * static_cast<std::size_t>(l_max) + 2)
    throw std::invalid_argument(
        "w_coefficients: quadrature order too low for requested l_max");
  WCoefficients out;
  out.l_max = l_max;
  out.W.resize(static_cast<std::size_t>(l_max) + 1);
  out.beta.assign(static_cast<std::size_t>(l_max) + 1, 0.0);
  for (int l = 0; l <= l_max; ++l) {
    out.W[static_cast<std::size_t>(l)].resize(2 * static_cast<std::size_t>(l) +
                                              1);
    for (int m = -l; m <= l; ++m) {
      CVec3 w{};
      for (int c = 0; c < 3; ++c) {
        w[c] = integrate_sphere(
            [&](double theta, double phi) {
              const Vec3 nhat{std::sin(theta) * std::cos(phi),
                              std::sin(theta) * std::sin(phi),
                              std::cos(theta)};
              return nhat[c] * std::conj(spherical_harmonic(l, m, theta, phi));
            },
            orders);
      }
      out.W[static_cast<std::size_t>(l)][static_cast<std::size_t>(m + l)] = w;
      out.beta[static_cast<std::size_t>(l)] +=
          std::norm(w[0]) + std::norm(w[1]) + std::norm(w[2]);
    }
  }
  return out;
}

/// Single-l parametric W set: mass beta_l placed on m = 0 with the i^{1-l}
/// phase that makes the assembled fundamental field real-valued.
inline WCoefficients parametric_w(int l, double beta_l) {
  if (l < 0) throw std::invalid_argument("parametric_w: l >= 0");
  if (!(beta_l > 0)) throw std::invalid_argument("parametric_w: beta_l > 0");
  WCoefficients out;
  out.l_max = std::max(l, 1);
  out.W.resize(static_cast<std::size_t>(out.l_max) + 1);
  out.beta.assign(static_cast<std::size_t>(out.l_max) + 1, 0.0);
  for (int ll = 0; ll <= out.l_max; ++ll)
    out.W[static_cast<std::size_t>(ll)].assign(
        2 * static_cast<std::size_t>(ll) + 1, CVec3{});
  const cplx phase = std::pow(cplx(0.0, 1.0), 1 - l);
  out.W[static_cast<std::size_t>(l)][static_cast<std::size_t>(l)] =
      CVec3{cplx{}, cplx{}, phase * std::sqrt(beta_l)};
  out.beta[static_cast<std::size_t>(l)] = beta_l;
  return out;
}

/// Radial-transform amplitude pair (alpha, beta) for one (l0, k0) key; the
/// scalar profiles f = alpha k / c, g = -beta k / c are always derived.
struct ModeAmplitudes {
  int l0 = 0;
  double k0 = 0;
  cplx alpha{};
  cplx beta{};

  ModeAmplitudes(int l0_, double k0_, cplx alpha_, cplx beta_, double r0)
      : l0(l0_), k0(k0_), alpha(alpha_), beta(beta_) {
    if (l0 < 0) throw std::domain_error("ModeAmplitudes: l0 >= 0");
    require_cavity_k(l0, k0, r0, "ModeAmplitudes");
  }

  cplx f(const PhysicalConstants &consts) const {
    return alpha * k0 / consts.c;
  }
  cplx g(const PhysicalConstants &consts) const {
    return -beta * k0 / consts.c;
  }
};

/// Scalar amplitude maps of the radial transform condition along khat:
/// F = c f, G = -c g, with the algebraic inverses f = F/c, g = -G/c.
inline std::pair<cplx, cplx> amplitudes_forward(cplx f, cplx g, double k,
                                                const PhysicalConstants &c) {
  if (!(k > 0)) throw std::domain_error("amplitudes_forward: k > 0 required");
  return {c.c * f, -c.c * g};
}

inline std::pair<cplx, cplx> amplitudes_inverse(cplx F_scale, cplx G_scale,
                                                double k,
                                                const PhysicalConstants &c) {
  if (!(k > 0)) throw std::domain_error("amplitudes_inverse: k > 0 required");
  return {F_scale / c.c, -G_scale / c.c};
}

/// int_{B(r0)} e^{i k.x} dx for |k| = k: (4 pi / k^3)(sin kr0 - kr0 cos kr0),
/// equal to (2 pi r0 / k)^{3/2} J_{3/2}(k r0); series-guarded near k r0 = 0.
inline double ball_fourier_integral(double k, double r0) {
  if (!(k > 0) || !(r0 > 0))
    throw std::domain_error("ball_fourier_integral: k > 0, r0 > 0 required");
  const double s = k * r0;
  if (s < 1e-4) {
    // (4 pi r0^3 / 3)(1 - s^2/10 + s^4/280)
    const double s2 = s * s;
    return 4.0 * std::numbers::pi * r0 * r0 * r0 / 3.0 *
           (1.0 - s2 / 10.0 + s2 * s2 / 280.0);
  }
  return 4.0 * std::numbers::pi / (k * k * k) *
         (std::sin(s) - s * std::cos(s));
}

/// Total charge of the fundamental solution at t = 0 together with the
/// stationarity defect |alpha + beta| (the conserved-charge constraint
/// forces beta = -alpha; a violation makes dQ/dt nonzero at t = 0+).
struct ChargeResult {
  cplx Q{};
  double stationarity_violation = 0; // |alpha + beta|
};

inline ChargeResult charge_Q(const ModeAmplitudes &amps, double r0,
                             const PhysicalConstants &consts) {
  const double J32 = bessel_J_half(1, amps.k0 * r0);
  const double scale = 4.0 * std::numbers::pi *
                       std::pow(2.0 * std::numbers::pi * r0, 1.5) *
                       std::pow(amps.k0, 1.5) * J32 / consts.c;
  ChargeResult out;
  out.Q = (amps.alpha - amps.beta) * scale;
  out.stationarity_violation = std::abs(amps.alpha + amps.beta);
  return out;
}

/// Invert charge -> amplitudes:
/// alpha = Q c / (8 pi (2 pi r0)^{3/2} k0^{3/2} J_{3/2}(k0 r0)), beta = -alpha.
/// Fails on the l = 1 lattice where J_{3/2}(k0 r0) = 0 (ionised states).
inline ModeAmplitudes alpha_from_Q(cplx Q, int l0, double k0, double r0,
                                   const PhysicalConstants &consts) {
  require_cavity_k(l0, k0, r0, "alpha_from_Q");
  const double J32 = bessel_J_half(1, k0 * r0);
  if (std::abs(J32) < 1e-10)
    throw std::invalid_argument(
        "alpha_from_Q: J_{3/2}(k0 r0) = 0 (l = 1 zero lattice); the charge "
        "places no restriction on the amplitudes — ionisation degeneracy");
  const cplx alpha = Q * consts.c /
                     (8.0 * std::numbers::pi *
                      std::pow(2.0 * std::numbers::pi * r0, 1.5) *
                      std::pow(k0, 1.5) * J32);
  return ModeAmplitudes(l0, k0, alpha, -alpha, r0);
}

namespace detail {
inline double energy_prefactor(double Q, double beta_l0, int l0, double k0,
                               double r0, const PhysicalConstants &consts) {
  const double J32 = bessel_J_half(1, k0 * r0);
  if (std::abs(J32) < 1e-10)
    throw std::invalid_argument(
        "energy: J_{3/2}(k0 r0) = 0 — ionisation degeneracy");
  const double Jl = bessel_J_half(l0 + 1, k0 * r0);
  const double pi8 = std::pow(std::numbers::pi, 8);
  return Q * Q * beta_l0 * (Jl * Jl) /
         (8192.0 * pi8 * consts.epsilon0 * r0 * (J32 * J32));
}
} // namespace detail

/// Instantaneous field energy of the fundamental solution with total charge
/// Q: prefactor * (1 + cos(2 c k0 t)).
inline double energy_instant(double Q, int l0, double k0, double r0, double t,
                             const PhysicalConstants &consts,
                             const WCoefficients &W) {
  require_cavity_k(l0, k0, r0, "energy_instant");
  const double beta_l0 = W.beta.at(static_cast<std::size_t>(l0));
  return detail::energy_prefactor(Q, beta_l0, l0, k0, r0, consts) *
         (1.0 + std::cos(2.0 * consts.c * k0 * t));
}

/// Cycle mean of energy_instant (the cosine averages away).
inline double energy_mean(double Q, int l0, double k0, double r0,
                          const PhysicalConstants &consts,
                          const WCoefficients &W) {
  require_cavity_k(l0, k0, r0, "energy_mean");
  const double beta_l0 = W.beta.at(static_cast<std::size_t>(l0));
  return detail::energy_prefactor(Q, beta_l0, l0, k0, r0, consts);
}

/// Quantised spectrum rows, sorted by (l0, k0).
struct EnergySpectrum {
  double Q = 0;
  struct Row {
    int l0;
    std::size_t n; // 1-based zero index
    int m_label;   // asymptotic label m = 2n + l0
    double k0;
    double mean_energy;
  };
  std::vector<Row> rows;
};

inline EnergySpectrum build_spectrum(double Q, const std::vector<int> &l0_set,
                                     std::size_t n_min, std::size_t n_max,
                                     double r0,
                                     const PhysicalConstants &consts,
                                     const WCoefficients &W) {
  if (n_min < 1 || n_max < n_min)
    throw std::invalid_argument("build_spectrum: need 1 <= n_min <= n_max");
  EnergySpectrum spec;
  spec.Q = Q;
  for (int l0 : l0_set) {
    const ZeroTable zt = bessel_zeros(l0, r0, n_max);
    for (std::size_t n = n_min; n <= n_max; ++n) {
      const double k0 = zt.zeros[n - 1];
      spec.rows.push_back({l0, n, static_cast<int>(2 * n) + l0, k0,
                           energy_mean(Q, l0, k0, r0, consts, W)});
    }
  }
  std::sort(spec.rows.begin(), spec.rows.end(),
            [](const auto &a, const auto &b) {
              return a.l0 != b.l0 ? a.l0 < b.l0 : a.k0 < b.k0;
            });
  return spec;
}

/// Energy differences between zero indices with the asymptotic integer model.
///
/// The closed-form mean energy is prefactor / D(1/s_n)^2 with s_n = k0 r0 the
/// n-th zero of j_{l0} and D(x) = x Q_{l0-1}(x) - P_{l0}(x) (the Wronskian
/// identity P_{l+1} Q_{l-1} - Q_l P_l = -1 collapses the Bessel ratio).  For
/// even l0, D = a + b x^2 + ..., and with s ~ m pi / 2 (m = 2n + l0) the
/// differences follow  -(2b/a^3) pref (2/pi)^2 (1/m0^2 - 1/m1^2); for odd
/// l0 != 1, D = c1 x + ..., giving differences (pi/2)^2 (m0^2 - m1^2) pref /
/// c1^2.  l0 = 1 has D = 0 identically (the ionisation degeneracy).
struct BalmerRow {
  std::size_t n0, n1;
  int m0, m1;
  double dU_exact;
  double dU_model;
  double rel_dev_vs_scale; // |exact - model| / spectrum energy scale
};

struct BalmerTable {
  int l0 = 0;
  double energy_scale = 0; // mean |<U>| over the sampled rows
  std::vector<BalmerRow> rows;
};

inline BalmerTable balmer_differences(double Q, int l0, double r0,
                                      const PhysicalConstants &consts,
                                      const WCoefficients &W,
                                      std::size_t n_min, std::size_t n_max) {
  if (l0 == 1)
    throw std::invalid_argument(
        "balmer_differences: l0 = 1 is the ionisation lattice");
  if (n_min < 1 || n_max <= n_min)
    throw std::invalid_argument("balmer_differences: need 1 <= n_min < n_max");
  const ZeroTable zt = bessel_zeros(l0, r0, n_max);
  const double beta_l0 = W.beta.at(static_cast<std::size_t>(l0));
  const double pref =
      detail::energy_prefactor(Q, beta_l0, l0, zt.zeros[n_min - 1], r0,
                               consts) *
      std::pow(bessel_J_half(1, zt.zeros[n_min - 1] * r0) /
                   bessel_J_half(l0 + 1, zt.zeros[n_min - 1] * r0),
               2.0);
  // pref above is prefactor * D(1/s)^2 at n_min, i.e. the pure
  // Q^2 beta / (8192 pi^8 eps0 r0) scale, recovered without re-deriving it
  const std::vector<double> P = bessel_poly_P(l0);
  const std::vector<double> Qp = bessel_poly_Q(l0 - 1);
  // D coefficients: x*Q_{l0-1}(x) - P_{l0}(x)
  std::vector<double> D(std::max(Qp.size() + 1, P.size()), 0.0);
  for (std::size_t i = 0; i < Qp.size(); ++i) D[i + 1] += Qp[i];
  for (std::size_t i = 0; i < P.size(); ++i) D[i] -= P[i];

  auto exact_U = [&](std::size_t n) {
    const double k0 = zt.zeros[n - 1];
    return energy_mean(Q, l0, k0, r0, consts, W);
  };
  auto model_U = [&](int m) {
    const double x = 2.0 / (std::numbers::pi * static_cast<double>(m));
    if (l0 % 2 == 0) {
      const double a = D[0];
      const double b = D.size() > 2 ? D[2] : 0.0;
      return pref * (1.0 / (a * a) - 2.0 * b / (a * a * a) * x * x);
    }
    const double c1 = D.size() > 1 ? D[1] : 0.0;
    const double c3 = D.size() > 3 ? D[3] : 0.0;
    return pref * (1.0 / (c1 * c1 * x * x) - 2.0 * c3 / (c1 * c1 * c1));
  };

  BalmerTable table;
  table.l0 = l0;
  double scale = 0;
  for (std::size_t n = n_min; n <= n_max; ++n) scale += std::abs(exact_U(n));
  scale /= static_cast<double>(n_max - n_min + 1);
  table.energy_scale = scale;
  for (std::size_t n0 = n_min; n0 < n_max; ++n0)
    for (std::size_t n1 = n0 + 1; n1 <= n_max; ++n1) {
      BalmerRow row;
      row.n0 = n0;
      row.n1 = n1;
      row.m0 = static_cast<int>(2 * n0) + l0;
      row.m1 = static_cast<int>(2 * n1) + l0;
      row.dU_exact = exact_U(n0) - exact_U(n1);
      row.dU_model = model_U(row.m0) - model_U(row.m1);
      row.rel_dev_vs_scale =
          std::abs(row.dU_exact - row.dU_model) / (scale > 0 ? scale : 1.0);
      table.rows.push_back(row);
    }
  return table;
}

/// Fundamental electric field for one (l0, k0) with total charge Q:
///   E(x, t) = (2 cos(c k0 t) / (i c k0 eps0)) sum_m U_m tau_{l0,k0}(r) Y_{l0,m}
/// with U_m = alpha sqrt(2/pi) i^{l0} k0^2 / (4 pi) conj(W(l0, m)) and
/// beta = -alpha folded in.  Returns the (vector-valued) field on the grid.
struct FundamentalField {
  ModeAmplitudes amps;
  double r0;
  PhysicalConstants consts;
  const WCoefficients &W;
  cplx coef; // front * ucoef, time-independent

  FundamentalField(double Q, int l0, double k0, double r0_,
                   const PhysicalConstants &consts_, const WCoefficients &W_)
      : amps(alpha_from_Q(cplx(Q), l0, k0, r0_, consts_)),
        r0(r0_),
        consts(consts_),
        W(W_) {
    const cplx il = std::pow(cplx(0.0, 1.0), l0);
    const cplx ucoef = amps.alpha * std::sqrt(2.0 / std::numbers::pi) * il *
                       k0 * k0 / (4.0 * std::numbers::pi);
    const cplx front =
        2.0 / (cplx(0.0, 1.0) * consts.c * k0 * consts.epsilon0);
    coef = front * ucoef;
  }

  CVec3 E_at(const Vec3 &x, double t) const {
    const int l0 = amps.l0;
    const double k0 = amps.k0;
    const double r = norm(x);
    const double theta =
        r > 0 ? std::acos(std::clamp(x[2] / r, -1.0, 1.0)) : 0.0;
    const double phi = std::atan2(x[1], x[0]);
    const double tau = radial_tau(l0, k0, r);
    const double ct = std::cos(consts.c * k0 * t);
    CVec3 e{};
    for (int m = -l0; m <= l0; ++m) {
      const cplx y = spherical_harmonic(l0, m, theta, phi);
      const CVec3 &w = W.at(l0, m);
      const cplx factor = coef * ct * tau * y;
      for (int c = 0; c < 3; ++c) e[c] += factor * std::conj(w[c]);
    }
    return e;
  }
};

inline VectorField3 synthesize_fundamental_E(double Q, int l0, double k0,
                                             double r0,
                                             const PhysicalConstants &consts,
                                             const WCoefficients &W,
                                             const SpacetimeGrid &grid) {
  const FundamentalField field(Q, l0, k0, r0, consts, W);
  VectorField3 out(grid);
  for (std::size_t it = 0; it < grid.nt; ++it)
    for (std::size_t i = 0; i < grid.n[0]; ++i)
      for (std::size_t j = 0; j < grid.n[1]; ++j)
        for (std::size_t kk = 0; kk < grid.n[2]; ++kk)
          out.set(it, i, j, kk,
                  field.E_at(grid.point(i, j, kk), grid.time(it)));
  return out;
}

/// Pointwise fundamental source pair implied by the radial transform,
/// independent of l0 (the direction expansion is supported on l = 1):
///   rho = (8 pi alpha k0^3 / c) cos(c k0 t) j0(k0 r)
///   J   =  8 pi alpha k0^3 sin(c k0 t) j1(k0 r) rhat
inline cplx fundamental_rho(const ModeAmplitudes &amps, double r, double t,
                            const PhysicalConstants &consts) {
  const double s = amps.k0 * r;
  const double j0 = s > 0 ? spherical_bessel_j(0, s) : 1.0;
  return 8.0 * std::numbers::pi * amps.alpha * std::pow(amps.k0, 3) / consts.c *
         std::cos(consts.c * amps.k0 * t) * j0;
}

inline CVec3 fundamental_J(const ModeAmplitudes &amps, const Vec3 &x, double t,
                           const PhysicalConstants &consts) {
  const double r = norm(x);
  if (r == 0.0) return CVec3{};
  const double j1 = spherical_bessel_j(1, amps.k0 * r);
  const cplx mag = 8.0 * std::numbers::pi * amps.alpha *
                   std::pow(amps.k0, 3) *
                   std::sin(consts.c * amps.k0 * t) * j1;
  return {mag * x[0] / r, mag * x[1] / r, mag * x[2] / r};
}

/// Ball integral of fundamental_rho at time t: Q(t) = Q(0) cos(c k0 t),
/// evaluated in closed form through ball_fourier_integral.
inline cplx charge_at_time(const ModeAmplitudes &amps, double r0, double t,
                           const PhysicalConstants &consts) {
  // ball_fourier_integral(k, r0) equals int_B j0(k r) dV (angular average
  // of the plane wave), so Q(t) follows directly from fundamental_rho
  return 8.0 * std::numbers::pi * amps.alpha * std::pow(amps.k0, 3) /
         consts.c * std::cos(consts.c * amps.k0 * t) *
         ball_fourier_integral(amps.k0, r0);
}

/// Net charge drift over one period, (Q(T) - Q(0))/T: zero for the cosine
/// time dependence regardless of lattice.
inline double charge_drift_per_period(const ModeAmplitudes &amps, double r0,
                                      const PhysicalConstants &consts) {
  const double T =
      2.0 * std::numbers::pi / (consts.c * amps.k0);
  return std::abs(charge_at_time(amps, r0, T, consts) -
                  charge_at_time(amps, r0, 0.0, consts)) /
         T;
}

} // namespace emwave
