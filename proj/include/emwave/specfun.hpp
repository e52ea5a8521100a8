#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace emwave {

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Legendre polynomial P_l(x) on [-1,1] by the three-term recurrence.
inline double legendre_P(int l, double x) {
  if (l < 0) throw std::domain_error("legendre_P: l >= 0 required");
  if (std::abs(x) > 1.0) throw std::domain_error("legendre_P: |x| <= 1 required");
  double p0 = 1.0;
  if (l == 0) return p0;
  double p1 = x;
  for (int n = 2; n <= l; ++n) {
    const double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

/// Associated Legendre P_{l,m}(x) = (1-x^2)^{m/2} d^m/dx^m P_l(x), without
/// Condon-Shortley phase (the phase sits in the spherical harmonic).
inline double assoc_legendre_P(int l, int m, double x) {
  if (l < 0 || m < 0 || m > l)
    throw std::domain_error("assoc_legendre_P: need 0 <= m <= l");
  if (std::abs(x) > 1.0)
    throw std::domain_error("assoc_legendre_P: |x| <= 1 required");
  if (m == 0) return legendre_P(l, x);
  // P_{m,m} = (2m-1)!! (1-x^2)^{m/2}, then upward in l.
  double pmm = 1.0;
  const double s2 = (1.0 - x) * (1.0 + x);
  double fact = 1.0;
  for (int i = 0; i < m; ++i) {
    pmm *= fact * std::sqrt(s2);
    fact += 2.0;
  }
  if (l == m) return pmm;
  double pm1 = x * (2.0 * m + 1.0) * pmm;
  if (l == m + 1) return pm1;
  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    pll = ((2.0 * ll - 1.0) * x * pm1 - (ll + m - 1.0) * pmm) / (ll - m);
    pmm = pm1;
    pm1 = pll;
  }
  return pll;
}

/// Complex spherical harmonic; negative m through the conjugation rule
/// conj(Y_{l,m}) = (-1)^m Y_{l,-m}.
inline std::complex<double> spherical_harmonic(int l, int m, double theta,
                                               double phi) {
  if (l < 0 || std::abs(m) > l)
    throw std::domain_error("spherical_harmonic: |m| <= l required");
  const int am = std::abs(m);
  const double norm =
      std::sqrt((2.0 * l + 1.0) / (4.0 * M_PI) *
                std::exp(std::lgamma(double(l - am + 1)) -
                         std::lgamma(double(l + am + 1))));
  const double sign = (am % 2 == 0) ? 1.0 : -1.0;
  const double plm = assoc_legendre_P(l, am, std::cos(theta));
  const std::complex<double> y =
      sign * norm * plm *
      std::exp(std::complex<double>(0.0, double(am) * phi));
  if (m >= 0) return y;
  return sign * std::conj(y);
}

/// Spherical Bessel j_l(s), s > 0. Upward recurrence for s >= l, Miller-style
/// downward recurrence normalised by j_0 for s < l (the closed forms are
/// catastrophically cancellative near s = 0 for large l).
inline double spherical_bessel_j(int l, double s) {
  if (l < 0) throw std::domain_error("spherical_bessel_j: l >= 0 required");
  if (!(s > 0.0)) throw std::domain_error("spherical_bessel_j: s > 0 required");
  const double j0 = std::sin(s) / s;
  if (l == 0) return j0;
  const double j1 = std::sin(s) / (s * s) - std::cos(s) / s;
  if (l == 1) return j1;
  if (s >= double(l)) {
    double jm = j0, jc = j1;
    for (int n = 1; n < l; ++n) {
      const double jp = (2.0 * n + 1.0) / s * jc - jm;
      jm = jc;
      jc = jp;
    }
    return jc;
  }
  // downward from a safely high order, rescaling against overflow
  const int nstart = l + 16 + int(s);
  double jp = 0.0, jc = 1e-30;
  double result = 0.0;
  for (int n = nstart; n >= 1; --n) {
    const double jm = (2.0 * n + 1.0) / s * jc - jp;
    jp = jc;
    jc = jm;
    if (n - 1 == l) result = jc;
    if (std::abs(jc) > 1e250) {
      jc *= 1e-250;
      jp *= 1e-250;
      result *= 1e-250;
    }
  }
  return result * (j0 / jc);
}

/// Convenience limit value at s -> 0+.
inline double spherical_bessel_j_limit0(int l) {
  if (l < 0) throw std::domain_error("spherical_bessel_j_limit0: l >= 0");
  return l == 0 ? 1.0 : 0.0;
}

/// d/ds j_l(s) via j_l' = j_{l-1} - (l+1)/s j_l (l >= 1), j_0' = -j_1.
inline double spherical_bessel_j_prime(int l, double s) {
  if (l == 0) return -spherical_bessel_j(1, s);
  return spherical_bessel_j(l - 1, s) -
         (l + 1.0) / s * spherical_bessel_j(l, s);
}

/// Half-integer Bessel J_{l+1/2}(s) = sqrt(2s/pi) j_l(s).
inline double bessel_J_half(int l, double s) {
  if (!(s > 0.0)) throw std::domain_error("bessel_J_half: s > 0 required");
  return std::sqrt(2.0 * s / M_PI) * spherical_bessel_j(l, s);
}

/// Coefficients (ascending powers) of the polynomials P_l, Q_l in
/// j_l(s) = (1/s) (P_l(1/s) sin s - Q_{l-1}(1/s) cos s).
/// Recurrences: P_{l+1} = (2l+1) x P_l - P_{l-1}, Q_l = (2l+1) x Q_{l-1} - Q_{l-2}.
inline std::vector<double> bessel_poly_P(int l) {
  if (l < 0) throw std::domain_error("bessel_poly_P: l >= 0");
  std::vector<double> pm{1.0}, pc{0.0, 1.0}; // P_0, P_1
  if (l == 0) return pm;
  if (l == 1) return pc;
  for (int n = 1; n < l; ++n) {
    std::vector<double> pn(pc.size() + 1, 0.0);
    for (std::size_t i = 0; i < pc.size(); ++i)
      pn[i + 1] += (2.0 * n + 1.0) * pc[i];
    for (std::size_t i = 0; i < pm.size(); ++i) pn[i] -= pm[i];
    pm = std::move(pc);
    pc = std::move(pn);
  }
  return pc;
}

inline std::vector<double> bessel_poly_Q(int l) {
  if (l < -1) throw std::domain_error("bessel_poly_Q: l >= -1");
  if (l == -1) return {};
  std::vector<double> qm{}, qc{1.0}; // Q_{-1}, Q_0
  for (int n = 1; n <= l; ++n) {
    std::vector<double> qn(qc.size() + 1, 0.0);
    for (std::size_t i = 0; i < qc.size(); ++i)
      qn[i + 1] += (2.0 * n + 1.0) * qc[i];
    for (std::size_t i = 0; i < qm.size(); ++i) qn[i] -= qm[i];
    qm = std::move(qc);
    qc = std::move(qn);
  }
  return qc;
}

inline double poly_eval(const std::vector<double> &coeffs, double x) {
  double v = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) v = v * x + coeffs[i];
  return v;
}

/// One spherical-cavity mode label (l, m, k). For cavity-flagged modes k must
/// sit on the Bessel-zero lattice S_l / r0.
struct ModeIndex {
  int l = 0;
  int m = 0;
  double k = 1.0;

  ModeIndex(int l_, int m_, double k_) : l(l_), m(m_), k(k_) {
    if (l < 0 || std::abs(m) > l)
      throw std::domain_error("ModeIndex: need l >= 0 and |m| <= l");
    if (!(k > 0.0)) throw std::domain_error("ModeIndex: k > 0 required");
  }
};

inline bool is_cavity_mode(int l, double k, double r0, double tol = 1e-8) {
  return std::abs(spherical_bessel_j(l, k * r0)) < tol;
}

/// Ascending positive zeros of s -> j_l(k r0), i.e. the first `count`
/// elements of S_l / r0.
struct ZeroTable {
  int l = 0;
  double r0 = 1.0;
  std::vector<double> zeros;    // wavenumbers k with j_l(k r0) = 0
  std::vector<double> residual; // |j_l(k r0)| after polishing
};

/// Bracket zeros of j_l by scanning for sign changes, bisect to 1e-6, then
/// polish with Newton steps using j_l'. The asymptotic seed pi(n + l/2) only
/// guides the scan step; for l >= 6 the raw seed brackets can skip the first
/// zeros, which sit near the turning point s ~ l.
inline ZeroTable bessel_zeros(int l, double r0, std::size_t count) {
  if (l < 0) throw std::domain_error("bessel_zeros: l >= 0 required");
  if (!(r0 > 0.0)) throw std::domain_error("bessel_zeros: r0 > 0 required");
  if (count < 1) throw std::domain_error("bessel_zeros: count >= 1 required");
  ZeroTable table;
  table.l = l;
  table.r0 = r0;

  const double step = M_PI / 16.0;
  double s_prev = std::max(1e-6, 0.1 * l);
  double f_prev = spherical_bessel_j(l, s_prev);
  double s = s_prev;
  while (table.zeros.size() < count) {
    s += step;
    if (s > M_PI * (double(count) + 0.5 * l + 2.0) + double(l) + 10.0)
      throw NumericalError("bessel_zeros: scan exhausted at l=" +
                           std::to_string(l));
    const double f = spherical_bessel_j(l, s);
    if (f_prev == 0.0 || f_prev * f < 0.0) {
      double a = s_prev, b = s, fa = f_prev;
      while (b - a > 1e-6) {
        const double mid = 0.5 * (a + b);
        const double fm = spherical_bessel_j(l, mid);
        if (fa * fm <= 0.0) {
          b = mid;
        } else {
          a = mid;
          fa = fm;
        }
      }
      double root = 0.5 * (a + b);
      bool converged = false;
      for (int it = 0; it < 50; ++it) {
        const double fr = spherical_bessel_j(l, root);
        if (std::abs(fr) < 1e-12) {
          converged = true;
          break;
        }
        const double dfr = spherical_bessel_j_prime(l, root);
        if (dfr == 0.0) break;
        root -= fr / dfr;
      }
      const double res = std::abs(spherical_bessel_j(l, root));
      if (!converged && res > 1e-10)
        throw NumericalError("bessel_zeros: polish failed at (l,n)=(" +
                             std::to_string(l) + "," +
                             std::to_string(table.zeros.size()) + ")");
      table.zeros.push_back(root / r0);
      table.residual.push_back(res);
    }
    s_prev = s;
    f_prev = f;
  }
  return table;
}

/// Radial eigenfunction tau_{l,k}(r) = k sqrt(2/pi) j_l(k r).
inline double radial_tau(int l, double k, double r) {
  const double s = k * r;
  const double j =
      s > 0.0 ? spherical_bessel_j(l, s) : spherical_bessel_j_limit0(l);
  return k * std::sqrt(2.0 / M_PI) * j;
}

inline void require_cavity_k(int l, double k, double r0, const char *who) {
  if (!is_cavity_mode(l, k, r0))
    throw std::invalid_argument(std::string(who) +
                                ": k is not on the zero lattice S_l/r0 (l=" +
                                std::to_string(l) + ", k*r0=" +
                                std::to_string(k * r0) + ")");
}

/// Lommel normalisation c_{l,k} = k^{1/2} r0 J_{l+3/2}(k r0) / sqrt(2), valid
/// on the zero lattice. The squared r^2 dr norm of tau_{l,k} equals
/// (k r0^2 / 2) J_{l+3/2}^2(k r0) = c_{l,k}^2.
inline double norm_constant(int l, double k, double r0) {
  require_cavity_k(l, k, r0, "norm_constant");
  return std::sqrt(k / 2.0) * r0 * bessel_J_half(l + 1, k * r0);
}

inline double radial_norm_squared(int l, double k, double r0) {
  require_cavity_k(l, k, r0, "radial_norm_squared");
  const double j = bessel_J_half(l + 1, k * r0);
  return 0.5 * k * r0 * r0 * j * j;
}

/// Normalised radial basis s_{l,k} = tau_{l,k} / c_{l,k}.
inline double radial_s(int l, double k, double r0, double r) {
  return radial_tau(l, k, r) / norm_constant(l, k, r0);
}

} // namespace emwave
