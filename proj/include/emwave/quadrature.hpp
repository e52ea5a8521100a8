#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace emwave {

/// Gauss-Legendre rule on [-1,1]: Newton iteration on P_n with the Chebyshev
/// seed, weights 2/((1-x^2) P_n'(x)^2).
struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;

  explicit GaussLegendre(std::size_t npts) {
    if (npts == 0) throw std::invalid_argument("GaussLegendre: npts >= 1");
    x.resize(npts);
    w.resize(npts);
    const std::size_t m = (npts + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
      double xi = std::cos(M_PI * (double(i) + 0.75) / (double(npts) + 0.5));
      double dp = 0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = xi;
        for (std::size_t l = 2; l <= npts; ++l) {
          const double p2 = ((2.0 * l - 1.0) * xi * p1 - (l - 1.0) * p0) / l;
          p0 = p1;
          p1 = p2;
        }
        dp = npts * (xi * p1 - p0) / (xi * xi - 1.0);
        const double dx = p1 / dp;
        xi -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      x[i] = -xi;
      x[npts - 1 - i] = xi;
      w[i] = w[npts - 1 - i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
  }

  /// Nodes/weights mapped to [a,b].
  GaussLegendre mapped(double a, double b) const {
    GaussLegendre out = *this;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < x.size(); ++i) {
      out.x[i] = mid + half * x[i];
      out.w[i] = half * w[i];
    }
    return out;
  }

  double integrate(const std::function<double(double)> &f) const {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(x[i]);
    return s;
  }
};

/// Default orders for spherical quadrature: Gauss-Legendre in cos(theta) and
/// r, periodic trapezoid in phi.
struct SphereQuadOrders {
  std::size_t n_cos_theta = 64;
  std::size_t n_phi = 128;
  std::size_t n_r = 64;
};

/// Surface quadrature on the unit sphere. f(theta, phi) is integrated against
/// dOmega = sin(theta) dtheta dphi.
template <typename F>
auto integrate_sphere(F &&f, const SphereQuadOrders &q = {}) {
  const GaussLegendre gl(q.n_cos_theta);
  using R = decltype(f(0.0, 0.0));
  R sum{};
  const double dphi = 2.0 * M_PI / double(q.n_phi);
  for (std::size_t i = 0; i < q.n_cos_theta; ++i) {
    const double theta = std::acos(gl.x[i]);
    R ring{};
    for (std::size_t j = 0; j < q.n_phi; ++j) {
      const double phi = -M_PI + dphi * double(j);
      ring += f(theta, phi);
    }
    sum += gl.w[i] * dphi * ring;
  }
  return sum;
}

/// Volume quadrature on the ball of radius r0, f(r, theta, phi) against
/// r^2 dr dOmega. Gauss nodes in r never touch r = 0.
template <typename F>
auto integrate_ball(double r0, F &&f, const SphereQuadOrders &q = {}) {
  const GaussLegendre gr = GaussLegendre(q.n_r).mapped(0.0, r0);
  using R = decltype(f(0.0, 0.0, 0.0));
  R sum{};
  for (std::size_t ir = 0; ir < q.n_r; ++ir) {
    const double r = gr.x[ir];
    R shell = integrate_sphere(
        [&](double th, double ph) { return f(r, th, ph); },
        SphereQuadOrders{q.n_cos_theta, q.n_phi, 1});
    sum += gr.w[ir] * r * r * shell;
  }
  return sum;
}

} // namespace emwave
