#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "emwave/cavity.hpp"
#include "emwave/quadrature.hpp"

using namespace emwave;

namespace {
const PhysicalConstants nat = natural_units();
const double pi = std::numbers::pi;
} // namespace

TEST_CASE("cavity configuration tabulates the zero lattice") {
  const CavityConfig cfg(2.0, nat, 2, 3);
  CHECK(cfg.k_of(0, 0) == doctest::Approx(pi / 2.0));
  CHECK(cfg.k_of(0, 2) == doctest::Approx(3.0 * pi / 2.0));
  CHECK(std::abs(spherical_bessel_j(2, cfg.k_of(2, 1) * 2.0)) < 1e-10);
  CHECK_THROWS_AS(cfg.k_of(3, 0), std::out_of_range);
  CHECK_THROWS_AS(CavityConfig(-1.0, nat, 2, 3), std::invalid_argument);
}

TEST_CASE("mode functions vanish on the cavity wall") {
  const double r0 = 1.3;
  for (int l : {0, 1, 3}) {
    const double k = bessel_zeros(l, r0, 2).zeros[1];
    const ModeIndex mode(l, std::min(l, 1), k);
    CHECK(std::abs(mode_gamma(mode, r0, 0.7, 1.9)) < 1e-9);
    CHECK(std::abs(mode_delta(mode, r0, 0.7, 1.9, r0)) < 1e-9);
  }
}

TEST_CASE("delta modes are unit-normalised in the ball") {
  const double r0 = 1.0;
  const ModeIndex mode(2, -1, bessel_zeros(2, r0, 1).zeros[0]);
  const double nrm = integrate_ball(r0, [&](double r, double th, double ph) {
    return std::norm(mode_delta(mode, r, th, ph, r0));
  });
  CHECK(nrm == doctest::Approx(1.0).epsilon(1e-6));
  // gamma at the origin for l = 0 is tau(0) times the 1/sqrt(4 pi) angular factor
  const ModeIndex s_mode(0, 0, pi);
  CHECK(mode_gamma(s_mode, 0.0, 0.3, 0.3).real() ==
        doctest::Approx(radial_tau(0, pi, 0.0) / std::sqrt(4.0 * pi)));
}

TEST_CASE("mode_delta refuses off-lattice wavenumbers") {
  CHECK_THROWS(mode_delta(ModeIndex(1, 0, 2.0), 0.5, 0.1, 0.1, 1.0));
}

TEST_CASE("gamma is an eigenfunction of the discrete Laplacian") {
  const double r0 = 1.0;
  const ModeIndex mode(1, 1, bessel_zeros(1, r0, 1).zeros[0]);
  double res[2];
  for (int level = 0; level < 2; ++level) {
    const std::size_t n = 24 * (1u << level) + 1;
    const double h = 1.0 / double(n - 1); // cover [-0.5, 0.5]^3, inside B
    const SpacetimeGrid g(Vec3{-0.5, -0.5, -0.5}, {n, n, n}, h, 1.0, 1, 0.0);
    res[level] = laplacian_eigen_check(mode, g);
  }
  CHECK(res[0] < 0.05);
  CHECK(res[1] < 0.3 * res[0]); // ~ fourfold drop for a second-order stencil
  // a wavenumber off the lattice is still an eigenfunction of the Laplacian
  // in the open ball; the residual stays small
  const ModeIndex off(1, 0, 3.0);
  const SpacetimeGrid g(Vec3{-0.5, -0.5, -0.5}, {25, 25, 25}, 1.0 / 24, 1.0,
                        1, 0.0);
  CHECK(laplacian_eigen_check(off, g) < 0.05);
}

TEST_CASE("direction-vector expansion coefficients") {
  const WCoefficients W = w_coefficients(3);
  SUBCASE("the expansion is supported on l = 1 with total 4 pi") {
    CHECK(W.beta[0] < 1e-8);
    CHECK(W.beta[1] == doctest::Approx(4.0 * pi).epsilon(1e-8));
    CHECK(W.beta[2] < 1e-8);
    CHECK(W.beta[3] < 1e-8);
    CHECK(W.total() == doctest::Approx(4.0 * pi).epsilon(1e-8));
  }
  SUBCASE("m = 0 coefficient points along z") {
    const CVec3 &w = W.at(1, 0);
    CHECK(std::abs(w[0]) < 1e-8);
    CHECK(std::abs(w[1]) < 1e-8);
    CHECK(std::abs(w[2] - cplx(std::sqrt(4.0 * pi / 3.0))) < 1e-8);
  }
  SUBCASE("quadrature order guard") {
    CHECK_THROWS_AS(w_coefficients(10, SphereQuadOrders{4, 4, 1}),
                    std::invalid_argument);
  }
}

TEST_CASE("parametric W mirrors the computed l = 1 coefficients") {
  const WCoefficients Wp = parametric_w(1, 4.0 * pi);
  CHECK(Wp.beta[1] == doctest::Approx(4.0 * pi));
  // i^{1-l} = 1 at l = 1: the mass sits on m = 0, z component, real
  CHECK(Wp.at(1, 0)[2].real() == doctest::Approx(std::sqrt(4.0 * pi)));
  CHECK(Wp.at(1, 0)[2].imag() == doctest::Approx(0.0));
  CHECK(std::abs(Wp.at(1, 1)[2]) == 0.0);
}

TEST_CASE("amplitude maps round-trip and match the scalar relations") {
  const PhysicalConstants c = si_units();
  const cplx f(0.3, -1.2), g(2.0, 0.7);
  const auto [F, G] = amplitudes_forward(f, g, 5.0, c);
  CHECK(F == c.c * f);
  CHECK(G == -c.c * g);
  const auto [f2, g2] = amplitudes_inverse(F, G, 5.0, c);
  CHECK(std::abs(f2 - f) < 1e-12 * std::abs(f));
  CHECK(std::abs(g2 - g) < 1e-12 * std::abs(g));
  // g = +1 maps to G = -c
  CHECK(amplitudes_forward(cplx(0.0), cplx(1.0), 1.0, c).second ==
        cplx(-c.c));
}

TEST_CASE("mode amplitude profiles f and g") {
  const double r0 = 1.0, k0 = pi;
  const ModeAmplitudes amps(0, k0, cplx(2.0, 1.0), cplx(-2.0, -1.0), r0);
  CHECK(amps.f(nat) == amps.alpha * k0);
  CHECK(amps.g(nat) == -amps.beta * k0);
}

TEST_CASE("ball Fourier integral") {
  SUBCASE("matches the half-integer Bessel expression") {
    const double k = 2.7, r0 = 1.4;
    const double viaJ = std::pow(2.0 * pi * r0 / k, 1.5) *
                        bessel_J_half(1, k * r0);
    CHECK(ball_fourier_integral(k, r0) ==
          doctest::Approx(viaJ).epsilon(1e-12));
  }
  SUBCASE("small-argument limit is the ball volume") {
    const double r0 = 0.9;
    CHECK(ball_fourier_integral(1e-9, r0) ==
          doctest::Approx(4.0 * pi * r0 * r0 * r0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("vanishes on the l = 1 lattice") {
    // zeros of j_1 are the tan s = s lattice where sin - s cos = 0
    const double k = bessel_zeros(1, 1.0, 1).zeros[0];
    CHECK(std::abs(ball_fourier_integral(k, 1.0)) < 1e-9);
  }
}

TEST_CASE("charge of the fundamental solution") {
  const double r0 = 1.0;
  SUBCASE("alpha_from_Q round-trips through charge_Q") {
    const double k0 = bessel_zeros(0, r0, 2).zeros[1];
    const cplx Q(3.0, -0.5);
    const ModeAmplitudes amps = alpha_from_Q(Q, 0, k0, r0, nat);
    CHECK(amps.beta == -amps.alpha);
    const ChargeResult back = charge_Q(amps, r0, nat);
    CHECK(std::abs(back.Q - Q) < 1e-12 * std::abs(Q));
    CHECK(back.stationarity_violation < 1e-14);
  }
  SUBCASE("the l = 1 lattice is ionised: no charge can be assigned") {
    const double k1 = bessel_zeros(1, r0, 1).zeros[0];
    CHECK_THROWS_AS(alpha_from_Q(cplx(1.0), 1, k1, r0, nat),
                    std::invalid_argument);
  }
  SUBCASE("charge oscillates as cos(c k0 t) and drifts by nothing per period") {
    const double k0 = bessel_zeros(2, r0, 1).zeros[0];
    const ModeAmplitudes amps = alpha_from_Q(cplx(1.0), 2, k0, r0, nat);
    const cplx q0 = charge_at_time(amps, r0, 0.0, nat);
    const double T = 2.0 * pi / (nat.c * k0);
    const cplx qq = charge_at_time(amps, r0, 0.25 * T, nat);
    CHECK(std::abs(qq) < 1e-12 * std::abs(q0));
    CHECK(charge_drift_per_period(amps, r0, nat) < 1e-12 * std::abs(q0));
  }
}

TEST_CASE("energy of the fundamental mode") {
  const double r0 = 1.0, Q = 2.0;
  const int l0 = 0;
  const double k0 = pi;
  const WCoefficients W = parametric_w(l0, 4.0 * pi);
  const double T = 2.0 * pi / (nat.c * k0);
  SUBCASE("instantaneous energy: doubled at t = 0, zero at quarter period") {
    const double mean = energy_mean(Q, l0, k0, r0, nat, W);
    CHECK(energy_instant(Q, l0, k0, r0, 0.0, nat, W) ==
          doctest::Approx(2.0 * mean).epsilon(1e-12));
    CHECK(energy_instant(Q, l0, k0, r0, 0.25 * T, nat, W) <= 1e-12 * mean);
  }
  SUBCASE("cycle mean equals the time average, by Simpson quadrature") {
    const std::size_t N = 64;
    double acc = 0;
    for (std::size_t i = 0; i <= N; ++i) {
      const double w = (i == 0 || i == N) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      acc += w * energy_instant(Q, l0, k0, r0, T * double(i) / double(N),
                                nat, W);
    }
    acc *= T / (3.0 * double(N)) / T;
    CHECK(acc == doctest::Approx(energy_mean(Q, l0, k0, r0, nat, W))
                     .epsilon(1e-10));
  }
  SUBCASE("energy scales with Q^2 and with beta") {
    const double u = energy_mean(Q, l0, k0, r0, nat, W);
    CHECK(energy_mean(3.0 * Q, l0, k0, r0, nat, W) ==
          doctest::Approx(9.0 * u).epsilon(1e-14));
    const WCoefficients W2 = parametric_w(l0, 8.0 * pi);
    CHECK(energy_mean(Q, l0, k0, r0, nat, W2) ==
          doctest::Approx(2.0 * u).epsilon(1e-14));
  }
}

TEST_CASE("energy spectrum table") {
  const double r0 = 1.0, Q = 1.0;
  // energy_mean only reads beta_l0; give both requested l's the full 4 pi
  WCoefficients W = parametric_w(2, 4.0 * pi);
  W.beta[0] = 4.0 * pi;
  const EnergySpectrum spec = build_spectrum(Q, {0, 2}, 1, 4, r0, nat, W);
  REQUIRE(spec.rows.size() == 8);
  // sorted by (l0, n); m label is 2n + l0
  CHECK(spec.rows.front().l0 == 0);
  CHECK(spec.rows.front().n == 1);
  CHECK(spec.rows.front().m_label == 2);
  CHECK(spec.rows.back().l0 == 2);
  CHECK(spec.rows.back().m_label == 10);
  for (const auto &row : spec.rows) {
    CHECK(std::abs(spherical_bessel_j(row.l0, row.k0 * r0)) < 1e-10);
    CHECK(row.mean_energy > 0.0);
  }
}

TEST_CASE("exact spectra are flat for l0 = 0 and l0 = 2") {
  // the trig-polynomial ratio collapses to a constant on these lattices, so
  // all level differences vanish identically
  const double r0 = 1.0, Q = 1.0;
  for (int l0 : {0, 2}) {
    const WCoefficients W = parametric_w(l0, 4.0 * pi);
    const BalmerTable t = balmer_differences(Q, l0, r0, nat, W, 2, 8);
    for (const auto &row : t.rows) {
      // the zero lattice itself is polished to ~1e-10, which is the only
      // thing keeping these from being exact
      CHECK(std::abs(row.dU_exact) < 1e-8 * t.energy_scale);
      CHECK(std::abs(row.dU_model) < 1e-12 * t.energy_scale);
    }
  }
}

TEST_CASE("l0 = 4 spectrum carries the inverse-square level structure") {
  const double r0 = 1.0, Q = 1.0;
  const WCoefficients W = parametric_w(4, 4.0 * pi);
  const BalmerTable t = balmer_differences(Q, 4, r0, nat, W, 15, 30);
  REQUIRE(!t.rows.empty());
  for (const auto &row : t.rows) {
    // U shrinks toward the m -> infinity limit, so level differences taken
    // low-minus-high come out positive
    CHECK(row.dU_exact > 0.0);
    CHECK(row.rel_dev_vs_scale < 0.02);
    // and the differences follow 1/m0^2 - 1/m1^2 to leading order
    const double pred = 1.0 / double(row.m0 * row.m0) -
                        1.0 / double(row.m1 * row.m1);
    CHECK(row.dU_exact / t.rows.front().dU_exact ==
          doctest::Approx(pred / (1.0 / double(t.rows.front().m0 *
                                               t.rows.front().m0) -
                                  1.0 / double(t.rows.front().m1 *
                                               t.rows.front().m1)))
              .epsilon(0.05));
  }
}

TEST_CASE("balmer_differences refuses the ionisation lattice") {
  const WCoefficients W = parametric_w(1, 4.0 * pi);
  CHECK_THROWS_AS(balmer_differences(1.0, 1, 1.0, nat, W, 2, 5),
                  std::invalid_argument);
}

TEST_CASE("fundamental field") {
  const double r0 = 1.0, Q = 1.5;
  SUBCASE("assembled field is real for the parametric W phases") {
    for (int l0 : {0, 2}) {
      const double k0 = bessel_zeros(l0, r0, 1).zeros[0];
      const WCoefficients W = parametric_w(l0, 4.0 * pi);
      const FundamentalField f(Q, l0, k0, r0, nat, W);
      double worst = 0;
      for (double z : {-0.7, 0.1, 0.6})
        for (double x : {-0.3, 0.4}) {
          const CVec3 e = f.E_at(Vec3{x, 0.2, z}, 0.13);
          for (int a = 0; a < 3; ++a)
            worst = std::max(worst, std::abs(e[a].imag()));
        }
      CHECK(worst < 1e-10);
    }
  }
  SUBCASE("field is stationary in pattern: time enters as cos(c k0 t)") {
    const double k0 = pi;
    const WCoefficients W = parametric_w(0, 4.0 * pi);
    const FundamentalField f(Q, 0, k0, r0, nat, W);
    const Vec3 x{0.3, -0.2, 0.5};
    const CVec3 e0 = f.E_at(x, 0.0);
    const double t = 0.31;
    const CVec3 et = f.E_at(x, t);
    const double scale = std::cos(nat.c * k0 * t);
    for (int a = 0; a < 3; ++a)
      CHECK(std::abs(et[a] - scale * e0[a]) < 1e-12);
  }
  SUBCASE("grid synthesis agrees with the pointwise evaluator") {
    const double k0 = pi;
    const WCoefficients W = parametric_w(0, 4.0 * pi);
    const FundamentalField f(Q, 0, k0, r0, nat, W);
    const SpacetimeGrid g(Vec3{-0.4, -0.4, -0.4}, {3, 3, 3}, 0.4, 0.2, 2,
                          0.0);
    const VectorField3 E = synthesize_fundamental_E(Q, 0, k0, r0, nat, W, g);
    const CVec3 via_field = f.E_at(g.point(2, 1, 0), g.time(1));
    const CVec3 via_grid = E.at(1, 2, 1, 0);
    for (int a = 0; a < 3; ++a)
      CHECK(std::abs(via_grid[a] - via_field[a]) == 0.0);
  }
  SUBCASE("distinct modes are energy-orthogonal in the ball") {
    // cross term of two l0 = 0 modes integrates to zero over the ball
    const WCoefficients W = parametric_w(0, 4.0 * pi);
    const FundamentalField fa(Q, 0, pi, r0, nat, W);
    const FundamentalField fb(Q, 0, 2.0 * pi, r0, nat, W);
    const cplx cross = integrate_ball(r0, [&](double r, double th, double ph) {
      const Vec3 x{r * std::sin(th) * std::cos(ph),
                   r * std::sin(th) * std::sin(ph), r * std::cos(th)};
      const CVec3 ea = fa.E_at(x, 0.0);
      const CVec3 eb = fb.E_at(x, 0.0);
      return ea[0] * std::conj(eb[0]) + ea[1] * std::conj(eb[1]) +
             ea[2] * std::conj(eb[2]);
    });
    const double na = std::abs(integrate_ball(r0, [&](double r, double th,
                                                      double ph) {
      const Vec3 x{r * std::sin(th) * std::cos(ph),
                   r * std::sin(th) * std::sin(ph), r * std::cos(th)};
      const CVec3 ea = fa.E_at(x, 0.0);
      return ea[0] * std::conj(ea[0]) + ea[1] * std::conj(ea[1]) +
             ea[2] * std::conj(ea[2]);
    }));
    CHECK(std::abs(cross) < 1e-6 * na);
  }
}

TEST_CASE("fundamental source pair satisfies continuity in closed form") {
  // d/dt rho + div J = 0 follows from (d/ds)(s^2 j1) = s^2 j0; check it
  // numerically at scattered points
  const double r0 = 1.0;
  const double k0 = bessel_zeros(0, r0, 1).zeros[0];
  const ModeAmplitudes amps = alpha_from_Q(cplx(1.0), 0, k0, r0, nat);
  const double eps = 1e-6;
  for (const Vec3 &x : {Vec3{0.3, 0.1, -0.2}, Vec3{-0.5, 0.4, 0.3}}) {
    for (double t : {0.2, 0.9}) {
      const cplx drho = (fundamental_rho(amps, norm(x), t + eps, nat) -
                         fundamental_rho(amps, norm(x), t - eps, nat)) /
                        (2.0 * eps);
      cplx divJ = 0;
      for (int a = 0; a < 3; ++a) {
        Vec3 xp = x, xm = x;
        xp[a] += eps;
        xm[a] -= eps;
        divJ += (fundamental_J(amps, xp, t, nat)[a] -
                 fundamental_J(amps, xm, t, nat)[a]) /
                (2.0 * eps);
      }
      CHECK(std::abs(drho + divJ) < 1e-4 * std::abs(drho));
    }
  }
}
