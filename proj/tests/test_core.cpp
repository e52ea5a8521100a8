#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "emwave/constants.hpp"
#include "emwave/fields.hpp"
#include "emwave/grid.hpp"

using namespace emwave;

namespace {

SpacetimeGrid small_grid(std::size_t n = 9, std::size_t nt = 5) {
  const double h = 2.0 / double(n - 1);
  return SpacetimeGrid(Vec3{-1, -1, -1}, {n, n, n}, h, 0.1, nt, 0.0);
}

} // namespace

TEST_CASE("unit systems satisfy c^2 mu0 eps0 = 1") {
  for (const PhysicalConstants &c : {natural_units(), si_units()}) {
    CHECK(c.c * std::sqrt(c.mu0 * c.epsilon0) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(natural_units().c == 1.0);
  CHECK(si_units().c == doctest::Approx(299792458.0));
}

TEST_CASE("grid indexing round-trips and points are affine in the index") {
  const SpacetimeGrid g = small_grid(5, 3);
  CHECK(g.n_space() == 125);
  const Vec3 p = g.point(1, 2, 3);
  CHECK(p[0] == doctest::Approx(-1.0 + 1 * g.h));
  CHECK(p[1] == doctest::Approx(-1.0 + 2 * g.h));
  CHECK(p[2] == doctest::Approx(-1.0 + 3 * g.h));
  CHECK(g.time(2) == doctest::Approx(0.2));
  ScalarField f(g);
  f.at(2, 1, 2, 3) = cplx(7.0, -1.0);
  CHECK(f.values[g.index(2, 1, 2, 3)] == cplx(7.0, -1.0));
}

TEST_CASE("stencils are exact on quadratic fields") {
  // All discrete first/second derivative stencils used by grad/div/curl are
  // second order, so polynomials of total degree <= 2 differentiate exactly,
  // including at the one-sided boundary rows.
  const SpacetimeGrid g = small_grid();
  const ScalarField f = sample_scalar(g, [](double t, const Vec3 &x) {
    return cplx(1.5 + 2.0 * x[0] - x[1] + 0.5 * x[2] + 3.0 * x[0] * x[1] -
                x[2] * x[2] + 0.25 * t * t - t * x[0]);
  });
  const VectorField3 gr = grad(f);
  const ScalarField ft = dt(f);
  double worst = 0;
  for (std::size_t it = 0; it < g.nt; ++it)
    for (std::size_t i = 0; i < g.n[0]; ++i)
      for (std::size_t j = 0; j < g.n[1]; ++j)
        for (std::size_t k = 0; k < g.n[2]; ++k) {
          const Vec3 x = g.point(i, j, k);
          const double t = g.time(it);
          const std::size_t s = g.index(it, i, j, k);
          worst = std::max(worst,
                           std::abs(gr.comp[0][s] - (2.0 + 3.0 * x[1] - t)));
          worst = std::max(worst, std::abs(gr.comp[1][s] - (-1.0 + 3.0 * x[0])));
          worst = std::max(worst, std::abs(gr.comp[2][s] - (0.5 - 2.0 * x[2])));
          worst = std::max(worst, std::abs(ft.values[s] - (0.5 * t - x[0])));
        }
  CHECK(worst < 1e-12);
}

TEST_CASE("curl of grad and div of curl vanish to rounding") {
  const SpacetimeGrid g = small_grid();
  const ScalarField f = sample_scalar(g, [](double t, const Vec3 &x) {
    return cplx(std::sin(2.0 * x[0]) * std::cos(x[1]) * std::exp(0.3 * x[2]) +
                0.1 * t);
  });
  const VectorField3 cg = curl(grad(f));
  CHECK(cg.max_abs() < 1e-12);

  const VectorField3 F = sample_vector(g, [](double, const Vec3 &x) {
    return CVec3{cplx(std::sin(x[1] * x[2])), cplx(std::cos(2.0 * x[0])),
                 cplx(x[0] * x[1] * x[2])};
  });
  CHECK(div(curl(F)).max_abs() < 1e-12);
}

TEST_CASE("d'Alembertian of a travelling plane wave") {
  // f = exp(i(k.x - 2 c|k| t)) solves the wave equation only when the
  // temporal frequency matches c|k|; at twice the frequency the operator
  // returns +3 |k|^2 f.
  const PhysicalConstants c = natural_units();
  const Vec3 kv{1.0, -0.5, 0.25};
  const double kk = dot(kv, kv);
  double res[2];
  for (int level = 0; level < 2; ++level) {
    const std::size_t n = 16 * (1u << level) + 1;
    const double h = 2.0 / double(n - 1);
    const double dtv = 0.02 / double(1u << level);
    const SpacetimeGrid g(Vec3{-1, -1, -1}, {n, n, n}, h, dtv, 5, 0.0);
    const ScalarField f = sample_scalar(g, [&](double t, const Vec3 &x) {
      return std::exp(cplx(0.0, dot(kv, x) - 2.0 * c.c * std::sqrt(kk) * t));
    });
    const ScalarField box = dalembertian(f, c);
    double worst = 0;
    for (std::size_t s = 0; s < box.values.size(); ++s)
      worst = std::max(worst,
                       std::abs(box.values[s] - 3.0 * kk * f.values[s]));
    res[level] = worst;
  }
  CHECK(res[0] < 0.05);
  CHECK(richardson_order(res[0], res[1]) == doctest::Approx(2.0).epsilon(0.15));

  // and the matched-frequency wave is annihilated up to truncation
  const SpacetimeGrid g(Vec3{-1, -1, -1}, {17, 17, 17}, 0.125, 0.02, 5, 0.0);
  const ScalarField wave = sample_scalar(g, [&](double t, const Vec3 &x) {
    return std::exp(cplx(0.0, dot(kv, x) - c.c * std::sqrt(kk) * t));
  });
  // residual floor is set by the one-sided boundary stencils at this resolution
  CHECK(dalembertian(wave, natural_units()).max_abs() < 0.05);
}

TEST_CASE("maxwell_residual flags a broken Faraday law") {
  const PhysicalConstants c = natural_units();
  const SpacetimeGrid g = small_grid();
  // static crossed fields: all residuals vanish for constant E, B in vacuum
  // except Gauss laws trivially; then scale B in time to break Faraday only
  const VectorField3 E = sample_vector(g, [](double, const Vec3 &) {
    return CVec3{cplx(1.0), cplx(0.0), cplx(0.0)};
  });
  const VectorField3 B0 = sample_vector(g, [](double, const Vec3 &) {
    return CVec3{cplx(0.0), cplx(0.0), cplx(2.0)};
  });
  const ScalarField rho(g);
  const VectorField3 J(g);
  const MaxwellResidual ok = maxwell_residual(E, B0, rho, J, c);
  CHECK(ok.gauss_E < 1e-13);
  CHECK(ok.gauss_B < 1e-13);
  CHECK(ok.faraday < 1e-13);
  CHECK(ok.ampere < 1e-13);

  const VectorField3 Bt = sample_vector(g, [](double t, const Vec3 &) {
    return CVec3{cplx(0.0), cplx(0.0), cplx(2.0 + t)};
  });
  const MaxwellResidual bad = maxwell_residual(E, Bt, rho, J, c);
  CHECK(bad.faraday == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(bad.gauss_B < 1e-13);
}

TEST_CASE("poynting magnitude of a crossed unit pair") {
  const PhysicalConstants c = si_units();
  const SpacetimeGrid g = small_grid(5, 3);
  const VectorField3 E = sample_vector(g, [](double, const Vec3 &) {
    return CVec3{cplx(3.0), cplx(0.0), cplx(0.0)};
  });
  const VectorField3 B = sample_vector(g, [&](double, const Vec3 &) {
    return CVec3{cplx(0.0), cplx(3.0 / c.c), cplx(0.0)};
  });
  const VectorField3 S = poynting(E, B, c);
  // |S| = |E|^2 / (mu0 c) for a plane-wave pair, directed along z
  const double expect = 9.0 / (c.mu0 * c.c);
  CHECK(std::abs(S.at(0, 0, 0, 0)[2]) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(std::abs(S.at(0, 0, 0, 0)[0]) < 1e-12);
}

TEST_CASE("richardson_order recovers synthetic rates") {
  CHECK(richardson_order(4.0, 1.0) == doctest::Approx(2.0));
  CHECK(richardson_order(8.0, 1.0) == doctest::Approx(3.0));
}

TEST_CASE("field sampling rejects non-finite values") {
  const SpacetimeGrid g = small_grid(3, 1);
  CHECK_THROWS_AS(sample_scalar(g,
                                [](double, const Vec3 &x) {
                                  return cplx(1.0 / (x[0] + 1.0));
                                }),
                  std::domain_error);
}

TEST_CASE("operators reject grids that are too small in time") {
  const SpacetimeGrid g = small_grid(5, 1);
  const ScalarField f(g);
  CHECK_THROWS(dt(f));
}
