#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "emwave/constants.hpp"
#include "emwave/fields.hpp"
#include "emwave/grid.hpp"

namespace emwave {

/// One discrete plane-wave mode amplitude * pol * e^{i(k.x + sign*w t)},
/// w = c|k|.  sign = -1 is the e^{-iwt} branch, sign = +1 the conjugate one.
struct PlaneWaveMode {
  Vec3 k{};
  CVec3 pol{};
  int sign = -1;
  cplx amplitude{1.0, 0.0};

  double omega(const PhysicalConstants &consts) const {
    return consts.c * norm(k);
  }

  void require_valid() const {
    if (norm(k) == 0.0)
      throw std::domain_error("PlaneWaveMode: zero wavevector");
    if (sign != 1 && sign != -1)
      throw std::domain_error("PlaneWaveMode: sign must be +1 or -1");
    if (!std::isfinite(amplitude.real()) || !std::isfinite(amplitude.imag()))
      throw std::domain_error("PlaneWaveMode: non-finite amplitude");
  }

  /// Transversality pol.k = 0 relative to |pol||k|, the Maxwell-mode flag.
  bool is_transverse(double tol = 1e-12) const {
    cplx d = 0;
    for (int a = 0; a < 3; ++a) d += pol[a] * k[a];
    const double scale = norm(pol) * norm(k);
    return std::abs(d) <= tol * (scale > 0 ? scale : 1.0);
  }
};

/// E(x,t) = sum_m amp_m pol_m e^{i(k_m.x + sign_m w_m t)} on the grid.
inline VectorField3 synthesize_E(const std::vector<PlaneWaveMode> &modes,
                                 const SpacetimeGrid &grid,
                                 const PhysicalConstants &consts) {
  if (modes.empty())
    throw std::invalid_argument("synthesize_E: empty mode list");
  for (const auto &m : modes) m.require_valid();

  VectorField3 out(grid);
#pragma omp parallel for collapse(2)
  for (std::size_t it = 0; it < grid.nt; ++it)
    for (std::size_t i = 0; i < grid.n[0]; ++i)
      for (std::size_t j = 0; j < grid.n[1]; ++j)
        for (std::size_t k = 0; k < grid.n[2]; ++k) {
          const Vec3 x = grid.point(i, j, k);
          const double t = grid.time(it);
          CVec3 e{};
          for (const auto &m : modes) {
            const double phase =
                dot(m.k, x) + m.sign * m.omega(consts) * t;
            const cplx factor = m.amplitude * std::polar(1.0, phase);
            for (int a = 0; a < 3; ++a) e[a] += factor * m.pol[a];
          }
          out.set(it, i, j, k, e);
        }
  return out;
}

/// Magnetic mode induced by a transverse electric mode via Faraday's law:
/// B-pol = -sign (k x pol)/w, so the e^{-iwt} branch carries +(k x pol)/w.
inline PlaneWaveMode induced_B(const PlaneWaveMode &mode,
                               const PhysicalConstants &consts) {
  mode.require_valid();
  if (!mode.is_transverse())
    throw std::invalid_argument("induced_B: mode polarisation not transverse");
  const double w = mode.omega(consts);
  const CVec3 kc{cplx(mode.k[0]), cplx(mode.k[1]), cplx(mode.k[2])};
  CVec3 b = cross(kc, mode.pol);
  const double s = -static_cast<double>(mode.sign) / w;
  for (int a = 0; a < 3; ++a) b[a] *= s;
  PlaneWaveMode out = mode;
  out.pol = b;
  return out;
}

inline std::vector<PlaneWaveMode>
induced_B(const std::vector<PlaneWaveMode> &modes,
          const PhysicalConstants &consts) {
  std::vector<PlaneWaveMode> out;
  out.reserve(modes.size());
  for (const auto &m : modes) out.push_back(induced_B(m, consts));
  return out;
}

/// Split each mode's polarisation into the part orthogonal to k (first
/// return) and the longitudinal projection (pol.k) k / |k|^2 (second).
inline std::pair<std::vector<PlaneWaveMode>, std::vector<PlaneWaveMode>>
split_transverse(const std::vector<PlaneWaveMode> &modes) {
  std::vector<PlaneWaveMode> trans, longi;
  trans.reserve(modes.size());
  longi.reserve(modes.size());
  for (const auto &m : modes) {
    const double k2 = dot(m.k, m.k);
    if (k2 == 0.0)
      throw std::domain_error("split_transverse: zero wavevector");
    cplx pk = 0;
    for (int a = 0; a < 3; ++a) pk += m.pol[a] * m.k[a];
    PlaneWaveMode t = m, l = m;
    for (int a = 0; a < 3; ++a) {
      l.pol[a] = pk / k2 * m.k[a];
      t.pol[a] = m.pol[a] - l.pol[a];
    }
    trans.push_back(t);
    longi.push_back(l);
  }
  return {std::move(trans), std::move(longi)};
}

inline nlohmann::json modes_to_json(const std::vector<PlaneWaveMode> &modes) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto &m : modes) {
    nlohmann::json jm;
    jm["k"] = {m.k[0], m.k[1], m.k[2]};
    jm["pol_re"] = {m.pol[0].real(), m.pol[1].real(), m.pol[2].real()};
    jm["pol_im"] = {m.pol[0].imag(), m.pol[1].imag(), m.pol[2].imag()};
    jm["sign"] = m.sign;
    jm["amp_re"] = m.amplitude.real();
    jm["amp_im"] = m.amplitude.imag();
    arr.push_back(std::move(jm));
  }
  return arr;
}

inline std::vector<PlaneWaveMode> modes_from_json(const nlohmann::json &arr) {
  if (!arr.is_array())
    throw std::invalid_argument("mode list JSON must be an array");
  std::vector<PlaneWaveMode> modes;
  modes.reserve(arr.size());
  for (const auto &jm : arr) {
    PlaneWaveMode m;
    const auto k = jm.at("k");
    const auto pr = jm.at("pol_re");
    const auto pi = jm.at("pol_im");
    if (k.size() != 3 || pr.size() != 3 || pi.size() != 3)
      throw std::invalid_argument("mode JSON: k/pol entries must have size 3");
    for (int a = 0; a < 3; ++a) {
      m.k[a] = k[a].get<double>();
      m.pol[a] = cplx(pr[a].get<double>(), pi[a].get<double>());
    }
    m.sign = jm.at("sign").get<int>();
    m.amplitude =
        cplx(jm.at("amp_re").get<double>(), jm.at("amp_im").get<double>());
    m.require_valid();
    modes.push_back(m);
  }
  return modes;
}

} // namespace emwave
