#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace emwave {

/// Vacuum constants. The invariant c = 1/sqrt(mu0*eps0) is enforced at
/// construction; use natural_units() in tests to keep numbers O(1).
struct PhysicalConstants {
  double epsilon0;
  double mu0;
  double c;

  PhysicalConstants(double eps0_, double mu0_, double c_)
      : epsilon0(eps0_), mu0(mu0_), c(c_) {
    if (!(epsilon0 > 0.0) || !(mu0 > 0.0) || !(c > 0.0))
      throw std::invalid_argument("PhysicalConstants: all entries must be positive");
    const double unit = c * std::sqrt(mu0 * epsilon0);
    if (std::abs(unit - 1.0) > 1e-9)
      throw std::invalid_argument(
          "PhysicalConstants: c*sqrt(mu0*eps0) = " + std::to_string(unit) +
          ", expected 1");
  }
};

inline PhysicalConstants natural_units() { return {1.0, 1.0, 1.0}; }

inline PhysicalConstants si_units() {
  constexpr double c = 299792458.0;
  constexpr double mu0 = 1.25663706212e-6;
  const double eps0 = 1.0 / (mu0 * c * c);
  return {eps0, mu0, c};
}

} // namespace emwave
