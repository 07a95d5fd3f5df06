#pragma once

#include <cmath>
#include <random>

#include "snls/grid.hpp"

namespace snls::test {

inline double uniform01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Smooth random field: band-limited noise under a Gaussian envelope.
inline ComplexField random_field(const GridPtr& grid, unsigned long long seed,
                                 double cutoff_frac = 0.25) {
  std::mt19937_64 rng(seed);
  const auto& g = *grid;
  ComplexField spec(grid);
  const double kmax = kPi * g.n / (2.0 * g.half_width) * cutoff_frac;
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      const double kx = g.wavenumbers[i], ky = g.wavenumbers[j];
      if (kx * kx + ky * ky > kmax * kmax) continue;
      const double u1 = uniform01(rng), u2 = uniform01(rng);
      const double r = std::sqrt(-2.0 * std::log(u1));
      spec(i, j) = r * Complex(std::cos(2.0 * kPi * u2), std::sin(2.0 * kPi * u2));
    }
  }
  ComplexField f = dft_backward(spec);
  const double se = g.half_width / 3.0;
  for (int i = 0; i < g.n; ++i) {
    const double x = g.coords[i];
    for (int j = 0; j < g.n; ++j) {
      const double y = g.coords[j];
      f(i, j) *= std::exp(-(x * x + y * y) / (2.0 * se * se));
    }
  }
  return f;
}

/// exp(-|x|^2) sampled on the grid.
inline ComplexField unit_gaussian(const GridPtr& grid) {
  const auto& g = *grid;
  ComplexField f(grid);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.coords[i];
    for (int j = 0; j < g.n; ++j) {
      const double y = g.coords[j];
      f(i, j) = std::exp(-(x * x + y * y));
    }
  }
  return f;
}

/// Closed-form free evolution of exp(-|x|^2):
/// u(t,x) = exp(-|x|^2/(1+4it)) / (1+4it).
inline Complex free_gaussian_exact(double x, double y, double t) {
  const Complex den(1.0, 4.0 * t);
  return std::exp(-(x * x + y * y) / den) / den;
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)});
}

}  // namespace snls::test
