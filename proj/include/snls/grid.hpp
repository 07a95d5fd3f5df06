#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "snls/common.hpp"

namespace snls {

/// Square periodic box [-L, L)^2 sampled with n points per axis, standing in
/// for R^2. Sample i along an axis sits at x_i = -L + i*h with h = 2L/n.
///
/// Wavenumbers follow the FFT bin layout: bin m carries the frequency
/// m for m < n/2 and m - n otherwise, so k[m] = (pi/L) * freq(m) and the
/// single Nyquist mode sits at frequency -n/2 (k = -pi*n/(2L)).
struct GridSpec {
  int n = 0;
  double half_width = 0.0;
  double spacing = 0.0;
  std::vector<double> wavenumbers;  // per-axis, size n, FFT bin order
  std::vector<double> coords;       // per-axis, size n, x_i = -L + i*h

  std::size_t size() const { return static_cast<std::size_t>(n) * n; }
  double cell_area() const { return spacing * spacing; }
  double box_area() const { return 4.0 * half_width * half_width; }
};

using GridPtr = std::shared_ptr<const GridSpec>;

/// Builds the grid. Rejects odd n, n < 8 and non-positive half_width.
GridPtr make_grid(int n, double half_width);

/// Complex samples on a grid, row-major: value(i,j) is the sample at
/// x = (coords[i], coords[j]).
class ComplexField {
 public:
  ComplexField() = default;
  explicit ComplexField(GridPtr grid)
      : grid_(std::move(grid)), values_(grid_->size(), Complex{0.0, 0.0}) {}
  ComplexField(GridPtr grid, std::vector<Complex> values);

  const GridSpec& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }

  Complex& operator()(int i, int j) { return values_[static_cast<std::size_t>(i) * grid_->n + j]; }
  const Complex& operator()(int i, int j) const {
    return values_[static_cast<std::size_t>(i) * grid_->n + j];
  }

  Complex* data() { return values_.data(); }
  const Complex* data() const { return values_.data(); }
  std::size_t size() const { return values_.size(); }
  std::vector<Complex>& values() { return values_; }
  const std::vector<Complex>& values() const { return values_; }

  /// True if every entry is finite.
  bool all_finite() const;

 private:
  GridPtr grid_;
  std::vector<Complex> values_;
};

/// Real samples on a grid (densities, weights), same layout as ComplexField.
class RealField {
 public:
  RealField() = default;
  explicit RealField(GridPtr grid) : grid_(std::move(grid)), values_(grid_->size(), 0.0) {}
  RealField(GridPtr grid, std::vector<double> values);

  const GridSpec& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }

  double& operator()(int i, int j) { return values_[static_cast<std::size_t>(i) * grid_->n + j]; }
  const double& operator()(int i, int j) const {
    return values_[static_cast<std::size_t>(i) * grid_->n + j];
  }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// Forward transform. Normalization: the returned bin F[m1,m2] equals
/// (1/n^2) * sum_j f(x_j) exp(-2*pi*i*(m1*j1 + m2*j2)/n), i.e. the coefficient
/// of the plane wave exp(i*k_m.(x + L)) in the trigonometric interpolant.
/// With this scaling Parseval reads exactly
///     h^2 * sum_x |f|^2  ==  (2L)^2 * sum_m |F|^2 .
ComplexField dft_forward(const ComplexField& f);

/// Inverse of dft_forward: dft_backward(dft_forward(f)) == f to roundoff.
ComplexField dft_backward(const ComplexField& f);

/// Spectral gradient (d/dx f, d/dy f). The Nyquist-mode derivative is set to
/// zero so gradients of real fields stay real.
std::pair<ComplexField, ComplexField> gradient(const ComplexField& f);

/// Free Schroedinger flow e^{i t Laplacian}: spectral multiplier e^{-i t |k|^2}.
/// Unitary; group law free(free(f,s),t) = free(f,s+t) to roundoff.
ComplexField free_propagator(const ComplexField& f, double t);

/// h^2 times the sum of entries: the discrete stand-in for integration over R^2.
double integrate(const RealField& f);
double integrate(const GridSpec& grid, const std::vector<double>& values);

/// Fraction of the discrete L^2 mass sitting in the outermost `shell_cells`
/// rings of the box. Runs self-invalidate once this exceeds the configured
/// threshold: coordinates lose their R^2 meaning at the wrap.
double boundary_mass_fraction(const ComplexField& f, int shell_cells = 4);

}  // namespace snls
