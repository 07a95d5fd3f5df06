#pragma once

#include "snls/grid.hpp"

namespace snls {

enum class OriginRule {
  CellAverage,  // origin cell gets (1/h^2) * integral of |x|^{-b} over the cell
  Epsilon,      // origin cell (only) evaluated as (|x|^2 + eps^2)^{-b/2}
};

/// Model parameters of the weighted exponential nonlinearity. alpha is always
/// derived from b as 2*pi*(2-b); it is never set independently.
struct ModelParams {
  double b = 0.5;
  double alpha = 0.0;
  OriginRule origin_rule = OriginRule::CellAverage;
  double epsilon = 0.0;  // used by OriginRule::Epsilon

  /// Rejects b outside (0,1).
  static ModelParams make(double b, OriginRule rule = OriginRule::CellAverage,
                          double epsilon = 0.0);
};

/// Cached per-cell values of the singular weight |x|^{-b}. Strictly positive
/// and finite everywhere; away from the origin cell the value is exactly
/// |x_c|^{-b} of the cell center.
class SingularWeight {
 public:
  SingularWeight() = default;
  SingularWeight(GridPtr grid, std::vector<double> values, double b);

  const GridSpec& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const double* data() const { return values_.data(); }
  const std::vector<double>& values() const { return values_; }
  double operator()(int i, int j) const {
    return values_[static_cast<std::size_t>(i) * grid_->n + j];
  }
  double b() const { return b_; }

 private:
  GridPtr grid_;
  std::vector<double> values_;
  double b_ = 0.0;
};

/// Weight for the PDE range 0 < b < 1 (enforced through ModelParams).
SingularWeight weight_grid(const GridPtr& grid, const ModelParams& params);

/// Lower-level builder accepting the inequality-module range 0 < b < 2.
/// CellAverage additionally requires b < 2 strictly (the cell integral is
/// log-divergent at b = 2; use Epsilon there).
SingularWeight make_weight(const GridPtr& grid, double b,
                           OriginRule rule = OriginRule::CellAverage, double epsilon = 0.0);

/// Average of |x|^{-b} over the h-by-h cell centered at the origin. Reduces by
/// 8-fold symmetry to a 1D integral evaluated adaptively to < 1e-10 relative.
double origin_cell_average(double b, double h);

/// Stable evaluation of e^{alpha tau} - sum_{j<k} (alpha tau)^j / j! for
/// k in {1,2,3} and tau >= 0. For alpha*tau < 1/2 the convergent Taylor tail
/// is summed until terms drop below 1e-18 relative; otherwise direct
/// subtraction is safe. Result is nonnegative; relative error < 1e-12
/// across the switch point.
double exp_tail(double tau, int k, double alpha);

/// N(x,u) = |x|^{-b} (e^{alpha|u|^2} - 1 - alpha|u|^2) u, pointwise.
/// Fails loudly (with the offending cell) if alpha|u|^2 > 700 anywhere:
/// that signals discrete blow-up, which the defocusing problem never reaches.
ComplexField nonlinear_term(const ComplexField& u, const SingularWeight& w,
                            const ModelParams& params);

/// |grad u|^2 + (1/alpha) |x|^{-b} (e^{alpha|u|^2} - 1 - alpha|u|^2
///  - alpha^2 |u|^4 / 2). Pointwise nonnegative.
RealField hamiltonian_density(const ComplexField& u, const SingularWeight& w,
                              const ModelParams& params);

/// Defect density
///   g(tau) = (4(2-b)/alpha)(e^s - 1 - s - s^2/2)
///          - (8/alpha)(e^s (s-1) + 1 - s^2/2),        s = alpha*tau.
/// Cancellation-free form used here (derived by expanding both brackets in
/// the tails T_k = exp_tail(tau,k,alpha)):
///   e^s(s-1) + 1 - s^2/2 = s*T2 - T3   exactly, so
///   g(tau) = (4(4-b)/alpha) * T3 - 8 * tau * T2 .
/// g(0) = 0 and g <= 0 for all tau >= 0; small-tau behavior
/// g = -(2(2+b)/3) alpha^2 tau^3 + O(tau^4).
double g_pointwise(double tau, const ModelParams& params);

/// g'(tau) = 4(2-b) T2 - 8 alpha tau T1; <= 0 for tau >= 0.
double g_prime(double tau, const ModelParams& params);

/// Overflow guard shared by the exponential evaluations.
inline constexpr double kExpArgLimit = 700.0;

}  // namespace snls
