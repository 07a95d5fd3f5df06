#pragma once

#include <utility>

#include "snls/nonlinearity.hpp"
#include "snls/series.hpp"

namespace snls {

/// v(t) = e^{-i|x|^2/(4t)} u(t). Pure phase: |v| = |u| exactly. Rejects t = 0.
ComplexField conformal_v(const ComplexField& u, double t);

/// w(t) = (x + 2it grad) u(t), both components, via the commutation
/// x + 2it grad = e^{it Lap} x e^{-it Lap}. At t = 0 this is exactly x*u.
std::pair<ComplexField, ComplexField> weighted_w(const ComplexField& u, double t);

/// Direct route x*u + 2it*grad(u) (spectral gradient); agrees with weighted_w
/// to ~1e-8 on smooth, well-localized fields.
std::pair<ComplexField, ComplexField> weighted_w_direct(const ComplexField& u, double t);

/// ||(x+2it grad)u||_2 over both components.
double weighted_w_l2(const ComplexField& u, double t);

/// ||grad v(t)||_2 evaluated through the pointwise identity
/// 2t grad v = -i e^{-i phi} (x + 2it grad) u, i.e. ||w||_2 / (2|t|).
/// The direct spectral gradient of v is ill-conditioned for small t (the
/// conformal phase oscillates below grid scale); this route is not.
double conformal_gradient_l2(const ComplexField& u, double t);

/// e^{-it Lap} u(t): the free-flow pullback whose convergence defines the
/// scattering state.
ComplexField inverse_free_profile(const ComplexField& u, double t);

/// Pairwise Cauchy matrices of the pullback profiles in H^1 and of their
/// x-weighted versions in L^2, a positive trend statistic meaning the
/// off-diagonal entries shrink as both times grow.
struct ScatteringReport {
  std::vector<double> times;
  std::vector<std::vector<double>> h1_cauchy;        // symmetric, zero diagonal
  std::vector<std::vector<double>> weighted_cauchy;  // same shape
  ComplexField candidate_state;                      // latest pullback profile
  double trend_h1 = 0.0;        // in [-1,1]; positive = decreasing max-row entries
  double trend_weighted = 0.0;
};

ScatteringReport scattering_report(const std::vector<Snapshot>& snapshots);

/// Least-squares fit of log||u(t)||_{L^q} against log t over a time window.
/// paper_slope is the dispersive rate -(1-2/q); bound_constant reports
/// sup_t ||u(t)||_q * t^{1-2/q} over the window. Rejects q <= 2 and windows
/// with fewer than 8 samples.
struct DecayFit {
  double q = 0.0;
  double t_min = 0.0, t_max = 0.0;
  double fitted_slope = 0.0;
  double paper_slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double bound_constant = 0.0;
};

DecayFit decay_fit(const std::vector<double>& times, const std::vector<double>& lq_values,
                   double q, double t_min, double t_max);

/// Greedy left-to-right partition of [T, end] into intervals with
/// L^p(I; L^q) norm <= eps each. Requires p(1-2/q) > 1; rejects a sampling so
/// coarse that a single gap already exceeds eps.
struct IntervalPartition {
  std::vector<std::pair<double, double>> intervals;
  double eps = 0.0;
};

IntervalPartition interval_partition(const std::vector<double>& times,
                                     const std::vector<double>& lq_values, double p, double q,
                                     double eps, double T);

/// Running S^1(u) and S^0(w) norms over [0, t] as t grows, with a plateau
/// verdict: relative growth over the final quarter of the window < 5%.
struct SNormReport {
  std::vector<double> times;
  std::vector<double> s1_running;
  std::vector<double> s0_w_running;
  double s1_final_quarter_growth = 0.0;
  double s0_final_quarter_growth = 0.0;
  bool s1_plateau = false;
  bool s0_plateau = false;
};

SNormReport s_norm_monitor(const DiagnosticSeries& series);

}  // namespace snls
