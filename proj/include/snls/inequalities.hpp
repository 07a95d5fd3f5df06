#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "snls/nonlinearity.hpp"

namespace snls {

enum class Normalization { None, UnitGradient, UnitH1 };

struct CorpusField {
  std::string name;
  ComplexField field;
};

/// Test-function families. All produce discrete Sigma-class fields (finite
/// sigma_norm on the box).
ComplexField gaussian_field(const GridPtr& grid, double amplitude, double sigma, double cx,
                            double cy, double kx = 0.0, double ky = 0.0);
ComplexField bump_field(const GridPtr& grid, double radius, double smoothness);
/// Log-profile concentration family: sqrt(j/(2pi)) * min(1, log(R/|x|)/j),
/// support |x| <= R, plateau inside |x| <= R e^{-j}. Sampled at cell centers
/// (the origin cell carries the plateau) and renormalized numerically by the
/// caller's normalization.
ComplexField moser_field(const GridPtr& grid, int j, double R = 2.0);
/// Band-limited complex noise (modes |k| <= cutoff, unit-normal coefficients
/// from a fixed generator) localized by a wide Gaussian envelope. Fully
/// deterministic for a given seed.
ComplexField random_band_limited_field(const GridPtr& grid, unsigned long long seed,
                                       double cutoff);

ComplexField normalize(const ComplexField& u, Normalization norm);

/// The documented verification corpus on a given grid (Gaussians, bumps,
/// Moser indices 2/4/6, two band-limited samples). Ratio baselines are frozen
/// against exactly this list.
std::vector<CorpusField> standard_corpus(const GridPtr& grid);

struct InequalityVerdict {
  std::string name;
  double lhs = 0.0;
  double rhs_functional = 0.0;
  double ratio = 0.0;
  std::map<std::string, double> parameters;
  bool holds = true;
  bool skipped = false;  // degenerate input (u == 0)
};

/// ||e^{alpha|u|^2}-1||_{L^1} <= c_alpha ||u||_2^2 under unit gradient,
/// 0 <= alpha < 4pi. The input is normalized internally to UnitGradient.
/// Rejects alpha >= 4pi (the bound is false there).
InequalityVerdict verify_mt(const ComplexField& u, double alpha);

/// int w (e^{alpha|u|^2}-1) <= C int w |u|^2 under unit gradient,
/// 0 < alpha < 2pi(2-b), 0 < b < 2.
InequalityVerdict verify_singular_mt(const ComplexField& u, double alpha, double b);

/// H^1-normalized variant at the endpoint alpha = 4pi (plain weight-free
/// integrand), corpus-uniform bound asserted by regression.
InequalityVerdict verify_mt_h1(const ComplexField& u, double alpha);

/// int w |u|^gamma <= C ||u||_{H^1}^gamma, 0 < b < 2, gamma >= 2.
InequalityVerdict verify_hardy(const ComplexField& u, double b, double gamma);

/// ||u||_q <= C ||u||_2^{2/q} ||grad u||_2^{1-2/q}, 2 <= q < infinity.
InequalityVerdict verify_gn2d(const ComplexField& u, double q);

/// Smallest C_lambda making
///   ||u||_inf^2 <= lambda ||u||_mu^2 log(C + 8^beta mu^{-beta} ||u||_{C^beta} / ||u||_mu)
/// an equality for this u. Requires lambda > 1/(2 pi beta), 0 < beta < 1,
/// 0 < mu <= 1. The verdict's ratio field carries the required C (clamped at 0).
InequalityVerdict verify_log(const ComplexField& u, double beta, double lambda, double mu);

/// ||f g||_p <= C ||f||_1^{1-theta} ||f||_inf^theta ||g||_{p2,inf} with
/// theta = 1 - 1/p1 and 1/p = 1/p1 + 1/p2 (checked to 1e-12).
InequalityVerdict verify_lorentz_holder(const ComplexField& f, const ComplexField& g, double p,
                                        double p1, double p2);

/// Moser-sequence growth curves of int w (e^{alpha|u_j|^2}-1) under UnitH1
/// normalization, alpha = {0.9, 1.0, 1.1} * 2pi(2-b). The sharpness signature
/// asserted downstream: the 1.1 curve dominates the 0.9 curve by > 10x at the
/// last index.
struct ThresholdProbe {
  double b = 0.0;
  std::vector<int> indices;
  std::vector<double> curve_sub;    // alpha = 0.9 * threshold
  std::vector<double> curve_at;     // alpha = 1.0 * threshold
  std::vector<double> curve_super;  // alpha = 1.1 * threshold
  double last_index_domination = 0.0;  // curve_super.back() / curve_sub.back()
};

ThresholdProbe mt_threshold_probe(const GridPtr& grid, double b, int j_max = 12);

/// Continuity (bootstrap) argument on a sampled trace: under
/// X <= a + b X^theta, a < (1-1/theta)(theta b)^{-1/(theta-1)} and
/// X(0) <= (theta b)^{-1/(theta-1)}, every sample obeys
/// X <= theta a/(theta-1). Hypothesis violations are reported, not failed.
struct BootstrapVerdict {
  bool premise_holds = true;     // X <= a + b X^theta at every sample
  bool hypothesis_holds = true;  // the smallness conditions on a and X(0)
  bool conclusion_holds = false;
  double bound = 0.0;    // theta a / (theta - 1)
  double margin = 0.0;   // min over samples of bound - X(t)
};

BootstrapVerdict bootstrap_check(const std::vector<double>& trace, double a, double b,
                                 double theta);

/// Frozen regression baselines for the corpus ratios. Keys are
/// "<suite>/<field>/<params>"; asserted as measured <= frozen * 1.01.
const std::map<std::string, double>& inequality_baselines();

/// Recomputes every baselined ratio on the standard corpus; used by the
/// oracle subcommand to print frozen-constant candidates and by the
/// acceptance suite to compare against inequality_baselines().
std::map<std::string, double> measure_baseline_ratios(const GridPtr& grid);

}  // namespace snls
