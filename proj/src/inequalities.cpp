#include "snls/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "snls/kernels.hpp"
#include "snls/norms.hpp"

namespace snls {

ComplexField gaussian_field(const GridPtr& grid, double amplitude, double sigma, double cx,
                            double cy, double kx, double ky) {
  const auto& g = *grid;
  ComplexField f(grid);
  const double inv = 1.0 / (2.0 * sigma * sigma);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.coords[i];
    for (int j = 0; j < g.n; ++j) {
      const double y = g.coords[j];
      const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
      const double mod = amplitude * std::exp(-r2 * inv);
      const double phase = kx * x + ky * y;
      f(i, j) = mod * Complex(std::cos(phase), std::sin(phase));
    }
  }
  return f;
}

ComplexField bump_field(const GridPtr& grid, double radius, double smoothness) {
  const auto& g = *grid;
  ComplexField f(grid);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.coords[i];
    for (int j = 0; j < g.n; ++j) {
      const double y = g.coords[j];
      const double rho2 = (x * x + y * y) / (radius * radius);
      f(i, j) = rho2 < 1.0 ? std::exp(-smoothness * rho2 / (1.0 - rho2)) : 0.0;
    }
  }
  return f;
}

ComplexField moser_field(const GridPtr& grid, int j, double R) {
  if (j < 1) throw SnlsError("moser_field: index must be >= 1");
  const auto& g = *grid;
  ComplexField f(grid);
  const double plateau = std::sqrt(j / (2.0 * kPi));
  for (int i = 0; i < g.n; ++i) {
    const double x = g.coords[i];
    for (int jj = 0; jj < g.n; ++jj) {
      const double y = g.coords[jj];
      const double r = std::sqrt(x * x + y * y);
      double v = 0.0;
      if (r <= 0.0) {
        v = plateau;  // origin cell sits inside the core for every index
      } else if (r < R) {
        v = plateau * std::min(1.0, std::log(R / r) / j);
      }
      f(i, jj) = v;
    }
  }
  return f;
}

namespace {

// Portable uniform in (0,1) from the pinned mt19937_64 stream.
double uniform01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

ComplexField random_band_limited_field(const GridPtr& grid, unsigned long long seed,
                                       double cutoff) {
  const auto& g = *grid;
  std::mt19937_64 rng(seed);
  ComplexField spec(grid);
  const double c2 = cutoff * cutoff;
  for (int i = 0; i < g.n; ++i) {
    const double kx = g.wavenumbers[i];
    for (int j = 0; j < g.n; ++j) {
      const double ky = g.wavenumbers[j];
      const double k2 = kx * kx + ky * ky;
      if (k2 > c2) continue;
      // Box-Muller (implementation-pinned, unlike std::normal_distribution)
      const double u1 = uniform01(rng), u2 = uniform01(rng);
      const double r = std::sqrt(-2.0 * std::log(u1));
      const double env = std::exp(-k2 / (2.0 * c2));
      spec(i, j) = env * r * Complex(std::cos(2.0 * kPi * u2), std::sin(2.0 * kPi * u2));
    }
  }
  ComplexField f = dft_backward(spec);
  // localize: band-limited noise is box-global, a wide envelope makes it a
  // plausible Sigma-class sample
  const double se = g.half_width / 3.0;
  const double inv = 1.0 / (2.0 * se * se);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.coords[i];
    for (int j = 0; j < g.n; ++j) {
      const double y = g.coords[j];
      f(i, j) *= std::exp(-(x * x + y * y) * inv);
    }
  }
  const double peak = kernels::max_abs(f.data(), f.size());
  if (peak > 0.0) {
    for (auto& z : f.values()) z /= peak;
  }
  return f;
}

namespace {

double gradient_l2(const ComplexField& u) {
  auto [dx, dy] = gradient(u);
  const double h2 = u.grid().cell_area();
  return std::sqrt(h2 * (kernels::sum_abs2(dx.data(), dx.size()) +
                         kernels::sum_abs2(dy.data(), dy.size())));
}

ComplexField scaled(const ComplexField& u, double factor) {
  ComplexField out = u;
  for (auto& z : out.values()) z *= factor;
  return out;
}

}  // namespace

ComplexField normalize(const ComplexField& u, Normalization norm) {
  double denom = 1.0;
  switch (norm) {
    case Normalization::None:
      return u;
    case Normalization::UnitGradient:
      denom = gradient_l2(u);
      break;
    case Normalization::UnitH1:
      denom = h1_norm(u);
      break;
  }
  if (denom == 0.0) return u;  // degenerate; verdicts skip zero fields
  return scaled(u, 1.0 / denom);
}

std::vector<CorpusField> standard_corpus(const GridPtr& grid) {
  std::vector<CorpusField> corpus;
  corpus.push_back({"G1", gaussian_field(grid, 1.0, 1.0, 0.0, 0.0)});
  corpus.push_back({"G2", gaussian_field(grid, 1.0, 0.5, 1.0, 0.5)});
  corpus.push_back({"G3", gaussian_field(grid, 1.0, 1.5, 0.0, 0.0, 1.0, 0.0)});
  corpus.push_back({"G4", gaussian_field(grid, 2.0, 0.7, -1.0, 1.0, 2.0, -1.0)});
  corpus.push_back({"B1", bump_field(grid, 2.0, 1.0)});
  corpus.push_back({"B2", bump_field(grid, 1.0, 3.0)});
  corpus.push_back({"M2", moser_field(grid, 2)});
  corpus.push_back({"M4", moser_field(grid, 4)});
  corpus.push_back({"M6", moser_field(grid, 6)});
  corpus.push_back({"R1", random_band_limited_field(grid, 1, 8.0)});
  corpus.push_back({"R2", random_band_limited_field(grid, 2, 16.0)});
  return corpus;
}

namespace {

InequalityVerdict skipped_verdict(const std::string& name) {
  InequalityVerdict v;
  v.name = name;
  v.skipped = true;
  v.holds = true;
  return v;
}

double weighted_integral_exp_tail1(const ComplexField& u, const SingularWeight& w, double alpha) {
  return u.grid().cell_area() *
         kernels::sum_weighted_exp_tail(u.data(), w.data(), u.size(), alpha, 1);
}

}  // namespace

InequalityVerdict verify_mt(const ComplexField& u, double alpha) {
  if (!(alpha >= 0.0 && alpha < 4.0 * kPi)) {
    throw SnlsError("verify_mt: requires 0 <= alpha < 4pi (the bound is false at 4pi)");
  }
  if (lp_norm(u, 2.0) == 0.0) return skipped_verdict("mt");
  const ComplexField un = normalize(u, Normalization::UnitGradient);
  InequalityVerdict v;
  v.name = "mt";
  v.parameters["alpha"] = alpha;
  std::vector<double> ones(u.size(), 1.0);
  const double h2 = u.grid().cell_area();
  v.lhs = h2 * kernels::sum_weighted_exp_tail(un.data(), ones.data(), un.size(), alpha, 1);
  const double l2 = lp_norm(un, 2.0);
  v.rhs_functional = l2 * l2;
  v.ratio = v.lhs / v.rhs_functional;
  v.holds = std::isfinite(v.ratio);
  return v;
}

InequalityVerdict verify_mt_h1(const ComplexField& u, double alpha) {
  if (!(alpha > 0.0 && alpha <= 4.0 * kPi)) {
    throw SnlsError("verify_mt_h1: requires 0 < alpha <= 4pi");
  }
  if (lp_norm(u, 2.0) == 0.0) return skipped_verdict("mt_h1");
  const ComplexField un = normalize(u, Normalization::UnitH1);
  InequalityVerdict v;
  v.name = "mt_h1";
  v.parameters["alpha"] = alpha;
  std::vector<double> ones(u.size(), 1.0);
  v.lhs = u.grid().cell_area() *
          kernels::sum_weighted_exp_tail(un.data(), ones.data(), un.size(), alpha, 1);
  v.rhs_functional = 1.0;  // absolute bound under unit H^1
  v.ratio = v.lhs;
  v.holds = std::isfinite(v.ratio);
  return v;
}

InequalityVerdict verify_singular_mt(const ComplexField& u, double alpha, double b) {
  if (!(b > 0.0 && b < 2.0)) throw SnlsError("verify_singular_mt: requires 0 < b < 2");
  const double threshold = 2.0 * kPi * (2.0 - b);
  if (!(alpha > 0.0 && alpha < threshold)) {
    throw SnlsError("verify_singular_mt: requires 0 < alpha < 2pi(2-b)");
  }
  if (lp_norm(u, 2.0) == 0.0) return skipped_verdict("wmt1");
  const ComplexField un = normalize(u, Normalization::UnitGradient);
  const SingularWeight w = make_weight(u.grid_ptr(), b);
  InequalityVerdict v;
  v.name = "wmt1";
  v.parameters["alpha"] = alpha;
  v.parameters["b"] = b;
  v.lhs = weighted_integral_exp_tail1(un, w, alpha);
  v.rhs_functional =
      u.grid().cell_area() * kernels::sum_abs2_weighted(un.data(), w.data(), un.size());
  v.ratio = v.lhs / v.rhs_functional;
  v.holds = std::isfinite(v.ratio);
  return v;
}

InequalityVerdict verify_hardy(const ComplexField& u, double b, double gamma) {
  if (!(b > 0.0 && b < 2.0)) throw SnlsError("verify_hardy: requires 0 < b < 2");
  if (!(gamma >= 2.0)) throw SnlsError("verify_hardy: requires gamma >= 2");
  if (lp_norm(u, 2.0) == 0.0) return skipped_verdict("hardy");
  const SingularWeight w = make_weight(u.grid_ptr(), b);
  InequalityVerdict v;
  v.name = "hardy";
  v.parameters["b"] = b;
  v.parameters["gamma"] = gamma;
  const double h2 = u.grid().cell_area();
  double sum = 0.0;
  const Complex* uv = u.data();
  const double* wv = w.data();
  for (std::size_t i = 0; i < u.size(); ++i) {
    sum += wv[i] * std::pow(std::norm(uv[i]), 0.5 * gamma);
  }
  v.lhs = h2 * sum;
  v.rhs_functional = std::pow(h1_norm(u), gamma);
  v.ratio = v.lhs / v.rhs_functional;
  v.holds = std::isfinite(v.ratio);
  return v;
}

InequalityVerdict verify_gn2d(const ComplexField& u, double q) {
  if (!(q >= 2.0)) throw SnlsError("verify_gn2d: requires q >= 2");
  if (lp_norm(u, 2.0) == 0.0) return skipped_verdict("gn2d");
  InequalityVerdict v;
  v.name = "gn2d";
  v.parameters["q"] = q;
  v.lhs = lp_norm(u, q);
  const double l2 = lp_norm(u, 2.0);
  const double gl2 = gradient_l2(u);
  v.rhs_functional = std::pow(l2, 2.0 / q) * std::pow(gl2, 1.0 - 2.0 / q);
  v.ratio = v.lhs / v.rhs_functional;
  v.holds = std::isfinite(v.ratio);
  return v;
}

InequalityVerdict verify_log(const ComplexField& u, double beta, double lambda, double mu) {
  if (!(beta > 0.0 && beta < 1.0)) throw SnlsError("verify_log: requires 0 < beta < 1");
  if (!(lambda > 1.0 / (2.0 * kPi * beta))) {
    throw SnlsError("verify_log: requires lambda > 1/(2 pi beta) (optimal threshold)");
  }
  if (!(mu > 0.0 && mu <= 1.0)) throw SnlsError("verify_log: requires 0 < mu <= 1");
  const double linf = lp_norm(u, std::numeric_limits<double>::infinity());
  if (linf == 0.0) return skipped_verdict("log");

  const double um = mu_norm(u, mu);
  const double cb = holder_norm(u, beta);
  const double hol_term = std::pow(8.0, beta) * std::pow(mu, -beta) * cb / um;
  // smallest C making the bound an equality for this u
  const double required = std::exp(linf * linf / (lambda * um * um)) - hol_term;
  InequalityVerdict v;
  v.name = "log";
  v.parameters["beta"] = beta;
  v.parameters["lambda"] = lambda;
  v.parameters["mu"] = mu;
  v.lhs = linf * linf;
  const double c = std::max(0.0, required);
  v.rhs_functional = lambda * um * um * std::log(c + hol_term);
  v.ratio = c;
  v.holds = std::isfinite(c);
  return v;
}

InequalityVerdict verify_lorentz_holder(const ComplexField& f, const ComplexField& g, double p,
                                        double p1, double p2) {
  if (!(p > 1.0) || !(p1 > 1.0) || !(p2 > 1.0)) {
    throw SnlsError("verify_lorentz_holder: exponents must exceed 1");
  }
  const double inv_p2 = std::isinf(p2) ? 0.0 : 1.0 / p2;
  if (std::abs(1.0 / p - 1.0 / p1 - inv_p2) > 1e-12) {
    throw SnlsError("verify_lorentz_holder: requires 1/p = 1/p1 + 1/p2");
  }
  const double l1 = lp_norm(f, 1.0);
  if (l1 == 0.0) return skipped_verdict("lorentz_holder");
  ComplexField prod = f;
  kernels::pointwise_multiply(prod.data(), g.data(), prod.size());
  const double theta = 1.0 - 1.0 / p1;
  InequalityVerdict v;
  v.name = "lorentz_holder";
  v.parameters["p"] = p;
  v.parameters["p1"] = p1;
  v.parameters["p2"] = p2;
  v.lhs = lp_norm(prod, p);
  v.rhs_functional = std::pow(l1, 1.0 - theta) *
                     std::pow(lp_norm(f, std::numeric_limits<double>::infinity()), theta) *
                     lorentz_norm(g, p2, std::numeric_limits<double>::infinity());
  v.ratio = v.lhs / v.rhs_functional;
  v.holds = std::isfinite(v.ratio);
  return v;
}

ThresholdProbe mt_threshold_probe(const GridPtr& grid, double b, int j_max) {
  if (!(b > 0.0 && b < 2.0)) throw SnlsError("mt_threshold_probe: requires 0 < b < 2");
  const double threshold = 2.0 * kPi * (2.0 - b);
  const SingularWeight w = make_weight(grid, b);
  ThresholdProbe probe;
  probe.b = b;
  for (int j = 1; j <= j_max; ++j) {
    const ComplexField un = normalize(moser_field(grid, j), Normalization::UnitH1);
    probe.indices.push_back(j);
    probe.curve_sub.push_back(weighted_integral_exp_tail1(un, w, 0.9 * threshold));
    probe.curve_at.push_back(weighted_integral_exp_tail1(un, w, threshold));
    probe.curve_super.push_back(weighted_integral_exp_tail1(un, w, 1.1 * threshold));
  }
  probe.last_index_domination = probe.curve_super.back() / probe.curve_sub.back();
  return probe;
}

BootstrapVerdict bootstrap_check(const std::vector<double>& trace, double a, double b,
                                 double theta) {
  if (trace.empty()) throw SnlsError("bootstrap_check: empty trace");
  if (!(a > 0.0 && b > 0.0 && theta > 1.0)) {
    throw SnlsError("bootstrap_check: requires a,b > 0 and theta > 1");
  }
  BootstrapVerdict v;
  const double stationary = std::pow(theta * b, -1.0 / (theta - 1.0));
  v.bound = theta * a / (theta - 1.0);

  for (double x : trace) {
    if (x < 0.0 || x > a + b * std::pow(x, theta) + 1e-12 * std::max(1.0, a)) {
      v.premise_holds = false;
    }
  }
  v.hypothesis_holds = (a < (1.0 - 1.0 / theta) * stationary) && (trace.front() <= stationary);
  if (!v.premise_holds || !v.hypothesis_holds) {
    v.conclusion_holds = false;
    return v;
  }
  v.conclusion_holds = true;
  v.margin = std::numeric_limits<double>::infinity();
  for (double x : trace) {
    if (x > v.bound) v.conclusion_holds = false;
    v.margin = std::min(v.margin, v.bound - x);
  }
  return v;
}

std::map<std::string, double> measure_baseline_ratios(const GridPtr& grid) {
  std::map<std::string, double> out;
  const auto corpus = standard_corpus(grid);
  auto put = [&out](const std::string& key, double v) { out[key] = v; };

  for (const auto& cf : corpus) {
    for (double frac : {0.5, 0.975}) {
      const double alpha = frac * 4.0 * kPi;
      std::ostringstream key;
      key << "mt/alpha=" << frac << "x4pi/" << cf.name;
      put(key.str(), verify_mt(cf.field, alpha).ratio);
    }
    put("mt2/alpha=4pi/" + cf.name, verify_mt_h1(cf.field, 4.0 * kPi).ratio);
    for (double b : {0.25, 0.5, 0.75}) {
      std::ostringstream key;
      key << "wmt1/b=" << b << "/" << cf.name;
      put(key.str(), verify_singular_mt(cf.field, 0.9 * 2.0 * kPi * (2.0 - b), b).ratio);
    }
    put("wmt1_near/b=0.5/" + cf.name,
        verify_singular_mt(cf.field, 0.99 * 2.0 * kPi * 1.5, 0.5).ratio);
    for (double gamma : {2.0, 3.0, 4.0}) {
      std::ostringstream key;
      key << "hardy/b=0.5/gamma=" << gamma << "/" << cf.name;
      put(key.str(), verify_hardy(cf.field, 0.5, gamma).ratio);
    }
    put("hardy/b=0.25/gamma=2/" + cf.name, verify_hardy(cf.field, 0.25, 2.0).ratio);
    put("hardy/b=0.75/gamma=2/" + cf.name, verify_hardy(cf.field, 0.75, 2.0).ratio);
    for (double q : {4.0, 6.0, 8.0}) {
      std::ostringstream key;
      key << "gn2d/q=" << q << "/" << cf.name;
      put(key.str(), verify_gn2d(cf.field, q).ratio);
    }
    put("log/beta=0.5/" + cf.name,
        verify_log(cf.field, 0.5, 1.0 / kPi + 0.01, 1.0).ratio);

    // the weighted-exponential factor against the weak-Lebesgue weight, the
    // way the product estimate is used downstream
    {
      const double alpha = 0.9 * 2.0 * kPi * 1.5;
      const ComplexField un = normalize(cf.field, Normalization::UnitGradient);
      ComplexField f(grid);
      for (std::size_t i = 0; i < f.size(); ++i) {
        f.data()[i] = exp_tail(std::norm(un.data()[i]), 1, alpha);
      }
      const SingularWeight w = make_weight(grid, 0.5);
      ComplexField gw(grid);
      for (std::size_t i = 0; i < gw.size(); ++i) gw.data()[i] = w.data()[i];
      put("lor/b=0.5/" + cf.name, verify_lorentz_holder(f, gw, 2.5, 20.0 / 3.0, 4.0).ratio);
    }
  }
  return out;
}

}  // namespace snls
