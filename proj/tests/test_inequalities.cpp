#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "snls/inequalities.hpp"
#include "snls/norms.hpp"

using namespace snls;
using test::rel_err;

namespace {
GridPtr corpus_grid() { return make_grid(256, 8.0); }
}  // namespace

TEST_CASE("corpus fields are finite Sigma-class samples") {
  auto g = corpus_grid();
  for (const auto& cf : standard_corpus(g)) {
    CHECK(cf.field.all_finite());
    CHECK(std::isfinite(sigma_norm(cf.field)));
    CHECK(lp_norm(cf.field, 2.0) > 0.0);
  }
  // determinism of the random family
  auto r1 = random_band_limited_field(g, 7, 8.0);
  auto r2 = random_band_limited_field(g, 7, 8.0);
  for (std::size_t i = 0; i < r1.size(); ++i) CHECK(r1.data()[i] == r2.data()[i]);
}

TEST_CASE("moser family: unit gradient in the continuum, growing peak") {
  auto g = corpus_grid();
  for (int j : {2, 4, 8}) {
    auto m = moser_field(g, j);
    auto [dx, dy] = gradient(m);
    double gsum = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      gsum += std::norm(dx.data()[i]) + std::norm(dy.data()[i]);
    }
    const double gl2 = std::sqrt(g->cell_area() * gsum);
    CHECK(gl2 > 0.8);
    CHECK(gl2 < 1.4);  // log profile sampled on a grid, not exactly 1
    CHECK(lp_norm(m, std::numeric_limits<double>::infinity()) ==
          doctest::Approx(std::sqrt(j / (2.0 * kPi))));
  }
}

TEST_CASE("verify_mt: ranges, zero skip, moser growth") {
  auto g = corpus_grid();
  auto gauss = gaussian_field(g, 1.0, 1.0, 0.0, 0.0);
  auto v = verify_mt(gauss, 2.0 * kPi);
  CHECK(v.holds);
  CHECK(v.ratio > 0.0);
  CHECK(std::isfinite(v.ratio));

  CHECK_THROWS_AS(verify_mt(gauss, 4.0 * kPi), SnlsError);
  CHECK_THROWS_AS(verify_mt(gauss, -1.0), SnlsError);

  ComplexField zero(g);
  CHECK(verify_mt(zero, 2.0 * kPi).skipped);

  // near-critical alpha: ratios grow along the concentration family but stay finite
  double prev = 0.0;
  for (int j : {2, 4, 6, 8}) {
    auto vj = verify_mt(moser_field(g, j), 3.9 * kPi);
    CHECK(std::isfinite(vj.ratio));
    CHECK(vj.ratio > prev);
    prev = vj.ratio;
  }
}

TEST_CASE("verify_singular_mt ranges and finiteness") {
  auto g = corpus_grid();
  auto gauss = gaussian_field(g, 1.0, 1.0, 0.0, 0.0);
  auto v = verify_singular_mt(gauss, 0.9 * 3.0 * kPi, 0.5);
  CHECK(v.holds);
  CHECK(std::isfinite(v.ratio));
  CHECK_THROWS_AS(verify_singular_mt(gauss, 3.0 * kPi, 0.5), SnlsError);  // at threshold
  CHECK_THROWS_AS(verify_singular_mt(gauss, 1.0, 2.0), SnlsError);
  CHECK(verify_singular_mt(ComplexField(g), 1.0, 0.5).skipped);
}

TEST_CASE("verify_hardy: ratio, homogeneity, ranges") {
  auto g = corpus_grid();
  auto u = gaussian_field(g, 1.3, 0.8, 0.5, -0.3);
  auto v = verify_hardy(u, 0.5, 2.0);
  CHECK(v.holds);

  for (double c : {0.1, 10.0}) {
    ComplexField cu = u;
    for (auto& z : cu.values()) z *= c;
    auto vc = verify_hardy(cu, 0.5, 2.0);
    CHECK(rel_err(vc.ratio, v.ratio) < 1e-12);
  }
  CHECK_THROWS_AS(verify_hardy(u, 0.5, 1.5), SnlsError);
  CHECK_THROWS_AS(verify_hardy(u, 2.0, 2.0), SnlsError);
}

TEST_CASE("hardy ratio diverges under refinement at b = 2 (epsilon rule demo)") {
  // the bound has no chance at b = 2: the ratio against H^1 grows as the grid
  // resolves more of the singularity; recorded as a trend, not a proof
  double prev = 0.0;
  for (int n : {64, 128, 256}) {
    auto g = make_grid(n, 8.0);
    auto u = bump_field(g, 2.0, 1.0);
    const auto w = make_weight(g, 1.999, OriginRule::Epsilon, 0.0);
    double lhs = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      lhs += w.data()[i] * std::norm(u.data()[i]);
    }
    lhs *= g->cell_area();
    const double ratio = lhs / std::pow(h1_norm(u), 2.0);
    CHECK(ratio > prev);
    prev = ratio;
  }
}

TEST_CASE("verify_gn2d: endpoint q=2, gaussian constant, homogeneity") {
  auto g = corpus_grid();
  auto u = gaussian_field(g, 1.0, 1.0, 0.0, 0.0);
  CHECK(verify_gn2d(u, 2.0).ratio == doctest::Approx(1.0).epsilon(1e-13));

  // exp(-|x|^2) has ratio ((pi/4)^{1/4}) / ((pi/2)^{1/4} pi^{1/4}) = (2pi)^{-1/4}
  auto g2 = make_grid(256, 16.0);
  auto gauss = test::unit_gaussian(g2);
  CHECK(rel_err(verify_gn2d(gauss, 4.0).ratio, std::pow(2.0 * kPi, -0.25)) < 1e-6);

  auto v = verify_gn2d(u, 6.0);
  for (double c : {0.1, 10.0}) {
    ComplexField cu = u;
    for (auto& z : cu.values()) z *= c;
    CHECK(rel_err(verify_gn2d(cu, 6.0).ratio, v.ratio) < 1e-12);
  }
  CHECK_THROWS_AS(verify_gn2d(u, 1.5), SnlsError);
}

TEST_CASE("gn2d ratio is stable under rescaling of the profile") {
  // u(x) -> u(lambda x) realized exactly for gaussians by parameter change
  auto g = corpus_grid();
  const double base = verify_gn2d(gaussian_field(g, 1.0, 1.0, 0.0, 0.0), 4.0).ratio;
  for (double lambda : {0.5, 2.0}) {
    const double r = verify_gn2d(gaussian_field(g, 1.0, 1.0 / lambda, 0.0, 0.0), 4.0).ratio;
    CHECK(std::abs(r - base) / base < 0.01);
  }
}

TEST_CASE("verify_log: threshold, constant-modulus solve") {
  auto g = corpus_grid();
  auto u = gaussian_field(g, 1.0, 1.0, 0.0, 0.0);
  CHECK_THROWS_AS(verify_log(u, 0.5, 1.0 / kPi, 1.0), SnlsError);  // lambda at threshold

  // constant-modulus field: every norm is computable by hand
  ComplexField c(g);
  for (auto& z : c.values()) z = 0.6;
  const double lambda = 1.0 / kPi + 0.01;
  auto v = verify_log(c, 0.5, lambda, 1.0);
  const double um = mu_norm(c, 1.0);
  const double cb = holder_norm(c, 0.5);
  const double expected = std::exp(0.36 / (lambda * um * um)) - std::sqrt(8.0) * cb / um;
  CHECK(rel_err(v.ratio, std::max(0.0, expected)) < 1e-12);

  auto vg = verify_log(u, 0.5, lambda, 1.0);
  CHECK(std::isfinite(vg.ratio));
  // the bound holds with the solved constant: lhs <= rhs by construction
  CHECK(vg.lhs <= vg.rhs_functional * (1.0 + 1e-12));
}

TEST_CASE("verify_lorentz_holder: closed-form oracle and exponent checks") {
  auto g = corpus_grid();
  // f = indicator of a disk, g = constant
  ComplexField f(g), gc(g);
  for (int i = 0; i < g->n; ++i) {
    const double x = g->coords[i];
    for (int j = 0; j < g->n; ++j) {
      const double y = g->coords[j];
      f(i, j) = (x * x + y * y <= 1.5 * 1.5) ? 1.0 : 0.0;
      gc(i, j) = 2.3;
    }
  }
  const double p1 = 20.0 / 3.0, p2 = 4.0, p = 2.5;
  auto v = verify_lorentz_holder(f, gc, p, p1, p2);
  // ratio = (area / box)^{1/p2} exactly, independent of the constant
  const double area = lp_norm(f, 1.0);
  CHECK(rel_err(v.ratio, std::pow(area / g->box_area(), 1.0 / p2)) < 1e-10);

  CHECK_THROWS_AS(verify_lorentz_holder(f, gc, 2.0, p1, p2), SnlsError);
  CHECK(verify_lorentz_holder(ComplexField(g), gc, p, p1, p2).skipped);

  // canonical usage: weighted exponential against |x|^{-b}
  const auto w = make_weight(g, 0.5);
  ComplexField gw(g);
  for (std::size_t i = 0; i < gw.size(); ++i) gw.data()[i] = w.data()[i];
  auto un = normalize(gaussian_field(g, 1.0, 1.0, 0.0, 0.0), Normalization::UnitGradient);
  ComplexField expf(g);
  for (std::size_t i = 0; i < expf.size(); ++i) {
    expf.data()[i] = exp_tail(std::norm(un.data()[i]), 1, 0.9 * 3.0 * kPi);
  }
  auto vw = verify_lorentz_holder(expf, gw, p, p1, p2);
  CHECK(std::isfinite(vw.ratio));
  CHECK(vw.ratio > 0.0);
}

TEST_CASE("threshold probe separates sub- and super-critical growth") {
  auto g = corpus_grid();
  auto probe = mt_threshold_probe(g, 0.5);
  CHECK(probe.indices.back() == 12);
  CHECK(probe.last_index_domination > 10.0);
  // the super curve dominates index by index from early on
  for (std::size_t i = 3; i < probe.indices.size(); ++i) {
    CHECK(probe.curve_super[i] > probe.curve_sub[i]);
  }
  // growth-factor comparison: super grows more than 10x faster across the range
  const double growth_sub = probe.curve_sub.back() / probe.curve_sub.front();
  const double growth_super = probe.curve_super.back() / probe.curve_super.front();
  CHECK(growth_super > 10.0 * growth_sub);
}

TEST_CASE("verdict ratios are phase-rotation invariant") {
  auto g = corpus_grid();
  auto u = gaussian_field(g, 1.0, 0.9, 0.4, -0.2, 1.0, 0.5);
  ComplexField rot = u;
  const Complex ph = std::polar(1.0, 2.0313);
  for (auto& z : rot.values()) z *= ph;
  CHECK(rel_err(verify_hardy(u, 0.5, 2.0).ratio, verify_hardy(rot, 0.5, 2.0).ratio) < 1e-12);
  CHECK(rel_err(verify_gn2d(u, 4.0).ratio, verify_gn2d(rot, 4.0).ratio) < 1e-12);
  CHECK(rel_err(verify_mt(u, kPi).ratio, verify_mt(rot, kPi).ratio) < 1e-12);
}

TEST_CASE("bootstrap check") {
  // constant trace X = a with theta = 3, b = 1: bound 3a/2, margin a/2
  const double a = 0.1;
  std::vector<double> trace(50, a);
  auto v = bootstrap_check(trace, a, 1.0, 3.0);
  CHECK(v.premise_holds);
  CHECK(v.hypothesis_holds);
  CHECK(v.conclusion_holds);
  CHECK(v.bound == doctest::Approx(0.15));
  CHECK(v.margin == doctest::Approx(0.05));

  // X(0) above the stationary value: hypothesis violated, no claim made
  std::vector<double> bad = {0.9, 0.1, 0.1};
  auto vb = bootstrap_check(bad, a, 1.0, 3.0);
  CHECK_FALSE(vb.hypothesis_holds);
  CHECK_FALSE(vb.conclusion_holds);

  // sweep a toward the critical value: trace at the smallest fixed point of
  // x = a + b x^theta (bisection oracle); margin decreases continuously to 0
  const double theta = 3.0, b = 1.0;
  const double a_crit = (1.0 - 1.0 / theta) * std::pow(theta * b, -1.0 / (theta - 1.0));
  double prev_margin = 1e300;
  for (double frac : {0.2, 0.5, 0.8, 0.95, 0.999}) {
    const double aa = frac * a_crit;
    double lo = 0.0, hi = std::pow(theta * b, -1.0 / (theta - 1.0));
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (aa + b * std::pow(mid, theta) > mid ? lo : hi) = mid;
    }
    std::vector<double> fixed_trace(10, 0.5 * (lo + hi));
    auto vs = bootstrap_check(fixed_trace, aa, b, theta);
    CHECK(vs.conclusion_holds);
    CHECK(vs.margin >= 0.0);
    CHECK(vs.margin < prev_margin);
    prev_margin = vs.margin;
  }
  CHECK(prev_margin < 0.02);
}

TEST_CASE("baseline table is populated and keyed like the measurements") {
  const auto& table = inequality_baselines();
  CHECK(table.size() > 100);
  CHECK(table.count("gn2d/q=4/G1") == 1);
}
