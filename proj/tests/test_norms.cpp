#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "helpers.hpp"
#include "snls/nonlinearity.hpp"
#include "snls/norms.hpp"

using namespace snls;
using test::rel_err;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("lp_norm basics") {
  auto g = make_grid(8, 4.0);
  ComplexField ones(g);
  for (auto& z : ones.values()) z = 1.0;
  CHECK(lp_norm(ones, 2.0) == doctest::Approx(8.0));

  auto g2 = make_grid(256, 16.0);
  auto gauss = test::unit_gaussian(g2);
  CHECK(rel_err(lp_norm(gauss, 2.0), std::sqrt(kPi / 2.0)) < 1e-10);
  CHECK(lp_norm(gauss, kInf) == doctest::Approx(1.0));  // grid contains the origin
  CHECK(rel_err(lp_norm(gauss, 4.0), std::pow(kPi / 4.0, 0.25)) < 1e-10);
  CHECK_THROWS_AS(lp_norm(gauss, 0.5), SnlsError);
}

TEST_CASE("h1 norm of a plane wave") {
  auto g = make_grid(64, 8.0);
  const double k = g->wavenumbers[6];
  const double c = 0.7;
  ComplexField pw(g);
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) pw(i, j) = c * std::exp(Complex(0.0, k * g->coords[i]));
  }
  CHECK(rel_err(h1_norm(pw), c * 16.0 * std::sqrt(1.0 + k * k)) < 1e-12);
}

TEST_CASE("sigma norm of the gaussian matches the closed form") {
  auto g = make_grid(256, 16.0);
  auto gauss = test::unit_gaussian(g);
  // ||f||_2^2 = pi/2, ||grad f||_2^2 = pi, || |x| f ||_2^2 = pi/4
  CHECK(rel_err(sigma_norm(gauss), std::sqrt(7.0 * kPi / 4.0)) < 1e-8);
  ComplexField zero(g);
  CHECK(sigma_norm(zero) == 0.0);
  CHECK(h1_norm(zero) == 0.0);
  CHECK(w14_norm(zero) == 0.0);
}

TEST_CASE("mu norm: endpoint, zero, analytic, monotone") {
  auto g = make_grid(128, 12.0);
  auto f = test::random_field(g, 3);
  CHECK(rel_err(mu_norm(f, 1.0), h1_norm(f)) < 1e-14);
  ComplexField zero(g);
  CHECK(mu_norm(zero, 0.5) == 0.0);

  auto g2 = make_grid(256, 16.0);
  auto gauss = test::unit_gaussian(g2);
  CHECK(rel_err(mu_norm(gauss, 0.5), std::sqrt(kPi + 0.25 * kPi / 2.0)) < 1e-8);

  double prev = 0.0;
  for (double mu : {0.1, 0.3, 0.5, 0.8, 1.0}) {
    const double v = mu_norm(f, mu);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK_THROWS_AS(mu_norm(f, 0.0), SnlsError);
  CHECK_THROWS_AS(mu_norm(f, 1.5), SnlsError);
}

TEST_CASE("holder norm: constant, zero, brute-force oracle at n=32") {
  auto g = make_grid(64, 8.0);
  ComplexField c(g);
  for (auto& z : c.values()) z = Complex(0.3, -0.4);
  CHECK(holder_norm(c, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  ComplexField zero(g);
  CHECK(holder_norm(zero, 0.5) == 0.0);
  CHECK_THROWS_AS(holder_norm(c, 0.0), SnlsError);
  CHECK_THROWS_AS(holder_norm(c, 1.0), SnlsError);

  // n=32: the radius cap covers the whole box, brute force over all pairs
  auto gs = make_grid(32, 4.0);
  ComplexField f(gs);
  for (int i = 0; i < 32; ++i) {
    const double x = gs->coords[i];
    for (int j = 0; j < 32; ++j) {
      const double y = gs->coords[j];
      f(i, j) = x * std::exp(-(x * x + y * y) / 8.0);
    }
  }
  const double beta = 0.5;
  double brute = 0.0;
  for (int i = 0; i < 32; ++i) {
    for (int j = 0; j < 32; ++j) {
      for (int i2 = 0; i2 < 32; ++i2) {
        for (int j2 = 0; j2 < 32; ++j2) {
          if (i == i2 && j == j2) continue;
          const double dx = gs->coords[i] - gs->coords[i2];
          const double dy = gs->coords[j] - gs->coords[j2];
          brute = std::max(brute, std::abs(f(i, j) - f(i2, j2)) /
                                      std::pow(std::sqrt(dx * dx + dy * dy), beta));
        }
      }
    }
  }
  const double expect = lp_norm(f, kInf) + brute;
  CHECK(rel_err(holder_norm(f, beta), expect) < 1e-13);
}

TEST_CASE("distribution function") {
  auto g = make_grid(512, 8.0);
  ComplexField disk(g);
  for (int i = 0; i < 512; ++i) {
    const double x = g->coords[i];
    for (int j = 0; j < 512; ++j) {
      const double y = g->coords[j];
      disk(i, j) = (x * x + y * y <= 1.0) ? 1.0 : 0.0;
    }
  }
  CHECK(std::abs(distribution_function(disk, 0.5) - kPi) < 10.0 * g->spacing);
  CHECK(distribution_function(disk, 1.5) == 0.0);

  ComplexField zero(g);
  CHECK(distribution_function(zero, 0.1) == 0.0);
  CHECK_THROWS_AS(distribution_function(zero, 0.0), SnlsError);

  // d(lambda) of |x|^{-1/2} is pi lambda^{-4} while the level set fits the box
  auto w = make_weight(g, 0.5);
  ComplexField wf(g);
  for (std::size_t i = 0; i < wf.size(); ++i) wf.data()[i] = w.data()[i];
  CHECK(rel_err(distribution_function(wf, 2.0), kPi / 16.0) < 0.02);
}

TEST_CASE("decreasing rearrangement: disk plateau and equimeasurability") {
  auto g = make_grid(256, 8.0);
  ComplexField disk(g);
  for (int i = 0; i < 256; ++i) {
    const double x = g->coords[i];
    for (int j = 0; j < 256; ++j) {
      const double y = g->coords[j];
      disk(i, j) = (x * x + y * y <= 1.0) ? 1.0 : 0.0;
    }
  }
  auto prof = decreasing_rearrangement(disk);
  const double h2 = g->cell_area();
  for (std::size_t i = 0; i + 1 < prof.s.size(); ++i) {
    CHECK(prof.s[i] < prof.s[i + 1]);
    CHECK(prof.u_star[i] >= prof.u_star[i + 1]);
  }
  for (std::size_t i = 0; i < prof.s.size(); ++i) {
    if (prof.s[i] < kPi - 10.0 * g->spacing) CHECK(prof.u_star[i] == 1.0);
    if (prof.s[i] > kPi + 10.0 * g->spacing) CHECK(prof.u_star[i] == 0.0);
  }

  auto f = test::random_field(g, 8);
  auto pf = decreasing_rearrangement(f);
  for (double p : {1.0, 2.0, 4.0}) {
    double sum = 0.0, comp = 0.0;
    for (double v : pf.u_star) {
      const double y = std::pow(v, p) - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    CHECK(rel_err(h2 * sum, std::pow(lp_norm(f, p), p)) < 1e-12);
  }
}

TEST_CASE("lorentz norm: weak norm of the singular weight, L^{p,p} = L^p") {
  auto g = make_grid(512, 8.0);
  auto w = make_weight(g, 0.5);
  ComplexField wf(g);
  for (std::size_t i = 0; i < wf.size(); ++i) wf.data()[i] = w.data()[i];
  // || |x|^{-b} ||_{L^{2/b},inf} = pi^{b/2}
  CHECK(rel_err(lorentz_norm(wf, 4.0, kInf), std::pow(kPi, 0.25)) < 0.02);

  auto f = test::random_field(g, 2);
  for (double p : {2.0, 3.0}) {
    CHECK(rel_err(lorentz_norm(f, p, p), lp_norm(f, p)) < 1e-12);
  }
  ComplexField zero(g);
  CHECK(lorentz_norm(zero, 2.0, kInf) == 0.0);
  CHECK(lorentz_norm(zero, 2.0, 2.0) == 0.0);
  CHECK_THROWS_AS(lorentz_norm(f, 1.0, 2.0), SnlsError);
}

TEST_CASE("time and space-time norms") {
  // stationary series: ||.||_{L^4 L^4} = c T^{1/4}
  std::vector<double> times;
  std::vector<double> vals;
  for (int i = 0; i <= 20; ++i) {
    times.push_back(0.1 * i);
    vals.push_back(0.7);
  }
  CHECK(rel_err(time_lp_norm(times, vals, 4.0), 0.7 * std::pow(2.0, 0.25)) < 1e-12);

  std::vector<double> zeros(times.size(), 0.0);
  CHECK(time_lp_norm(times, zeros, 4.0) == 0.0);
  CHECK_THROWS_AS(time_lp_norm({0.0}, {1.0}, 4.0), SnlsError);

  // free gaussian L^4((1,2); L^4) against the closed form
  auto g = make_grid(128, 16.0);
  std::vector<double> ts;
  std::vector<ComplexField> fields;
  for (int i = 0; i <= 20; ++i) {
    const double t = 1.0 + 0.05 * i;
    ComplexField u(g);
    for (int a = 0; a < 128; ++a) {
      for (int b = 0; b < 128; ++b) {
        u(a, b) = test::free_gaussian_exact(g->coords[a], g->coords[b], t);
      }
    }
    ts.push_back(t);
    fields.push_back(std::move(u));
  }
  const double got = spacetime_norm(ts, fields, 4.0, 4.0);
  // int_1^2 ||u||_4^4 dt = (pi/16)(arctan 8 - arctan 4)
  const double want = std::pow(kPi / 16.0 * (std::atan(8.0) - std::atan(4.0)), 0.25);
  CHECK(std::abs(got - want) < 1e-4);

  // S^1 and S^0 on the same snapshots are finite and ordered sensibly
  const double s1 = s1_norm(ts, fields);
  const double s0 = s0_norm(ts, fields);
  CHECK(s1 > s0);
  CHECK(s0 > 0.0);
}
