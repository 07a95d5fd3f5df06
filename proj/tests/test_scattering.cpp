#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "snls/inequalities.hpp"
#include "snls/invariants.hpp"
#include "snls/norms.hpp"
#include "snls/scattering.hpp"

using namespace snls;
using test::rel_err;

TEST_CASE("conformal change of variables is a pure phase") {
  auto g = make_grid(64, 8.0);
  auto u = test::random_field(g, 31);
  auto v = conformal_v(u, 0.4);
  double mod_err = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mod_err = std::max(mod_err, std::abs(std::abs(v.data()[i]) - std::abs(u.data()[i])));
  }
  CHECK(mod_err < 1e-15);

  auto back = conformal_v(v, -0.4);
  double round = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    round = std::max(round, std::abs(back.data()[i] - u.data()[i]));
  }
  CHECK(round < 1e-14);
  CHECK_THROWS_AS(conformal_v(u, 0.0), SnlsError);
}

TEST_CASE("weighted operator: t=0 reduction, zero field, two routes") {
  auto g = make_grid(256, 16.0);
  auto u0 = test::unit_gaussian(g);

  auto [w1, w2] = weighted_w(u0, 0.0);
  double err = 0.0;
  for (int i = 0; i < 256; ++i) {
    const double x = g->coords[i];
    for (int j = 0; j < 256; ++j) {
      const double y = g->coords[j];
      err = std::max(err, std::abs(w1(i, j) - x * u0(i, j)));
      err = std::max(err, std::abs(w2(i, j) - y * u0(i, j)));
    }
  }
  CHECK(err == 0.0);

  ComplexField zero(g);
  auto [z1, z2] = weighted_w(zero, 0.5);
  for (const auto& z : z1.values()) CHECK(std::abs(z) == 0.0);
  for (const auto& z : z2.values()) CHECK(std::abs(z) == 0.0);

  // commutation route vs direct x u + 2it grad u on a smooth localized field
  const double t = 0.3;
  auto ut = free_propagator(u0, t);
  auto [a1, a2] = weighted_w(ut, t);
  auto [b1, b2] = weighted_w_direct(ut, t);
  double scale = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < ut.size(); ++i) {
    diff = std::max({diff, std::abs(a1.data()[i] - b1.data()[i]),
                     std::abs(a2.data()[i] - b2.data()[i])});
    scale = std::max(scale, std::abs(b1.data()[i]));
  }
  CHECK(diff / scale < 1e-8);
}

TEST_CASE("norm identity ||w|| = 2|t| ||grad v|| via the resolved regime") {
  // at t = 0.5 the conformal phase is grid-resolved, so the spectral gradient
  // of v is trustworthy and gives an independent route
  auto g = make_grid(256, 16.0);
  auto ut = free_propagator(test::unit_gaussian(g), 0.5);
  const double t = 0.5;

  auto v = conformal_v(ut, t);
  auto [vx, vy] = gradient(v);
  const double h2 = g->cell_area();
  double gsum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    gsum += std::norm(vx.data()[i]) + std::norm(vy.data()[i]);
  }
  const double grad_v_l2 = std::sqrt(h2 * gsum);
  CHECK(rel_err(weighted_w_l2(ut, t), 2.0 * t * grad_v_l2) < 1e-6);
  CHECK(rel_err(conformal_gradient_l2(ut, t), grad_v_l2) < 1e-6);
}

TEST_CASE("inverse free profile undoes the free flow") {
  auto g = make_grid(64, 8.0);
  auto u = test::random_field(g, 12);
  auto prof = inverse_free_profile(free_propagator(u, 0.8), 0.8);
  double err = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    err = std::max(err, std::abs(prof.data()[i] - u.data()[i]));
  }
  CHECK(err < 1e-12);
}

TEST_CASE("scattering report: linear run, zero datum, shape") {
  auto g = make_grid(128, 12.0);
  auto u0 = gaussian_field(g, 0.5, 1.0, 0.5, 0.0);

  std::vector<Snapshot> snaps;
  for (double t : {0.2, 0.5, 0.9, 1.4}) {
    snaps.push_back({t, free_propagator(u0, t)});
  }
  auto rep = scattering_report(snaps);
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    CHECK(rep.h1_cauchy[i][i] == 0.0);
    CHECK(rep.weighted_cauchy[i][i] == 0.0);
    for (std::size_t j = 0; j < snaps.size(); ++j) {
      CHECK(rep.h1_cauchy[i][j] == rep.h1_cauchy[j][i]);
      if (i != j) {
        CHECK(rep.h1_cauchy[i][j] < 1e-10);
        CHECK(rep.weighted_cauchy[i][j] < 1e-10);
      }
    }
  }

  std::vector<Snapshot> zsnaps;
  ComplexField zero(g);
  for (double t : {0.1, 0.2, 0.3}) zsnaps.push_back({t, zero});
  auto zrep = scattering_report(zsnaps);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(zrep.h1_cauchy[i][j] == 0.0);
      CHECK(zrep.weighted_cauchy[i][j] == 0.0);
    }
  }

  std::vector<Snapshot> two = {snaps[0], snaps[1]};
  CHECK_THROWS_AS(scattering_report(two), SnlsError);
}

TEST_CASE("decay fit on the closed-form free gaussian") {
  std::vector<double> times, l4, l6, l8;
  for (int i = 0; i <= 32; ++i) {
    const double t = 2.0 + 4.0 * i / 32.0;
    const double S = 1.0 + 16.0 * t * t;
    times.push_back(t);
    // ||u(t)||_q = (pi/q)^{1/q} S^{1/q - 1/2}
    l4.push_back(std::pow(kPi / 4.0, 0.25) * std::pow(S, 0.25 - 0.5));
    l6.push_back(std::pow(kPi / 6.0, 1.0 / 6.0) * std::pow(S, 1.0 / 6.0 - 0.5));
    l8.push_back(std::pow(kPi / 8.0, 0.125) * std::pow(S, 0.125 - 0.5));
  }
  const auto f4 = decay_fit(times, l4, 4.0, 2.0, 6.0);
  const auto f6 = decay_fit(times, l6, 6.0, 2.0, 6.0);
  const auto f8 = decay_fit(times, l8, 8.0, 2.0, 6.0);
  CHECK(std::abs(f4.fitted_slope - f4.paper_slope) < 0.05);
  CHECK(std::abs(f6.fitted_slope - f6.paper_slope) < 0.05);
  CHECK(std::abs(f8.fitted_slope - f8.paper_slope) < 0.05);
  CHECK(f4.paper_slope == doctest::Approx(-0.5));
  CHECK(f4.r_squared > 0.999);
  CHECK(f4.bound_constant > 0.0);

  CHECK_THROWS_AS(decay_fit(times, l4, 2.0, 2.0, 6.0), SnlsError);
  CHECK_THROWS_AS(decay_fit(times, l4, 4.0, 5.9, 6.0), SnlsError);  // < 8 samples
}

TEST_CASE("interval partition") {
  std::vector<double> times, vals;
  for (int i = 0; i <= 100; ++i) {
    times.push_back(0.05 * i);
    vals.push_back(0.0);
  }
  auto zero_part = interval_partition(times, vals, 4.0, 8.0, 0.1, 0.0);
  CHECK(zero_part.intervals.size() == 1);

  // constant norm c: interval length bounded by (eps/c)^p
  const double c = 0.8, eps = 0.45, p = 4.0, q = 8.0;
  for (auto& v : vals) v = c;
  auto part = interval_partition(times, vals, p, q, eps, 0.0);
  const double lmax = std::pow(eps / c, p);
  const double total = times.back();
  CHECK(part.intervals.size() >= static_cast<std::size_t>(std::floor(total / lmax)));
  CHECK(part.intervals.size() <= static_cast<std::size_t>(std::ceil(total / lmax)) + 2);
  // each interval's recomputed norm is within budget
  for (const auto& [a, b] : part.intervals) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
      if (times[i] >= a - 1e-12 && times[i + 1] <= b + 1e-12) {
        acc += 0.5 * (times[i + 1] - times[i]) *
               (std::pow(vals[i], p) + std::pow(vals[i + 1], p));
      }
    }
    CHECK(std::pow(acc, 1.0 / p) <= eps + 1e-12);
  }
  CHECK(part.intervals.front().first == doctest::Approx(0.0));
  CHECK(part.intervals.back().second == doctest::Approx(times.back()));

  CHECK_THROWS_AS(interval_partition(times, vals, 2.0, 3.0, eps, 0.0), SnlsError);  // (pq) fails
  CHECK_THROWS_AS(interval_partition(times, vals, p, q, 1e-6, 0.0), SnlsError);  // too coarse
}

TEST_CASE("s-norm monitor on free-flow snapshots") {
  auto g = make_grid(128, 16.0);
  DiagnosticSeries series;
  auto params = ModelParams::make(0.5);
  for (int i = 0; i <= 40; ++i) {
    const double t = 0.05 * i;
    ComplexField u(g);
    for (int a = 0; a < 128; ++a) {
      for (int b = 0; b < 128; ++b) {
        u(a, b) = test::free_gaussian_exact(g->coords[a], g->coords[b], t);
      }
    }
    series.records.push_back(make_record(u, t, nullptr, params));
    if (i % 2 == 0) series.snapshots.push_back({t, std::move(u)});
  }
  auto rep = s_norm_monitor(series);
  CHECK(rep.s1_running.size() == series.records.size());
  CHECK(rep.s0_w_running.size() == series.snapshots.size());
  // running norms are non-decreasing
  for (std::size_t i = 1; i < rep.s1_running.size(); ++i) {
    CHECK(rep.s1_running[i] >= rep.s1_running[i - 1] - 1e-12);
  }
  CHECK(rep.s0_plateau);
  CHECK(rep.s0_final_quarter_growth < 0.05);

  DiagnosticSeries zero_series;
  ComplexField zero(g);
  for (int i = 0; i <= 10; ++i) {
    zero_series.records.push_back(make_record(zero, 0.05 * i, nullptr, params));
    zero_series.snapshots.push_back({0.05 * i, zero});
  }
  auto zrep = s_norm_monitor(zero_series);
  CHECK(zrep.s1_running.back() == 0.0);
  CHECK(zrep.s0_w_running.back() == 0.0);
}
