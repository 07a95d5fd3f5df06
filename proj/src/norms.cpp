#include "snls/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "snls/kernels.hpp"

namespace snls {

double lp_norm(const ComplexField& f, double p) {
  if (std::isinf(p)) {
    return kernels::max_abs(f.data(), f.size());
  }
  if (p < 1.0) throw SnlsError("lp_norm: p must be >= 1");
  const double sum = kernels::sum_pow_abs(f.data(), f.size(), p);
  return std::pow(f.grid().cell_area() * sum, 1.0 / p);
}

double h1_norm(const ComplexField& f) {
  auto [dx, dy] = gradient(f);
  const double h2 = f.grid().cell_area();
  const double a = kernels::sum_abs2(f.data(), f.size());
  const double b = kernels::sum_abs2(dx.data(), dx.size());
  const double c = kernels::sum_abs2(dy.data(), dy.size());
  return std::sqrt(h2 * (a + b + c));
}

double sigma_norm(const ComplexField& f) {
  const auto& g = f.grid();
  auto [dx, dy] = gradient(f);
  const double h2 = g.cell_area();
  double xsum = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double x = g.coords[i];
    for (int j = 0; j < g.n; ++j) {
      const double y = g.coords[j];
      xsum += (x * x + y * y) * std::norm(f(i, j));
    }
  }
  const double a = kernels::sum_abs2(f.data(), f.size());
  const double b = kernels::sum_abs2(dx.data(), dx.size());
  const double c = kernels::sum_abs2(dy.data(), dy.size());
  return std::sqrt(h2 * (a + b + c + xsum));
}

double w14_norm(const ComplexField& f) {
  auto [dx, dy] = gradient(f);
  const double h2 = f.grid().cell_area();
  const double u4 = kernels::sum_pow_abs(f.data(), f.size(), 4.0);
  // |grad f|^4 with the Euclidean gradient modulus
  const std::size_t m = f.size();
  const Complex* gx = dx.data();
  const Complex* gy = dy.data();
  double g4 = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double a2 = std::norm(gx[i]) + std::norm(gy[i]);
    const double y = a2 * a2 - comp;
    const double t = g4 + y;
    comp = (t - g4) - y;
    g4 = t;
  }
  return std::pow(h2 * u4, 0.25) + std::pow(h2 * g4, 0.25);
}

double mu_norm(const ComplexField& f, double mu) {
  if (!(mu > 0.0 && mu <= 1.0)) throw SnlsError("mu_norm: mu must be in (0,1]");
  auto [dx, dy] = gradient(f);
  const double h2 = f.grid().cell_area();
  const double a = kernels::sum_abs2(f.data(), f.size());
  const double b = kernels::sum_abs2(dx.data(), dx.size());
  const double c = kernels::sum_abs2(dy.data(), dy.size());
  return std::sqrt(h2 * (b + c) + mu * mu * h2 * a);
}

double holder_norm(const ComplexField& f, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw SnlsError("holder_norm: beta must be in (0,1)");
  const auto& g = f.grid();
  // radius cap min(2L, 64h) expressed in cells
  const int max_off = std::min(g.n, 64);
  const double sup =
      kernels::holder_quotient_sup(f.data(), g.n, g.spacing, beta, max_off);
  return kernels::max_abs(f.data(), f.size()) + sup;
}

double distribution_function(const ComplexField& f, double lambda) {
  if (!(lambda > 0.0)) throw SnlsError("distribution_function: lambda must be positive");
  const double l2 = lambda * lambda;
  std::size_t count = 0;
  const Complex* v = f.data();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::norm(v[i]) > l2) ++count;
  }
  return f.grid().cell_area() * static_cast<double>(count);
}

RearrangementProfile decreasing_rearrangement(const ComplexField& f) {
  const double h2 = f.grid().cell_area();
  RearrangementProfile prof;
  prof.u_star.resize(f.size());
  const Complex* v = f.data();
  for (std::size_t i = 0; i < f.size(); ++i) prof.u_star[i] = std::abs(v[i]);
  std::sort(prof.u_star.begin(), prof.u_star.end(), std::greater<double>());
  prof.s.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) prof.s[i] = h2 * static_cast<double>(i + 1);
  return prof;
}

double lorentz_norm(const RearrangementProfile& prof, double p, double q) {
  if (!(p > 1.0)) throw SnlsError("lorentz_norm: p must be > 1");
  if (!(q >= 1.0)) throw SnlsError("lorentz_norm: q must be >= 1 or infinity");
  if (std::isinf(q)) {
    double sup = 0.0;
    for (std::size_t i = 0; i < prof.s.size(); ++i) {
      sup = std::max(sup, std::pow(prof.s[i], 1.0 / p) * prof.u_star[i]);
    }
    return sup;
  }
  // (q/p) int (s^{1/p} u*)^q ds/s evaluated exactly on the step profile:
  // u*(s) = u*_i on (s_{i-1}, s_i], so the integral is
  // sum_i u*_i^q (p/q)(s_i^{q/p} - s_{i-1}^{q/p}).
  const double e = q / p;
  double sum = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < prof.s.size(); ++i) {
    const double cur = std::pow(prof.s[i], e);
    if (prof.u_star[i] > 0.0) {
      sum += std::pow(prof.u_star[i], q) * (cur - prev);
    }
    prev = cur;
  }
  return std::pow(sum, 1.0 / q);
}

double lorentz_norm(const ComplexField& f, double p, double q) {
  return lorentz_norm(decreasing_rearrangement(f), p, q);
}

double time_lp_norm(const std::vector<double>& times, const std::vector<double>& values,
                    double p_t) {
  if (times.size() != values.size()) throw SnlsError("time_lp_norm: size mismatch");
  if (times.size() < 2) throw SnlsError("time_lp_norm: needs at least 2 samples");
  if (!(p_t >= 1.0)) throw SnlsError("time_lp_norm: p must be >= 1");
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double dt = times[i + 1] - times[i];
    if (!(dt > 0.0)) throw SnlsError("time_lp_norm: times must strictly increase");
    integral += 0.5 * dt * (std::pow(values[i], p_t) + std::pow(values[i + 1], p_t));
  }
  return std::pow(integral, 1.0 / p_t);
}

namespace {

// L^q norm of the Euclidean gradient modulus.
double gradient_lq(const ComplexField& f, double q) {
  auto [dx, dy] = gradient(f);
  const double h2 = f.grid().cell_area();
  const Complex* gx = dx.data();
  const Complex* gy = dy.data();
  double s = 0.0;
  for (std::size_t m = 0; m < dx.size(); ++m) {
    s += std::pow(std::norm(gx[m]) + std::norm(gy[m]), 0.5 * q);
  }
  return std::pow(h2 * s, 1.0 / q);
}

}  // namespace

double spacetime_norm(const std::vector<double>& times, const std::vector<ComplexField>& fields,
                      double p_t, double q_x, bool with_gradient) {
  if (times.size() != fields.size()) throw SnlsError("spacetime_norm: size mismatch");
  std::vector<double> values(fields.size());
  for (std::size_t i = 0; i < fields.size(); ++i) {
    values[i] = lp_norm(fields[i], q_x);
    if (with_gradient) values[i] += gradient_lq(fields[i], q_x);
  }
  return time_lp_norm(times, values, p_t);
}

double s1_norm(const std::vector<double>& times, const std::vector<ComplexField>& fields) {
  if (times.size() != fields.size() || times.size() < 2) {
    throw SnlsError("s1_norm: needs >= 2 snapshots");
  }
  double sup_h1 = 0.0;
  std::vector<double> w14(fields.size());
  for (std::size_t i = 0; i < fields.size(); ++i) {
    sup_h1 = std::max(sup_h1, h1_norm(fields[i]));
    w14[i] = w14_norm(fields[i]);
  }
  return sup_h1 + time_lp_norm(times, w14, 4.0);
}

double s0_norm(const std::vector<double>& times, const std::vector<ComplexField>& fields) {
  if (times.size() != fields.size() || times.size() < 2) {
    throw SnlsError("s0_norm: needs >= 2 snapshots");
  }
  double sup_l2 = 0.0;
  std::vector<double> l4(fields.size());
  for (std::size_t i = 0; i < fields.size(); ++i) {
    sup_l2 = std::max(sup_l2, lp_norm(fields[i], 2.0));
    l4[i] = lp_norm(fields[i], 4.0);
  }
  return sup_l2 + time_lp_norm(times, l4, 4.0);
}

}  // namespace snls
