#include "snls/scattering.hpp"

#include <algorithm>
#include <cmath>

#include "fft_internal.hpp"
#include "snls/kernels.hpp"
#include "snls/norms.hpp"

namespace snls {

ComplexField conformal_v(const ComplexField& u, double t) {
  if (t == 0.0) throw SnlsError("conformal_v: t must be nonzero");
  const auto& g = u.grid();
  ComplexField out = u;
  const double c = -1.0 / (4.0 * t);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.coords[i];
    for (int j = 0; j < g.n; ++j) {
      const double y = g.coords[j];
      const double phase = c * (x * x + y * y);
      out(i, j) *= Complex(std::cos(phase), std::sin(phase));
    }
  }
  return out;
}

std::pair<ComplexField, ComplexField> weighted_w(const ComplexField& u, double t) {
  const auto& g = u.grid();
  ComplexField back = (t != 0.0) ? free_propagator(u, -t) : u;
  ComplexField w1(u.grid_ptr()), w2(u.grid_ptr());
  for (int i = 0; i < g.n; ++i) {
    const double x = g.coords[i];
    for (int j = 0; j < g.n; ++j) {
      const double y = g.coords[j];
      w1(i, j) = x * back(i, j);
      w2(i, j) = y * back(i, j);
    }
  }
  if (t != 0.0) {
    w1 = free_propagator(w1, t);
    w2 = free_propagator(w2, t);
  }
  return {std::move(w1), std::move(w2)};
}

std::pair<ComplexField, ComplexField> weighted_w_direct(const ComplexField& u, double t) {
  const auto& g = u.grid();
  auto [dx, dy] = gradient(u);
  ComplexField w1(u.grid_ptr()), w2(u.grid_ptr());
  const Complex two_it(0.0, 2.0 * t);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.coords[i];
    for (int j = 0; j < g.n; ++j) {
      const double y = g.coords[j];
      w1(i, j) = x * u(i, j) + two_it * dx(i, j);
      w2(i, j) = y * u(i, j) + two_it * dy(i, j);
    }
  }
  return {std::move(w1), std::move(w2)};
}

double weighted_w_l2(const ComplexField& u, double t) {
  auto [w1, w2] = weighted_w_direct(u, t);
  const double h2 = u.grid().cell_area();
  const double s =
      kernels::sum_abs2(w1.data(), w1.size()) + kernels::sum_abs2(w2.data(), w2.size());
  return std::sqrt(h2 * s);
}

double conformal_gradient_l2(const ComplexField& u, double t) {
  if (t == 0.0) throw SnlsError("conformal_gradient_l2: t must be nonzero");
  return weighted_w_l2(u, t) / (2.0 * std::abs(t));
}

ComplexField inverse_free_profile(const ComplexField& u, double t) {
  return free_propagator(u, -t);
}

namespace {

// Kendall-style monotonicity of the max-row entries over increasing row time:
// +1 means strictly decreasing, -1 strictly increasing.
double decreasing_trend(const std::vector<double>& r) {
  long long plus = 0, minus = 0;
  for (std::size_t a = 0; a < r.size(); ++a) {
    for (std::size_t b = a + 1; b < r.size(); ++b) {
      if (r[a] > r[b]) ++plus;
      else if (r[a] < r[b]) ++minus;
    }
  }
  const long long total = plus + minus;
  return total == 0 ? 0.0 : static_cast<double>(plus - minus) / static_cast<double>(total);
}

std::vector<double> max_row(const std::vector<std::vector<double>>& m) {
  std::vector<double> r(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i != j) r[i] = std::max(r[i], m[i][j]);
    }
  }
  return r;
}

}  // namespace

ScatteringReport scattering_report(const std::vector<Snapshot>& snapshots) {
  if (snapshots.size() < 3) throw SnlsError("scattering_report: needs >= 3 snapshots");
  const std::size_t m = snapshots.size();
  const auto& g = snapshots.front().field.grid();
  const GridPtr gp = snapshots.front().field.grid_ptr();
  const int n = g.n;
  const double box = g.box_area();
  auto& eng = detail::engine_for(n);

  // Pullback profiles e^{-it Lap} u(t), kept both as spectra (H^1 distances by
  // Parseval) and in real space (x-weighted distances).
  std::vector<std::vector<Complex>> spectra(m);
  std::vector<ComplexField> profiles;
  profiles.reserve(m);
  const double scale = 1.0 / static_cast<double>(g.size());
  for (std::size_t s = 0; s < m; ++s) {
    ComplexField spec = snapshots[s].field;
    eng.forward_inplace(spec.data());
    const double t = snapshots[s].t;
    Complex* sp = spec.data();
    for (int i = 0; i < n; ++i) {
      const double kx = g.wavenumbers[i];
      for (int j = 0; j < n; ++j) {
        const double ky = g.wavenumbers[j];
        const double phase = t * (kx * kx + ky * ky);
        sp[static_cast<std::size_t>(i) * n + j] *=
            Complex(std::cos(phase) * scale, std::sin(phase) * scale);
      }
    }
    spectra[s] = spec.values();
    ComplexField real = spec;
    eng.backward_inplace(real.data());
    profiles.push_back(std::move(real));
  }

  ScatteringReport rep;
  rep.times.resize(m);
  for (std::size_t s = 0; s < m; ++s) rep.times[s] = snapshots[s].t;
  rep.h1_cauchy.assign(m, std::vector<double>(m, 0.0));
  rep.weighted_cauchy.assign(m, std::vector<double>(m, 0.0));

  // H^1 weight matches h1_norm's convention: Nyquist derivative zeroed.
  std::vector<double> kk(n);
  for (int i = 0; i < n; ++i) kk[i] = (i == n / 2) ? 0.0 : g.wavenumbers[i];

  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      double h1_sq = 0.0;
      const Complex* A = spectra[a].data();
      const Complex* B = spectra[b].data();
      for (int i = 0; i < n; ++i) {
        const double kx2 = kk[i] * kk[i];
        const std::size_t row = static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
          const double wgt = 1.0 + kx2 + kk[j] * kk[j];
          h1_sq += wgt * std::norm(A[row + j] - B[row + j]);
        }
      }
      const double h1 = std::sqrt(box * h1_sq);

      double xw_sq = 0.0;
      const Complex* Pa = profiles[a].data();
      const Complex* Pb = profiles[b].data();
      for (int i = 0; i < n; ++i) {
        const double x = g.coords[i];
        const std::size_t row = static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
          const double y = g.coords[j];
          xw_sq += (x * x + y * y) * std::norm(Pa[row + j] - Pb[row + j]);
        }
      }
      const double xw = std::sqrt(g.cell_area() * xw_sq);

      rep.h1_cauchy[a][b] = rep.h1_cauchy[b][a] = h1;
      rep.weighted_cauchy[a][b] = rep.weighted_cauchy[b][a] = xw;
    }
  }

  rep.candidate_state = profiles.back();
  rep.trend_h1 = decreasing_trend(max_row(rep.h1_cauchy));
  rep.trend_weighted = decreasing_trend(max_row(rep.weighted_cauchy));
  return rep;
}

DecayFit decay_fit(const std::vector<double>& times, const std::vector<double>& lq_values,
                   double q, double t_min, double t_max) {
  if (!(q > 2.0)) {
    throw SnlsError("decay_fit: q must be > 2 (no decay at q = 2)");
  }
  if (times.size() != lq_values.size()) throw SnlsError("decay_fit: size mismatch");
  if (!(t_min > 0.0) || !(t_max > t_min)) throw SnlsError("decay_fit: bad window");

  std::vector<double> lt, lv;
  double bound = 0.0;
  const double rate = 1.0 - 2.0 / q;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t_min || times[i] > t_max) continue;
    if (!(lq_values[i] > 0.0)) throw SnlsError("decay_fit: nonpositive norm in window");
    lt.push_back(std::log(times[i]));
    lv.push_back(std::log(lq_values[i]));
    bound = std::max(bound, lq_values[i] * std::pow(times[i], rate));
  }
  if (lt.size() < 8) throw SnlsError("decay_fit: needs >= 8 samples in the window");

  const double nn = static_cast<double>(lt.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lt.size(); ++i) {
    sx += lt[i];
    sy += lv[i];
    sxx += lt[i] * lt[i];
    sxy += lt[i] * lv[i];
    syy += lv[i] * lv[i];
  }
  const double denom = nn * sxx - sx * sx;
  DecayFit fit;
  fit.q = q;
  fit.t_min = t_min;
  fit.t_max = t_max;
  fit.fitted_slope = (nn * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.fitted_slope * sx) / nn;
  fit.paper_slope = -rate;
  fit.bound_constant = bound;
  const double ss_tot = syy - sy * sy / nn;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < lt.size(); ++i) {
    const double r = lv[i] - (fit.intercept + fit.fitted_slope * lt[i]);
    ss_res += r * r;
  }
  fit.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
  return fit;
}

IntervalPartition interval_partition(const std::vector<double>& times,
                                     const std::vector<double>& lq_values, double p, double q,
                                     double eps, double T) {
  if (!(p >= 1.0) || !(q >= 2.0) || !(p * (1.0 - 2.0 / q) > 1.0)) {
    throw SnlsError("interval_partition: requires p(1-2/q) > 1");
  }
  if (!(eps > 0.0)) throw SnlsError("interval_partition: eps must be positive");
  if (times.size() != lq_values.size() || times.size() < 2) {
    throw SnlsError("interval_partition: needs >= 2 samples");
  }

  std::size_t i0 = 0;
  while (i0 < times.size() && times[i0] < T - 1e-12) ++i0;
  if (i0 + 1 >= times.size()) throw SnlsError("interval_partition: no samples past T");

  const double budget = std::pow(eps, p);
  IntervalPartition part;
  part.eps = eps;
  double start = times[i0];
  double acc = 0.0;
  for (std::size_t i = i0; i + 1 < times.size(); ++i) {
    const double seg = 0.5 * (times[i + 1] - times[i]) *
                       (std::pow(lq_values[i], p) + std::pow(lq_values[i + 1], p));
    if (acc + seg > budget) {
      if (times[i] <= start) {
        throw SnlsError("interval_partition: sampling too coarse, one gap already exceeds eps");
      }
      part.intervals.emplace_back(start, times[i]);
      start = times[i];
      acc = seg;
      if (acc > budget) {
        throw SnlsError("interval_partition: sampling too coarse, one gap already exceeds eps");
      }
    } else {
      acc += seg;
    }
  }
  part.intervals.emplace_back(start, times.back());
  return part;
}

SNormReport s_norm_monitor(const DiagnosticSeries& series) {
  SNormReport rep;
  const auto& rec = series.records;
  if (rec.size() < 2) throw SnlsError("s_norm_monitor: needs >= 2 records");

  // running S^1 over record times
  rep.times = series.record_times();
  rep.s1_running.resize(rec.size());
  double sup_h1 = rec[0].h1;
  double w14_int = 0.0;
  rep.s1_running[0] = sup_h1;
  for (std::size_t k = 1; k < rec.size(); ++k) {
    sup_h1 = std::max(sup_h1, rec[k].h1);
    const double dt = rec[k].t - rec[k - 1].t;
    w14_int += 0.5 * dt * (std::pow(rec[k - 1].w14, 4.0) + std::pow(rec[k].w14, 4.0));
    rep.s1_running[k] = sup_h1 + std::pow(w14_int, 0.25);
  }

  // running S^0 of w = (x+2it grad)u over snapshot times
  const auto& snaps = series.snapshots;
  if (snaps.size() >= 2) {
    double sup_l2 = 0.0;
    double l4_int = 0.0;
    double prev_l4 = 0.0;
    double prev_t = 0.0;
    rep.s0_w_running.resize(snaps.size());
    for (std::size_t k = 0; k < snaps.size(); ++k) {
      auto [w1, w2] = weighted_w_direct(snaps[k].field, snaps[k].t);
      const double h2 = snaps[k].field.grid().cell_area();
      const double l2 = std::sqrt(h2 * (kernels::sum_abs2(w1.data(), w1.size()) +
                                        kernels::sum_abs2(w2.data(), w2.size())));
      double l4sum = 0.0;
      const Complex* a = w1.data();
      const Complex* b = w2.data();
      for (std::size_t i = 0; i < w1.size(); ++i) {
        const double m2 = std::norm(a[i]) + std::norm(b[i]);
        l4sum += m2 * m2;
      }
      const double l4 = std::pow(h2 * l4sum, 0.25);
      sup_l2 = std::max(sup_l2, l2);
      if (k > 0) {
        l4_int += 0.5 * (snaps[k].t - prev_t) * (std::pow(prev_l4, 4.0) + std::pow(l4, 4.0));
      }
      prev_l4 = l4;
      prev_t = snaps[k].t;
      rep.s0_w_running[k] = sup_l2 + std::pow(l4_int, 0.25);
    }
  }

  auto quarter_growth = [](const std::vector<double>& times, const std::vector<double>& v) {
    if (v.size() < 4) return 0.0;
    const double t_end = times.back();
    const double t_q = times.front() + 0.75 * (t_end - times.front());
    std::size_t iq = 0;
    while (iq + 1 < times.size() && times[iq] < t_q) ++iq;
    return v[iq] > 0.0 ? v.back() / v[iq] - 1.0 : 0.0;
  };

  rep.s1_final_quarter_growth = quarter_growth(rep.times, rep.s1_running);
  rep.s1_plateau = rep.s1_final_quarter_growth < 0.05;
  if (!rep.s0_w_running.empty()) {
    std::vector<double> snap_times(snaps.size());
    for (std::size_t k = 0; k < snaps.size(); ++k) snap_times[k] = snaps[k].t;
    rep.s0_final_quarter_growth = quarter_growth(snap_times, rep.s0_w_running);
    rep.s0_plateau = rep.s0_final_quarter_growth < 0.05;
  }
  return rep;
}

}  // namespace snls
