#include "snls/invariants.hpp"

#include <cmath>

#include "snls/kernels.hpp"
#include "snls/norms.hpp"
#include "snls/scattering.hpp"

namespace snls {

double mass(const ComplexField& u) { return lp_norm(u, 2.0); }

double hamiltonian(const ComplexField& u, const SingularWeight& w, const ModelParams& params) {
  return integrate(hamiltonian_density(u, w, params));
}

double virial_V(const ComplexField& u) {
  const auto& g = u.grid();
  double sum = 0.0, c = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double x = g.coords[i];
    for (int j = 0; j < g.n; ++j) {
      const double y = g.coords[j];
      const double v = (x * x + y * y) * std::norm(u(i, j));
      const double yy = v - c;
      const double t = sum + yy;
      c = (t - sum) - yy;
      sum = t;
    }
  }
  return g.cell_area() * sum;
}

double virial_M(const ComplexField& u) {
  const auto& g = u.grid();
  auto [dx, dy] = gradient(u);
  double sum = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double x = g.coords[i];
    for (int j = 0; j < g.n; ++j) {
      const double y = g.coords[j];
      const Complex xdotgrad = x * dx(i, j) + y * dy(i, j);
      sum += std::imag(std::conj(u(i, j)) * xdotgrad);
    }
  }
  return 2.0 * g.cell_area() * sum;
}

double pseudo_conformal_K(const ComplexField& u, double t, const SingularWeight& w,
                          const ModelParams& params) {
  const double wl2 = weighted_w_l2(u, t);
  const double pot =
      kernels::sum_weighted_exp_tail(u.data(), w.data(), u.size(), params.alpha, 3) *
      u.grid().cell_area();
  return wl2 * wl2 + (4.0 * t * t / params.alpha) * pot;
}

double G_functional(const ComplexField& u, const SingularWeight& w, const ModelParams& params) {
  return kernels::sum_weighted_g(u.data(), w.data(), u.size(), params.alpha, params.b) *
         u.grid().cell_area();
}

namespace {

double check_uniform_spacing(const std::vector<double>& t) {
  const double dt = t[1] - t[0];
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    const double d = t[i + 1] - t[i];
    if (std::abs(d - dt) > 1e-9 * std::max(1.0, std::abs(dt))) {
      throw SnlsError("identity check requires uniformly spaced records");
    }
  }
  return dt;
}

}  // namespace

VirialResidualReport check_virial_identities(const DiagnosticSeries& series) {
  const auto& rec = series.records;
  if (rec.size() < 5) throw SnlsError("check_virial_identities: needs >= 5 records");
  std::vector<double> t = series.record_times();
  const double dt = check_uniform_spacing(t);

  VirialResidualReport rep;
  rep.dt_sample = dt;
  const double H0 = rec.front().hamiltonian;
  for (std::size_t k = 1; k + 1 < rec.size(); ++k) {
    const double dV = (rec[k + 1].V - rec[k - 1].V) / (2.0 * dt);
    const double ddV = (rec[k + 1].V - 2.0 * rec[k].V + rec[k - 1].V) / (dt * dt);
    const double dK = (rec[k + 1].K - rec[k - 1].K) / (2.0 * dt);
    rep.r_dv = std::max(rep.r_dv, std::abs(dV - 2.0 * rec[k].M_mom));
    rep.r_ddv = std::max(rep.r_ddv, std::abs(ddV - (8.0 * H0 - rec[k].G)));
    rep.r_dk = std::max(rep.r_dk, std::abs(dK - rec[k].t * rec[k].G));
  }
  return rep;
}

KKResidualReport check_kk_identity(const DiagnosticSeries& series) {
  const auto& rec = series.records;
  if (rec.size() < 2) throw SnlsError("check_kk_identity: needs >= 2 records");
  if (std::abs(rec.front().t) > 1e-12) {
    throw SnlsError("check_kk_identity: series must start at t = 0");
  }
  std::vector<double> t = series.record_times();
  const double dt = check_uniform_spacing(t);

  // K(0) = ||x u_0||^2 = V(u_0) by construction of the weighted operator at t=0.
  const double xu0_sq = rec.front().K;
  KKResidualReport rep;
  rep.dt_sample = dt;
  double tauG_integral = 0.0;
  for (std::size_t k = 1; k < rec.size(); ++k) {
    tauG_integral += 0.5 * dt * (rec[k - 1].t * rec[k - 1].G + rec[k].t * rec[k].G);
    rep.max_residual = std::max(rep.max_residual, std::abs(rec[k].K - xu0_sq - tauG_integral));
  }
  return rep;
}

SeriesRecord make_record(const ComplexField& u, double t, const SingularWeight* w,
                         const ModelParams& params, int boundary_shell_cells) {
  SeriesRecord r;
  r.t = t;
  const auto& g = u.grid();
  const double h2 = g.cell_area();

  // One gradient evaluation feeds H, h1, sigma, w14, M_mom and the direct
  // route for (x+2it grad)u.
  auto [dx, dy] = gradient(u);
  const double l2sq = h2 * kernels::sum_abs2(u.data(), u.size());
  double grad_sq = 0.0, v_sq = 0.0, xgrad_im = 0.0, w_sq = 0.0, grad4 = 0.0, u4 = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double x = g.coords[i];
    for (int j = 0; j < g.n; ++j) {
      const double y = g.coords[j];
      const Complex uv = u(i, j);
      const Complex gx = dx(i, j), gy = dy(i, j);
      const double gm2 = std::norm(gx) + std::norm(gy);
      const double r2 = x * x + y * y;
      const double a2 = std::norm(uv);
      grad_sq += gm2;
      v_sq += r2 * a2;
      xgrad_im += std::imag(std::conj(uv) * (x * gx + y * gy));
      // w = x u + 2 i t grad u, both components
      const Complex w1 = x * uv + Complex(0.0, 2.0 * t) * gx;
      const Complex w2 = y * uv + Complex(0.0, 2.0 * t) * gy;
      w_sq += std::norm(w1) + std::norm(w2);
      grad4 += gm2 * gm2;
      u4 += a2 * a2;
    }
  }
  grad_sq *= h2;
  v_sq *= h2;
  w_sq *= h2;

  const double pot3 =
      w ? h2 * kernels::sum_weighted_exp_tail(u.data(), w->data(), u.size(), params.alpha, 3)
        : 0.0;

  r.mass = std::sqrt(l2sq);
  r.hamiltonian = grad_sq + pot3 / params.alpha;
  r.V = v_sq;
  r.M_mom = 2.0 * h2 * xgrad_im;
  r.K = w_sq + (4.0 * t * t / params.alpha) * pot3;
  r.G = w ? kernels::sum_weighted_g(u.data(), w->data(), u.size(), params.alpha, params.b) * h2
          : 0.0;
  r.l4 = std::pow(h2 * u4, 0.25);
  r.h1 = std::sqrt(l2sq + grad_sq);
  r.sigma = std::sqrt(l2sq + grad_sq + v_sq);
  r.w14 = r.l4 + std::pow(h2 * grad4, 0.25);
  r.linf = kernels::max_abs(u.data(), u.size());
  r.boundary_mass_fraction = boundary_mass_fraction(u, boundary_shell_cells);
  return r;
}

}  // namespace snls
