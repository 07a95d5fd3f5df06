#include "snls/nonlinearity.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "snls/kernels.hpp"

namespace snls {

ModelParams ModelParams::make(double b, OriginRule rule, double epsilon) {
  if (!(b > 0.0 && b < 1.0)) {
    throw SnlsError("model: b must be in (0,1), got " + std::to_string(b));
  }
  ModelParams p;
  p.b = b;
  p.alpha = 2.0 * kPi * (2.0 - b);
  p.origin_rule = rule;
  p.epsilon = epsilon;
  return p;
}

SingularWeight::SingularWeight(GridPtr grid, std::vector<double> values, double b)
    : grid_(std::move(grid)), values_(std::move(values)), b_(b) {
  if (values_.size() != grid_->size()) {
    throw SnlsError("weight/grid shape mismatch");
  }
}

namespace {

// Adaptive Simpson on [a,b] to abs tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

double origin_cell_average(double b, double h) {
  if (!(b > 0.0 && b < 2.0)) {
    throw SnlsError("origin_cell_average: requires 0 < b < 2");
  }
  // By 8-fold symmetry of the square cell,
  //   int_cell |x|^{-b} dx = (8/(2-b)) (h/2)^{2-b} int_0^{pi/4} cos(t)^{b-2} dt.
  const std::function<double(double)> f = [b](double t) { return std::pow(std::cos(t), b - 2.0); };
  const double wedge = integrate_adaptive(f, 0.0, kPi / 4.0, 1e-12);
  return (8.0 / (2.0 - b)) * std::pow(0.5 * h, 2.0 - b) * wedge / (h * h);
}

SingularWeight make_weight(const GridPtr& grid, double b, OriginRule rule, double epsilon) {
  if (!(b > 0.0 && b < 2.0)) {
    throw SnlsError("weight: b must be in (0,2), got " + std::to_string(b));
  }
  const auto& g = *grid;
  std::vector<double> values(g.size());
  const double half_b = 0.5 * b;
  for (int i = 0; i < g.n; ++i) {
    const double x = g.coords[i];
    for (int j = 0; j < g.n; ++j) {
      const double y = g.coords[j];
      const double r2 = x * x + y * y;
      double v;
      if (r2 > 0.0) {
        v = std::pow(r2, -half_b);
      } else if (rule == OriginRule::CellAverage) {
        v = origin_cell_average(b, g.spacing);
      } else {
        const double eps = epsilon > 0.0 ? epsilon : 0.5 * g.spacing;
        v = std::pow(eps * eps, -half_b);
      }
      values[static_cast<std::size_t>(i) * g.n + j] = v;
    }
  }
  return SingularWeight(grid, std::move(values), b);
}

SingularWeight weight_grid(const GridPtr& grid, const ModelParams& params) {
  if (!(params.b > 0.0 && params.b < 1.0)) {
    throw SnlsError("weight_grid: b must be in (0,1)");
  }
  return make_weight(grid, params.b, params.origin_rule, params.epsilon);
}

double exp_tail(double tau, int k, double alpha) {
  if (tau < 0.0) throw SnlsError("exp_tail: tau must be nonnegative");
  if (k < 1 || k > 3) throw SnlsError("exp_tail: k must be in {1,2,3}");
  const double s = alpha * tau;
  if (s < 0.5) {
    // Taylor tail sum_{j>=k} s^j/j!, terms fall below 1e-18 relative.
    double term = 1.0;
    for (int j = 1; j <= k; ++j) term *= s / j;
    double sum = term;
    for (int j = k + 1; j < 200; ++j) {
      term *= s / j;
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return sum;
  }
  double r = std::exp(s) - 1.0;
  if (k >= 2) r -= s;
  if (k >= 3) r -= 0.5 * s * s;
  return r;
}

namespace {

void check_overflow(const ComplexField& u, double alpha) {
  const auto& g = u.grid();
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      const double s = alpha * std::norm(u(i, j));
      if (s > kExpArgLimit) {
        std::ostringstream msg;
        msg << "nonlinearity overflow guard: alpha|u|^2 = " << s << " at cell (" << i << "," << j
            << "), x = (" << g.coords[i] << "," << g.coords[j]
            << "); discrete blow-up should not occur in the defocusing problem";
        throw SnlsError(msg.str());
      }
    }
  }
}

}  // namespace

ComplexField nonlinear_term(const ComplexField& u, const SingularWeight& w,
                            const ModelParams& params) {
  check_overflow(u, params.alpha);
  ComplexField out(u.grid_ptr());
  const std::size_t m = u.size();
  const Complex* uv = u.data();
  const double* wv = w.data();
  Complex* ov = out.data();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < static_cast<long long>(m); ++i) {
    ov[i] = wv[i] * exp_tail(std::norm(uv[i]), 2, params.alpha) * uv[i];
  }
  return out;
}

RealField hamiltonian_density(const ComplexField& u, const SingularWeight& w,
                              const ModelParams& params) {
  check_overflow(u, params.alpha);
  auto [dx, dy] = gradient(u);
  RealField out(u.grid_ptr());
  const std::size_t m = u.size();
  const Complex* uv = u.data();
  const Complex* gx = dx.data();
  const Complex* gy = dy.data();
  const double* wv = w.data();
  double* ov = out.data();
  const double inv_alpha = 1.0 / params.alpha;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < static_cast<long long>(m); ++i) {
    ov[i] = std::norm(gx[i]) + std::norm(gy[i]) +
            inv_alpha * wv[i] * exp_tail(std::norm(uv[i]), 3, params.alpha);
  }
  return out;
}

double g_pointwise(double tau, const ModelParams& params) {
  if (tau < 0.0) throw SnlsError("g_pointwise: tau must be nonnegative");
  const double a = params.alpha;
  return (4.0 * (4.0 - params.b) / a) * exp_tail(tau, 3, a) - 8.0 * tau * exp_tail(tau, 2, a);
}

double g_prime(double tau, const ModelParams& params) {
  if (tau < 0.0) throw SnlsError("g_prime: tau must be nonnegative");
  const double a = params.alpha;
  return 4.0 * (2.0 - params.b) * exp_tail(tau, 2, a) - 8.0 * a * tau * exp_tail(tau, 1, a);
}

}  // namespace snls
