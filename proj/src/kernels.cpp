#include "snls/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "snls/nonlinearity.hpp"
#include "snls/threading.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace snls::kernels {

namespace {

struct Kahan {
  double sum = 0.0;
  double c = 0.0;
  void add(double v) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// Per-thread Kahan accumulators combined in thread order: deterministic for a
// fixed thread count.
template <typename Body>
double parallel_sum(std::size_t n, Body body) {
#ifdef _OPENMP
  const int nt = configured_threads();
  if (nt > 1) {
    std::vector<Kahan> acc(static_cast<std::size_t>(nt));
#pragma omp parallel num_threads(nt)
    {
      const int tid = omp_get_thread_num();
      Kahan local;
#pragma omp for schedule(static)
      for (long long i = 0; i < static_cast<long long>(n); ++i) {
        local.add(body(static_cast<std::size_t>(i)));
      }
      acc[static_cast<std::size_t>(tid)] = local;
    }
    double sum = 0.0, c = 0.0;
    for (const auto& a : acc) {
      const double y = a.sum - c;
      const double t = sum + y;
      c = (t - sum) - y;
      sum = t;
    }
    return sum;
  }
#endif
  Kahan k;
  for (std::size_t i = 0; i < n; ++i) k.add(body(i));
  return k.sum;
}

double exp_tail2(double tau, double alpha) { return exp_tail(tau, 2, alpha); }

}  // namespace

void pointwise_multiply(Complex* a, const Complex* m, std::size_t n) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    a[i] *= m[i];
  }
}

bool nonlinear_phase_apply(Complex* u, const double* w, std::size_t n, double dt, double alpha) {
  bool ok = true;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(&& : ok)
#endif
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    const double tau = std::norm(u[i]);
    if (alpha * tau > kExpArgLimit) {
      ok = false;
      continue;
    }
    const double phase = -dt * w[i] * exp_tail2(tau, alpha);
    u[i] *= Complex(std::cos(phase), std::sin(phase));
  }
  return ok;
}

double sum_abs2(const Complex* u, std::size_t n) {
  return parallel_sum(n, [&](std::size_t i) { return std::norm(u[i]); });
}

double sum_abs2_weighted(const Complex* u, const double* w, std::size_t n) {
  return parallel_sum(n, [&](std::size_t i) { return w[i] * std::norm(u[i]); });
}

double sum_weighted_exp_tail(const Complex* u, const double* w, std::size_t n, double alpha,
                             int k) {
  return parallel_sum(n, [&](std::size_t i) { return w[i] * exp_tail(std::norm(u[i]), k, alpha); });
}

double sum_weighted_g(const Complex* u, const double* w, std::size_t n, double alpha, double b) {
  // g(tau) = (4(4-b)/alpha) T3 - 8 tau T2, see nonlinearity.hpp
  const double c3 = 4.0 * (4.0 - b) / alpha;
  return parallel_sum(n, [&](std::size_t i) {
    const double tau = std::norm(u[i]);
    return w[i] * (c3 * exp_tail(tau, 3, alpha) - 8.0 * tau * exp_tail(tau, 2, alpha));
  });
}

double sum_pow_abs(const Complex* u, std::size_t n, double p) {
  if (p == 2.0) return sum_abs2(u, n);
  if (p == 4.0) {
    return parallel_sum(n, [&](std::size_t i) {
      const double a2 = std::norm(u[i]);
      return a2 * a2;
    });
  }
  const double half_p = 0.5 * p;
  return parallel_sum(n, [&](std::size_t i) { return std::pow(std::norm(u[i]), half_p); });
}

double max_abs(const Complex* u, std::size_t n) {
  double m2 = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : m2)
#endif
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    m2 = std::max(m2, std::norm(u[i]));
  }
  return std::sqrt(m2);
}

double holder_quotient_sup(const Complex* u, int n, double h, double beta, int max_off) {
  // Offsets over a half plane (dy > 0, or dy == 0 && dx > 0) cover every
  // unordered pair once. No wrap: pair distances are Euclidean box distances.
  struct Off {
    int dx, dy;
    double denom;
  };
  std::vector<Off> offsets;
  for (int dy = 0; dy <= max_off; ++dy) {
    for (int dx = (dy == 0 ? 1 : -max_off); dx <= max_off; ++dx) {
      const long long r2 = static_cast<long long>(dx) * dx + static_cast<long long>(dy) * dy;
      if (r2 == 0 || r2 > static_cast<long long>(max_off) * max_off) continue;
      offsets.push_back({dx, dy, std::pow(h * std::sqrt(static_cast<double>(r2)), beta)});
    }
  }
  double sup = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) reduction(max : sup)
#endif
  for (long long oi = 0; oi < static_cast<long long>(offsets.size()); ++oi) {
    const auto& off = offsets[static_cast<std::size_t>(oi)];
    const int i_lo = std::max(0, -off.dx), i_hi = std::min(n, n - off.dx);
    const int j_lo = std::max(0, -off.dy), j_hi = std::min(n, n - off.dy);
    double local = 0.0;
    for (int i = i_lo; i < i_hi; ++i) {
      const Complex* row = u + static_cast<std::size_t>(i) * n;
      const Complex* row2 = u + static_cast<std::size_t>(i + off.dx) * n + off.dy;
      for (int j = j_lo; j < j_hi; ++j) {
        local = std::max(local, std::norm(row2[j] - row[j]));
      }
    }
    sup = std::max(sup, std::sqrt(local) / off.denom);
  }
  return sup;
}

namespace serial {

void pointwise_multiply(Complex* a, const Complex* m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] *= m[i];
}

bool nonlinear_phase_apply(Complex* u, const double* w, std::size_t n, double dt, double alpha) {
  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double tau = std::norm(u[i]);
    if (alpha * tau > kExpArgLimit) {
      ok = false;
      continue;
    }
    const double phase = -dt * w[i] * exp_tail2(tau, alpha);
    u[i] *= Complex(std::cos(phase), std::sin(phase));
  }
  return ok;
}

double sum_abs2(const Complex* u, std::size_t n) {
  Kahan k;
  for (std::size_t i = 0; i < n; ++i) k.add(std::norm(u[i]));
  return k.sum;
}

double sum_abs2_weighted(const Complex* u, const double* w, std::size_t n) {
  Kahan k;
  for (std::size_t i = 0; i < n; ++i) k.add(w[i] * std::norm(u[i]));
  return k.sum;
}

double sum_weighted_exp_tail(const Complex* u, const double* w, std::size_t n, double alpha,
                             int k) {
  Kahan acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(w[i] * exp_tail(std::norm(u[i]), k, alpha));
  return acc.sum;
}

double sum_weighted_g(const Complex* u, const double* w, std::size_t n, double alpha, double b) {
  const double c3 = 4.0 * (4.0 - b) / alpha;
  Kahan acc;
  for (std::size_t i = 0; i < n; ++i) {
    const double tau = std::norm(u[i]);
    acc.add(w[i] * (c3 * exp_tail(tau, 3, alpha) - 8.0 * tau * exp_tail(tau, 2, alpha)));
  }
  return acc.sum;
}

double sum_pow_abs(const Complex* u, std::size_t n, double p) {
  Kahan k;
  const double half_p = 0.5 * p;
  for (std::size_t i = 0; i < n; ++i) k.add(std::pow(std::norm(u[i]), half_p));
  return k.sum;
}

double max_abs(const Complex* u, std::size_t n) {
  double m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) m2 = std::max(m2, std::norm(u[i]));
  return std::sqrt(m2);
}

double holder_quotient_sup(const Complex* u, int n, double h, double beta, int max_off) {
  double sup = 0.0;
  for (int dy = 0; dy <= max_off; ++dy) {
    for (int dx = (dy == 0 ? 1 : -max_off); dx <= max_off; ++dx) {
      const long long r2 = static_cast<long long>(dx) * dx + static_cast<long long>(dy) * dy;
      if (r2 == 0 || r2 > static_cast<long long>(max_off) * max_off) continue;
      const double denom = std::pow(h * std::sqrt(static_cast<double>(r2)), beta);
      const int i_lo = std::max(0, -dx), i_hi = std::min(n, n - dx);
      const int j_lo = std::max(0, -dy), j_hi = std::min(n, n - dy);
      for (int i = i_lo; i < i_hi; ++i) {
        for (int j = j_lo; j < j_hi; ++j) {
          const Complex d = u[static_cast<std::size_t>(i + dx) * n + (j + dy)] -
                            u[static_cast<std::size_t>(i) * n + j];
          sup = std::max(sup, std::abs(d) / denom);
        }
      }
    }
  }
  return sup;
}

}  // namespace serial

}  // namespace snls::kernels
