// Times the OpenMP kernels against their serial reference implementations.
// Run with SNLS_THREADS=<k> to compare thread counts.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include "snls/grid.hpp"
#include "snls/kernels.hpp"
#include "snls/nonlinearity.hpp"
#include "snls/threading.hpp"

using snls::Complex;
namespace k = snls::kernels;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  fn();  // warm-up
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-26s %10.3f ms %10.3f ms %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main() {
  snls::configure_threads_from_env();
  const int n = 512;
  const std::size_t m = static_cast<std::size_t>(n) * n;
  std::printf("kernel benchmark, n = %d (%zu cells), SNLS_THREADS = %d\n", n, m,
              snls::configured_threads());
  std::printf("%-26s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  std::mt19937_64 rng(7);
  auto uniform = [&rng]() { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
  std::vector<Complex> u(m), mult(m);
  std::vector<double> w(m);
  for (std::size_t i = 0; i < m; ++i) {
    u[i] = Complex(uniform() - 0.5, uniform() - 0.5);
    const double phi = uniform() * 6.28;
    mult[i] = Complex(std::cos(phi), std::sin(phi));
    w[i] = 0.1 + uniform();
  }
  const double alpha = 3.0 * snls::kPi;

  {
    auto a = u;
    auto b = u;
    row("pointwise_multiply",
        time_ms([&] { k::serial::pointwise_multiply(a.data(), mult.data(), m); }, 10),
        time_ms([&] { k::pointwise_multiply(b.data(), mult.data(), m); }, 10));
  }
  {
    auto a = u;
    auto b = u;
    row("nonlinear_phase_apply",
        time_ms([&] { k::serial::nonlinear_phase_apply(a.data(), w.data(), m, 1e-3, alpha); }, 5),
        time_ms([&] { k::nonlinear_phase_apply(b.data(), w.data(), m, 1e-3, alpha); }, 5));
  }
  row("sum_abs2", time_ms([&] { k::serial::sum_abs2(u.data(), m); }, 10),
      time_ms([&] { k::sum_abs2(u.data(), m); }, 10));
  row("sum_abs2_weighted",
      time_ms([&] { k::serial::sum_abs2_weighted(u.data(), w.data(), m); }, 10),
      time_ms([&] { k::sum_abs2_weighted(u.data(), w.data(), m); }, 10));
  row("sum_weighted_exp_tail",
      time_ms([&] { k::serial::sum_weighted_exp_tail(u.data(), w.data(), m, alpha, 3); }, 5),
      time_ms([&] { k::sum_weighted_exp_tail(u.data(), w.data(), m, alpha, 3); }, 5));
  row("sum_weighted_g",
      time_ms([&] { k::serial::sum_weighted_g(u.data(), w.data(), m, alpha, 0.5); }, 5),
      time_ms([&] { k::sum_weighted_g(u.data(), w.data(), m, alpha, 0.5); }, 5));
  row("sum_pow_abs(p=3)", time_ms([&] { k::serial::sum_pow_abs(u.data(), m, 3.0); }, 5),
      time_ms([&] { k::sum_pow_abs(u.data(), m, 3.0); }, 5));
  row("max_abs", time_ms([&] { k::serial::max_abs(u.data(), m); }, 10),
      time_ms([&] { k::max_abs(u.data(), m); }, 10));

  {
    const int hn = 128, hoff = 32;
    std::vector<Complex> hu(static_cast<std::size_t>(hn) * hn);
    for (auto& z : hu) z = Complex(uniform(), uniform());
    row("holder_quotient_sup",
        time_ms([&] { k::serial::holder_quotient_sup(hu.data(), hn, 1.0 / hn, 0.5, hoff); }, 2),
        time_ms([&] { k::holder_quotient_sup(hu.data(), hn, 1.0 / hn, 0.5, hoff); }, 2));
  }
  return 0;
}
