#pragma once

#include <cstddef>

#include "snls/common.hpp"

// Hot inner loops, OpenMP-parallel. Every kernel has a serial twin in
// snls::kernels::serial with the identical contract; the test suite
// cross-checks them and tools/bench_kernels times them against each other.
// Reduction order is fixed for a given thread count, so results are
// deterministic under a pinned SNLS_THREADS.

namespace snls::kernels {

/// a[i] *= m[i]
void pointwise_multiply(Complex* a, const Complex* m, std::size_t n);

/// u[i] *= exp(-i * dt * w[i] * (e^{alpha|u_i|^2} - 1 - alpha|u_i|^2)).
/// Modulus-preserving by construction (pure phase). Returns false if the
/// overflow guard alpha|u|^2 > 700 tripped anywhere (the state is then
/// unusable and the caller must abort); never throws from the parallel region.
bool nonlinear_phase_apply(Complex* u, const double* w, std::size_t n, double dt, double alpha);

/// sum |u_i|^2
double sum_abs2(const Complex* u, std::size_t n);

/// sum w_i |u_i|^2
double sum_abs2_weighted(const Complex* u, const double* w, std::size_t n);

/// sum w_i * exp_tail(|u_i|^2, k, alpha), k in {1,2,3}
double sum_weighted_exp_tail(const Complex* u, const double* w, std::size_t n, double alpha,
                             int k);

/// sum w_i * g(|u_i|^2) with the defect density g (see nonlinearity.hpp)
double sum_weighted_g(const Complex* u, const double* w, std::size_t n, double alpha, double b);

/// sum |u_i|^p
double sum_pow_abs(const Complex* u, std::size_t n, double p);

/// max |u_i|
double max_abs(const Complex* u, std::size_t n);

/// sup over grid pairs within Euclidean separation <= max_off cells of
/// |u(x)-u(y)| / |x-y|^beta. Pairs do not wrap around the box. n is the
/// points-per-axis, h the spacing.
double holder_quotient_sup(const Complex* u, int n, double h, double beta, int max_off);

namespace serial {
void pointwise_multiply(Complex* a, const Complex* m, std::size_t n);
bool nonlinear_phase_apply(Complex* u, const double* w, std::size_t n, double dt, double alpha);
double sum_abs2(const Complex* u, std::size_t n);
double sum_abs2_weighted(const Complex* u, const double* w, std::size_t n);
double sum_weighted_exp_tail(const Complex* u, const double* w, std::size_t n, double alpha,
                             int k);
double sum_weighted_g(const Complex* u, const double* w, std::size_t n, double alpha, double b);
double sum_pow_abs(const Complex* u, std::size_t n, double p);
double max_abs(const Complex* u, std::size_t n);
double holder_quotient_sup(const Complex* u, int n, double h, double beta, int max_off);
}  // namespace serial

}  // namespace snls::kernels
