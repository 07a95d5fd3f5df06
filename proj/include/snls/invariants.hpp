#pragma once

#include "snls/nonlinearity.hpp"
#include "snls/series.hpp"

namespace snls {

/// M(u) = ||u||_2
double mass(const ComplexField& u);

/// H(u) = integrate(hamiltonian_density); conserved, nonnegative.
double hamiltonian(const ComplexField& u, const SingularWeight& w, const ModelParams& params);

/// V = int |x|^2 |u|^2
double virial_V(const ComplexField& u);

/// M_mom = 2 int Im(conj(u) x.grad u)
double virial_M(const ComplexField& u);

/// K(t) = ||(x+2it grad)u||_2^2 + (4t^2/alpha) int exp_tail(|u|^2,3,alpha) w.
/// At t = 0 this reduces to ||x u||_2^2 = V(u).
double pseudo_conformal_K(const ComplexField& u, double t, const SingularWeight& w,
                          const ModelParams& params);

/// G = int g(|u|^2) w; <= 0 up to quadrature roundoff.
double G_functional(const ComplexField& u, const SingularWeight& w, const ModelParams& params);

/// Centered finite-difference residuals of the virial identities
///   dV/dt = 2M,   d^2V/dt^2 = 8 H(u_0) - G,   dK/dt = t G
/// over uniformly spaced records. Expected to shrink at order 2 in the
/// sampling interval. Rejects non-uniform sampling or fewer than 5 records.
struct VirialResidualReport {
  double dt_sample = 0.0;
  double r_dv = 0.0;   // max |dV/dt - 2M|
  double r_ddv = 0.0;  // max |d2V/dt2 - 8H0 + G|
  double r_dk = 0.0;   // max |dK/dt - tG|
};

VirialResidualReport check_virial_identities(const DiagnosticSeries& series);

/// Residual of K(t) = ||x u_0||^2 + int_0^t tau G(tau) dtau, the time integral
/// by trapezoid over the records; series must start at t = 0.
struct KKResidualReport {
  double dt_sample = 0.0;
  double max_residual = 0.0;
};

KKResidualReport check_kk_identity(const DiagnosticSeries& series);

/// Assembles one full observation row (all invariants and norms). A null
/// weight means the free flow: the weighted potential terms are zero.
SeriesRecord make_record(const ComplexField& u, double t, const SingularWeight* w,
                         const ModelParams& params, int boundary_shell_cells = 4);

}  // namespace snls
