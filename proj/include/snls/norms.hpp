#pragma once

#include <map>
#include <string>
#include <vector>

#include "snls/grid.hpp"

namespace snls {

struct NormReport {
  std::string name;
  double value = 0.0;
  std::map<std::string, double> parameters;
};

/// (integrate |f|^p)^{1/p}; p = infinity gives the max modulus. Rejects p < 1.
double lp_norm(const ComplexField& f, double p);

/// sqrt(||f||_2^2 + ||grad f||_2^2)
double h1_norm(const ComplexField& f);

/// sqrt(||f||_{H^1}^2 + || |x| f ||_2^2): the weighted-space norm.
double sigma_norm(const ComplexField& f);

/// ||f||_4 + ||grad f||_4. Sum convention (not max), so the two pieces add
/// exactly as they do in triangle-inequality estimates.
double w14_norm(const ComplexField& f);

/// sqrt(||grad f||_2^2 + mu^2 ||f||_2^2), 0 < mu <= 1. mu = 1 is the H^1 norm.
double mu_norm(const ComplexField& f, double mu);

/// ||f||_inf + sup |f(x)-f(y)| / |x-y|^beta over grid pairs within separation
/// radius min(2L, 64h), pairs taken without wrapping. A finite-pair lower
/// bound of the continuum Hoelder norm; the radius cap keeps the scan
/// O(n^2 * const).
double holder_norm(const ComplexField& f, double beta);

/// d_f(lambda) = h^2 * #{cells : |f| > lambda}; non-increasing in lambda.
double distribution_function(const ComplexField& f, double lambda);

/// Decreasing rearrangement: moduli sorted descending, paired with the
/// measure coordinate s_i = h^2 * i, i = 1..n^2.
struct RearrangementProfile {
  std::vector<double> s;       // strictly increasing
  std::vector<double> u_star;  // non-increasing
};

RearrangementProfile decreasing_rearrangement(const ComplexField& f);

/// Lorentz norm from the rearrangement profile. q = infinity gives the weak
/// norm sup_s s^{1/p} u*(s). For q < infinity the defining integral
/// (q/p) int (s^{1/p} u*)^q ds/s is evaluated by the rectangle rule, which is
/// exact on the step-function profile (in particular L^{p,p} == L^p exactly).
/// Rejects p <= 1.
double lorentz_norm(const ComplexField& f, double p, double q);
double lorentz_norm(const RearrangementProfile& prof, double p, double q);

/// ( int a(t)^{p_t} dt )^{1/p_t} by trapezoid over sampled values a(t_i).
/// Needs at least 2 samples.
double time_lp_norm(const std::vector<double>& times, const std::vector<double>& values,
                    double p_t);

/// Space-time L^{p_t}(L^{q_x}) over stored snapshots (t_i, u_i); with_gradient
/// replaces ||u||_{q_x} by the W^{1,q_x} sum norm.
double spacetime_norm(const std::vector<double>& times, const std::vector<ComplexField>& fields,
                      double p_t, double q_x, bool with_gradient = false);

/// S^1 = L^inf_t H^1 + L^4_t W^{1,4};  S^0 = L^inf_t L^2 + L^4_t L^4.
double s1_norm(const std::vector<double>& times, const std::vector<ComplexField>& fields);
double s0_norm(const std::vector<double>& times, const std::vector<ComplexField>& fields);

}  // namespace snls
