#include "snls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fft_internal.hpp"
#include "snls/kernels.hpp"

namespace snls {

namespace {

// Spectral phase multipliers e^{-i dt |k|^2} with the backward-transform
// scaling 1/n^2 folded in, so one pointwise pass per kinetic substep.
std::vector<Complex> kinetic_multiplier(const GridSpec& g, double dt) {
  std::vector<Complex> m(g.size());
  const double scale = 1.0 / static_cast<double>(g.size());
  for (int i = 0; i < g.n; ++i) {
    const double kx = g.wavenumbers[i];
    for (int j = 0; j < g.n; ++j) {
      const double ky = g.wavenumbers[j];
      const double phase = -dt * (kx * kx + ky * ky);
      m[static_cast<std::size_t>(i) * g.n + j] =
          Complex(std::cos(phase) * scale, std::sin(phase) * scale);
    }
  }
  return m;
}

void kinetic_apply(detail::FftEngine& eng, ComplexField& u, const std::vector<Complex>& mult) {
  eng.forward_inplace(u.data());
  kernels::pointwise_multiply(u.data(), mult.data(), u.size());
  eng.backward_inplace(u.data());
}

[[noreturn]] void throw_overflow(const ComplexField& u, double alpha, double t) {
  const auto& g = u.grid();
  int bi = 0, bj = 0;
  double worst = 0.0;
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      const double s = alpha * std::norm(u(i, j));
      if (s > worst) {
        worst = s;
        bi = i;
        bj = j;
      }
    }
  }
  std::ostringstream msg;
  msg << "solver abort at t = " << t << ": overflow guard alpha|u|^2 = " << worst << " at cell ("
      << bi << "," << bj << "), x = (" << g.coords[bi] << "," << g.coords[bj] << ")";
  throw SnlsError(msg.str());
}

}  // namespace

ComplexField nonlinear_phase_step(const ComplexField& u, double dt, const SingularWeight& w,
                                  const ModelParams& params) {
  ComplexField out = u;
  if (!kernels::nonlinear_phase_apply(out.data(), w.data(), out.size(), dt, params.alpha)) {
    throw_overflow(u, params.alpha, 0.0);
  }
  return out;
}

SolverState strang_step(const SolverState& state, double dt, const SingularWeight* w,
                        const ModelParams& params) {
  SolverState next;
  next.t = state.t + dt;
  next.step_count = state.step_count + 1;
  if (w == nullptr) {
    next.u = free_propagator(state.u, dt);
    return next;
  }
  ComplexField u = free_propagator(state.u, 0.5 * dt);
  u = nonlinear_phase_step(u, dt, *w, params);
  next.u = free_propagator(u, 0.5 * dt);
  return next;
}

DiagnosticSeries evolve(SolverState& state, const StepPolicy& policy, const SingularWeight* w,
                        const ModelParams& params, const Observers& observers) {
  if (!(policy.dt > 0.0)) throw SnlsError("evolve: dt must be positive");
  if (policy.snapshot_stride < 1) throw SnlsError("evolve: snapshot_stride must be >= 1");
  const double span = policy.t_end - state.t;
  if (span < -1e-12) throw SnlsError("evolve: t_end must not precede the current time");
  const long long n_steps = std::llround(std::max(0.0, span) / policy.dt);

  const double t0 = state.t;
  auto& eng = detail::engine_for(state.u.grid().n);
  const auto mult_half = kinetic_multiplier(state.u.grid(), 0.5 * policy.dt);
  const auto mult_full = kinetic_multiplier(state.u.grid(), policy.dt);

  DiagnosticSeries series;
  long long record_index = 0;
  double last_field_time = std::numeric_limits<double>::quiet_NaN();
  auto emit_field = [&]() {
    if (observers.store_fields) series.snapshots.push_back({state.t, state.u});
    if (observers.field_sink) observers.field_sink(state.t, state.u);
    last_field_time = state.t;
  };
  auto observe = [&]() {
    SeriesRecord rec = make_record(state.u, state.t, w, params, observers.boundary_shell_cells);
    series.records.push_back(rec);
    if (observers.record_sink) observers.record_sink(rec);
    if (observers.field_every > 0 && (record_index % observers.field_every == 0)) {
      emit_field();
    }
    ++record_index;
    if (observers.boundary_threshold > 0.0 &&
        rec.boundary_mass_fraction > observers.boundary_threshold) {
      std::ostringstream msg;
      msg << "solver abort at t = " << state.t << ": boundary-shell mass fraction "
          << rec.boundary_mass_fraction << " exceeds threshold " << observers.boundary_threshold
          << " (wrap-around; the periodic box no longer represents the plane)";
      throw SnlsError(msg.str());
    }
  };

  observe();
  long long done = 0;
  while (done < n_steps) {
    const long long m = std::min<long long>(policy.snapshot_stride, n_steps - done);
    if (w == nullptr) {
      state.u = free_propagator(state.u, static_cast<double>(m) * policy.dt);
    } else {
      // Fused block: K/2 (N K)^{m-1} N K/2 == m Strang steps.
      kinetic_apply(eng, state.u, mult_half);
      for (long long s = 0; s < m; ++s) {
        if (!kernels::nonlinear_phase_apply(state.u.data(), w->data(), state.u.size(), policy.dt,
                                            params.alpha)) {
          throw_overflow(state.u, params.alpha, state.t);
        }
        kinetic_apply(eng, state.u, s + 1 < m ? mult_full : mult_half);
      }
    }
    done += m;
    state.step_count += m;
    state.t = t0 + static_cast<double>(done) * policy.dt;
    observe();
  }
  // make sure the final field is always among the snapshots
  if (observers.field_every > 0 && n_steps > 0 && last_field_time != state.t) {
    emit_field();
  }
  return series;
}

}  // namespace snls
