#pragma once

#include <functional>

#include "snls/invariants.hpp"

namespace snls {

struct SolverState {
  double t = 0.0;
  ComplexField u;
  long step_count = 0;
};

struct StepPolicy {
  double dt = 1e-3;
  double t_end = 1.0;
  int snapshot_stride = 10;  // observation cadence, in steps
};

/// Observation plumbing for evolve(). Records are produced at every stride
/// boundary (and at the final time); field snapshots every `field_every`
/// records. Sinks, when set, run in addition to the in-memory series.
struct Observers {
  bool record_invariants = true;
  bool store_fields = true;
  int field_every = 4;
  std::function<void(const SeriesRecord&)> record_sink;
  std::function<void(double, const ComplexField&)> field_sink;
  double boundary_threshold = 1e-6;  // abort guard; <= 0 disables
  int boundary_shell_cells = 4;
};

/// Exact nonlinear substep: u <- exp(-i dt |x|^{-b} (e^{alpha|u|^2}-1-alpha|u|^2)) u.
/// The multiplier is real, so |u| is preserved cell by cell.
ComplexField nonlinear_phase_step(const ComplexField& u, double dt, const SingularWeight& w,
                                  const ModelParams& params);

/// One Strang step: half free flow, full nonlinear phase, half free flow.
/// Passing w == nullptr runs the free flow only (nonlinearity disabled).
SolverState strang_step(const SolverState& state, double dt, const SingularWeight* w,
                        const ModelParams& params);

/// Time evolution with observation. Inside a snapshot stride the adjacent
/// half-kinetic substeps are fused (K/2 (N K)^{m-1} N K/2), the same operator
/// product as m plain Strang steps at half the transform count.
/// Aborts (SnlsError) if the boundary-shell mass fraction exceeds the
/// configured threshold or the overflow guard trips.
DiagnosticSeries evolve(SolverState& state, const StepPolicy& policy, const SingularWeight* w,
                        const ModelParams& params, const Observers& observers);

}  // namespace snls
