#pragma once

// The time integrator: BDF1 startup, the semi-implicit BDF2 step with
// pointwise sphere projection, forcing and applied-field hooks, and the
// trajectory driver.

#include <functional>
#include <optional>
#include <vector>

#include "llproj/discrete_ops.hpp"
#include "llproj/linear_system.hpp"
#include "llproj/mesh.hpp"

namespace llproj {

struct SchemeParams {
  double alpha = 0.02;    // damping, > 0
  double k = 1e-3;        // time step, > 0
  double t_final = 1.0;   // 0 < k <= t_final
  // Optional forcing f(x, y, z, t); evaluated at the implicit time level.
  std::function<Vec3(double, double, double, double)> forcing;
  // Optional constant applied field, treated fully explicitly through m_hat.
  std::optional<Vec3> h_app;
  SolverConfig solver;
};

struct SchemeState {
  long n = 0;            // index of the newest completed level
  double t_curr = 0.0;   // time of m_curr (= n * k)
  VectorField m_prev, m_curr;    // projected levels m^{n-1}, m^n
  VectorField mt_prev, mt_curr;  // unprojected levels m~^{n-1}, m~^n
  // Pointwise residual of the accepted time-marching equation, normalized by
  // the rhs magnitude; asserted <= 1e-9 every step.
  double eq_residual = 0.0;
};

// Observer callback: (step index, time, read-only state) -> stop signal.
// Returning true stops the trajectory after the current step.
using Observer = std::function<bool(long, double, const SchemeState&)>;

// Explicit applied-field contribution to the step rhs, per cell:
//   -m_hat x h_app - alpha m_hat x (m_hat x h_app).
std::vector<double> apply_field_terms(const VectorField& hat_m, const Vec3& h_app, double alpha);

// BDF1 startup: m~^0 := m^0 := m0, then one backward-Euler step
//   (m~^1 - m^0)/k = -m_hat x Lap_h m~^1 - alpha m_hat x (m_hat x Lap_h m~^1) + f
// with m_hat := m^0 and f evaluated at the implicit level t^1 = k, followed by
// projection m^1 = m~^1/|m~^1|.  m0 must be pointwise unit to 1e-8 (it is
// re-projected to remove rounding-level drift).
SchemeState init(const VectorField& m0, const SchemeParams& params);

// One BDF2 step: m_hat = 2m^{n+1} - m^n, solve for m~^{n+2}, project, rotate
// the history.  The two-argument form creates a transient solver; the
// three-argument form reuses the caller's (sparsity-pattern reuse).
SchemeState bdf2_step(const SchemeState& state, const SchemeParams& params);
SchemeState bdf2_step(const SchemeState& state, const SchemeParams& params, LinearSolver& solver);

// init followed by bdf2_step until t >= t_final - k/2.  Observers run after
// every accepted step (including the startup step); any observer returning
// true stops the run early.  t_final that is not an integer multiple of k is
// accepted with a warning and floor semantics; the CLI harness rejects it.
SchemeState run(const VectorField& m0, const SchemeParams& params,
                const std::vector<Observer>& observers = {});

}  // namespace llproj
