#include "llproj/scheme.hpp"

#include <cmath>
#include <iostream>
#include <string>

namespace llproj {

namespace {

void validate(const SchemeParams& p) {
  if (!(p.alpha > 0.0)) throw std::invalid_argument("SchemeParams: alpha must be positive");
  if (!(p.k > 0.0)) throw std::invalid_argument("SchemeParams: k must be positive");
}

std::string step_message(long step, const char* phase, const std::string& what) {
  return "step " + std::to_string(step) + " (" + phase + "): " + what;
}

// Evaluate the forcing at every cell center at time t, as stacked dofs.
std::vector<double> forcing_dofs(const GridSpec& g,
                                 const std::function<Vec3(double, double, double, double)>& f,
                                 double t) {
  std::vector<double> out(static_cast<size_t>(3 * g.n_cells()), 0.0);
  if (!f) return out;
  size_t q = 0;
  for (long k = 0; k < g.nz; ++k)
    for (long j = 0; j < g.ny; ++j)
      for (long i = 0; i < g.nx; ++i) {
        const Vec3 v = f(g.xc(i), g.yc(j), g.zc(k), t);
        out[q++] = v.x;
        out[q++] = v.y;
        out[q++] = v.z;
      }
  return out;
}

// Normalized pointwise residual of the accepted step: ||Ax - b||_inf scaled
// by max(1, ||b||_inf).
double equation_residual(const BlockSparseSystem& sys, const std::vector<double>& x) {
  std::vector<double> ax(x.size());
  sys.apply(x.data(), ax.data());
  double defect = 0.0, bmax = 0.0;
  for (size_t q = 0; q < x.size(); ++q) {
    defect = std::max(defect, std::fabs(ax[q] - sys.rhs[q]));
    bmax = std::max(bmax, std::fabs(sys.rhs[q]));
  }
  return defect / std::max(1.0, bmax);
}

struct StepOutcome {
  VectorField mt_next, m_next;
  double eq_residual;
};

// Shared core of the BDF1 and BDF2 steps: assemble around hat_m with the
// given mass coefficient (expressed as an effective BDF2 step), solve, verify
// the equation residual, and project.
StepOutcome advance(const VectorField& hat_m, std::vector<double> rhs, double k_eff,
                    const SchemeParams& p, LinearSolver& solver, double t_next, long step) {
  const GridSpec& g = hat_m.grid();
  if (p.forcing) {
    const std::vector<double> f = forcing_dofs(g, p.forcing, t_next);
    for (size_t q = 0; q < rhs.size(); ++q) rhs[q] += f[q];
  }
  if (p.h_app) {
    const std::vector<double> field = apply_field_terms(hat_m, *p.h_app, p.alpha);
    for (size_t q = 0; q < rhs.size(); ++q) rhs[q] += field[q];
  }

  StepOutcome out{VectorField(g), VectorField(g), 0.0};
  try {
    const BlockSparseSystem sys = assemble(hat_m, rhs, k_eff, p.alpha);
    SolveResult sol = solver.solve(sys);
    out.eq_residual = equation_residual(sys, sol.x);
    if (out.eq_residual > 1e-9)
      throw SolverBreakdown("equation residual " + std::to_string(out.eq_residual) +
                            " exceeds 1e-9");
    out.mt_next.set_interior_dofs(sol.x);
  } catch (const std::exception& e) {
    throw std::runtime_error(step_message(step, "solve", e.what()));
  }
  try {
    out.m_next = project(out.mt_next);
  } catch (const DegenerateMagnitude& e) {
    throw std::runtime_error(step_message(step, "projection", e.what()));
  }
  return out;
}

SchemeState init_impl(const VectorField& m0, const SchemeParams& p, LinearSolver& solver) {
  validate(p);
  const GridSpec& g = m0.grid();

  // The initial data must already be pointwise unit; re-project to strip
  // rounding-level drift only.
  for (long k = 0; k < g.nz; ++k)
    for (long j = 0; j < g.ny; ++j)
      for (long i = 0; i < g.nx; ++i) {
        const double mag = norm(m0.at(i, j, k));
        if (std::fabs(mag - 1.0) > 1e-8)
          throw std::invalid_argument("init: initial data is not pointwise unit (|m0| = " +
                                      std::to_string(mag) + " at cell " + std::to_string(i) + "," +
                                      std::to_string(j) + "," + std::to_string(k) + ")");
      }
  VectorField m_start = project(m0);

  // BDF1 startup with m_hat := m^0 and mass coefficient 1/k = 3/(2 k_eff).
  std::vector<double> rhs = m_start.interior_dofs();
  for (double& v : rhs) v /= p.k;
  StepOutcome out = advance(m_start, std::move(rhs), 1.5 * p.k, p, solver, p.k, 1);

  SchemeState s;
  s.n = 1;
  s.t_curr = p.k;
  s.m_prev = m_start;
  s.mt_prev = std::move(m_start);
  s.m_curr = std::move(out.m_next);
  s.mt_curr = std::move(out.mt_next);
  s.eq_residual = out.eq_residual;
  return s;
}

SchemeState bdf2_step_impl(const SchemeState& s, const SchemeParams& p, LinearSolver& solver) {
  validate(p);
  const GridSpec& g = s.m_curr.grid();
  const long step = s.n + 1;
  const double t_next = static_cast<double>(step) * p.k;

  // Extrapolated coefficient field m_hat = 2 m^{n+1} - m^n.
  VectorField hat(g);
  for (long k = 0; k < g.nz; ++k)
    for (long j = 0; j < g.ny; ++j)
      for (long i = 0; i < g.nx; ++i)
        hat.set(i, j, k, 2.0 * s.m_curr.at(i, j, k) - s.m_prev.at(i, j, k));

  // History part of the rhs: (2 m~^{n+1} - (1/2) m~^n) / k.
  const std::vector<double> mt_curr = s.mt_curr.interior_dofs();
  const std::vector<double> mt_prev = s.mt_prev.interior_dofs();
  std::vector<double> rhs(mt_curr.size());
  for (size_t q = 0; q < rhs.size(); ++q)
    rhs[q] = (2.0 * mt_curr[q] - 0.5 * mt_prev[q]) / p.k;

  StepOutcome out = advance(hat, std::move(rhs), p.k, p, solver, t_next, step);

  SchemeState next;
  next.n = step;
  next.t_curr = t_next;
  next.m_prev = s.m_curr;
  next.mt_prev = s.mt_curr;
  next.m_curr = std::move(out.m_next);
  next.mt_curr = std::move(out.mt_next);
  next.eq_residual = out.eq_residual;
  return next;
}

}  // namespace

std::vector<double> apply_field_terms(const VectorField& hat_m, const Vec3& h_app, double alpha) {
  if (!std::isfinite(h_app.x) || !std::isfinite(h_app.y) || !std::isfinite(h_app.z))
    throw std::invalid_argument("apply_field_terms: non-finite h_app");
  const GridSpec& g = hat_m.grid();
  std::vector<double> out(static_cast<size_t>(3 * g.n_cells()));
  size_t q = 0;
  for (long k = 0; k < g.nz; ++k)
    for (long j = 0; j < g.ny; ++j)
      for (long i = 0; i < g.nx; ++i) {
        const Vec3 m = hat_m.at(i, j, k);
        const Vec3 v = -cross(m, h_app) - alpha * triple(m, h_app);
        out[q++] = v.x;
        out[q++] = v.y;
        out[q++] = v.z;
      }
  return out;
}

SchemeState init(const VectorField& m0, const SchemeParams& params) {
  LinearSolver solver(params.solver);
  return init_impl(m0, params, solver);
}

SchemeState bdf2_step(const SchemeState& state, const SchemeParams& params) {
  LinearSolver solver(params.solver);
  return bdf2_step_impl(state, params, solver);
}

SchemeState bdf2_step(const SchemeState& state, const SchemeParams& params, LinearSolver& solver) {
  return bdf2_step_impl(state, params, solver);
}

SchemeState run(const VectorField& m0, const SchemeParams& params,
                const std::vector<Observer>& observers) {
  validate(params);
  if (!(params.k <= params.t_final))
    throw std::invalid_argument("run: k must not exceed t_final");
  const double ratio = params.t_final / params.k;
  long n_total = std::lround(ratio);
  if (std::fabs(static_cast<double>(n_total) - ratio) > 1e-9 * std::max(1.0, ratio)) {
    n_total = static_cast<long>(std::floor(ratio + 1e-12));
    std::cerr << "warning: t_final is not an integer multiple of k; stopping after " << n_total
              << " steps at t = " << static_cast<double>(n_total) * params.k << "\n";
  }

  LinearSolver solver(params.solver);
  SchemeState state = init_impl(m0, params, solver);
  auto notify = [&](const SchemeState& s) {
    bool stop = false;
    for (const Observer& obs : observers)
      if (obs && obs(s.n, s.t_curr, s)) stop = true;
    return stop;
  };
  if (notify(state)) return state;
  while (state.n < n_total) {
    state = bdf2_step_impl(state, params, solver);
    if (notify(state)) break;
  }
  return state;
}

}  // namespace llproj
