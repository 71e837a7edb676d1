#pragma once

// Study drivers: convergence ladders against manufactured or reference
// solutions, stability grids, least-squares order fitting, CSV/VTK output,
// and the flat key-value configuration format used by the CLI.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "llproj/mms.hpp"
#include "llproj/scheme.hpp"

namespace llproj {

enum class StudyMode { mms_1d, mms_3d, reference_1d, stability_1d, stability_3d, single_run };

// One ladder entry: a time step paired with the grid it runs on.
struct Rung {
  double k;
  GridSpec grid;
};

struct StudyConfig {
  StudyMode mode = StudyMode::mms_1d;
  std::vector<Rung> ladder;
  double alpha = 0.01;
  double t_final = 1.0;
  std::optional<Rung> reference;  // reference-mode trajectory
  std::string out_table;          // CSV path, empty = no file
  std::string out_field;          // field snapshot path, empty = no file
  SolverConfig solver;
  std::optional<Vec3> h_app;
  int threads = 1;
};

struct ConvergenceTable {
  struct Row {
    double k, h, err_inf, err_l2, err_h1;
  };
  std::vector<Row> rows;  // sorted by decreasing k, then decreasing h
  bool has_orders = false;
  double order_inf = 0.0, order_l2 = 0.0, order_h1 = 0.0;
};

// Least-squares slope of ln(error) against ln(step).  Requires at least two
// points with positive steps and errors.
double fit_order(const std::vector<std::pair<double, double>>& points);

// Forced-MMS convergence ladder (modes mms_1d / mms_3d): run each rung to
// t_final, compare against the exact solution at cell centers, fit orders
// when the ladder has at least two rungs.
ConvergenceTable converge_mms(const StudyConfig& config);

// Self-convergence against a reference trajectory (mode reference_1d) from
// the unforced profile m0(x) = (cos phi(x), sin phi(x), 0).  Temporal studies
// share the reference grid; spatial studies compare through repeated factor-3
// restriction of the reference field, and orders are fitted against h.
ConvergenceTable converge_reference(const StudyConfig& config);

// Stability grid (modes stability_1d / stability_3d): the forced MMS problem
// over arbitrary (k, h) pairs; no orders are fitted.  Any non-finite result
// or failed run aborts the whole table with the offending pair identified.
ConvergenceTable stability_table(const StudyConfig& config);

// Single trajectory (mode single_run, one ladder rung).  Without an applied
// field the run is the forced MMS problem and error norms are reported; with
// h_app it is an unforced field-driven run from the reference profile.
struct SingleRunReport {
  SchemeState state;
  bool has_errors = false;
  double err_inf = 0.0, err_l2 = 0.0, err_h1 = 0.0;
  double energy = 0.0;  // exchange energy at t_final
};
SingleRunReport run_single(const StudyConfig& config);

// CSV with header k,h,err_inf,err_l2,err_h1, one row per ladder entry and an
// `order` footer when orders are defined; scientific notation with 16
// significant digits after the point (bitwise round-trip).
void export_csv(const ConvergenceTable& table, const std::string& path);

// Field snapshot: legacy structured-points VTK (vector attribute
// `magnetization`, points at cell centers) for .vtk paths, otherwise a CSV
// with columns i,j,k,x,y,z,u,v,w using 1-based cell indices.
void export_field(const SchemeState& state, const std::string& path);

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

// Raw option set mirroring the flat config-file keys; unset numeric fields
// are negative, unset strings empty.  CLI flags share these names.
struct Options {
  std::string mode;
  int dim = -1;
  long nx = -1, ny = -1, nz = -1;
  double dt = -1.0;
  double t_final = -1.0;
  double alpha = -1.0;
  std::string solver;
  double solver_tol = -1.0;
  std::string out_table, out_field;
  double h_app_x = 0.0, h_app_y = 0.0, h_app_z = 0.0;
  bool has_h_app = false;
  bool quick = false;
};

// Parse a flat `key = value` file with `#` comments.  Unknown keys are
// rejected.  Numbers accept Fortran-style D exponents (5.0D-3 = 5.0e-3).
Options load_config(const std::string& path);

// Overlay set fields of `over` onto `base` (CLI flags override file keys).
Options merge_options(Options base, const Options& over);

// Materialize a study from options: built-in published-study ladders per
// mode, with single-rung overrides when nx/dt are given.  `spatial` selects
// the factor-3 spatial ladder in reference mode.
StudyConfig build_study(const Options& options, bool spatial = false);

// Strict double parser accepting D/d exponent markers.
double parse_double(const std::string& text);

// LLPROJ_THREADS environment override; defaults to 1 for reproducibility.
int thread_count_from_env();

}  // namespace llproj
