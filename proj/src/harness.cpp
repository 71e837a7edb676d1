#include "llproj/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace llproj {

namespace {

// ---------------------------------------------------------------- utilities

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  const size_t a = s.find_first_not_of(ws);
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(ws);
  return s.substr(a, b - a + 1);
}

long parse_long(const std::string& text) {
  const std::string s = trim(text);
  size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected an integer, got '" + text + "'");
  }
  if (pos != s.size()) throw std::invalid_argument("expected an integer, got '" + text + "'");
  return v;
}

// Run fn(0..n-1) on up to `threads` workers.  Exceptions are collected and
// the lowest-index one is rethrown, keeping failure reporting deterministic.
template <typename Fn>
void parallel_for(long n, int threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::exception_ptr> errors(static_cast<size_t>(n));
  const int workers = static_cast<int>(std::min<long>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (long i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          errors[static_cast<size_t>(i)] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void require_divisible(double t_final, double k) {
  const double ratio = t_final / k;
  if (std::fabs(static_cast<double>(std::lround(ratio)) - ratio) > 1e-9 * std::max(1.0, ratio))
    throw std::invalid_argument("t_final = " + std::to_string(t_final) +
                                " is not an integer multiple of k = " + std::to_string(k));
}

ManufacturedSolution solution_for(const GridSpec& g) {
  return g.dim == 1 ? ManufacturedSolution::example_1d() : ManufacturedSolution::example_3d();
}

// Unforced-study initial profile: unit, Neumann-compatible, non-stationary.
Vec3 reference_profile(const GridSpec& g, double x, double y, double z) {
  const double p = g.dim == 1 ? phi(x) : phi(x) * phi(y) * phi(z);
  return {std::cos(p), std::sin(p), 0.0};
}

VectorField error_vs_exact(const VectorField& m, const ManufacturedSolution& sol, double t) {
  const GridSpec& g = m.grid();
  VectorField e(g);
  for (long k = 0; k < g.nz; ++k)
    for (long j = 0; j < g.ny; ++j)
      for (long i = 0; i < g.nx; ++i)
        e.set(i, j, k, m.at(i, j, k) - sol.value(g.xc(i), g.yc(j), g.zc(k), t));
  return e;
}

VectorField difference(const VectorField& a, const VectorField& b) {
  const GridSpec& g = a.grid();
  if (!g.same_layout(b.grid())) throw std::invalid_argument("difference: grid mismatch");
  VectorField e(g);
  for (long k = 0; k < g.nz; ++k)
    for (long j = 0; j < g.ny; ++j)
      for (long i = 0; i < g.nx; ++i) e.set(i, j, k, a.at(i, j, k) - b.at(i, j, k));
  return e;
}

ConvergenceTable::Row error_row(const Rung& rung, const VectorField& error) {
  ConvergenceTable::Row row;
  row.k = rung.k;
  row.h = rung.grid.hx;
  row.err_inf = norm_inf(error);
  row.err_l2 = norm_l2(error);
  row.err_h1 = norm_h1(error);
  if (!std::isfinite(row.err_inf) || !std::isfinite(row.err_l2) || !std::isfinite(row.err_h1))
    throw std::runtime_error("non-finite error norms");
  return row;
}

// Forced-MMS run of one rung; shared by the convergence and stability studies.
ConvergenceTable::Row run_mms_rung(const Rung& rung, const StudyConfig& config) {
  const ManufacturedSolution sol = solution_for(rung.grid);
  VectorField m0(rung.grid);
  m0.fill_interior([&](double x, double y, double z) { return sol.value(x, y, z, 0.0); });
  SchemeParams p;
  p.alpha = config.alpha;
  p.k = rung.k;
  p.t_final = config.t_final;
  p.solver = config.solver;
  const double alpha = config.alpha;
  p.forcing = [sol, alpha](double x, double y, double z, double t) {
    return forcing(sol, x, y, z, t, alpha);
  };
  const SchemeState state = run(m0, p);
  return error_row(rung, error_vs_exact(state.m_curr, sol, state.t_curr));
}

void sort_rows(std::vector<ConvergenceTable::Row>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.k != b.k) return a.k > b.k;
    return a.h > b.h;
  });
}

// Fit orders against whichever of k or h actually varies along the ladder.
void fit_table_orders(ConvergenceTable& table) {
  table.has_orders = false;
  if (table.rows.size() < 2) return;
  double kmin = table.rows[0].k, kmax = kmin;
  for (const auto& r : table.rows) {
    kmin = std::min(kmin, r.k);
    kmax = std::max(kmax, r.k);
  }
  const bool k_varies = (kmax - kmin) > 1e-12 * kmax;
  auto column = [&](auto get) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : table.rows) pts.emplace_back(k_varies ? r.k : r.h, get(r));
    return fit_order(pts);
  };
  for (const auto& r : table.rows)
    if (!(r.err_inf > 0.0) || !(r.err_l2 > 0.0) || !(r.err_h1 > 0.0)) return;
  table.order_inf = column([](const auto& r) { return r.err_inf; });
  table.order_l2 = column([](const auto& r) { return r.err_l2; });
  table.order_h1 = column([](const auto& r) { return r.err_h1; });
  table.has_orders = true;
}

void validate_ladder(const StudyConfig& config) {
  if (config.ladder.empty()) throw std::invalid_argument("study has an empty ladder");
  for (const Rung& r : config.ladder) require_divisible(config.t_final, r.k);
}

GridSpec grid_1d(long nx) { return make_grid(1, {nx, 1, 1}); }
GridSpec grid_3d(long n) { return make_grid(3, {n, n, n}); }

}  // namespace

// ------------------------------------------------------------------ fitting

double fit_order(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw std::invalid_argument("fit_order: need at least two points");
  double sx = 0.0, sy = 0.0;
  for (const auto& [step, err] : points) {
    if (!(step > 0.0)) throw std::invalid_argument("fit_order: non-positive step");
    if (!(err > 0.0)) throw std::invalid_argument("fit_order: non-positive error");
    sx += std::log(step);
    sy += std::log(err);
  }
  const double mx = sx / static_cast<double>(points.size());
  const double my = sy / static_cast<double>(points.size());
  double num = 0.0, den = 0.0;
  for (const auto& [step, err] : points) {
    const double dx = std::log(step) - mx;
    num += dx * (std::log(err) - my);
    den += dx * dx;
  }
  if (den == 0.0) throw std::invalid_argument("fit_order: steps are all equal");
  return num / den;
}

// ------------------------------------------------------------------ studies

ConvergenceTable converge_mms(const StudyConfig& config) {
  if (config.mode != StudyMode::mms_1d && config.mode != StudyMode::mms_3d)
    throw std::invalid_argument("converge_mms: config mode is not an MMS study");
  validate_ladder(config);
  ConvergenceTable table;
  table.rows.resize(config.ladder.size());
  parallel_for(static_cast<long>(config.ladder.size()), config.threads, [&](long i) {
    const Rung& rung = config.ladder[static_cast<size_t>(i)];
    try {
      table.rows[static_cast<size_t>(i)] = run_mms_rung(rung, config);
    } catch (const std::exception& e) {
      throw std::runtime_error("ladder row (k=" + std::to_string(rung.k) +
                               ", h=" + std::to_string(rung.grid.hx) + "): " + e.what());
    }
  });
  sort_rows(table.rows);
  fit_table_orders(table);
  return table;
}

ConvergenceTable converge_reference(const StudyConfig& config) {
  if (config.mode != StudyMode::reference_1d)
    throw std::invalid_argument("converge_reference: config mode is not a reference study");
  if (!config.reference) throw std::invalid_argument("converge_reference: no reference rung");
  validate_ladder(config);
  require_divisible(config.t_final, config.reference->k);

  auto run_unforced = [&](const Rung& rung) {
    VectorField m0(rung.grid);
    const GridSpec g = rung.grid;
    m0.fill_interior([&](double x, double y, double z) { return reference_profile(g, x, y, z); });
    SchemeParams p;
    p.alpha = config.alpha;
    p.k = rung.k;
    p.t_final = config.t_final;
    p.solver = config.solver;
    return run(m0, p).m_curr;
  };

  const VectorField reference = run_unforced(*config.reference);

  // Restrict the reference through factor-3 stages until it matches `target`.
  auto restricted_reference = [&](const GridSpec& target) {
    VectorField f = reference;
    while (f.grid().nx > target.nx) {
      const GridSpec& g = f.grid();
      if (g.nx % 3 != 0 || (g.dim == 3 && (g.ny % 3 != 0 || g.nz % 3 != 0)))
        throw std::invalid_argument("reference grid is not a factor-3 refinement of rung grid");
      const GridSpec coarse = make_grid(
          g.dim, {g.nx / 3, g.dim == 3 ? g.ny / 3 : 1, g.dim == 3 ? g.nz / 3 : 1},
          {g.lx, g.ly, g.lz});
      f = restrict_factor3(f, coarse);
    }
    if (!f.grid().same_layout(target))
      throw std::invalid_argument("rung grid incompatible with the reference grid");
    return f;
  };

  ConvergenceTable table;
  table.rows.resize(config.ladder.size());
  parallel_for(static_cast<long>(config.ladder.size()), config.threads, [&](long i) {
    const Rung& rung = config.ladder[static_cast<size_t>(i)];
    try {
      const VectorField m = run_unforced(rung);
      const VectorField ref = rung.grid.same_layout(reference.grid())
                                  ? reference
                                  : restricted_reference(rung.grid);
      table.rows[static_cast<size_t>(i)] = error_row(rung, difference(m, ref));
    } catch (const std::exception& e) {
      throw std::runtime_error("ladder row (k=" + std::to_string(rung.k) +
                               ", h=" + std::to_string(rung.grid.hx) + "): " + e.what());
    }
  });
  sort_rows(table.rows);
  fit_table_orders(table);
  return table;
}

ConvergenceTable stability_table(const StudyConfig& config) {
  if (config.mode != StudyMode::stability_1d && config.mode != StudyMode::stability_3d)
    throw std::invalid_argument("stability_table: config mode is not a stability study");
  validate_ladder(config);
  ConvergenceTable table;
  table.rows.resize(config.ladder.size());
  parallel_for(static_cast<long>(config.ladder.size()), config.threads, [&](long i) {
    const Rung& rung = config.ladder[static_cast<size_t>(i)];
    try {
      table.rows[static_cast<size_t>(i)] = run_mms_rung(rung, config);
    } catch (const std::exception& e) {
      throw std::runtime_error("stability run (k=" + std::to_string(rung.k) +
                               ", h=" + std::to_string(rung.grid.hx) + ") failed: " + e.what());
    }
  });
  sort_rows(table.rows);
  return table;  // no orders for stability grids
}

SingleRunReport run_single(const StudyConfig& config) {
  if (config.mode != StudyMode::single_run)
    throw std::invalid_argument("run_single: config mode is not single-run");
  if (config.ladder.size() != 1)
    throw std::invalid_argument("run_single: expected exactly one ladder rung");
  const Rung& rung = config.ladder.front();
  require_divisible(config.t_final, rung.k);

  SchemeParams p;
  p.alpha = config.alpha;
  p.k = rung.k;
  p.t_final = config.t_final;
  p.solver = config.solver;

  SingleRunReport report;
  if (config.h_app) {
    // Field-driven relaxation from the reference profile (no forcing).
    p.h_app = config.h_app;
    VectorField m0(rung.grid);
    const GridSpec g = rung.grid;
    m0.fill_interior([&](double x, double y, double z) { return reference_profile(g, x, y, z); });
    report.state = run(m0, p);
  } else {
    // Forced MMS problem with error reporting.
    const ManufacturedSolution sol = solution_for(rung.grid);
    const double alpha = config.alpha;
    p.forcing = [sol, alpha](double x, double y, double z, double t) {
      return forcing(sol, x, y, z, t, alpha);
    };
    VectorField m0(rung.grid);
    m0.fill_interior([&](double x, double y, double z) { return sol.value(x, y, z, 0.0); });
    report.state = run(m0, p);
    const VectorField err = error_vs_exact(report.state.m_curr, sol, report.state.t_curr);
    report.has_errors = true;
    report.err_inf = norm_inf(err);
    report.err_l2 = norm_l2(err);
    report.err_h1 = norm_h1(err);
  }
  report.energy = exchange_energy(report.state.m_curr);
  return report;
}

// ------------------------------------------------------------------- output

namespace {
std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}
}  // namespace

void export_csv(const ConvergenceTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_csv: cannot open '" + path + "'");
  out << "k,h,err_inf,err_l2,err_h1\n";
  for (const auto& r : table.rows)
    out << sci(r.k) << ',' << sci(r.h) << ',' << sci(r.err_inf) << ',' << sci(r.err_l2) << ','
        << sci(r.err_h1) << '\n';
  if (table.has_orders)
    out << "order,," << sci(table.order_inf) << ',' << sci(table.order_l2) << ','
        << sci(table.order_h1) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("export_csv: write failed for '" + path + "'");
}

void export_field(const SchemeState& state, const std::string& path) {
  const VectorField& m = state.m_curr;
  const GridSpec& g = m.grid();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_field: cannot open '" + path + "'");
  const bool vtk = path.size() >= 4 && path.compare(path.size() - 4, 4, ".vtk") == 0;
  if (vtk) {
    out << "# vtk DataFile Version 3.0\n";
    out << "magnetization snapshot t=" << sci(state.t_curr) << "\n";
    out << "ASCII\nDATASET STRUCTURED_POINTS\n";
    out << "DIMENSIONS " << g.nx << ' ' << g.ny << ' ' << g.nz << '\n';
    out << "ORIGIN " << sci(0.5 * g.hx) << ' ' << sci(0.5 * g.hy) << ' ' << sci(0.5 * g.hz)
        << '\n';
    out << "SPACING " << sci(g.hx) << ' ' << sci(g.hy) << ' ' << sci(g.hz) << '\n';
    out << "POINT_DATA " << g.n_cells() << '\n';
    out << "VECTORS magnetization double\n";
    for (long k = 0; k < g.nz; ++k)
      for (long j = 0; j < g.ny; ++j)
        for (long i = 0; i < g.nx; ++i) {
          const Vec3 v = m.at(i, j, k);
          out << sci(v.x) << ' ' << sci(v.y) << ' ' << sci(v.z) << '\n';
        }
  } else {
    out << "i,j,k,x,y,z,u,v,w\n";
    for (long k = 0; k < g.nz; ++k)
      for (long j = 0; j < g.ny; ++j)
        for (long i = 0; i < g.nx; ++i) {
          const Vec3 v = m.at(i, j, k);
          out << (i + 1) << ',' << (j + 1) << ',' << (k + 1) << ',' << sci(g.xc(i)) << ','
              << sci(g.yc(j)) << ',' << sci(g.zc(k)) << ',' << sci(v.x) << ',' << sci(v.y) << ','
              << sci(v.z) << '\n';
        }
  }
  out.flush();
  if (!out) throw std::runtime_error("export_field: write failed for '" + path + "'");
}

// ------------------------------------------------------------ configuration

double parse_double(const std::string& text) {
  std::string s = trim(text);
  for (char& c : s)
    if (c == 'D' || c == 'd') c = 'e';
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected a number, got '" + text + "'");
  }
  if (pos != s.size()) throw std::invalid_argument("expected a number, got '" + text + "'");
  return v;
}

Options load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  Options opt;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value at line " + std::to_string(lineno));
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    try {
      if (key == "mode") opt.mode = value;
      else if (key == "dim") opt.dim = static_cast<int>(parse_long(value));
      else if (key == "nx") opt.nx = parse_long(value);
      else if (key == "ny") opt.ny = parse_long(value);
      else if (key == "nz") opt.nz = parse_long(value);
      else if (key == "dt") opt.dt = parse_double(value);
      else if (key == "t_final") opt.t_final = parse_double(value);
      else if (key == "alpha") opt.alpha = parse_double(value);
      else if (key == "solver") opt.solver = value;
      else if (key == "solver_tol") opt.solver_tol = parse_double(value);
      else if (key == "out_table") opt.out_table = value;
      else if (key == "out_field") opt.out_field = value;
      else if (key == "h_app_x") { opt.h_app_x = parse_double(value); opt.has_h_app = true; }
      else if (key == "h_app_y") { opt.h_app_y = parse_double(value); opt.has_h_app = true; }
      else if (key == "h_app_z") { opt.h_app_z = parse_double(value); opt.has_h_app = true; }
      else throw std::invalid_argument("unknown key '" + key + "'");
    } catch (const std::exception& e) {
      throw std::invalid_argument("config: " + std::string(e.what()) + " (line " +
                                  std::to_string(lineno) + ")");
    }
  }
  return opt;
}

Options merge_options(Options base, const Options& over) {
  if (!over.mode.empty()) base.mode = over.mode;
  if (over.dim >= 0) base.dim = over.dim;
  if (over.nx >= 0) base.nx = over.nx;
  if (over.ny >= 0) base.ny = over.ny;
  if (over.nz >= 0) base.nz = over.nz;
  if (over.dt >= 0.0) base.dt = over.dt;
  if (over.t_final >= 0.0) base.t_final = over.t_final;
  if (over.alpha >= 0.0) base.alpha = over.alpha;
  if (!over.solver.empty()) base.solver = over.solver;
  if (over.solver_tol >= 0.0) base.solver_tol = over.solver_tol;
  if (!over.out_table.empty()) base.out_table = over.out_table;
  if (!over.out_field.empty()) base.out_field = over.out_field;
  if (over.has_h_app) {
    base.h_app_x = over.h_app_x;
    base.h_app_y = over.h_app_y;
    base.h_app_z = over.h_app_z;
    base.has_h_app = true;
  }
  base.quick = base.quick || over.quick;
  return base;
}

namespace {

StudyMode parse_mode(const std::string& name) {
  if (name == "mms-1d" || name.empty()) return StudyMode::mms_1d;
  if (name == "mms-3d") return StudyMode::mms_3d;
  if (name == "reference-1d") return StudyMode::reference_1d;
  if (name == "stability-1d") return StudyMode::stability_1d;
  if (name == "stability-3d") return StudyMode::stability_3d;
  if (name == "single-run") return StudyMode::single_run;
  throw std::invalid_argument("unknown mode '" + name + "'");
}

}  // namespace

StudyConfig build_study(const Options& opt, bool spatial) {
  StudyConfig c;
  c.mode = parse_mode(opt.mode);
  c.alpha = opt.alpha >= 0.0 ? opt.alpha : 0.01;
  c.t_final = opt.t_final >= 0.0 ? opt.t_final : 1.0;
  c.threads = thread_count_from_env();
  if (opt.has_h_app) c.h_app = Vec3{opt.h_app_x, opt.h_app_y, opt.h_app_z};
  c.out_table = opt.out_table;
  c.out_field = opt.out_field;

  const bool three_d = c.mode == StudyMode::mms_3d || c.mode == StudyMode::stability_3d ||
                       (c.mode == StudyMode::single_run && opt.dim == 3);
  if (opt.solver == "direct") c.solver.method = SolverMethod::direct;
  else if (opt.solver == "iterative") c.solver.method = SolverMethod::iterative;
  else if (opt.solver.empty())
    // Direct LU is the 1-D default; 3-D runs default to the Krylov path for
    // desk-scale runtime.
    c.solver.method = three_d ? SolverMethod::iterative : SolverMethod::direct;
  else throw std::invalid_argument("unknown solver '" + opt.solver + "'");
  if (opt.solver_tol >= 0.0) c.solver.tolerance = opt.solver_tol;

  switch (c.mode) {
    case StudyMode::mms_1d: {
      if (opt.nx >= 0 || opt.dt >= 0.0) {
        const long nx = opt.nx >= 0 ? opt.nx : std::lround(1.0 / opt.dt);
        const double k = opt.dt >= 0.0 ? opt.dt : 1.0 / static_cast<double>(nx);
        c.ladder = {{k, grid_1d(nx)}};
      } else {
        for (long nx : {200L, 400L, 800L, 1600L, 3200L})
          c.ladder.push_back({1.0 / static_cast<double>(nx), grid_1d(nx)});
      }
      break;
    }
    case StudyMode::mms_3d: {
      const long n = opt.nx >= 0 ? opt.nx : 32;
      if (opt.dt >= 0.0) {
        c.ladder = {{opt.dt, grid_3d(n)}};
      } else {
        for (long denom : {16L, 32L, 64L, 128L, 256L}) {
          if (opt.quick && denom > 128) continue;
          c.ladder.push_back({1.0 / static_cast<double>(denom), grid_3d(n)});
        }
      }
      break;
    }
    case StudyMode::reference_1d: {
      if (spatial) {
        const double k = opt.dt >= 0.0 ? opt.dt : 1e-4;
        for (long nx : {9L, 27L, 81L, 243L, 729L}) c.ladder.push_back({k, grid_1d(nx)});
        c.reference = Rung{k, grid_1d(6561)};  // 3^8 cells
      } else {
        // The temporal window sits below k ~ 1e-3: the unforced profile
        // carries weak high even modes whose phase error is only marginally
        // resolved above that, which contaminates fitted orders.
        const long nx = opt.nx >= 0 ? opt.nx : 400;
        for (double k : {6.25e-4, 3.125e-4, 1.5625e-4, 7.8125e-5, 3.90625e-5})
          c.ladder.push_back({k, grid_1d(nx)});
        c.reference = Rung{opt.dt >= 0.0 ? opt.dt : 5e-6, grid_1d(nx)};
      }
      break;
    }
    case StudyMode::stability_1d: {
      for (double k : {2e-1, 1e-1, 5e-2, 2.5e-2, 1.25e-2, 6.25e-3})
        for (long nx : {10L, 20L, 40L, 80L}) c.ladder.push_back({k, grid_1d(nx)});
      break;
    }
    case StudyMode::stability_3d: {
      const long n = opt.nx >= 0 ? opt.nx : 32;
      for (double k : {0.25, 1.0 / 128.0}) c.ladder.push_back({k, grid_3d(n)});
      break;
    }
    case StudyMode::single_run: {
      const int dim = opt.dim >= 0 ? opt.dim : 1;
      if (dim != 1 && dim != 3) throw std::invalid_argument("dim must be 1 or 3");
      const long nx = opt.nx >= 0 ? opt.nx : (dim == 1 ? 200 : 32);
      const double k = opt.dt >= 0.0 ? opt.dt : (dim == 1 ? 1.0 / static_cast<double>(nx) : 1.0 / 32.0);
      c.ladder = {{k, dim == 1 ? grid_1d(nx) : grid_3d(nx)}};
      break;
    }
  }
  return c;
}

int thread_count_from_env() {
  const char* env = std::getenv("LLPROJ_THREADS");
  if (!env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) return 1;
  return static_cast<int>(v);
}

}  // namespace llproj
