// Python bindings for the solver core: grids and fields with numpy interop,
// the discrete operators, the manufactured solutions, and a convenience
// driver for forced convergence runs.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "llproj/discrete_ops.hpp"
#include "llproj/harness.hpp"
#include "llproj/mms.hpp"
#include "llproj/scheme.hpp"

namespace py = pybind11;
using namespace llproj;

namespace {

py::tuple to_tuple(const Vec3& v) { return py::make_tuple(v.x, v.y, v.z); }

Vec3 from_seq(const py::sequence& s) {
  if (py::len(s) != 3) throw std::invalid_argument("expected a 3-sequence");
  return {s[0].cast<double>(), s[1].cast<double>(), s[2].cast<double>()};
}

// Interior values as a numpy array: (nx, 3) in 1-D, (nz, ny, nx, 3) in 3-D.
py::array_t<double> field_values(const VectorField& f) {
  const GridSpec& g = f.grid();
  const std::vector<double> dofs = f.interior_dofs();
  py::array_t<double> out = g.dim == 1
                                ? py::array_t<double>({g.nx, 3L})
                                : py::array_t<double>({g.nz, g.ny, g.nx, 3L});
  std::copy(dofs.begin(), dofs.end(), out.mutable_data());
  return out;
}

void field_set_values(VectorField& f, py::array_t<double, py::array::c_style | py::array::forcecast> values) {
  const GridSpec& g = f.grid();
  const long expected = 3 * g.n_cells();
  if (values.size() != expected)
    throw std::invalid_argument("expected " + std::to_string(expected) + " values, got " +
                                std::to_string(values.size()));
  std::vector<double> dofs(values.data(), values.data() + expected);
  f.set_interior_dofs(dofs);
}

GridSpec make_grid_py(int dim, long nx, long ny, long nz, double lx, double ly, double lz) {
  return make_grid(dim, {nx, ny, nz}, {lx, ly, lz});
}

SolverConfig solver_from_name(const std::string& name, double tol) {
  SolverConfig cfg;
  if (name == "direct") cfg.method = SolverMethod::direct;
  else if (name == "iterative") cfg.method = SolverMethod::iterative;
  else throw std::invalid_argument("unknown solver '" + name + "'");
  if (tol > 0.0) cfg.tolerance = tol;
  return cfg;
}

// Forced convergence run against the built-in manufactured solution.
py::dict run_mms_py(int dim, long n, double dt, double t_final, double alpha,
                    const std::string& solver, double solver_tol) {
  StudyConfig c;
  c.mode = StudyMode::single_run;
  c.alpha = alpha;
  c.t_final = t_final;
  c.solver = solver_from_name(solver, solver_tol);
  c.ladder = {{dt, dim == 1 ? make_grid(1, {n, 1, 1}) : make_grid(3, {n, n, n})}};
  const SingleRunReport report = run_single(c);
  py::dict out;
  out["steps"] = report.state.n;
  out["t_final"] = report.state.t_curr;
  out["err_inf"] = report.err_inf;
  out["err_l2"] = report.err_l2;
  out["err_h1"] = report.err_h1;
  out["eq_residual"] = report.state.eq_residual;
  out["energy"] = report.energy;
  return out;
}

py::tuple exact_py(int dim, double x, double y, double z, double t) {
  if (dim == 1) return to_tuple(exact_1d(x, t));
  if (dim == 3) return to_tuple(exact_3d(x, y, z, t));
  throw std::invalid_argument("dim must be 1 or 3");
}

py::tuple forcing_py(int dim, double x, double y, double z, double t, double alpha) {
  const ManufacturedSolution sol =
      dim == 1 ? ManufacturedSolution::example_1d() : ManufacturedSolution::example_3d();
  if (dim != 1 && dim != 3) throw std::invalid_argument("dim must be 1 or 3");
  return to_tuple(forcing(sol, x, y, z, t, alpha));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite-difference Landau-Lifshitz solver (BDF2 projection scheme)";

  py::class_<GridSpec>(m, "GridSpec")
      .def_readonly("dim", &GridSpec::dim)
      .def_readonly("nx", &GridSpec::nx)
      .def_readonly("ny", &GridSpec::ny)
      .def_readonly("nz", &GridSpec::nz)
      .def_readonly("hx", &GridSpec::hx)
      .def_readonly("hy", &GridSpec::hy)
      .def_readonly("hz", &GridSpec::hz)
      .def("n_cells", &GridSpec::n_cells)
      .def("cell_volume", &GridSpec::cell_volume)
      .def("xc", &GridSpec::xc)
      .def("yc", &GridSpec::yc)
      .def("zc", &GridSpec::zc)
      .def("__repr__", [](const GridSpec& g) {
        return "GridSpec(dim=" + std::to_string(g.dim) + ", nx=" + std::to_string(g.nx) +
               ", ny=" + std::to_string(g.ny) + ", nz=" + std::to_string(g.nz) + ")";
      });

  m.def("make_grid", &make_grid_py, py::arg("dim"), py::arg("nx"), py::arg("ny") = 1,
        py::arg("nz") = 1, py::arg("lx") = 1.0, py::arg("ly") = 1.0, py::arg("lz") = 1.0,
        "Build a validated cell-centered grid on [0,lx] x [0,ly] x [0,lz].");

  py::class_<VectorField>(m, "VectorField")
      .def(py::init<const GridSpec&>(), py::arg("grid"))
      .def_property_readonly("grid", &VectorField::grid)
      .def_property("values", &field_values, &field_set_values,
                    "Interior values, shape (nx, 3) in 1-D or (nz, ny, nx, 3) in 3-D.")
      .def("fill_ghosts", [](VectorField& f) { f.fill_ghosts(); },
           "Copy the nearest interior cell into every ghost face (Neumann).")
      .def("at",
           [](const VectorField& f, long i, long j, long k) { return to_tuple(f.at(i, j, k)); },
           py::arg("i"), py::arg("j") = 0, py::arg("k") = 0)
      .def("set",
           [](VectorField& f, long i, long j, long k, const py::sequence& v) {
             f.set(i, j, k, from_seq(v));
           },
           py::arg("i"), py::arg("j"), py::arg("k"), py::arg("value"));

  m.def("laplacian", &laplacian, py::arg("field"),
        "Second-order Neumann Laplacian; the field's ghosts must be filled.");
  m.def("project", &project, py::arg("field"), py::arg("eps") = kProjectionFloor,
        "Pointwise normalization onto the unit sphere.");
  m.def("norm_inf", py::overload_cast<const VectorField&>(&norm_inf));
  m.def("norm_l2", py::overload_cast<const VectorField&>(&norm_l2));
  m.def("norm_h1", &norm_h1);
  m.def("inner", py::overload_cast<const VectorField&, const VectorField&>(&inner));
  m.def("exchange_energy", &exchange_energy, py::arg("m"));
  m.def("restrict_factor3", &restrict_factor3, py::arg("fine"), py::arg("coarse_grid"),
        "Injection restriction onto a factor-3 coarser grid at coincident centers.");

  m.def("exact_solution", &exact_py, py::arg("dim"), py::arg("x"), py::arg("y") = 0.5,
        py::arg("z") = 0.5, py::arg("t") = 0.0,
        "Built-in manufactured solution value at a point.");
  m.def("forcing_term", &forcing_py, py::arg("dim"), py::arg("x"), py::arg("y"), py::arg("z"),
        py::arg("t"), py::arg("alpha"),
        "Compensating forcing for the built-in manufactured solution.");

  m.def("fit_order", &fit_order, py::arg("points"),
        "Least-squares slope of ln(err) against ln(step) for [(step, err), ...].");

  m.def("run_mms", &run_mms_py, py::arg("dim"), py::arg("n"), py::arg("dt"),
        py::arg("t_final") = 1.0, py::arg("alpha") = 0.01, py::arg("solver") = "direct",
        py::arg("solver_tol") = -1.0,
        "Run the forced convergence problem; returns error norms and diagnostics.");
}
