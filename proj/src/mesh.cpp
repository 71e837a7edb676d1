#include "llproj/mesh.hpp"

#include <cmath>

namespace llproj {

GridSpec make_grid(int dim, std::array<long, 3> cells, std::array<double, 3> extents) {
  if (dim != 1 && dim != 3)
    throw std::invalid_argument("make_grid: dim must be 1 or 3, got " + std::to_string(dim));
  GridSpec g;
  g.dim = dim;
  g.nx = cells[0];
  g.ny = dim == 1 ? 1 : cells[1];
  g.nz = dim == 1 ? 1 : cells[2];
  if (dim == 1 && (cells[1] > 1 || cells[2] > 1))
    throw std::invalid_argument("make_grid: 1-D grid requires ny = nz = 1");
  if (g.nx < 1 || g.ny < 1 || g.nz < 1)
    throw std::invalid_argument("make_grid: cell counts must be positive");
  g.lx = extents[0];
  g.ly = extents[1];
  g.lz = extents[2];
  if (!(g.lx > 0.0) || !(g.ly > 0.0) || !(g.lz > 0.0))
    throw std::invalid_argument("make_grid: extents must be positive");
  g.hx = g.lx / static_cast<double>(g.nx);
  g.hy = g.ly / static_cast<double>(g.ny);
  g.hz = g.lz / static_cast<double>(g.nz);
  return g;
}

VectorField::VectorField(const GridSpec& grid)
    : grid_(grid),
      data_(static_cast<size_t>(3 * (grid.nx + 2) * (grid.ny + 2) * (grid.nz + 2)), 0.0) {}

void VectorField::fill_interior(const std::function<Vec3(double, double, double)>& f) {
  for (long k = 0; k < grid_.nz; ++k)
    for (long j = 0; j < grid_.ny; ++j)
      for (long i = 0; i < grid_.nx; ++i)
        set(i, j, k, f(grid_.xc(i), grid_.yc(j), grid_.zc(k)));
}

void VectorField::fill_ghosts() {
  const long nx = grid_.nx, ny = grid_.ny, nz = grid_.nz;
  double* d = data_.data();
  const long sx = stride_x(), sy = stride_y(), sz = stride_z();
  auto copy3 = [](double* dst, const double* src) {
    dst[0] = src[0]; dst[1] = src[1]; dst[2] = src[2];
  };
  // x faces first, then y rows including x ghosts, then z planes including
  // both, so edge and corner ghosts end up deterministic.
  for (long k = 0; k < nz; ++k)
    for (long j = 0; j < ny; ++j) {
      double* row = d + offset(0, j, k);
      copy3(row - sx, row);
      copy3(row + nx * sx, row + (nx - 1) * sx);
    }
  for (long k = 0; k < nz; ++k)
    for (long i = -1; i <= nx; ++i) {
      double* col = d + offset(i, 0, k);
      copy3(col - sy, col);
      copy3(col + ny * sy, col + (ny - 1) * sy);
    }
  for (long j = -1; j <= ny; ++j)
    for (long i = -1; i <= nx; ++i) {
      double* pil = d + offset(i, j, 0);
      copy3(pil - sz, pil);
      copy3(pil + nz * sz, pil + (nz - 1) * sz);
    }
  ghosts_valid_ = true;
}

std::vector<double> VectorField::interior_dofs() const {
  const GridSpec& g = grid_;
  std::vector<double> dofs(static_cast<size_t>(3 * g.n_cells()));
  size_t out = 0;
  for (long k = 0; k < g.nz; ++k)
    for (long j = 0; j < g.ny; ++j) {
      const double* p = data_.data() + offset(0, j, k);
      for (long i = 0; i < g.nx; ++i, p += 3) {
        dofs[out++] = p[0];
        dofs[out++] = p[1];
        dofs[out++] = p[2];
      }
    }
  return dofs;
}

void VectorField::set_interior_dofs(const std::vector<double>& dofs) {
  const GridSpec& g = grid_;
  if (dofs.size() != static_cast<size_t>(3 * g.n_cells()))
    throw std::invalid_argument("set_interior_dofs: size mismatch");
  size_t in = 0;
  for (long k = 0; k < g.nz; ++k)
    for (long j = 0; j < g.ny; ++j) {
      double* p = data_.data() + offset(0, j, k);
      for (long i = 0; i < g.nx; ++i, p += 3) {
        p[0] = dofs[in++];
        p[1] = dofs[in++];
        p[2] = dofs[in++];
      }
    }
  ghosts_valid_ = false;
}

VectorField fill_ghosts(VectorField field) {
  field.fill_ghosts();
  return field;
}

VectorField restrict_factor3(const VectorField& fine, const GridSpec& coarse_grid) {
  const GridSpec& gf = fine.grid();
  const GridSpec& gc = coarse_grid;
  if (gf.dim != gc.dim)
    throw std::invalid_argument("restrict_factor3: dimension mismatch");
  auto check_axis = [](long nf, long nc, const char* axis) {
    if (nf != 3 * nc)
      throw std::invalid_argument(std::string("restrict_factor3: fine count along ") + axis +
                                  " is not 3x the coarse count");
  };
  check_axis(gf.nx, gc.nx, "x");
  if (gc.dim == 3) {
    check_axis(gf.ny, gc.ny, "y");
    check_axis(gf.nz, gc.nz, "z");
  }
  if (gf.lx != gc.lx || gf.ly != gc.ly || gf.lz != gc.lz)
    throw std::invalid_argument("restrict_factor3: extents differ");

  VectorField coarse(gc);
  const long mj = gc.dim == 3 ? 3 : 1, mk = mj;
  const long oj = gc.dim == 3 ? 1 : 0, ok = oj;
  for (long k = 0; k < gc.nz; ++k)
    for (long j = 0; j < gc.ny; ++j)
      for (long i = 0; i < gc.nx; ++i)
        coarse.set(i, j, k, fine.at(3 * i + 1, mj * j + oj, mk * k + ok));
  return coarse;
}

}  // namespace llproj
