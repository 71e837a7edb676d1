#pragma once

// Cell-centered grids with one ghost layer per side, vector fields on them,
// and the factor-3 restriction used by nested-refinement comparisons.

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace llproj {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator*(const Vec3& a, double s) { return s * a; }
inline Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
inline Vec3& operator+=(Vec3& a, const Vec3& b) { a.x += b.x; a.y += b.y; a.z += b.z; return a; }
inline Vec3& operator-=(Vec3& a, const Vec3& b) { a.x -= b.x; a.y -= b.y; a.z -= b.z; return a; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
// triple(a, b) = a x (a x b)
inline Vec3 triple(const Vec3& a, const Vec3& b) { return cross(a, cross(a, b)); }

// Uniform cell-centered grid on [0,lx] x [0,ly] x [0,lz].  Cell centers sit at
// (i+1/2)h with 0-based indices; dim is 1 or 3 (a 1-D grid has ny = nz = 1).
struct GridSpec {
  int dim = 1;
  long nx = 1, ny = 1, nz = 1;
  double lx = 1.0, ly = 1.0, lz = 1.0;
  double hx = 1.0, hy = 1.0, hz = 1.0;

  long n_cells() const { return nx * ny * nz; }
  // Quadrature weight of one cell: h in 1-D, hx*hy*hz in 3-D.
  double cell_volume() const { return dim == 1 ? hx : hx * hy * hz; }
  double xc(long i) const { return (static_cast<double>(i) + 0.5) * hx; }
  double yc(long j) const { return (static_cast<double>(j) + 0.5) * hy; }
  double zc(long k) const { return (static_cast<double>(k) + 0.5) * hz; }
  // Cell-major linear index, x fastest.
  long cell_index(long i, long j, long k) const { return (k * ny + j) * nx + i; }
  bool same_layout(const GridSpec& o) const {
    return dim == o.dim && nx == o.nx && ny == o.ny && nz == o.nz;
  }
};

// Build a validated grid. dim must be 1 or 3; counts positive (1-D requires
// ny = nz = 1); extents positive.
GridSpec make_grid(int dim, std::array<long, 3> cells, std::array<double, 3> extents = {1.0, 1.0, 1.0});

// A 3-component field over the interior cells of a grid plus one ghost layer
// per face.  Ghosts enforce the homogeneous Neumann condition by copying the
// nearest interior cell; a staleness flag tracks whether they are current.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  bool ghosts_valid() const { return ghosts_valid_; }

  // Interior accessors; i,j,k are 0-based interior indices.  Ghost cells are
  // addressable with -1 and n along each axis (reads only).
  Vec3 at(long i, long j = 0, long k = 0) const {
    const double* p = data_.data() + offset(i, j, k);
    return {p[0], p[1], p[2]};
  }
  void set(long i, long j, long k, const Vec3& v) {
    double* p = data_.data() + offset(i, j, k);
    p[0] = v.x; p[1] = v.y; p[2] = v.z;
    ghosts_valid_ = false;
  }
  void set(long i, const Vec3& v) { set(i, 0, 0, v); }

  // Evaluate f at every interior cell center.  Marks ghosts stale.
  void fill_interior(const std::function<Vec3(double, double, double)>& f);

  // Copy the nearest interior cell into every ghost face (idempotent).
  void fill_ghosts();

  // Interior degrees of freedom, cell-major with 3 interleaved components.
  std::vector<double> interior_dofs() const;
  void set_interior_dofs(const std::vector<double>& dofs);

  // Raw storage access for stencil kernels: includes ghosts, component-
  // interleaved, strides in units of doubles.
  const double* raw() const { return data_.data(); }
  double* raw() { ghosts_valid_ = false; return data_.data(); }
  long stride_x() const { return 3; }
  long stride_y() const { return 3 * (grid_.nx + 2); }
  long stride_z() const { return 3 * (grid_.nx + 2) * (grid_.ny + 2); }
  long offset(long i, long j, long k) const {
    return ((k + 1) * (grid_.ny + 2) + (j + 1)) * (grid_.nx + 2) * 3 + (i + 1) * 3;
  }
  void mark_ghosts_valid() { ghosts_valid_ = true; }

 private:
  GridSpec grid_;
  std::vector<double> data_;
  bool ghosts_valid_ = false;
};

// Functional form of the ghost fill: returns the field with ghosts populated.
VectorField fill_ghosts(VectorField field);

// Restrict a fine field to a factor-3 coarser grid by injection at the
// coincident cell centers: coarse cell i takes fine cell 3i+1 (0-based) per
// active axis.  Rejects grids that are not an exact factor-3 pair.
VectorField restrict_factor3(const VectorField& fine, const GridSpec& coarse_grid);

}  // namespace llproj
