#include "llproj/discrete_ops.hpp"

#include <cmath>
#include <string>

namespace llproj {

DegenerateMagnitude::DegenerateMagnitude(long i_, long j_, long k_, double mag)
    : std::runtime_error("project: magnitude " + std::to_string(mag) + " below threshold at cell (" +
                         std::to_string(i_) + "," + std::to_string(j_) + "," + std::to_string(k_) + ")"),
      i(i_), j(j_), k(k_), magnitude(mag) {}

VectorField laplacian(const VectorField& field) {
  if (!field.ghosts_valid()) throw StaleGhosts();
  const GridSpec& g = field.grid();
  VectorField out(g);
  const double* src = field.raw();
  double* dst = out.raw();
  const long sx = field.stride_x(), sy = field.stride_y(), sz = field.stride_z();
  const double wx = 1.0 / (g.hx * g.hx);
  const double wy = 1.0 / (g.hy * g.hy);
  const double wz = 1.0 / (g.hz * g.hz);
  const bool three_d = g.dim == 3;
  for (long k = 0; k < g.nz; ++k)
    for (long j = 0; j < g.ny; ++j) {
      const double* p = src + field.offset(0, j, k);
      double* q = dst + out.offset(0, j, k);
      for (long i = 0; i < g.nx; ++i, p += 3, q += 3)
        for (int c = 0; c < 3; ++c) {
          double v = wx * (p[c + sx] - 2.0 * p[c] + p[c - sx]);
          if (three_d) {
            v += wy * (p[c + sy] - 2.0 * p[c] + p[c - sy]);
            v += wz * (p[c + sz] - 2.0 * p[c] + p[c - sz]);
          }
          q[c] = v;
        }
    }
  return out;
}

FaceField gradient(const VectorField& field) {
  const GridSpec& g = field.grid();
  FaceField out;
  out.grid = g;
  out.faces[0].resize(static_cast<size_t>((g.nx - 1) * g.ny * g.nz));
  out.faces[1].resize(static_cast<size_t>(g.nx * (g.ny - 1) * g.nz));
  out.faces[2].resize(static_cast<size_t>(g.nx * g.ny * (g.nz - 1)));
  size_t fx = 0, fy = 0, fz = 0;
  for (long k = 0; k < g.nz; ++k)
    for (long j = 0; j < g.ny; ++j)
      for (long i = 0; i + 1 < g.nx; ++i)
        out.faces[0][fx++] = (field.at(i + 1, j, k) - field.at(i, j, k)) / g.hx;
  for (long k = 0; k < g.nz; ++k)
    for (long j = 0; j + 1 < g.ny; ++j)
      for (long i = 0; i < g.nx; ++i)
        out.faces[1][fy++] = (field.at(i, j + 1, k) - field.at(i, j, k)) / g.hy;
  for (long k = 0; k + 1 < g.nz; ++k)
    for (long j = 0; j < g.ny; ++j)
      for (long i = 0; i < g.nx; ++i)
        out.faces[2][fz++] = (field.at(i, j, k + 1) - field.at(i, j, k)) / g.hz;
  return out;
}

double inner(const VectorField& a, const VectorField& b) {
  const GridSpec& g = a.grid();
  if (!g.same_layout(b.grid())) throw std::invalid_argument("inner: grid mismatch");
  double acc = 0.0;
  for (long k = 0; k < g.nz; ++k)
    for (long j = 0; j < g.ny; ++j) {
      const double* p = a.raw() + a.offset(0, j, k);
      const double* q = b.raw() + b.offset(0, j, k);
      for (long i = 0; i < g.nx; ++i, p += 3, q += 3)
        acc += p[0] * q[0] + p[1] * q[1] + p[2] * q[2];
    }
  return g.cell_volume() * acc;
}

double inner(const FaceField& a, const FaceField& b) {
  if (!a.grid.same_layout(b.grid)) throw std::invalid_argument("inner: grid mismatch");
  double acc = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    if (a.faces[axis].size() != b.faces[axis].size())
      throw std::invalid_argument("inner: face-array shape mismatch");
    for (size_t f = 0; f < a.faces[axis].size(); ++f) acc += dot(a.faces[axis][f], b.faces[axis][f]);
  }
  return a.grid.cell_volume() * acc;
}

double norm_l2(const VectorField& f) { return std::sqrt(inner(f, f)); }
double norm_l2(const FaceField& f) { return std::sqrt(inner(f, f)); }

double norm_inf(const VectorField& f) {
  const GridSpec& g = f.grid();
  double m = 0.0;
  for (long k = 0; k < g.nz; ++k)
    for (long j = 0; j < g.ny; ++j) {
      const double* p = f.raw() + f.offset(0, j, k);
      for (long i = 0; i < g.nx; ++i, p += 3)
        for (int c = 0; c < 3; ++c) m = std::max(m, std::fabs(p[c]));
    }
  return m;
}

double norm_h1(const VectorField& f) {
  const double l2 = norm_l2(f);
  const double g2 = norm_l2(gradient(f));
  return std::sqrt(l2 * l2 + g2 * g2);
}

VectorField cross(const VectorField& a, const VectorField& b) {
  const GridSpec& g = a.grid();
  if (!g.same_layout(b.grid())) throw std::invalid_argument("cross: grid mismatch");
  VectorField out(g);
  for (long k = 0; k < g.nz; ++k)
    for (long j = 0; j < g.ny; ++j)
      for (long i = 0; i < g.nx; ++i) out.set(i, j, k, cross(a.at(i, j, k), b.at(i, j, k)));
  return out;
}

VectorField triple(const VectorField& a, const VectorField& b) {
  const GridSpec& g = a.grid();
  if (!g.same_layout(b.grid())) throw std::invalid_argument("triple: grid mismatch");
  VectorField out(g);
  for (long k = 0; k < g.nz; ++k)
    for (long j = 0; j < g.ny; ++j)
      for (long i = 0; i < g.nx; ++i) out.set(i, j, k, triple(a.at(i, j, k), b.at(i, j, k)));
  return out;
}

VectorField project(const VectorField& f, double eps) {
  const GridSpec& g = f.grid();
  VectorField out(g);
  for (long k = 0; k < g.nz; ++k)
    for (long j = 0; j < g.ny; ++j)
      for (long i = 0; i < g.nx; ++i) {
        const Vec3 v = f.at(i, j, k);
        const double mag = norm(v);
        if (mag < eps) throw DegenerateMagnitude(i, j, k, mag);
        out.set(i, j, k, v / mag);
      }
  return out;
}

double exchange_energy(const VectorField& m) {
  const FaceField grad = gradient(m);
  return 0.5 * inner(grad, grad);
}

}  // namespace llproj
