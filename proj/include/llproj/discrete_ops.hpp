#pragma once

// Discrete spatial operators on cell-centered fields: the 3/5/7-point
// Laplacian under ghost-copy Neumann conditions, face gradients, weighted
// inner products and norms, pointwise vector algebra, sphere projection, and
// the exchange-energy diagnostic.

#include <array>
#include <stdexcept>
#include <vector>

#include "llproj/mesh.hpp"

namespace llproj {

// Magnitude floor below which projection refuses to normalize.  The scheme's
// stability theory keeps |m~| >= 1/2 in the convergent regime, so anything
// near zero signals divergence and must fail loudly.
inline constexpr double kProjectionFloor = 1e-8;

struct DegenerateMagnitude : std::runtime_error {
  long i, j, k;
  double magnitude;
  DegenerateMagnitude(long i_, long j_, long k_, double mag);
};

struct StaleGhosts : std::logic_error {
  StaleGhosts() : std::logic_error("laplacian: ghost cells are stale; call fill_ghosts first") {}
};

// Forward differences (f_{i+1}-f_i)/h per component at interior faces, stored
// per axis.  Along axis x the face between cells i and i+1 (0-based) lives at
// flat index i + (nx-1)*(j + ny*k); the y/z layouts are analogous.  Inactive
// axes have zero faces, so a 1-D grid naturally carries only x faces.
struct FaceField {
  GridSpec grid;
  std::array<std::vector<Vec3>, 3> faces;
};

// Second-order centered Laplacian over active axes.  Boundary cells use the
// ghost copies, which reproduces the homogeneous-Neumann stencil.  The result
// holds interior values only (its ghosts are stale).  Throws StaleGhosts if
// the input's ghost layer has not been filled since the last interior write.
VectorField laplacian(const VectorField& field);

FaceField gradient(const VectorField& field);

// Discrete L2 inner products: h^d * sum of pointwise dot products, ghosts and
// boundary faces excluded.
double inner(const VectorField& a, const VectorField& b);
double inner(const FaceField& a, const FaceField& b);

double norm_l2(const VectorField& f);
double norm_l2(const FaceField& f);
// Max over cells of the componentwise max magnitude.
double norm_inf(const VectorField& f);
// sqrt(||f||_2^2 + ||grad_h f||_2^2).
double norm_h1(const VectorField& f);

// Pointwise lifts of the Vec3 products over interior cells.
VectorField cross(const VectorField& a, const VectorField& b);
VectorField triple(const VectorField& a, const VectorField& b);  // a x (a x b)

// Pointwise normalization m / |m|.  Throws DegenerateMagnitude (with the
// offending cell index) if any interior magnitude falls below eps.
VectorField project(const VectorField& f, double eps = kProjectionFloor);

// (1/2) * ||grad_h m||_2^2, the exchange part of the LL energy.
double exchange_energy(const VectorField& m);

}  // namespace llproj
