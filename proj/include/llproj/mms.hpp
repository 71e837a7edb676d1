#pragma once

// Manufactured exact solutions with hand-derived closed-form derivatives and
// the compensating forcing term.  Both solutions build on the profile
// phi(s) = s^2 (1-s)^2, whose vanishing endpoint slope makes every component
// satisfy the homogeneous Neumann condition analytically.

#include "llproj/mesh.hpp"

namespace llproj {

inline double phi(double s) { return s * s * (1.0 - s) * (1.0 - s); }
inline double dphi(double s) { return 2.0 * s - 6.0 * s * s + 4.0 * s * s * s; }
inline double d2phi(double s) { return 2.0 - 12.0 * s + 12.0 * s * s; }

// m_e(x,t) = (cos(phi(x)) sin t, sin(phi(x)) sin t, cos t)
Vec3 exact_1d(double x, double t);
// m_e(x,t) = (cos(XYZ) sin t, sin(XYZ) sin t, cos t), X = phi(x), Y = phi(y),
// Z = phi(z)
Vec3 exact_3d(double x, double y, double z, double t);

class ManufacturedSolution {
 public:
  static ManufacturedSolution example_1d();
  static ManufacturedSolution example_3d();

  int dim() const { return dim_; }
  Vec3 value(double x, double y, double z, double t) const;
  Vec3 dt(double x, double y, double z, double t) const;
  Vec3 laplacian(double x, double y, double z, double t) const;

 private:
  explicit ManufacturedSolution(int dim) : dim_(dim) {}
  int dim_;
};

// f = m_et + m_e x Lap m_e + alpha m_e x (m_e x Lap m_e), so that m_e solves
// the forced LL equation exactly.
Vec3 forcing(const ManufacturedSolution& solution, double x, double y, double z, double t,
             double alpha);

}  // namespace llproj
