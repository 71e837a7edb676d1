#include "llproj/mms.hpp"

#include <cmath>
#include <stdexcept>

namespace llproj {

namespace {

// Laplacian of (cos P, sin P, const) given P, its Laplacian, and |grad P|^2:
//   Lap cos P = -sin P * Lap P - cos P * |grad P|^2
//   Lap sin P =  cos P * Lap P - sin P * |grad P|^2
Vec3 trig_laplacian(double p, double lap_p, double grad_p2, double sin_t) {
  const double cp = std::cos(p), sp = std::sin(p);
  return {(-sp * lap_p - cp * grad_p2) * sin_t, (cp * lap_p - sp * grad_p2) * sin_t, 0.0};
}

}  // namespace

Vec3 exact_1d(double x, double t) {
  const double p = phi(x);
  return {std::cos(p) * std::sin(t), std::sin(p) * std::sin(t), std::cos(t)};
}

Vec3 exact_3d(double x, double y, double z, double t) {
  const double p = phi(x) * phi(y) * phi(z);
  return {std::cos(p) * std::sin(t), std::sin(p) * std::sin(t), std::cos(t)};
}

ManufacturedSolution ManufacturedSolution::example_1d() { return ManufacturedSolution(1); }
ManufacturedSolution ManufacturedSolution::example_3d() { return ManufacturedSolution(3); }

Vec3 ManufacturedSolution::value(double x, double y, double z, double t) const {
  return dim_ == 1 ? exact_1d(x, t) : exact_3d(x, y, z, t);
}

Vec3 ManufacturedSolution::dt(double x, double y, double z, double t) const {
  const double p = dim_ == 1 ? phi(x) : phi(x) * phi(y) * phi(z);
  return {std::cos(p) * std::cos(t), std::sin(p) * std::cos(t), -std::sin(t)};
}

Vec3 ManufacturedSolution::laplacian(double x, double y, double z, double t) const {
  if (dim_ == 1) {
    const double p = phi(x);
    const double dp = dphi(x);
    return trig_laplacian(p, d2phi(x), dp * dp, std::sin(t));
  }
  const double X = phi(x), Y = phi(y), Z = phi(z);
  const double p = X * Y * Z;
  const double lap_p = d2phi(x) * Y * Z + X * d2phi(y) * Z + X * Y * d2phi(z);
  const double gx = dphi(x) * Y * Z, gy = X * dphi(y) * Z, gz = X * Y * dphi(z);
  return trig_laplacian(p, lap_p, gx * gx + gy * gy + gz * gz, std::sin(t));
}

Vec3 forcing(const ManufacturedSolution& solution, double x, double y, double z, double t,
             double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("forcing: alpha must be nonnegative");
  const Vec3 m = solution.value(x, y, z, t);
  const Vec3 lap = solution.laplacian(x, y, z, t);
  const Vec3 mxl = cross(m, lap);
  return solution.dt(x, y, z, t) + mxl + alpha * cross(m, mxl);
}

}  // namespace llproj
