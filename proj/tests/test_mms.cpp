#include <cmath>
#include <random>

#include "doctest.h"
#include "llproj/mms.hpp"

using namespace llproj;

namespace {

Vec3 fd_laplacian(const ManufacturedSolution& sol, double x, double y, double z, double t,
                  double d) {
  Vec3 acc = -2.0 * sol.value(x, y, z, t);
  Vec3 out = (1.0 / (d * d)) * (sol.value(x - d, y, z, t) + sol.value(x + d, y, z, t) + acc);
  if (sol.dim() == 3) {
    out = out + (1.0 / (d * d)) * (sol.value(x, y - d, z, t) + sol.value(x, y + d, z, t) + acc);
    out = out + (1.0 / (d * d)) * (sol.value(x, y, z - d, t) + sol.value(x, y, z + d, t) + acc);
  }
  return out;
}

double inf3(Vec3 v) { return std::max({std::fabs(v.x), std::fabs(v.y), std::fabs(v.z)}); }

}  // namespace

TEST_CASE("profile helpers and special values") {
  CHECK(phi(0.0) == 0.0);
  CHECK(phi(1.0) == 0.0);
  CHECK(phi(0.5) == doctest::Approx(1.0 / 16.0));
  CHECK(dphi(0.5) == doctest::Approx(0.0));
  CHECK(d2phi(0.0) == doctest::Approx(2.0));

  // At x=0 the 1-D phase vanishes: m = (sin t, 0, cos t).
  const Vec3 a = exact_1d(0.0, 0.7);
  CHECK(a.x == doctest::Approx(std::sin(0.7)));
  CHECK(a.y == doctest::Approx(0.0));
  CHECK(a.z == doctest::Approx(std::cos(0.7)));

  // At t=0 both solutions start at the north pole.
  const Vec3 b = exact_1d(0.37, 0.0);
  CHECK(b.x == 0.0);
  CHECK(b.y == 0.0);
  CHECK(b.z == 1.0);
  const Vec3 c = exact_3d(0.2, 0.6, 0.9, 0.0);
  CHECK(inf3(c - Vec3{0.0, 0.0, 1.0}) == 0.0);

  // The 3-D phase is the product of the three 1-D profiles.
  const double p = 1.0 / 4096.0;
  const Vec3 d = exact_3d(0.5, 0.5, 0.5, 1.3);
  CHECK(d.x == doctest::Approx(std::cos(p) * std::sin(1.3)));
  CHECK(d.y == doctest::Approx(std::sin(p) * std::sin(1.3)));
}

TEST_CASE("exact solutions live on the unit sphere") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (int q = 0; q < 200; ++q) {
    const double x = dist(rng), y = dist(rng), z = dist(rng), t = 2.0 * dist(rng);
    CHECK(std::fabs(norm(exact_1d(x, t)) - 1.0) <= 1e-14);
    CHECK(std::fabs(norm(exact_3d(x, y, z, t)) - 1.0) <= 1e-14);
  }
}

TEST_CASE("analytic Laplacian matches a centered-difference oracle") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(0.05, 0.95);
  const double d = 1e-4;
  for (const ManufacturedSolution& sol :
       {ManufacturedSolution::example_1d(), ManufacturedSolution::example_3d()}) {
    for (int q = 0; q < 100; ++q) {
      const double x = dist(rng), y = dist(rng), z = dist(rng), t = 2.0 * dist(rng);
      const Vec3 lap = sol.laplacian(x, y, z, t);
      const Vec3 fd = fd_laplacian(sol, x, y, z, t, d);
      CHECK(inf3(lap - fd) <= 1e-6);
    }
  }
}

TEST_CASE("analytic time derivative matches a centered-difference oracle") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> dist(0.05, 0.95);
  const double dt = 1e-5;
  for (const ManufacturedSolution& sol :
       {ManufacturedSolution::example_1d(), ManufacturedSolution::example_3d()}) {
    for (int q = 0; q < 100; ++q) {
      const double x = dist(rng), y = dist(rng), z = dist(rng), t = 0.1 + 1.8 * dist(rng);
      const Vec3 fd =
          (1.0 / (2.0 * dt)) * (sol.value(x, y, z, t + dt) - sol.value(x, y, z, t - dt));
      CHECK(inf3(sol.dt(x, y, z, t) - fd) <= 1e-8);
    }
  }
}

TEST_CASE("forcing closes the equation to rounding") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  const double alpha = 0.01;
  for (const ManufacturedSolution& sol :
       {ManufacturedSolution::example_1d(), ManufacturedSolution::example_3d()}) {
    for (int q = 0; q < 100; ++q) {
      const double x = dist(rng), y = dist(rng), z = dist(rng), t = 2.0 * dist(rng);
      const Vec3 m = sol.value(x, y, z, t);
      const Vec3 lap = sol.laplacian(x, y, z, t);
      const Vec3 residual = sol.dt(x, y, z, t) + cross(m, lap) + alpha * triple(m, lap) -
                            forcing(sol, x, y, z, t, alpha);
      CHECK(inf3(residual) <= 1e-14);
    }
  }
}

TEST_CASE("initial forcing reduces to the tangential rotation rate") {
  // At t=0 the spatial curvature terms carry a sin(t) factor and vanish,
  // so f(x,0) = m_t(x,0) = (cos phi, sin phi, 0).
  const ManufacturedSolution sol = ManufacturedSolution::example_1d();
  for (double x : {0.1, 0.4, 0.8}) {
    const Vec3 f = forcing(sol, x, 0.5, 0.5, 0.0, 0.02);
    CHECK(f.x == doctest::Approx(std::cos(phi(x))));
    CHECK(f.y == doctest::Approx(std::sin(phi(x))));
    CHECK(f.z == doctest::Approx(0.0));
  }
}

TEST_CASE("forcing rejects a negative damping constant") {
  const ManufacturedSolution sol = ManufacturedSolution::example_1d();
  CHECK_THROWS_AS(forcing(sol, 0.5, 0.5, 0.5, 1.0, -1.0), std::invalid_argument);
}
