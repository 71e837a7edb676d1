#include <cmath>

#include "doctest.h"
#include "llproj/discrete_ops.hpp"
#include "test_util.hpp"

using namespace llproj;

TEST_CASE("laplacian annihilates constants and matches the stencil") {
  const GridSpec g = make_grid(1, {3, 1, 1}, {3.0, 1.0, 1.0});  // h = 1
  VectorField f(g);
  f.fill_interior([](double, double, double) { return Vec3{4.0, -1.0, 0.5}; });
  f.fill_ghosts();
  const VectorField lap = laplacian(f);
  for (long i = 0; i < 3; ++i) CHECK(norm(lap.at(i)) == 0.0);

  VectorField s(g);
  s.set(0, {1, 0, 0});
  s.set(1, {2, 0, 0});
  s.set(2, {4, 0, 0});
  s.fill_ghosts();
  const VectorField ls = laplacian(s);
  CHECK(ls.at(1).x == doctest::Approx(1.0));  // 4 - 2*2 + 1
}

TEST_CASE("boundary cells use the ghost-copy stencil") {
  const GridSpec g = make_grid(1, {2, 1, 1}, {2.0, 1.0, 1.0});  // h = 1
  VectorField f(g);
  f.set(0, {3, 0, 0});
  f.set(1, {7, 0, 0});
  f.fill_ghosts();
  const VectorField lap = laplacian(f);
  CHECK(lap.at(0).x == doctest::Approx(4.0));   // (7 - 3)/1
  CHECK(lap.at(1).x == doctest::Approx(-4.0));  // (3 - 7)/1
}

TEST_CASE("laplacian requires fresh ghosts") {
  const GridSpec g = make_grid(1, {4, 1, 1});
  VectorField f = test_util::random_field(g, 1);
  CHECK_THROWS_AS(laplacian(f), StaleGhosts);
  f.fill_ghosts();
  CHECK_NOTHROW(laplacian(f));
  f.set(0, {1, 2, 3});
  CHECK_THROWS_AS(laplacian(f), StaleGhosts);
}

TEST_CASE("laplacian is exact for quadratics away from the boundary") {
  const GridSpec g = make_grid(3, {6, 6, 6});
  VectorField f(g);
  f.fill_interior([](double x, double y, double z) {
    return Vec3{x * x + 2 * y * y, z * z, x * x + y * y + z * z};
  });
  f.fill_ghosts();
  const VectorField lap = laplacian(f);
  for (long k = 1; k < 5; ++k)
    for (long j = 1; j < 5; ++j)
      for (long i = 1; i < 5; ++i) {
        CHECK(lap.at(i, j, k).x == doctest::Approx(6.0).epsilon(1e-9));
        CHECK(lap.at(i, j, k).y == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(lap.at(i, j, k).z == doctest::Approx(6.0).epsilon(1e-9));
      }
}

TEST_CASE("gradient takes forward differences on interior faces") {
  const GridSpec g = make_grid(1, {2, 1, 1});  // h = 0.5
  VectorField f(g);
  f.set(0, {0, 0, 0});
  f.set(1, {2, 0, 0});
  const FaceField grad = gradient(f);
  REQUIRE(grad.faces[0].size() == 1);
  CHECK(grad.faces[0][0].x == doctest::Approx(4.0));
  CHECK(grad.faces[1].empty());
  CHECK(grad.faces[2].empty());

  VectorField lin(g);
  lin.fill_interior([](double x, double, double) { return Vec3{x, x, x}; });
  const FaceField gl = gradient(lin);
  CHECK(gl.faces[0][0].y == doctest::Approx(1.0));
}

TEST_CASE("inner products carry the h^d weight and skip ghosts") {
  const GridSpec g = make_grid(1, {2, 1, 1});
  VectorField a(g), b(g);
  a.fill_interior([](double, double, double) { return Vec3{1, 0, 0}; });
  b.fill_interior([](double, double, double) { return Vec3{1, 0, 0}; });
  a.fill_ghosts();
  b.fill_ghosts();
  CHECK(inner(a, b) == doctest::Approx(1.0));

  VectorField c(g);
  c.fill_interior([](double, double, double) { return Vec3{0, 1, 0}; });
  CHECK(inner(a, c) == doctest::Approx(0.0));
}

TEST_CASE("summation by parts: <-lap f, g> = <grad f, grad g>") {
  for (int dim : {1, 3}) {
    const GridSpec g = dim == 1 ? make_grid(1, {17, 1, 1}) : make_grid(3, {5, 5, 5});
    for (unsigned seed = 0; seed < 5; ++seed) {
      VectorField f = test_util::random_field(g, 100 + seed);
      VectorField q = test_util::random_field(g, 200 + seed);
      f.fill_ghosts();
      q.fill_ghosts();
      const VectorField lap = laplacian(f);
      const double lhs = -inner(lap, q);
      const double rhs = inner(gradient(f), gradient(q));
      CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, std::fabs(rhs)));
    }
  }
}

TEST_CASE("norms of simple fields") {
  const GridSpec g = make_grid(1, {8, 1, 1});
  VectorField f(g);
  f.fill_interior([](double, double, double) { return Vec3{0, 0, 1}; });
  CHECK(norm_l2(f) == doctest::Approx(1.0));
  CHECK(norm_inf(f) == doctest::Approx(1.0));
  CHECK(norm_h1(f) == doctest::Approx(1.0));

  VectorField z(g);
  CHECK(norm_l2(z) == 0.0);
  CHECK(norm_inf(z) == 0.0);
  CHECK(norm_h1(z) == 0.0);
}

TEST_CASE("norm_inf is the componentwise max magnitude") {
  const GridSpec g = make_grid(1, {2, 1, 1});
  VectorField f(g);
  f.set(0, {0.3, -0.9, 0.1});
  f.set(1, {0.5, 0.2, -0.4});
  CHECK(norm_inf(f) == doctest::Approx(0.9));
}

TEST_CASE("cross product identities") {
  CHECK(norm(cross(Vec3{1, 0, 0}, Vec3{0, 1, 0}) - Vec3{0, 0, 1}) == 0.0);
  const Vec3 a{0.3, -1.2, 0.7};
  CHECK(norm(cross(a, a)) == 0.0);

  const GridSpec g = make_grid(1, {13, 1, 1});
  const VectorField h = test_util::random_field(g, 5);
  const VectorField q = test_util::random_field(g, 6);
  const VectorField hq = cross(h, q);
  CHECK(std::fabs(inner(hq, q)) <= 1e-12);
  const double lhs = inner(triple(h, q), q);
  const double rhs = -inner(hq, hq);
  CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, std::fabs(rhs)));
}

TEST_CASE("gradient product rule holds to rounding") {
  const GridSpec g = make_grid(1, {9, 1, 1});
  const VectorField f = test_util::random_field(g, 21);
  const VectorField q = test_util::random_field(g, 22);
  const FaceField gf = gradient(f);
  const FaceField gq = gradient(q);
  const FaceField gfq = gradient(cross(f, q));
  for (long i = 0; i + 1 < g.nx; ++i) {
    const Vec3 lhs = gfq.faces[0][static_cast<size_t>(i)];
    const Vec3 rhs = cross(gf.faces[0][static_cast<size_t>(i)], q.at(i + 1)) +
                     cross(f.at(i), gq.faces[0][static_cast<size_t>(i)]);
    CHECK(norm(lhs - rhs) <= 1e-12 * std::max(1.0, norm(lhs)));
  }
}

TEST_CASE("project normalizes, is idempotent, and rejects degenerate cells") {
  const GridSpec g = make_grid(1, {2, 1, 1});
  VectorField f(g);
  f.set(0, {0, 0, 2});
  f.set(1, {3, 4, 0});
  const VectorField p = project(f);
  CHECK(norm(p.at(0) - Vec3{0, 0, 1}) <= 1e-15);
  CHECK(norm(p.at(1) - Vec3{0.6, 0.8, 0}) <= 1e-15);

  const GridSpec gr = make_grid(3, {4, 4, 4});
  const VectorField r = test_util::random_field(gr, 31, 0.2, 2.0);
  const VectorField pr = project(r);
  const VectorField ppr = project(pr);
  double worst_mag = 0.0, worst_idem = 0.0;
  for (long k = 0; k < 4; ++k)
    for (long j = 0; j < 4; ++j)
      for (long i = 0; i < 4; ++i) {
        worst_mag = std::max(worst_mag, std::fabs(norm(pr.at(i, j, k)) - 1.0));
        worst_idem = std::max(worst_idem, norm(ppr.at(i, j, k) - pr.at(i, j, k)));
      }
  CHECK(worst_mag <= 1e-14);
  CHECK(worst_idem <= 1e-15);

  VectorField bad(g);
  bad.set(0, {1e-12, 0, 0});
  bad.set(1, {1, 0, 0});
  CHECK_THROWS_AS(project(bad), DegenerateMagnitude);
  try {
    project(bad);
  } catch (const DegenerateMagnitude& e) {
    CHECK(e.i == 0);
    CHECK(e.magnitude == doctest::Approx(1e-12));
  }
}

TEST_CASE("exchange energy of simple profiles") {
  const GridSpec g = make_grid(1, {10, 1, 1});
  VectorField c(g);
  c.fill_interior([](double, double, double) { return Vec3{1, 0, 0}; });
  CHECK(exchange_energy(c) == doctest::Approx(0.0));

  // Linear profile with slope s in one component: every face difference is s,
  // so the energy is (1/2) s^2 (n-1) h.
  const double s = 3.0;
  VectorField lin(g);
  lin.fill_interior([&](double x, double, double) { return Vec3{s * x, 0, 0}; });
  CHECK(exchange_energy(lin) == doctest::Approx(0.5 * s * s * 9.0 * 0.1));
}
