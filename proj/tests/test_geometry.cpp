#include <doctest.h>

#include "kato/error.hpp"
#include "kato/geometry.hpp"
#include "kato/quadrature.hpp"

#include <cmath>
#include <numbers>

using namespace kato;
using namespace kato::geo;

namespace {

constexpr double pi = std::numbers::pi;

double brute_ellipse_distance(double a, double b, double x, double y) {
  double best = 1e300;
  const int N = 400000;
  for (int i = 0; i < N; ++i) {
    const double t = 2 * pi * i / N;
    best = std::min(best, std::hypot(a * std::cos(t) - x, b * std::sin(t) - y));
  }
  return best;
}

double brute_ellipsoid3_distance(const double *e, const double *p) {
  double best = 1e300;
  const int N = 800;
  for (int i = 0; i <= N; ++i) {
    const double al = pi * i / N;
    for (int j = 0; j < 2 * N; ++j) {
      const double be = pi * j / N;
      const double z[3] = {e[0] * std::cos(al), e[1] * std::sin(al) * std::cos(be),
                           e[2] * std::sin(al) * std::sin(be)};
      best = std::min(best, std::sqrt((z[0] - p[0]) * (z[0] - p[0]) +
                                      (z[1] - p[1]) * (z[1] - p[1]) +
                                      (z[2] - p[2]) * (z[2] - p[2])));
    }
  }
  return best;
}

} // namespace

TEST_CASE("distance_to_boundary examples") {
  CHECK(Domain::unit_ball(2).distance_to_boundary(Point{0, 0}) == 1.0);
  CHECK(Domain::unit_ball(3).distance_to_boundary(Point{0.5, 0, 0}) == 0.5);
  Domain e(Ellipsoid{{2, 1}});
  CHECK(std::abs(e.distance_to_boundary(Point{0, 0}) - 1.0) < 1e-14);
  CHECK(std::abs(brute_ellipse_distance(2, 1, 0, 0) - 1.0) < 1e-9);
}

TEST_CASE("unit ball distance is exactly 1 - |p|") {
  quad::Rng rng(5);
  for (int n : {2, 3, 4}) {
    Domain d = Domain::unit_ball(n);
    std::vector<double> p(n);
    for (int k = 0; k < 1000; ++k) {
      rng.point_in_ball(p);
      double r = 0;
      for (double c : p) r += c * c;
      CHECK(d.distance_to_boundary(p) == 1.0 - std::sqrt(r));
    }
  }
}

TEST_CASE("ellipse distance matches brute-force boundary sampling") {
  quad::Rng rng(11);
  const double ax[][2] = {{2, 1}, {1.5, 1}, {10, 0.1}, {1, 3}};
  for (auto &a : ax) {
    Domain d(Ellipsoid{{a[0], a[1]}});
    for (int k = 0; k < 15; ++k) {
      std::vector<double> u(2);
      rng.point_in_ball(u);
      const Point p{a[0] * u[0], a[1] * u[1]};
      const double brute = brute_ellipse_distance(a[0], a[1], p[0], p[1]);
      CHECK(std::abs(d.distance_to_boundary(p) - brute) < 1e-6 * std::max(a[0], a[1]));
    }
    // points on the axes, including the minor-axis degenerate branch
    const Point on_major{0.7 * a[0], 0.0};
    CHECK(std::abs(d.distance_to_boundary(on_major) -
                   brute_ellipse_distance(a[0], a[1], on_major[0], 0.0)) < 1e-6);
  }
}

TEST_CASE("ellipsoid (n=3) distance matches brute-force sampling") {
  const double e[3] = {2.0, 1.0, 0.5};
  Domain d(Ellipsoid{{e[0], e[1], e[2]}});
  const double pts[][3] = {{0, 0, 0}, {1.0, 0.3, 0.1}, {0.5, 0, 0}, {0, 0.5, 0}, {1.9, 0, 0}};
  for (auto &p : pts) {
    const double brute = brute_ellipsoid3_distance(e, p);
    CHECK(std::abs(d.distance_to_boundary(Point{p[0], p[1], p[2]}) - brute) < 1e-4);
  }
}

TEST_CASE("distance outside the domain raises OutsideDomain") {
  try {
    Domain::unit_ball(2).distance_to_boundary(Point{1.5, 0});
    FAIL("expected throw");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::OutsideDomain);
  }
}

TEST_CASE("radial map mesh distance agrees with the exact image ball") {
  Domain d(RadialMap{2, 1.0, 0.1});
  quad::Rng rng(2);
  std::vector<double> u(2);
  for (int k = 0; k < 50; ++k) {
    rng.point_in_ball(u);
    const Point x = d.map(u);
    CHECK(std::abs(d.distance_to_boundary(x) - (1.1 - std::hypot(x[0], x[1]))) < 1e-9);
  }
  Domain d3(RadialMap{3, 1.0, 0.2});
  const Point x{0.3, -0.2, 0.5};
  CHECK(std::abs(d3.distance_to_boundary(x) - (1.2 - std::sqrt(0.09 + 0.04 + 0.25))) < 1e-8);
}

TEST_CASE("estimate_jacobian_bounds examples") {
  auto id = estimate_jacobian_bounds(Domain(Ellipsoid{{1, 1}}), 1000);
  CHECK(id.c12 == doctest::Approx(1.05));
  CHECK(id.raw == 1.0);
  auto e = estimate_jacobian_bounds(Domain(Ellipsoid{{2, 0.5}}), 1000);
  CHECK(e.c12 == doctest::Approx(2.1));
  // Dense-grid oracle for g(t) = 1 + 0.1 t^2: eigenvalues g and g + 2 a t^2.
  double oracle = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double t = i / 100000.0;
    const double g = 1 + 0.1 * t * t;
    oracle = std::max({oracle, g + 0.2 * t * t, 1.0 / g});
  }
  auto r = estimate_jacobian_bounds(Domain(RadialMap{2, 1.0, 0.1}), 5000);
  CHECK(r.raw <= oracle + 1e-12);
  CHECK(r.c12 >= oracle);
  CHECK(r.c12 <= 1.05 * oracle + 1e-12);
  CHECK_THROWS_AS(estimate_jacobian_bounds(Domain::unit_ball(2), 10), Error);
}

TEST_CASE("DegenerateJacobian for a folding radial map") {
  try {
    estimate_jacobian_bounds(Domain(RadialMap{2, 1.0, -0.5}), 2000);
    FAIL("expected throw");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::DegenerateJacobian);
  }
}

TEST_CASE("rho comparison, Lipschitz and determinant bounds for mapped domains") {
  const Domain domains[] = {Domain(Ellipsoid{{1.5, 1}}), Domain(Ellipsoid{{2, 0.5}}),
                            Domain(RadialMap{2, 1.0, 0.1})};
  for (const Domain &d : domains) {
    const double c12 = estimate_jacobian_bounds(d, 2000).c12;
    quad::Rng rng(99);
    std::vector<double> u(2), v(2);
    const int samples = 10000;
    int bad_rho = 0, bad_lip = 0, bad_det = 0;
    for (int k = 0; k < samples; ++k) {
      rng.point_in_ball(u);
      rng.point_in_ball(v);
      const double rho_b = 1.0 - std::hypot(u[0], u[1]);
      const double rho_o = d.distance_to_boundary(d.map(u));
      if (!(rho_o / c12 <= rho_b && rho_b <= c12 * rho_o)) ++bad_rho;
      const Point x = d.map(u), y = d.map(v);
      const double duv = std::hypot(u[0] - v[0], u[1] - v[1]);
      const double dxy = std::hypot(x[0] - y[0], x[1] - y[1]);
      if (!(duv / c12 <= dxy && dxy <= c12 * duv)) ++bad_lip;
      const double det = d.jacobian_det(u);
      if (!(det >= std::pow(c12, -2) && det <= std::pow(c12, 2))) ++bad_det;
    }
    CHECK(bad_rho == 0);
    CHECK(bad_lip == 0);
    CHECK(bad_det == 0);
  }
}

TEST_CASE("nesting_kappa examples") {
  CHECK(nesting_kappa(Domain(Ball{2, 2.0, {}}), Domain(Ball{2, 1.0, {}})) == 1.0);
  CHECK(nesting_kappa(Domain(Ball{2, 2.0, {}}), Domain(Ball{2, 1.0, {0.5, 0}})) == 0.5);
  // Outer ellipse (2, 1.5), inner unit disc centred at the origin: the gap is
  // min |w| - 1 over the outer boundary, taken on a dense mesh.
  Domain outer(Ellipsoid{{2, 1.5}});
  double oracle = 1e300;
  for (int i = 0; i < 1000000; ++i) {
    const double t = 2 * pi * i / 1000000;
    oracle = std::min(oracle, std::hypot(2 * std::cos(t), 1.5 * std::sin(t)) - 1.0);
  }
  const double kappa = nesting_kappa(outer, Domain::unit_ball(2));
  CHECK(std::abs(kappa - oracle) < 1e-4);
  CHECK(kappa > 0.0);
}

TEST_CASE("EmptyGap for touching or overlapping pairs") {
  try {
    make_nested_pair(Domain(Ball{2, 1.0, {}}), Domain(Ball{2, 1.0, {}}));
    FAIL("expected throw");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::EmptyGap);
  }
  try {
    make_nested_pair(Domain(Ellipsoid{{2, 0.8}}), Domain::unit_ball(2));
    FAIL("expected throw");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::EmptyGap);
  }
}

TEST_CASE("describe renders the specification grammar") {
  CHECK(Domain::unit_ball(3).describe() == "ball(n=3)");
  CHECK(Domain(Ball{2, 2.0, {}}).describe() == "ball(n=2,r=2)");
  CHECK(Domain(Ellipsoid{{1.5, 1}}).describe() == "ellipsoid(a=1.5,b=1)");
  auto pair = make_nested_pair(Domain(Ball{2, 2.0, {}}), Domain::unit_ball(2));
  CHECK(describe(pair) == "pair(outer=ball(n=2,r=2),inner=ball(n=2))");
}

TEST_CASE("ray_exit hits the boundary") {
  const Domain domains[] = {Domain(Ellipsoid{{1.5, 1}}), Domain(Ball{2, 2.0, {0.1, 0.2}}),
                            Domain(RadialMap{2, 1.0, 0.1})};
  for (const Domain &d : domains) {
    const Point p{0.2, -0.1};
    for (int k = 0; k < 16; ++k) {
      const double t = 2 * pi * k / 16;
      const Point dir{std::cos(t), std::sin(t)};
      const double l = d.ray_exit(p, dir);
      const Point in{p[0] + 0.999999 * l * dir[0], p[1] + 0.999999 * l * dir[1]};
      const Point out{p[0] + 1.000001 * l * dir[0], p[1] + 1.000001 * l * dir[1]};
      CHECK(d.contains(in));
      CHECK(!d.contains(out));
    }
  }
}
