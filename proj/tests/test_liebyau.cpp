#include <doctest.h>

#include "kato/error.hpp"
#include "kato/geometry.hpp"
#include "kato/liebyau.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace kato;
using namespace kato::ly;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorKind kind_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

geo::NestedPair concentric(int n, double outer, double inner) {
  return geo::make_nested_pair(geo::Domain(geo::Ball{n, outer, {}}),
                               geo::Domain(geo::Ball{n, inner, {}}));
}

} // namespace

TEST_CASE("test functions satisfy their bounds") {
  const TestFunctionH h = TestFunctionH::barrier(0.1);
  const double M = h.bound_M();
  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double r = i / 1000.0 * (1.0 - 1e-12);
    const double v = h(r);
    CHECK(v > M);
    CHECK(v < 1.0 / M);
    CHECK(v > prev);
    prev = v;
  }
  const TestFunctionH s = TestFunctionH::step(0.2, 0.6, 1e-3);
  CHECK(s(0.4) == 1.0);
  CHECK(s(0.7) == doctest::Approx(1e3));
  CHECK(s.bound_M() < 1.0);
  CHECK(1.0 / s.bound_M() > 1e3);
  const TestFunctionH t = TestFunctionH::tabulated({0, 1}, {1, 3});
  CHECK(t(0.5) == doctest::Approx(2.0));
  CHECK(TestFunctionH::tabulated({0, 1}, {2, 2}).is_constant());
  CHECK_THROWS_AS(TestFunctionH::barrier(0.3), Error);
  CHECK_THROWS_AS(TestFunctionH::tabulated({0, 1}, {1, -1}), Error);
}

TEST_CASE("relative drop matches the direct quotient and its derivative") {
  const TestFunctionH h = TestFunctionH::barrier(0.2);
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double r = u(gen), s = u(gen);
    CHECK(h.relative_drop(r, s - r) == doctest::Approx(1.0 - h(r) / h(s)).epsilon(1e-9));
  }
  const double r = 0.3, t = 1e-12;
  const double dh = 0.2 * std::pow(0.7, -0.8);
  CHECK(h.relative_drop(r, t) / t == doctest::Approx(dh / h(r)).epsilon(1e-9));
}

TEST_CASE("Lieb-Yau potential examples") {
  const Kernel1D K = radial_kernel(2, 0.05);
  SUBCASE("constant h gives zero") {
    const TestFunctionH c = TestFunctionH::tabulated({0, 1}, {3, 3});
    for (double x : {0.1, 0.5, 0.9}) CHECK(lieb_yau_potential(K, c, x, 0, 1, 1e-10).value == 0.0);
  }
  SUBCASE("step function tends to the exterior kernel mass") {
    const double x = 0.4;
    const double outside = quad::integrate_adaptive([&](double y) { return K(x, y); }, 0.0, 0.2,
                                                    1e-12)
                               .value +
                           quad::integrate_adaptive([&](double y) { return K(x, y); }, 0.6,
                                                    1.0, 1e-12)
                               .value;
    double prev_gap = 1e300;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
      const double L =
          lieb_yau_potential(K, TestFunctionH::step(0.2, 0.6, eps), x, 0, 1, 1e-11).value;
      CHECK(L == doctest::Approx(2.0 * (1.0 - eps) * outside).epsilon(1e-9));
      const double gap = std::abs(L - 2.0 * outside);
      CHECK(gap < prev_gap);
      prev_gap = gap;
    }
    CHECK(prev_gap < 1e-3 * outside);
  }
  SUBCASE("barrier h against a dense grid") {
    const TestFunctionH h = TestFunctionH::barrier(0.1);
    const double x = 0.5;
    const int N = 1'000'000;
    double grid = 0.0;
    for (int i = 0; i < N; ++i) {
      const double y = (i + 0.5) / N;
      grid += K(x, y) * (1.0 - h(x) / h(y));
    }
    grid *= 2.0 / N;
    const double L = lieb_yau_potential(K, h, x, 0, 1, 1e-12).value;
    CHECK(std::abs(L - grid) <= 1e-4);
  }
}

TEST_CASE("discrete Lieb-Yau inequality on random instances") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int m = 50;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXd K(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j <= i; ++j) K(i, j) = K(j, i) = u(gen);
    std::vector<double> h(m), f(m), w(m, 1.0 / m);
    for (int i = 0; i < m; ++i) {
      h[i] = 0.1 + 9.9 * u(gen);
      f[i] = 2.0 * u(gen) - 1.0;
    }
    const DiscreteLiebYau r = discrete_lieb_yau(K, h, f, w);
    CHECK(r.lhs >= r.rhs - 1e-12 * std::abs(r.lhs));
  }
  // equality when f is proportional to 1/h
  Eigen::MatrixXd K = Eigen::MatrixXd::Constant(3, 3, 1.0);
  const std::vector<double> h{1, 2, 4}, f{1, 0.5, 0.25}, w{1, 1, 1};
  const DiscreteLiebYau r = discrete_lieb_yau(K, h, f, w);
  CHECK(r.lhs == doctest::Approx(r.rhs).epsilon(1e-12));
}

TEST_CASE("half-ball constant c2") {
  CHECK(half_ball_constant(2, 0.0) == 0.0);
  CHECK(half_ball_constant(2, 1e-4) < 1e-3);
  CHECK(half_ball_constant(3, 1e-4) < 1e-3);
  const geo::NestedPair pair = concentric(2, 2.0, 1.0);
  CHECK(pair.gap == doctest::Approx(1.0));
  const double c2 = compact_support_c2(pair);
  const quad::QuadratureResult mc = half_ball_constant_mc(2, 1.0, {1'000'000, 7, 8});
  CHECK(std::abs(c2 - mc.value) <= mc.error_estimate);
  const quad::QuadratureResult mc3 = half_ball_constant_mc(3, 2.5, {1'000'000, 9, 8});
  CHECK(std::abs(half_ball_constant(3, 2.5) - mc3.value) <= mc3.error_estimate);
  for (int n : {2, 3, 4}) {
    double prev = 0.0;
    for (double R : {0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
      const double v = half_ball_constant(n, R);
      CHECK(v > prev);
      prev = v;
    }
  }
  // R -> infinity: the full half plane gives int_0^inf 2/(z+1)^2 dz = 2
  CHECK(half_ball_constant(2, 1e8) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("pointwise compact-support bound") {
  const geo::NestedPair pair = concentric(2, 2.0, 1.0);
  // at the centre the exterior annulus gives 2 pi (1/1 - 1/2)
  const quad::QuadratureResult q = exterior_potential(pair, std::vector<double>{0.0, 0.0});
  CHECK(q.value == doctest::Approx(kPi).epsilon(1e-10));
  const geo::NestedPair pair3 = concentric(3, 2.0, 1.0);
  // 4 pi (1/1 - 1/2) in three dimensions
  CHECK(exterior_potential(pair3, std::vector<double>{0.0, 0.0, 0.0}).value ==
        doctest::Approx(2.0 * kPi).epsilon(1e-10));

  const PointwiseReport centre = verify_compact_support_pointwise(pair, {{0.0, 0.0}});
  CHECK(centre.min_ratio > 5.0);
  std::vector<geo::Point> grid;
  for (double rho : {0.5, 1e-1, 1e-2, 1e-3})
    for (double a : {0.0, 1.0, 2.5}) grid.push_back({(1 - rho) * std::cos(a), (1 - rho) * std::sin(a)});
  const PointwiseReport near = verify_compact_support_pointwise(pair, grid);
  CHECK(near.records.size() == grid.size());
  CHECK(near.min_slack >= 0.0);
  CHECK(near.min_ratio >= 1.0);

  const geo::NestedPair ell = geo::make_nested_pair(geo::Domain(geo::Ellipsoid{{3.0, 2.0}}),
                                                    geo::Domain(geo::Ellipsoid{{1.5, 1.0}}));
  CHECK(verify_compact_support_pointwise(ell, {{1.4, 0.0}, {0.0, 0.95}, {0.3, 0.2}}).min_slack >= 0.0);
  CHECK(verify_compact_support_pointwise(pair3, {{0.0, 0.0, 0.99}, {0.5, 0.5, 0.5}}).min_slack >= 0.0);

  CHECK(kind_of([&] { verify_compact_support_pointwise(pair, {}); }) == ErrorKind::InvalidGrid);
  CHECK(kind_of([&] { verify_compact_support_pointwise(pair, {{1.5, 0.0}}); }) == ErrorKind::InvalidGrid);
}

TEST_CASE("radial potential") {
  const TestFunctionH h = TestFunctionH::barrier(0.1);
  const double lhs = radial_potential_lhs(0.5, h, 2);
  CHECK(std::abs(lhs - radial_potential_lhs_pv(0.5, h, 2)) < 1e-6 * std::abs(lhs));
  CHECK(lhs >= potential_lower_bound(0.5, 0.1));
  CHECK(radial_potential_lhs(0.5, TestFunctionH::tabulated({0, 1}, {2, 2}), 2) == 0.0);
  double prev = 1e300;
  for (double w : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const double v = std::abs(radial_potential_lhs(0.5, TestFunctionH::barrier(w), 3));
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev < 1e-5);
  const auto prof = potential_profile(h, 2, {0.25, 0.75});
  CHECK(prof.size() == 2);
  CHECK(prof[0].second ==
        doctest::Approx(2.0 * 0.25 * radial_potential_lhs(0.25, h, 2)).epsilon(1e-12));
}

TEST_CASE("A(mu) and B(mu)") {
  const ScalarConstants pc = scalar_constants();
  CHECK(std::abs(limit_A(2.0, 1e-6)) < 1e-5);
  CHECK(std::abs(limit_B(2.0, 1e-6)) < 1e-10);
  CHECK(limit_A(2.0, 0.2) >= pc.c8 * 0.04);
  CHECK(limit_B(2.0, 0.2) <= pc.c9 * 0.04 / 99.0);
  for (double mu : {1.1, 2.0, 5.0, 10.0})
    for (double w : {0.05, 0.1, 0.2}) {
      CHECK(limit_A_pv(mu, w) == doctest::Approx(limit_A_regularized(mu, w)).epsilon(1e-6));
      CHECK(limit_integral(mu, w) == doctest::Approx(limit_integral_direct(mu, w)).epsilon(1e-10));
    }
  // mu -> infinity: PV int_0^inf (1 - u^-w)/(u-1)^2 du = pi w cot(pi w) - 1
  for (double w : {0.05, 0.1, 0.2})
    CHECK(limit_A_pv(1e14, w) ==
          doctest::Approx(kPi * w / std::tan(kPi * w) - 1.0).epsilon(1e-6));
  CHECK_THROWS_AS(limit_A(1.0, 0.1), Error);
}

TEST_CASE("psi_beta closed form, evenness and monotone ratio") {
  double prev = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double w = 0.25 * i / 50.0;
    CHECK(std::abs(psi_beta(w) - psi_beta_closed(w)) <= 1e-8);
    CHECK(psi_beta(-w) == doctest::Approx(psi_beta(w)).epsilon(1e-12));
    const double ratio = psi_beta(w) / (w * w);
    CHECK(ratio >= prev);
    prev = ratio;
  }
}

TEST_CASE("scalar constants") {
  const ScalarConstants pc = scalar_constants();
  CHECK(std::abs(pc.c8 - 0.695869349) <= 1e-8);
  CHECK(std::abs(pc.c8 - pc.c8_closed) <= 1e-10);
  CHECK(std::abs(pc.psi_quarter - psi_beta_closed(0.25)) <= 1e-10);
  CHECK(std::abs(pc.c9 - 39.47841761) <= 1e-6);
  CHECK(std::abs(pc.c9 - 4.0 * kPi * kPi) <= 1e-8);
  CHECK(std::abs(pc.c7 - 0.002941558950) <= 1e-10);
  CHECK(std::abs(pc.c10 - 0.004322994) <= 1e-8);
  CHECK(std::abs(pc.c10_quadrature - pc.c10_closed) <= 1e-12);
}

TEST_CASE("omega average") {
  CHECK(omega_average(1.0) == doctest::Approx(1.0 / 192.0).epsilon(1e-12));
  CHECK(omega_average_closed(1.0) == doctest::Approx(1.0 / 192.0).epsilon(1e-14));
  CHECK(omega_average(std::exp(1.0)) == doctest::Approx(scalar_constants().c10).epsilon(1e-12));
  for (double mu : {1.0 + 1e-3, std::exp(1.0), 10.0, 1e3, 1e6})
    CHECK(std::abs(omega_average(mu) - omega_average_closed(mu)) <= 1e-9);
  // both branches of the closed form meet at ln mu = 4
  const double e4 = std::exp(4.0);
  CHECK(omega_average_closed(e4 * (1 - 1e-12)) ==
        doctest::Approx(omega_average_closed(e4 * (1 + 1e-12))).epsilon(1e-9));
  const double c10 = scalar_constants().c10;
  for (int i = 0; i <= 120; ++i) {
    const double mu = std::pow(10.0, 6.0 * i / 120.0);
    const double l = std::log(mu);
    CHECK(omega_average(mu) >= c10 / (1.0 + l * l * l));
  }
}

TEST_CASE("constant chain") {
  const ConstantChain c = chain_constants(2);
  CHECK(c.c4 == doctest::Approx(4.0 * 2.0 * kPi * c.c7 * c.c10).epsilon(1e-12));
  CHECK(c.c4 == doctest::Approx(3.196e-4).epsilon(1e-3));
  CHECK(c.c12_raw == 1.0);
  CHECK(c.c14_presafety == doctest::Approx(c.c4 / c13_for(1.0)).epsilon(1e-14));
  CHECK(c13_for(1.0) == doctest::Approx(kC13Safety));
  CHECK(c13_for(2.0) > c13_for(1.5));
  const double lc = std::log(2.0);
  CHECK(c13_for(2.0) >= kC13Safety * (1.0 + lc * lc * lc));
  for (int n = 2; n <= 4; ++n) {
    const ConstantChain k = chain_constants(n);
    for (double v : {k.c4, k.c5, k.c6, k.c7, k.c8, k.c9, k.c10, k.c11, k.c12, k.c13, k.c14})
      CHECK(v > 0.0);
    const auto [c4, c14] = chain_closed_form(n, k.c12);
    CHECK(k.c4 == doctest::Approx(c4).epsilon(1e-8));
    CHECK(k.c14 == doctest::Approx(c14).epsilon(1e-8));
    CHECK(!k.provenance.empty());
  }
  const ConstantChain e = chain_constants(geo::Domain(geo::Ellipsoid{{1.5, 1.0}}));
  CHECK(e.c12_raw == doctest::Approx(1.5));
  CHECK(e.c12 == doctest::Approx(1.5 * geo::kJacobianSafety));
  CHECK(e.c14 == doctest::Approx(std::pow(e.c12, -10) * e.c4 / e.c13).epsilon(1e-14));
  CHECK(e.c14 == doctest::Approx(chain_closed_form(2, e.c12).second).epsilon(1e-8));
  CHECK(e.c14 < e.c14_presafety);

  const ConstantChain p = chain_constants(concentric(2, 2.0, 1.0));
  CHECK(p.c3 == 1.0);
  CHECK(p.kappa_gap == doctest::Approx(1.0));
  CHECK(p.c1 == doctest::Approx(2.0 * p.c2));
  CHECK(kind_of([] {
          geo::NestedPair bad = concentric(2, 2.0, 1.0);
          bad.gap = 0.0;
          compact_support_c2(bad);
        }) == ErrorKind::EmptyGap);
}
