#pragma once

// Lower-bound machinery for the nonlocal energy: the Lieb-Yau potential
// L(x) = 2 int K(x,y) (1 - h(x)/h(y)) dy, the half-space constant for
// compactly supported functions, the radial potential with the test function
// h(r) = kappa - (1-r)^omega, the integrals A(mu) and B(mu), the omega
// average, and the composed constant chain c1 ... c14.

#include "kato/geometry.hpp"
#include "kato/quadrature.hpp"

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kato::ly {

inline constexpr double kKappa = 100.0;

class TestFunctionH {
public:
  enum class Family { Barrier, Step, Tabulated };

  // kappa - (1-r)^omega, 0 < omega < 1/4, kappa > 1.
  static TestFunctionH barrier(double omega, double kappa = kKappa);
  // 1 on [a, b], 1/eps elsewhere.
  static TestFunctionH step(double a, double b, double eps);
  // Piecewise linear through (x_i, v_i), v_i > 0, constant outside.
  static TestFunctionH tabulated(std::vector<double> x, std::vector<double> v);

  Family family() const { return family_; }
  double omega() const { return omega_; }
  double kappa() const { return kappa_; }

  double operator()(double r) const;
  // 1 - h(r)/h(r+t).
  double relative_drop(double r, double t) const;
  // A constant M with M < h < 1/M on [0, 1).
  double bound_M() const;
  bool is_constant() const;
  std::vector<double> breakpoints() const;

private:
  Family family_ = Family::Barrier;
  double omega_ = 0.1, kappa_ = kKappa;
  double a_ = 0.0, b_ = 1.0, eps_ = 1.0;
  std::vector<double> x_, v_;
};

using Kernel1D = std::function<double(double x, double y)>;

// min(r,s)^{n-1} / (eps^2 + (r-s)^2).
Kernel1D radial_kernel(int n, double eps);

// 2 int_lo^hi K(x,y) (1 - h(x)/h(y)) dy.
quad::QuadratureResult lieb_yau_potential(const Kernel1D &K, const TestFunctionH &h, double x,
                                          double lo, double hi, double tol,
                                          std::span<const double> breakpoints = {});

struct DiscreteLiebYau {
  double lhs = 0.0; // sum_ij w_i w_j K_ij (f_i - f_j)^2
  double rhs = 0.0; // 2 sum_i w_i f_i^2 sum_j w_j K_ij (1 - h_i/h_j)
};
DiscreteLiebYau discrete_lieb_yau(const Eigen::MatrixXd &K, std::span<const double> h,
                                  std::span<const double> f, std::span<const double> w);

// ---------------------------------------------------------------------------
// Compact support (nested domains)

// sup of rho_inner over the inner domain.
double inner_depth(const geo::Domain &inner);

// int over { z1 > 0, |z| <= R } of ((z1+1)^2 + z2^2 + ...)^{-(n+1)/2} dz,
// reduced to one angular integral.
double half_ball_constant(int n, double R, double tol = 1e-12);
quad::QuadratureResult half_ball_constant_mc(int n, double R, const quad::MCConfig &cfg);

// half_ball_constant(n, kappa / c3); EmptyGap for non-positive kappa.
double compact_support_c2(const geo::NestedPair &pair, double tol = 1e-12);

// int over outer \ inner of |x-y|^{-(n+1)} dy for x in the inner domain.
quad::QuadratureResult exterior_potential(const geo::NestedPair &pair,
                                          std::span<const double> x, double tol = 1e-10);

struct PointwiseRecord {
  geo::Point x;
  double rho = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};
struct PointwiseReport {
  std::vector<PointwiseRecord> records;
  double c2 = 0.0;
  double min_slack = 0.0; // min lhs - rhs
  double min_ratio = 0.0; // min lhs / rhs
};
// InvalidGrid for an empty grid or points outside the inner domain;
// ViolationFound when lhs < rhs beyond the quadrature error.
PointwiseReport verify_compact_support_pointwise(const geo::NestedPair &pair,
                                          const std::vector<geo::Point> &grid,
                                          double tol = 1e-10);

// ---------------------------------------------------------------------------
// Radial potential with the barrier test function

// r^{-(n-1)} lim_{eps->0} int_0^1 min(r,s)^{n-1}/(eps^2+(r-s)^2) (1 - h(r)/h(s)) ds
// through the eps sequence of `policy` and limit_extrapolate.
double radial_potential_lhs(double r, const TestFunctionH &h, int n,
                            const quad::LimitPolicy &policy = {});
// The same limit as a principal value.
double radial_potential_lhs_pv(double r, const TestFunctionH &h, int n);

// PV int_{1/mu}^inf (1 - u^-omega)/(u-1)^2 du. The eps^2 u^2 regularized
// limit is evaluated as a cross-check; NonConvergence if they differ by more
// than 1e-6.
double limit_A(double mu, double omega, const quad::LimitPolicy &policy = {});
double limit_A_pv(double mu, double omega);
double limit_A_regularized(double mu, double omega, const quad::LimitPolicy &policy = {});
double limit_B(double mu, double omega, double kappa = kKappa);

// lim int_{1/mu}^inf (phi(mu u) - phi(mu)) / ((eps^2 u^2 + (u-1)^2) phi(mu u)) du
// with phi(z) = kappa - z^-omega, assembled from A and B.
double limit_integral(double mu, double omega, double kappa = kKappa,
                  const quad::LimitPolicy &policy = {});
// Direct principal value of the same integral.
double limit_integral_direct(double mu, double omega, double kappa = kKappa);
// mu * limit_integral(mu): the right side of the radial potential bound.
double potential_lower_bound(double r, double omega, double kappa = kKappa,
                  const quad::LimitPolicy &policy = {});

// (r, L(r)) with L = 2 r^{n-1} radial_potential_lhs.
std::vector<std::pair<double, double>> potential_profile(const TestFunctionH &h, int n,
                                                         const std::vector<double> &radii,
                                                         const quad::LimitPolicy &policy = {});

// ---------------------------------------------------------------------------
// Constants

// int_0^inf (t^-omega - 1)/(t+1)^2 dt, |omega| < 1.
double psi_beta(double omega);
double psi_beta_closed(double omega); // pi omega / sin(pi omega) - 1

// int_0^{1/4} omega^2 mu^-omega d omega by quadrature.
double omega_average(double mu);
double omega_average_closed(double mu);

struct ScalarConstants {
  double c7 = 0.0, c8 = 0.0, c9 = 0.0, c10 = 0.0;
  double c8_closed = 0.0, c9_closed = 0.0, c10_closed = 0.0, c10_quadrature = 0.0;
  double psi_quarter = 0.0; // psi_beta(1/4)
};
ScalarConstants scalar_constants(double kappa = kKappa);

struct ConstantChain {
  int n = 2;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, kappa_gap = 0.0; // zero unless nested
  double c4 = 0.0, c5 = 0.0, c6 = 0.0, c11 = 0.0;
  double c7 = 0.0, c8 = 0.0, c9 = 0.0, c10 = 0.0;
  double c12 = 1.0, c12_raw = 1.0, c13 = 1.0, c14 = 0.0, c14_presafety = 0.0;
  std::vector<std::pair<std::string, std::string>> provenance;
};

inline constexpr double kC13Safety = 1.05;
// Smallest c with 1 + (L + ln c12)^3 <= c (1 + L^3) for L = -ln rho on a
// grid of rho in [1e-8, 1), times kC13Safety.
double c13_for(double c12);

ConstantChain chain_constants(int n);
ConstantChain chain_constants(const geo::Domain &d, std::size_t jacobian_samples = 20000,
                              std::uint64_t seed = 1);
ConstantChain chain_constants(const geo::NestedPair &pair);

// c4 and c14 from closed forms only (Gamma-function Wallis integrals and
// the closed forms of c8, c9, c10).
std::pair<double, double> chain_closed_form(int n, double c12);

} // namespace kato::ly
