#include "kato/liebyau.hpp"

#include "kato/energy.hpp"
#include "kato/error.hpp"
#include "kato/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace kato::ly {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string &msg) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, msg);
}

void require_mu_omega(double mu, double omega) {
  require(mu > 1.0 && std::isfinite(mu), "mu must be finite and > 1");
  require(omega > 0.0 && omega < 0.25, "omega must lie in (0, 1/4)");
}

// (u^-omega - 1) / (u - 1) at u = 1 + t.
double power_quotient(double omega, double t) {
  if (t == 0.0) return -omega;
  return std::expm1(-omega * std::log1p(t)) / t;
}

} // namespace

// ---------------------------------------------------------------------------
// TestFunctionH

TestFunctionH TestFunctionH::barrier(double omega, double kappa) {
  require(omega > 0.0 && omega < 0.25, "barrier test function: omega must lie in (0, 1/4)");
  require(kappa > 1.0 && std::isfinite(kappa), "barrier test function: kappa must exceed 1");
  TestFunctionH h;
  h.family_ = Family::Barrier;
  h.omega_ = omega;
  h.kappa_ = kappa;
  return h;
}

TestFunctionH TestFunctionH::step(double a, double b, double eps) {
  require(a < b, "step test function: need a < b");
  require(eps > 0.0 && eps <= 1.0, "step test function: eps must lie in (0, 1]");
  TestFunctionH h;
  h.family_ = Family::Step;
  h.a_ = a;
  h.b_ = b;
  h.eps_ = eps;
  return h;
}

TestFunctionH TestFunctionH::tabulated(std::vector<double> x, std::vector<double> v) {
  require(!x.empty() && x.size() == v.size(), "tabulated test function: need matching nodes");
  for (std::size_t i = 1; i < x.size(); ++i)
    require(x[i] > x[i - 1], "tabulated test function: nodes must increase");
  for (double y : v) require(y > 0.0 && std::isfinite(y), "tabulated test function: values must be positive");
  TestFunctionH h;
  h.family_ = Family::Tabulated;
  h.x_ = std::move(x);
  h.v_ = std::move(v);
  return h;
}

double TestFunctionH::operator()(double r) const {
  switch (family_) {
  case Family::Barrier:
    return r >= 1.0 ? kappa_ : kappa_ - std::pow(1.0 - r, omega_);
  case Family::Step:
    return (r >= a_ && r <= b_) ? 1.0 : 1.0 / eps_;
  case Family::Tabulated: {
    if (r <= x_.front()) return v_.front();
    if (r >= x_.back()) return v_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), r);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin());
    const double w = (r - x_[i - 1]) / (x_[i] - x_[i - 1]);
    return (1.0 - w) * v_[i - 1] + w * v_[i];
  }
  }
  return 0.0;
}

double TestFunctionH::relative_drop(double r, double t) const {
  if (family_ == Family::Barrier) {
    const double s = r + t;
    const double hs = (*this)(s);
    if (r >= 1.0) return 1.0 - kappa_ / hs;
    const double q = t / (1.0 - r);
    const double rel = q >= 1.0 ? -1.0 : std::expm1(omega_ * std::log1p(-q));
    return -std::pow(1.0 - r, omega_) * rel / hs;
  }
  return 1.0 - (*this)(r) / (*this)(r + t);
}

double TestFunctionH::bound_M() const {
  double lo = 0.0, hi = 0.0;
  switch (family_) {
  case Family::Barrier:
    lo = kappa_ - 1.0;
    hi = kappa_;
    break;
  case Family::Step:
    lo = 1.0;
    hi = 1.0 / eps_;
    break;
  case Family::Tabulated:
    lo = *std::min_element(v_.begin(), v_.end());
    hi = *std::max_element(v_.begin(), v_.end());
    break;
  }
  return 0.5 * std::min(lo, 1.0 / hi);
}

bool TestFunctionH::is_constant() const {
  switch (family_) {
  case Family::Barrier:
    return false;
  case Family::Step:
    return eps_ == 1.0;
  case Family::Tabulated:
    return std::all_of(v_.begin(), v_.end(), [&](double y) { return y == v_.front(); });
  }
  return false;
}

std::vector<double> TestFunctionH::breakpoints() const {
  switch (family_) {
  case Family::Barrier:
    return {};
  case Family::Step:
    return {a_, b_};
  case Family::Tabulated:
    return x_;
  }
  return {};
}

// ---------------------------------------------------------------------------
// General potential

Kernel1D radial_kernel(int n, double eps) {
  require(n >= 1, "radial_kernel: n must be >= 1");
  require(eps > 0.0, "radial_kernel: eps must be positive");
  return [n, eps](double r, double s) {
    const double d = r - s;
    return std::pow(std::min(r, s), n - 1) / (eps * eps + d * d);
  };
}

quad::QuadratureResult lieb_yau_potential(const Kernel1D &K, const TestFunctionH &h, double x,
                                          double lo, double hi, double tol,
                                          std::span<const double> breakpoints) {
  require(lo < hi, "lieb_yau_potential: need lo < hi");
  require(tol > 0.0, "lieb_yau_potential: tolerance must be positive");
  if (h.is_constant()) return {};
  std::vector<double> cuts(breakpoints.begin(), breakpoints.end());
  for (double b : h.breakpoints()) cuts.push_back(b);
  cuts.push_back(x);
  quad::QuadratureResult r = quad::integrate_adaptive(
      [&](double y) { return K(x, y) * h.relative_drop(x, y - x); }, lo, hi, 0.5 * tol, 0.0,
      cuts);
  r.value *= 2.0;
  r.error_estimate *= 2.0;
  return r;
}

DiscreteLiebYau discrete_lieb_yau(const Eigen::MatrixXd &K, std::span<const double> h,
                                  std::span<const double> f, std::span<const double> w) {
  const auto m = static_cast<std::size_t>(K.rows());
  require(K.cols() == K.rows() && h.size() == m && f.size() == m && w.size() == m,
          "discrete_lieb_yau: size mismatch");
  DiscreteLiebYau out;
  for (std::size_t i = 0; i < m; ++i) {
    double pot = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double k = K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      const double d = f[i] - f[j];
      out.lhs += w[i] * w[j] * k * d * d;
      pot += w[j] * k * (1.0 - h[i] / h[j]);
    }
    out.rhs += 2.0 * w[i] * f[i] * f[i] * pot;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Compact support

double inner_depth(const geo::Domain &inner) { return inner.inradius(); }

double half_ball_constant(int n, double R, double tol) {
  require(n >= 2, "half_ball_constant: n must be >= 2");
  require(R >= 0.0 && std::isfinite(R), "half_ball_constant: radius must be finite and >= 0");
  if (R == 0.0) return 0.0;
  // Rays from the point -e1 cross the plane z1 = 0 at l = 1/cos(a) and leave
  // the sphere |z| = R at the far root of l^2 - 2 l cos(a) + 1 - R^2 = 0; the
  // two meet at tan(a) = R.
  auto radial = [R](double a) {
    const double c = std::cos(a);
    const double far = c + std::sqrt(std::max(0.0, c * c + R * R - 1.0));
    return std::max(0.0, c - 1.0 / far);
  };
  const double a_max = std::atan(R);
  if (n == 2) {
    return quad::integrate_1d(radial, -a_max, a_max, tol).value;
  }
  const double s_area = quad::sphere_area(n - 1);
  return quad::integrate_1d(
             [&](double a) { return s_area * std::pow(std::sin(a), n - 2) * radial(a); }, 0.0,
             a_max, tol)
      .value;
}

quad::QuadratureResult half_ball_constant_mc(int n, double R, const quad::MCConfig &cfg) {
  require(n >= 2, "half_ball_constant_mc: n must be >= 2");
  require(R > 0.0, "half_ball_constant_mc: radius must be positive");
  const double scale = std::pow(R, n);
  return quad::mc_ball(
      [&](std::span<const double> u) {
        if (u[0] <= 0.0) return 0.0;
        double d2 = (R * u[0] + 1.0) * (R * u[0] + 1.0);
        for (std::size_t i = 1; i < u.size(); ++i) d2 += R * u[i] * R * u[i];
        return scale * std::pow(d2, -0.5 * (n + 1));
      },
      n, cfg);
}

double compact_support_c2(const geo::NestedPair &pair, double tol) {
  if (!(pair.gap > 0.0)) throw Error(ErrorKind::EmptyGap, "compact_support_c2: kappa must be positive");
  return half_ball_constant(pair.inner.dim(), pair.gap / inner_depth(pair.inner), tol);
}

quad::QuadratureResult exterior_potential(const geo::NestedPair &pair,
                                          std::span<const double> x, double tol) {
  const int n = pair.inner.dim();
  require(static_cast<int>(x.size()) == n, "exterior_potential: dimension mismatch");
  auto along = [&](const geo::Point &dir) {
    const double a = pair.inner.ray_exit(x, dir);
    const double b = pair.outer.ray_exit(x, dir);
    return std::max(0.0, 1.0 / a - 1.0 / b);
  };
  if (n == 2) {
    std::vector<double> cuts{0.5 * kPi, kPi, 1.5 * kPi};
    return quad::integrate_adaptive(
        [&](double t) { return along({std::cos(t), std::sin(t)}); }, 0.0, 2.0 * kPi, tol, 0.0,
        cuts);
  }
  if (n == 3) {
    auto product = [&](int m) {
      const auto gl = quad::gauss_legendre(m);
      const int az = 2 * m;
      double sum = 0.0;
      for (const auto &[z, wz] : gl) {
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        for (int k = 0; k < az; ++k) {
          const double p = 2.0 * kPi * (k + 0.5) / az;
          sum += wz * (2.0 * kPi / az) * along({s * std::cos(p), s * std::sin(p), z});
        }
      }
      return sum;
    };
    const double fine = product(96);
    const double coarse = product(48);
    quad::QuadratureResult r;
    r.value = fine;
    r.error_estimate = std::abs(fine - coarse);
    r.evaluations = 2 * 96 * 96 + 2 * 48 * 48;
    return r;
  }
  throw Error(ErrorKind::InvalidArgument, "exterior_potential supports n = 2 and n = 3");
}

PointwiseReport verify_compact_support_pointwise(const geo::NestedPair &pair,
                                          const std::vector<geo::Point> &grid, double tol) {
  if (grid.empty()) throw Error(ErrorKind::InvalidGrid, "verify_compact_support_pointwise: empty grid");
  PointwiseReport out;
  out.c2 = compact_support_c2(pair);
  out.min_slack = kInf;
  out.min_ratio = kInf;
  for (const geo::Point &x : grid) {
    if (static_cast<int>(x.size()) != pair.inner.dim() || !pair.inner.contains(x))
      throw Error(ErrorKind::InvalidGrid, "grid point outside the inner domain");
    PointwiseRecord rec;
    rec.x = x;
    rec.rho = pair.inner.distance_to_boundary(x);
    if (!(rec.rho > 0.0))
      throw Error(ErrorKind::InvalidGrid, "grid point on the inner boundary");
    const quad::QuadratureResult q = exterior_potential(pair, x, tol);
    rec.lhs = q.value;
    rec.rhs = out.c2 / rec.rho;
    if (rec.lhs + q.error_estimate < rec.rhs)
      throw Error(ErrorKind::ViolationFound,
                  "pointwise bound fails at rho = " + format_number(rec.rho) + ": " +
                      format_number(rec.lhs) + " < " + format_number(rec.rhs));
    out.min_slack = std::min(out.min_slack, rec.lhs - rec.rhs);
    out.min_ratio = std::min(out.min_ratio, rec.lhs / rec.rhs);
    out.records.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Radial potential

namespace {

double radial_integral(double r, const TestFunctionH &h, int n, double eps) {
  auto f = [&](double t) {
    const double m = t < 0.0 ? std::pow((r + t) / r, n - 1) : 1.0;
    return m * h.relative_drop(r, t) / (eps * eps + t * t);
  };
  return quad::principal_value(f, r, 0.0, 1.0, 1e-13, 1e-13).value;
}

} // namespace

double radial_potential_lhs(double r, const TestFunctionH &h, int n,
                            const quad::LimitPolicy &policy) {
  require(r > 0.0 && r < 1.0, "radial_potential_lhs: r must lie in (0, 1)");
  require(n >= 2, "radial_potential_lhs: n must be >= 2");
  if (h.is_constant()) return 0.0;
  return quad::limit_of([&](double eps) { return radial_integral(r, h, n, eps); }, policy);
}

double radial_potential_lhs_pv(double r, const TestFunctionH &h, int n) {
  require(r > 0.0 && r < 1.0, "radial_potential_lhs_pv: r must lie in (0, 1)");
  require(n >= 2, "radial_potential_lhs_pv: n must be >= 2");
  if (h.is_constant()) return 0.0;
  return radial_integral(r, h, n, 0.0);
}

double limit_A_pv(double mu, double omega) {
  require_mu_omega(mu, omega);
  return quad::principal_value(
             [&](double t) { return -power_quotient(omega, t) / t; }, 1.0, 1.0 / mu, kInf,
             1e-13, 1e-13)
      .value;
}

double limit_A_regularized(double mu, double omega, const quad::LimitPolicy &policy) {
  require_mu_omega(mu, omega);
  return quad::limit_of(
      [&](double eps) {
        return quad::principal_value(
                   [&](double t) {
                     const double u = 1.0 + t;
                     return -power_quotient(omega, t) * t / (eps * eps * u * u + t * t);
                   },
                   1.0, 1.0 / mu, kInf, 1e-13, 1e-13)
            .value;
      },
      policy);
}

double limit_A(double mu, double omega, const quad::LimitPolicy &policy) {
  const double pv = limit_A_pv(mu, omega);
  const double reg = limit_A_regularized(mu, omega, policy);
  if (std::abs(pv - reg) > 1e-6)
    throw Error(ErrorKind::NonConvergence, "A(mu): principal value " + format_number(pv) +
                                               " and regularized limit " + format_number(reg) +
                                               " disagree");
  return pv;
}

double limit_B(double mu, double omega, double kappa) {
  require_mu_omega(mu, omega);
  require(kappa > 1.0, "limit_B: kappa must exceed 1");
  const double mw = std::pow(mu, -omega);
  auto q = [&](double t) {
    const double p = power_quotient(omega, t);
    return p * p / (kappa - mw * std::exp(-omega * std::log1p(t)));
  };
  return quad::integrate_1d(q, 1.0 / mu - 1.0, 0.0, 1e-14, 1e-13).value +
         quad::integrate_semi_infinite(q, 0.0, 1e-14, 1e-13).value;
}

double limit_integral(double mu, double omega, double kappa, const quad::LimitPolicy &policy) {
  const double mw = std::pow(mu, -omega);
  const double A = limit_A(mu, omega, policy);
  const double B = limit_B(mu, omega, kappa);
  return (mw * A - mw * mw * B) / (kappa - mw);
}

double limit_integral_direct(double mu, double omega, double kappa) {
  require_mu_omega(mu, omega);
  require(kappa > 1.0, "limit_integral_direct: kappa must exceed 1");
  const double mw = std::pow(mu, -omega);
  return mw * quad::principal_value(
                  [&](double t) {
                    const double uw = std::exp(-omega * std::log1p(t));
                    return -power_quotient(omega, t) / t / (kappa - mw * uw);
                  },
                  1.0, 1.0 / mu, kInf, 1e-13, 1e-13)
                  .value;
}

double potential_lower_bound(double r, double omega, double kappa, const quad::LimitPolicy &policy) {
  require(r > 0.0 && r < 1.0, "potential_lower_bound: r must lie in (0, 1)");
  const double mu = 1.0 / (1.0 - r);
  return mu * limit_integral(mu, omega, kappa, policy);
}

std::vector<std::pair<double, double>> potential_profile(const TestFunctionH &h, int n,
                                                         const std::vector<double> &radii,
                                                         const quad::LimitPolicy &policy) {
  std::vector<std::pair<double, double>> out;
  out.reserve(radii.size());
  for (double r : radii)
    out.emplace_back(r, 2.0 * std::pow(r, n - 1) * radial_potential_lhs(r, h, n, policy));
  return out;
}

// ---------------------------------------------------------------------------
// Constants

double psi_beta(double omega) {
  require(std::abs(omega) < 1.0, "psi_beta: |omega| must be < 1");
  if (omega == 0.0) return 0.0;
  // t -> 1/t folds (1, inf) onto (0, 1): t^-w + t^w - 2 = 4 sinh^2(w ln t / 2).
  return quad::integrate_1d(
             [&](double t) {
               const double s = std::sinh(0.5 * omega * std::log(t));
               return 4.0 * s * s / ((1.0 + t) * (1.0 + t));
             },
             0.0, 1.0, 1e-15, 1e-14)
      .value;
}

double psi_beta_closed(double omega) {
  require(std::abs(omega) < 1.0, "psi_beta_closed: |omega| must be < 1");
  if (omega == 0.0) return 0.0;
  return kPi * omega / std::sin(kPi * omega) - 1.0;
}

double omega_average(double mu) {
  require(mu >= 1.0 && std::isfinite(mu), "omega_average: mu must be >= 1");
  const double l = std::log(mu);
  return quad::integrate_1d([l](double w) { return w * w * std::exp(-w * l); }, 0.0, 0.25,
                            1e-17, 1e-14)
      .value;
}

double omega_average_closed(double mu) {
  require(mu >= 1.0 && std::isfinite(mu), "omega_average_closed: mu must be >= 1");
  const double l = std::log(mu);
  const double x = 0.25 * l;
  if (x < 1.0) {
    // (e^-x / 32) sum_{k>=3} x^{k-3} / k!
    double term = 1.0 / 6.0, sum = 0.0;
    for (int k = 3; k < 60; ++k) {
      sum += term;
      term *= x / (k + 1);
      if (term < 1e-18 * sum) break;
    }
    return std::exp(-x) * sum / 32.0;
  }
  const double delta = (2.0 + 0.5 * l + l * l / 16.0) * std::exp(-x);
  return (2.0 - delta) / (l * l * l);
}

ScalarConstants scalar_constants(double kappa) {
  require(kappa > 1.0, "scalar_constants: kappa must exceed 1");
  ScalarConstants c;
  c.psi_quarter = psi_beta(0.25);
  c.c8 = kPi * kPi / 4.0 - 16.0 * c.psi_quarter;
  c.c8_closed = kPi * kPi / 4.0 - 16.0 * (kPi / (2.0 * std::sqrt(2.0)) - 1.0);
  // u -> 1/u maps (1, inf) onto (0, 1) with the same integrand.
  c.c9 = 2.0 * quad::integrate_1d(
                   [](double u) {
                     const double q = u == 1.0 ? 1.0 : std::log(u) / (u - 1.0);
                     return q * q * (std::sqrt(u) + 1.0 / std::sqrt(u));
                   },
                   0.0, 1.0, 1e-14, 1e-15)
                   .value;
  c.c9_closed = 4.0 * kPi * kPi;
  c.c10_closed = 2.0 - 41.0 / (16.0 * std::exp(0.25));
  c.c10_quadrature = omega_average(std::exp(1.0));
  c.c10 = c.c10_closed;
  c.c7 = (c.c8 - c.c9 / (kappa - 1.0)) / (kappa + 1.0);
  return c;
}

double c13_for(double c12) {
  require(c12 >= 1.0 && std::isfinite(c12), "c13_for: c12 must be >= 1");
  const double lc = std::log(c12);
  // rho in [1e-8, 1) means L = -ln rho in (0, 8 ln 10].
  const double Lmax = 8.0 * std::log(10.0);
  const int m = 20000;
  double best = 1.0;
  for (int i = 0; i <= m; ++i) {
    const double L = Lmax * i / m;
    const double a = L + lc;
    best = std::max(best, (1.0 + a * a * a) / (1.0 + L * L * L));
  }
  return kC13Safety * best;
}

namespace {

void fill_core(ConstantChain &c, int n) {
  const energy::DimensionalConstants dc = energy::dimensional_constants(n);
  const ScalarConstants pc = scalar_constants();
  c.n = n;
  c.c5 = dc.c5;
  c.c6 = dc.c6;
  c.c11 = dc.c11;
  c.c7 = pc.c7;
  c.c8 = pc.c8;
  c.c9 = pc.c9;
  c.c10 = pc.c10;
  c.c4 = 4.0 * c.c5 * c.c7 * c.c10 / (std::ldexp(1.0, n - 2) * c.c11);
  c.provenance = {
      {"c5", "2^(2n-3) pi^(2-n) c6 / (n-1); Wallis integrals by quadrature, checked against the recurrence"},
      {"c6", "angular factor W_{n-2} prod_j W_{n-1-j}^2 (pi for n = 2)"},
      {"c7", "(c8 - c9/(kappa-1)) / (kappa+1), kappa = 100"},
      {"c8", "pi^2/4 - 16 int_0^inf (t^-1/4 - 1)/(t+1)^2 dt by tanh-sinh; closed form pi^2/4 - 16(pi/(2 sqrt 2) - 1) = " +
                 format_number(pc.c8_closed)},
      {"c9", "int_0^inf (ln u)^2 (u^1/2 + u^-1/2)/(u-1)^2 du by tanh-sinh; closed form 4 pi^2"},
      {"c10", "2 - 41/(16 e^1/4); quadrature of int_0^1/4 w^2 e^-w dw = " + format_number(pc.c10_quadrature)},
      {"c11", "prod_j W_{n-1-j} (1 for n = 2)"},
      {"c4", "4 c5 c7 c10 / (2^(n-2) c11)"},
  };
}

void fill_jacobian(ConstantChain &c, double c12, double c12_raw, const std::string &note) {
  c.c12 = c12;
  c.c12_raw = c12_raw;
  c.c13 = c13_for(c12);
  const int e = 4 * c.n + 2;
  c.c14 = std::pow(c12, -e) * c.c4 / c.c13;
  c.c14_presafety = std::pow(c12_raw, -e) * c.c4 / c13_for(c12_raw);
  c.provenance.emplace_back("c12", note);
  c.provenance.emplace_back("c13", "5% above the sup over rho in [1e-8, 1) of (1 + (L + ln c12)^3)/(1 + L^3), L = -ln rho");
  c.provenance.emplace_back("c14", "c12^-(4n+2) c4 / c13");
}

} // namespace

ConstantChain chain_constants(int n) {
  require(n >= 2, "chain_constants: n must be >= 2");
  ConstantChain c;
  fill_core(c, n);
  fill_jacobian(c, 1.0, 1.0, "identity map");
  return c;
}

ConstantChain chain_constants(const geo::Domain &d, std::size_t jacobian_samples,
                              std::uint64_t seed) {
  ConstantChain c;
  fill_core(c, d.dim());
  const geo::JacobianBounds jb = geo::estimate_jacobian_bounds(d, jacobian_samples, seed);
  fill_jacobian(c, jb.c12, jb.raw,
                "5% above the max over " + std::to_string(jb.sample_count) +
                    " sampled points of max(lambda_max, 1/lambda_min) = " + format_number(jb.raw));
  return c;
}

ConstantChain chain_constants(const geo::NestedPair &pair) {
  ConstantChain c;
  fill_core(c, pair.inner.dim());
  fill_jacobian(c, 1.0, 1.0, "identity map");
  c.kappa_gap = pair.gap;
  c.c3 = inner_depth(pair.inner);
  c.c2 = compact_support_c2(pair);
  c.c1 = 2.0 * c.c2;
  c.provenance.emplace_back("kappa", "distance from the inner domain to the outer boundary");
  c.provenance.emplace_back("c3", "sup of the distance to the inner boundary");
  c.provenance.emplace_back("c2", "half-ball integral of radius kappa/c3 reduced to one angle, tanh-sinh");
  c.provenance.emplace_back("c1", "2 c2");
  return c;
}

std::pair<double, double> chain_closed_form(int n, double c12) {
  require(n >= 2, "chain_closed_form: n must be >= 2");
  // W_m = sqrt(pi) Gamma((m+1)/2) / Gamma(m/2 + 1).
  auto W = [](int m) {
    return std::sqrt(kPi) * std::exp(std::lgamma(0.5 * (m + 1)) - std::lgamma(0.5 * m + 1.0));
  };
  double c6 = kPi, c11 = 1.0;
  if (n > 2) {
    c6 = W(n - 2);
    for (int j = 2; j <= n - 2; ++j) c6 *= W(n - 1 - j) * W(n - 1 - j);
    for (int j = 1; j <= n - 2; ++j) c11 *= W(n - 1 - j);
  }
  const double c5 = std::pow(2.0, 2 * n - 3) * std::pow(kPi, 2 - n) * c6 / (n - 1);
  const double c8 = kPi * kPi / 4.0 - 16.0 * (kPi / (2.0 * std::sqrt(2.0)) - 1.0);
  const double c9 = 4.0 * kPi * kPi;
  const double c7 = (c8 - c9 / (kKappa - 1.0)) / (kKappa + 1.0);
  const double c10 = 2.0 - 41.0 / (16.0 * std::exp(0.25));
  const double c4 = 4.0 * c5 * c7 * c10 / (std::pow(2.0, n - 2) * c11);
  const double c14 = std::pow(c12, -(4 * n + 2)) * c4 / c13_for(c12);
  return {c4, c14};
}

} // namespace kato::ly
