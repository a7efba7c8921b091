#include "kato/energy.hpp"

#include "kato/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kato::energy {

namespace {
constexpr double kPi = std::numbers::pi;

double checked_wallis(int m) {
  const double closed = quad::wallis(m);
  const double q = quad::wallis_quadrature(m).value;
  if (std::abs(q - closed) > 1e-10)
    throw Error(ErrorKind::NonConvergence,
                "Wallis quadrature disagrees with the recurrence at m = " + std::to_string(m));
  return closed;
}

std::vector<double> inside(const std::vector<double> &bps, double lo, double hi) {
  std::vector<double> out;
  for (double b : bps)
    if (b > lo && b < hi) out.push_back(b);
  return out;
}

// rho * w(rho) written in L = -ln rho.
double rho_weight(kern::WeightKind kind, double L) {
  switch (kind) {
  case kern::WeightKind::Hardy: return std::exp(L);
  case kern::WeightKind::Kato: return 1.0;
  case kern::WeightKind::LogKato: return 1.0 / (1.0 + std::abs(L * L * L));
  }
  return 0.0;
}

// int_a^inf dl / (1 + l^3), a > 1.
double log_kato_tail(double a) {
  return std::atan(std::sqrt(3.0) / (2.0 * a - 1.0)) / std::sqrt(3.0) -
         std::log((a + 1.0) * (a + 1.0) / (a * a - a + 1.0)) / 6.0;
}

// Boundary layer in L = -ln(distance): doubling panels from L0 and a
// divergence test on their growth.
struct LayerResult {
  quad::QuadratureResult value;
  double last_density = 0.0;
  double end = 0.0;
};

LayerResult boundary_layer(const quad::Fn1 &q, double L0, int count, double tol, double rel,
                           const std::vector<double> &cuts) {
  LayerResult out;
  std::vector<double> panels;
  double lo = L0;
  double len = 1.0;
  for (int k = 0; k < count; ++k) {
    const std::vector<double> inner = inside(cuts, lo, lo + len);
    const quad::QuadratureResult p = quad::integrate_adaptive(q, lo, lo + len, tol, rel, inner);
    panels.push_back(p.value);
    out.value += p;
    lo += len;
    len *= 2.0;
  }
  const std::size_t m = panels.size();
  if (panels[m - 3] > 0.0 && panels[m - 2] >= panels[m - 3] && panels[m - 1] >= panels[m - 2])
    throw Error(ErrorKind::DivergentNorm, "weighted_norm: boundary layer grows without bound");
  out.end = lo;
  out.last_density = q(lo);
  return out;
}

double radial_norm_integrand(const fn::RadialProfile &f, int n, double r, double rho,
                             kern::WeightKind kind) {
  const double v = f(r);
  if (v == 0.0) return 0.0;
  return std::pow(r, n - 1) * v * v * kern::weight(kind, rho);
}

quad::QuadratureResult radial_ball_norm(const fn::RadialProfile &f, int n, double R,
                                        kern::WeightKind kind, const NormOptions &o) {
  const double area = quad::sphere_area(n);
  const double end = f.support_end();
  const std::vector<double> bps = f.breakpoints();
  quad::QuadratureResult res;
  if (end < R * (1.0 - 1e-12)) {
    const std::vector<double> cuts = inside(bps, 0.0, end);
    res = quad::integrate_adaptive(
        [&](double r) { return radial_norm_integrand(f, n, r, R - r, kind); }, 0.0, end,
        o.tol / area, o.rel_tol, cuts);
  } else {
    double split = 0.5 * R;
    for (double b : bps)
      if (b < R) split = std::max(split, b);
    const std::vector<double> cuts = inside(bps, 0.0, split);
    res = quad::integrate_adaptive(
        [&](double r) { return radial_norm_integrand(f, n, r, R - r, kind); }, 0.0, split,
        o.tol / area, o.rel_tol, cuts);
    auto q = [&](double L) {
      const double rho = std::exp(-L);
      const double r = R - rho;
      const double v = f(r);
      if (v == 0.0) return 0.0;
      return std::pow(r, n - 1) * v * v * rho_weight(kind, L);
    };
    const double L0 = -std::log(R - split);
    const LayerResult layer = boundary_layer(q, L0, 5, o.tol / area, o.rel_tol, {});
    res += layer.value;
    res += quad::integrate_semi_infinite(q, layer.end, o.tol / area, o.rel_tol);
  }
  res.value *= area;
  res.error_estimate *= area;
  return res;
}

// Reference-ball directions with weights summing to |S^{n-1}|.
struct Direction {
  std::vector<double> theta;
  double weight;
};

std::vector<Direction> sphere_rule(int n, int nodes) {
  std::vector<Direction> out;
  if (n == 2) {
    const int m = std::max(nodes, 4);
    for (int k = 0; k < m; ++k) {
      const double a = 2.0 * kPi * k / m;
      out.push_back({{std::cos(a), std::sin(a)}, 2.0 * kPi / m});
    }
  } else if (n == 3) {
    const int mb = std::max(nodes / 2, 8);
    const int mu = std::max(nodes / 8, 4);
    for (const auto &[z, wz] : quad::gauss_legendre(mu)) {
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      for (int k = 0; k < mb; ++k) {
        const double b = 2.0 * kPi * (k + 0.5) / mb;
        out.push_back({{s * std::cos(b), s * std::sin(b), z}, wz * 2.0 * kPi / mb});
      }
    }
  } else {
    throw Error(ErrorKind::InvalidArgument, "sphere_rule: n must be 2 or 3");
  }
  return out;
}

// Parameters t in (0, 1) where |phi(t theta)| crosses one of `radii`.
std::vector<double> ray_crossings(const geo::Domain &d, const std::vector<double> &theta,
                                 const std::vector<double> &radii) {
  std::vector<double> out;
  if (radii.empty()) return out;
  const int n = d.dim();
  std::vector<double> u(n);
  auto norm_at = [&](double t) {
    for (int i = 0; i < n; ++i) u[i] = t * theta[i];
    const geo::Point x = d.map(u);
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return std::sqrt(r2);
  };
  constexpr int kScan = 64;
  std::vector<double> grid(kScan + 1);
  for (int i = 0; i <= kScan; ++i) grid[i] = norm_at(static_cast<double>(i) / kScan);
  for (double b : radii) {
    for (int i = 0; i < kScan; ++i) {
      double lo = static_cast<double>(i) / kScan, hi = static_cast<double>(i + 1) / kScan;
      double flo = grid[i] - b, fhi = grid[i + 1] - b;
      if (flo == 0.0 || (flo < 0.0) == (fhi < 0.0)) continue;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = norm_at(mid) - b;
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      out.push_back(0.5 * (lo + hi));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

quad::QuadratureResult ray_norm(const fn::FieldFunction &f, const geo::Domain &d,
                                kern::WeightKind kind, const std::vector<double> &theta,
                                const std::vector<double> &radii, double tol, double rel) {
  const int n = d.dim();
  std::vector<double> u(n);
  auto at = [&](double t) {
    for (int i = 0; i < n; ++i) u[i] = t * theta[i];
    const geo::Point x = d.map(u);
    const double v = f(x);
    if (v == 0.0) return std::pair<double, double>{0.0, 0.0};
    return std::pair<double, double>{v * v * d.jacobian_det(u) * std::pow(t, n - 1),
                                     d.distance_to_boundary(x)};
  };
  const std::vector<double> kinks = ray_crossings(d, theta, radii);
  std::vector<double> lcuts;
  for (double t : kinks) lcuts.push_back(-std::log1p(-t));
  quad::QuadratureResult total = quad::integrate_adaptive(
      [&](double t) {
        const auto [a, rho] = at(t);
        return a == 0.0 ? 0.0 : a * kern::weight(kind, rho);
      },
      0.0, 0.5, tol, rel, inside(kinks, 0.0, 0.5));
  auto q = [&](double L) {
    const double delta = std::exp(-L);
    const auto [a, rho] = at(1.0 - delta);
    if (a == 0.0) return 0.0;
    if (!(rho > 0.0)) throw Error(ErrorKind::NonPositiveDistance, "ray_norm: point on boundary");
    return a * kern::weight(kind, rho) * delta;
  };
  // Four panels reach 1 - t ~ 1e-7, where rho is still resolved to ~1e-9.
  const LayerResult layer = boundary_layer(q, std::log(2.0), 4, tol, rel, lcuts);
  total += layer.value;
  if (layer.last_density != 0.0) {
    if (kind == kern::WeightKind::LogKato) {
      // q ~ A / (1 + ell^3) with ell = -ln rho, exact up to O(1 - t).
      const double delta = std::exp(-layer.end);
      const double ell = -std::log(at(1.0 - delta).second);
      const double tail = layer.last_density * (1.0 + ell * ell * ell) * log_kato_tail(ell);
      total.value += tail;
      total.error_estimate += std::abs(tail) * 1e3 * delta;
    } else {
      total.error_estimate += std::abs(layer.last_density);
    }
  }
  return total;
}

quad::QuadratureResult polar_norm(const fn::FieldFunction &f, const geo::Domain &d,
                                  kern::WeightKind kind, const NormOptions &o) {
  const std::vector<double> radii = f.kink_radii();
  auto run = [&](int nodes) {
    quad::QuadratureResult total;
    for (const Direction &dir : sphere_rule(d.dim(), nodes)) {
      const quad::QuadratureResult r = ray_norm(f, d, kind, dir.theta, radii, o.tol, o.rel_tol);
      total.value += dir.weight * r.value;
      total.error_estimate += dir.weight * r.error_estimate;
      total.evaluations += r.evaluations;
    }
    return total;
  };
  quad::QuadratureResult res = run(o.angular_nodes);
  const quad::QuadratureResult coarse = run(o.angular_nodes / 2);
  res.error_estimate += std::abs(res.value - coarse.value);
  res.evaluations += coarse.evaluations;
  return res;
}

quad::QuadratureResult mc_norm(const fn::FieldFunction &f, const geo::Domain &d,
                               kern::WeightKind kind, const quad::MCConfig &cfg) {
  return quad::mc_ball(
      [&](std::span<const double> u) {
        const geo::Point x = d.map(u);
        const double v = f(x);
        if (v == 0.0) return 0.0;
        const double rho = d.distance_to_boundary(x);
        if (!(rho > 0.0)) return 0.0;
        return v * v * kern::weight(kind, rho) * d.jacobian_det(u);
      },
      d.dim(), cfg);
}

bool centred_ball(const geo::Domain &d, double *radius) {
  if (!d.is_ball()) return false;
  const geo::Ball &b = std::get<geo::Ball>(d.kind());
  for (double c : b.center)
    if (c != 0.0) return false;
  *radius = b.radius;
  return true;
}
} // namespace

DimensionalConstants dimensional_constants(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "dimensional_constants: n must be >= 2");
  DimensionalConstants c;
  c.n = n;
  if (n == 2) {
    c.c6 = kPi;
    c.c11 = 1.0;
  } else {
    c.c6 = checked_wallis(n - 2);
    for (int j = 2; j <= n - 2; ++j) {
      const double w = checked_wallis(n - 1 - j);
      c.c6 *= w * w;
    }
    c.c11 = 1.0;
    for (int j = 1; j <= n - 2; ++j) c.c11 *= checked_wallis(n - 1 - j);
  }
  c.c5 = std::pow(2.0, 2 * n - 3) * std::pow(kPi, 2 - n) * c.c6 / (n - 1);
  c.angular = quad::sphere_area(n) * quad::sphere_area(n - 1);
  return c;
}

quad::QuadratureResult energy_radial_exact(const fn::RadialProfile &f, int n, double tol,
                                           double rel_tol) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "energy_radial_exact: n must be >= 2");
  if (f.is_constant()) return {};
  const double angular = quad::sphere_area(n) * quad::sphere_area(n - 1);
  const double ex = -0.5 * (n + 1);
  const std::vector<double> bps = f.breakpoints();
  quad::QuadratureResult res = quad::integrate_diagonal_double(
      quad::DiagonalFn([&](double r, double s, double t) {
        const double d = f.increment(r, t);
        if (d == 0.0) return 0.0;
        const double rs = r * s;
        const double k = std::abs(t) / (2.0 * std::sqrt(rs));
        return d * d * std::pow(rs, n - 1) * std::pow(4.0 * rs, ex) * kern::euler_J_value(k, n);
      }),
      tol / angular, 1e-7, bps, rel_tol);
  res.value *= angular;
  res.error_estimate *= angular;
  return res;
}

quad::QuadratureResult radial_reduced_integral(const fn::RadialProfile &f, int n, double tol) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "radial_reduced_integral: n must be >= 2");
  if (f.is_constant()) return {};
  const std::vector<double> bps = f.breakpoints();
  return quad::integrate_diagonal_double(
      quad::DiagonalFn([&](double r, double s, double t) {
        const double d = f.increment(r, t);
        if (d == 0.0) return 0.0;
        return d * d / (t * t) * std::pow(r * s / (r + s), n - 1);
      }),
      tol, 1e-7, bps, 1e-10);
}

double normalized_energy(double E, int n) {
  const DimensionalConstants c = dimensional_constants(n);
  return E * c.c6 / c.angular;
}

quad::QuadratureResult energy_general_mc(const fn::FieldFunction &f, int n,
                                         const quad::MCConfig &cfg) {
  return energy_general_mc(f, geo::Domain::unit_ball(n), cfg);
}

quad::QuadratureResult energy_general_mc(const fn::FieldFunction &f, const geo::Domain &d,
                                         const quad::MCConfig &cfg) {
  const int n = d.dim();
  if (f.is_identically_zero()) return {};
  if (auto p = f.as_radial(); p && p->is_constant()) return {};
  const bool identity = d.is_unit_ball();
  return quad::mc_double_ball(
      [&](std::span<const double> u, std::span<const double> v) {
        if (identity) {
          const double diff = f(u) - f(v);
          if (diff == 0.0) return 0.0;
          return diff * diff * kern::nonlocal_kernel(u, v);
        }
        const geo::Point x = d.map(u);
        const geo::Point y = d.map(v);
        const double diff = f(x) - f(y);
        if (diff == 0.0) return 0.0;
        return diff * diff * kern::nonlocal_kernel(x, y) * d.jacobian_det(u) * d.jacobian_det(v);
      },
      n, cfg, quad::PairSampler::DiagonalPolar);
}

quad::QuadratureResult weighted_norm(const fn::FieldFunction &f, const geo::Domain &d,
                                     kern::WeightKind kind, const NormOptions &opts) {
  if (f.is_identically_zero()) return {};
  double R = 1.0;
  if (!opts.force_mc) {
    if (auto p = f.as_radial(); p && centred_ball(d, &R))
      return radial_ball_norm(*p, d.dim(), R, kind, opts);
    if (d.dim() == 2 || d.dim() == 3) return polar_norm(f, d, kind, opts);
  }
  return mc_norm(f, d, kind, opts.mc);
}

std::vector<double> symmetrization_radii() {
  std::vector<double> r(kSymmetrizationGrid);
  for (int j = 0; j < kSymmetrizationGrid; ++j)
    r[j] = 0.5 * (1.0 - std::cos(kPi * j / (kSymmetrizationGrid - 1)));
  r.front() = 0.0;
  r.back() = 1.0;
  return r;
}

fn::RadialProfile symmetrize(const fn::FieldFunction &f, int n, int sphere_samples) {
  const std::vector<double> radii = symmetrization_radii();
  std::vector<double> psi(radii.size(), 0.0);
  if (f.is_identically_zero()) return fn::RadialProfile::spline(radii, psi);
  if (auto p = f.as_radial()) {
    for (std::size_t j = 0; j < radii.size(); ++j) psi[j] = std::abs((*p)(radii[j]));
    return fn::RadialProfile::spline(radii, psi);
  }
  std::vector<Direction> dirs;
  if (n == 2) {
    dirs = sphere_rule(2, sphere_samples);
  } else if (n == 3) {
    const int mu = std::max(4, static_cast<int>(std::sqrt(sphere_samples / 2.0)));
    dirs = sphere_rule(3, 8 * mu);
  } else {
    quad::Rng rng(quad::shard_seed(0x5eed, static_cast<std::uint64_t>(n)));
    const double w = quad::sphere_area(n) / sphere_samples;
    for (int k = 0; k < sphere_samples; ++k) {
      Direction d{std::vector<double>(n), w};
      rng.unit_vector(d.theta);
      dirs.push_back(std::move(d));
    }
  }
  double wsum = 0.0;
  for (const Direction &d : dirs) wsum += d.weight;
  std::vector<double> x(n);
  for (std::size_t j = 0; j < radii.size(); ++j) {
    double acc = 0.0;
    for (const Direction &d : dirs) {
      for (int i = 0; i < n; ++i) x[i] = radii[j] * d.theta[i];
      const double v = f(x);
      acc += d.weight * v * v;
    }
    psi[j] = std::sqrt(acc / wsum);
  }
  return fn::RadialProfile::spline(radii, psi);
}

} // namespace kato::energy
