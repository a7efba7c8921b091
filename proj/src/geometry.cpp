#include "kato/geometry.hpp"

#include "kato/error.hpp"
#include "kato/format.hpp"
#include "kato/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace kato::geo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Fs> struct Overload : Fs... { using Fs::operator()...; };
template <class... Fs> Overload(Fs...) -> Overload<Fs...>;

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void check_dim(std::span<const double> p, int n) {
  if (static_cast<int>(p.size()) != n)
    throw Error(ErrorKind::InvalidArgument, "point dimension does not match domain");
}

// Distance from an interior point y >= 0 (componentwise) to the boundary of
// the ellipsoid with semi-axes e.
double ellipsoid_distance(const std::vector<double> &e, std::vector<double> y) {
  const double m = *std::min_element(e.begin(), e.end());
  for (std::size_t i = 0; i < e.size(); ++i)
    if (y[i] < 1e-13 * m) y[i] = 0.0;
  auto is_min = [&](std::size_t i) { return e[i] <= m * (1.0 + 1e-14); };

  bool active = false;
  double ymin = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (is_min(i) && y[i] > 0.0) {
      active = true;
      ymin = std::max(ymin, y[i]);
    }

  if (active) {
    // F(t) = sum (e_i y_i / (e_i^2 + t))^2 - 1 is convex and decreasing on
    // (-m^2, inf); Newton from the left of the root is monotone.
    auto F = [&](double t, double &dF) {
      double f = -1.0;
      dF = 0.0;
      for (std::size_t i = 0; i < e.size(); ++i) {
        const double q = e[i] * y[i] / (e[i] * e[i] + t);
        f += q * q;
        dF -= 2.0 * q * q / (e[i] * e[i] + t);
      }
      return f;
    };
    double lo = -m * m + m * ymin, hi = 0.0;
    double t = lo;
    for (int it = 0; it < 200; ++it) {
      double dF;
      const double f = F(t, dF);
      if (f > 0.0) lo = t; else hi = t;
      if (f == 0.0) break;
      double next = t - f / dF;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - t) <= 4e-16 * std::max(std::abs(t), m * m * 1e-300)) {
        t = next;
        break;
      }
      t = next;
    }
    double d2 = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      const double diff = y[i] * t / (e[i] * e[i] + t);
      d2 += diff * diff;
    }
    return std::sqrt(d2);
  }

  std::vector<double> re, ry;
  double sum = 0.0, d2 = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (is_min(i)) continue;
    const double x = e[i] * e[i] * y[i] / (e[i] * e[i] - m * m);
    sum += (x / e[i]) * (x / e[i]);
    d2 += (x - y[i]) * (x - y[i]);
    re.push_back(e[i]);
    ry.push_back(y[i]);
  }
  double best = kInf;
  if (sum < 1.0) best = std::sqrt(d2 + m * m * (1.0 - sum));
  if (re.empty())
    best = std::min(best, m);
  else if (re.size() == 1)
    best = std::min(best, re[0] - ry[0]);
  else
    best = std::min(best, ellipsoid_distance(re, ry));
  return best;
}

double pattern_search(const std::function<double(const Point &)> &f, int n,
                      std::vector<double> &angles, double step) {
  double best = f(sphere_direction(n, angles));
  while (step > 1e-13) {
    bool moved = false;
    for (std::size_t k = 0; k < angles.size(); ++k)
      for (double sgn : {1.0, -1.0}) {
        std::vector<double> trial = angles;
        trial[k] += sgn * step;
        const double v = f(sphere_direction(n, trial));
        if (v < best) {
          best = v;
          angles = trial;
          moved = true;
        }
      }
    if (!moved) step *= 0.5;
  }
  return best;
}

} // namespace

// ---------------------------------------------------------------------------

Point sphere_direction(int n, std::span<const double> angles) {
  if (n == 2) return {std::cos(angles[0]), std::sin(angles[0])};
  if (n == 3) {
    const double s = std::sin(angles[0]);
    return {std::cos(angles[0]), s * std::cos(angles[1]), s * std::sin(angles[1])};
  }
  throw Error(ErrorKind::InvalidArgument, "sphere meshes support n = 2 and n = 3");
}

double minimize_on_sphere(int n, const std::function<double(const Point &)> &f,
                          int resolution, Point *argmin) {
  if (n != 2 && n != 3)
    throw Error(ErrorKind::InvalidArgument, "sphere meshes support n = 2 and n = 3");
  struct Node {
    double value;
    std::vector<double> angles;
  };
  std::vector<Node> nodes;
  double step;
  if (n == 2) {
    step = 2.0 * kPi / resolution;
    for (int j = 0; j < resolution; ++j) {
      std::vector<double> a{j * step};
      nodes.push_back({f(sphere_direction(2, a)), a});
    }
  } else {
    const int rings = std::max(2, resolution / 2);
    step = kPi / rings;
    for (int i = 0; i <= rings; ++i) {
      const double alpha = i * step;
      const int around = (i == 0 || i == rings) ? 1 : resolution;
      for (int j = 0; j < around; ++j) {
        std::vector<double> a{alpha, 2.0 * kPi * j / resolution};
        nodes.push_back({f(sphere_direction(3, a)), a});
      }
    }
  }
  const std::size_t keep = std::min<std::size_t>(4, nodes.size());
  std::partial_sort(nodes.begin(), nodes.begin() + keep, nodes.end(),
                    [](const Node &a, const Node &b) { return a.value < b.value; });
  double best = kInf;
  std::vector<double> best_angles;
  for (std::size_t i = 0; i < keep; ++i) {
    std::vector<double> a = nodes[i].angles;
    // Two passes: coarse around the node, then fine around the result.
    pattern_search(f, n, a, step);
    const double v = pattern_search(f, n, a, 0.25 * step);
    if (v < best) {
      best = v;
      best_angles = a;
    }
  }
  if (argmin) *argmin = sphere_direction(n, best_angles);
  return best;
}

// ---------------------------------------------------------------------------

Domain::Domain(Kind kind) : kind_(std::move(kind)), n_(0) {
  std::visit(
      Overload{
          [&](Ball &b) {
            if (b.n < 2) throw Error(ErrorKind::InvalidArgument, "ball: n must be >= 2");
            if (!(b.radius > 0.0))
              throw Error(ErrorKind::InvalidArgument, "ball: radius must be positive");
            if (b.center.empty()) b.center.assign(b.n, 0.0);
            if (static_cast<int>(b.center.size()) != b.n)
              throw Error(ErrorKind::InvalidArgument, "ball: center has wrong dimension");
            n_ = b.n;
          },
          [&](Ellipsoid &e) {
            if (e.axes.size() < 2)
              throw Error(ErrorKind::InvalidArgument, "ellipsoid: need at least 2 semi-axes");
            for (double a : e.axes)
              if (!(a > 0.0))
                throw Error(ErrorKind::InvalidArgument, "ellipsoid: semi-axes must be positive");
            n_ = static_cast<int>(e.axes.size());
          },
          [&](RadialMap &r) {
            if (r.n < 2) throw Error(ErrorKind::InvalidArgument, "radialmap: n must be >= 2");
            for (int i = 0; i <= 100; ++i)
              if (!(r.g(i / 100.0) > 0.0))
                throw Error(ErrorKind::InvalidArgument,
                            "radialmap: g must be positive on [0,1]");
            n_ = r.n;
          },
      },
      kind_);
}

bool Domain::is_unit_ball() const {
  if (const Ball *b = std::get_if<Ball>(&kind_)) {
    if (b->radius != 1.0) return false;
    return std::all_of(b->center.begin(), b->center.end(),
                       [](double c) { return c == 0.0; });
  }
  return false;
}

bool Domain::contains(std::span<const double> p) const {
  check_dim(p, n_);
  return std::visit(
      Overload{
          [&](const Ball &b) {
            double s = 0.0;
            for (int i = 0; i < n_; ++i) s += (p[i] - b.center[i]) * (p[i] - b.center[i]);
            return s <= b.radius * b.radius;
          },
          [&](const Ellipsoid &e) {
            double s = 0.0;
            for (int i = 0; i < n_; ++i) s += (p[i] / e.axes[i]) * (p[i] / e.axes[i]);
            return s <= 1.0;
          },
          [&](const RadialMap &r) { return norm(p) <= r.g(1.0); },
      },
      kind_);
}

double Domain::distance_to_boundary(std::span<const double> p) const {
  if (!contains(p))
    throw Error(ErrorKind::OutsideDomain, "point lies outside the domain");
  return std::visit(
      Overload{
          [&](const Ball &b) {
            double s = 0.0;
            for (int i = 0; i < n_; ++i) s += (p[i] - b.center[i]) * (p[i] - b.center[i]);
            return b.radius - std::sqrt(s);
          },
          [&](const Ellipsoid &e) {
            std::vector<double> y(p.begin(), p.end());
            for (double &c : y) c = std::abs(c);
            return ellipsoid_distance(e.axes, y);
          },
          [&](const RadialMap &) { return mesh_distance(p); },
      },
      kind_);
}

double Domain::mesh_distance(std::span<const double> p) const {
  const Point q(p.begin(), p.end());
  return minimize_on_sphere(
      n_,
      [&](const Point &theta) {
        const Point z = map(theta);
        double s = 0.0;
        for (int i = 0; i < n_; ++i) s += (q[i] - z[i]) * (q[i] - z[i]);
        return std::sqrt(s);
      },
      n_ == 2 ? 720 : 120);
}

double Domain::ray_exit(std::span<const double> p,
                        std::span<const double> dir) const {
  check_dim(p, n_);
  check_dim(dir, n_);
  auto solve = [](double A, double B, double C) {
    // largest root of A l^2 + 2 B l + C = 0 with C <= 0
    const double disc = std::sqrt(std::max(0.0, B * B - A * C));
    if (B > 0.0) return -C / (B + disc);
    return (-B + disc) / A;
  };
  return std::visit(
      Overload{
          [&](const Ball &b) {
            double B = 0.0, C = -b.radius * b.radius;
            for (int i = 0; i < n_; ++i) {
              const double q = p[i] - b.center[i];
              B += q * dir[i];
              C += q * q;
            }
            return solve(1.0, B, std::min(C, 0.0));
          },
          [&](const Ellipsoid &e) {
            double A = 0.0, B = 0.0, C = -1.0;
            for (int i = 0; i < n_; ++i) {
              const double q = p[i] / e.axes[i], d = dir[i] / e.axes[i];
              A += d * d;
              B += q * d;
              C += q * q;
            }
            return solve(A, B, std::min(C, 0.0));
          },
          [&](const RadialMap &r) {
            const double R = r.g(1.0);
            double B = 0.0, C = -R * R;
            for (int i = 0; i < n_; ++i) {
              B += p[i] * dir[i];
              C += p[i] * p[i];
            }
            return solve(1.0, B, std::min(C, 0.0));
          },
      },
      kind_);
}

Point Domain::map(std::span<const double> u) const {
  check_dim(u, n_);
  Point x(u.begin(), u.end());
  std::visit(Overload{
                 [&](const Ball &b) {
                   for (int i = 0; i < n_; ++i) x[i] = b.center[i] + b.radius * u[i];
                 },
                 [&](const Ellipsoid &e) {
                   for (int i = 0; i < n_; ++i) x[i] = e.axes[i] * u[i];
                 },
                 [&](const RadialMap &r) {
                   const double g = r.g(norm(u));
                   for (double &c : x) c *= g;
                 },
             },
             kind_);
  return x;
}

Eigen::MatrixXd Domain::jacobian(std::span<const double> u) const {
  check_dim(u, n_);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n_, n_);
  std::visit(Overload{
                 [&](const Ball &b) { J.diagonal().setConstant(b.radius); },
                 [&](const Ellipsoid &e) {
                   for (int i = 0; i < n_; ++i) J(i, i) = e.axes[i];
                 },
                 [&](const RadialMap &r) {
                   const double g = r.g(norm(u));
                   J.diagonal().setConstant(g);
                   for (int i = 0; i < n_; ++i)
                     for (int j = 0; j < n_; ++j) J(i, j) += 2.0 * r.a * u[i] * u[j];
                 },
             },
             kind_);
  return J;
}

double Domain::jacobian_det(std::span<const double> u) const {
  check_dim(u, n_);
  return std::visit(
      Overload{
          [&](const Ball &b) { return std::pow(b.radius, n_); },
          [&](const Ellipsoid &e) {
            double d = 1.0;
            for (double a : e.axes) d *= a;
            return d;
          },
          [&](const RadialMap &r) {
            const double t = norm(u);
            const double g = r.g(t);
            return std::pow(g, n_ - 1) * (g + t * r.dg(t));
          },
      },
      kind_);
}

double Domain::inradius() const {
  return std::visit(
      Overload{
          [](const Ball &b) { return b.radius; },
          [](const Ellipsoid &e) { return *std::min_element(e.axes.begin(), e.axes.end()); },
          [](const RadialMap &r) { return r.g(1.0); },
      },
      kind_);
}

double Domain::volume() const {
  const double vn = quad::ball_volume(n_);
  return std::visit(
      Overload{
          [&](const Ball &b) { return vn * std::pow(b.radius, n_); },
          [&](const Ellipsoid &e) {
            double d = vn;
            for (double a : e.axes) d *= a;
            return d;
          },
          [&](const RadialMap &r) { return vn * std::pow(r.g(1.0), n_); },
      },
      kind_);
}

std::string Domain::describe() const {
  return std::visit(
      Overload{
          [&](const Ball &b) {
            std::string s = "ball(n=" + std::to_string(b.n);
            if (b.radius != 1.0) s += ",r=" + format_number(b.radius);
            if (std::any_of(b.center.begin(), b.center.end(), [](double c) { return c != 0.0; }))
              for (int i = 0; i < b.n; ++i)
                s += ",c" + std::to_string(i + 1) + "=" + format_number(b.center[i]);
            return s + ")";
          },
          [&](const Ellipsoid &e) {
            std::string s = "ellipsoid(";
            for (std::size_t i = 0; i < e.axes.size(); ++i) {
              if (i) s += ",";
              s += std::string(1, static_cast<char>('a' + i)) + "=" + format_number(e.axes[i]);
            }
            return s + ")";
          },
          [&](const RadialMap &r) {
            return "radialmap(n=" + std::to_string(r.n) + ",g0=" + format_number(r.g0) +
                   ",a=" + format_number(r.a) + ")";
          },
      },
      kind_);
}

// ---------------------------------------------------------------------------

double nesting_kappa(const Domain &outer, const Domain &inner) {
  if (outer.dim() != inner.dim())
    throw Error(ErrorKind::InvalidArgument, "nested pair: dimension mismatch");
  const int n = outer.dim();
  double kappa;
  const Ball *bo = std::get_if<Ball>(&outer.kind());
  const Ball *bi = std::get_if<Ball>(&inner.kind());
  if (bo && bi) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      s += (bo->center[i] - bi->center[i]) * (bo->center[i] - bi->center[i]);
    kappa = bo->radius - std::sqrt(s) - bi->radius;
  } else {
    kappa = minimize_on_sphere(
        n,
        [&](const Point &theta) {
          const Point z = inner.map(theta);
          if (!outer.contains(z)) return -1.0;
          return outer.distance_to_boundary(z);
        },
        n == 2 ? 720 : 90);
  }
  if (!(kappa > 1e-12))
    throw Error(ErrorKind::EmptyGap,
                "inner domain closure is not strictly inside the outer domain");
  return kappa;
}

NestedPair make_nested_pair(Domain outer, Domain inner) {
  const double kappa = nesting_kappa(outer, inner);
  return NestedPair{std::move(outer), std::move(inner), kappa};
}

std::string describe(const NestedPair &pair) {
  return "pair(outer=" + pair.outer.describe() + ",inner=" + pair.inner.describe() + ")";
}

JacobianBounds estimate_jacobian_bounds(const Domain &d, std::size_t samples,
                                        std::uint64_t seed) {
  if (samples < 1000)
    throw Error(ErrorKind::InvalidArgument, "estimate_jacobian_bounds needs >= 1000 samples");
  const int n = d.dim();
  quad::Rng rng(quad::shard_seed(seed, 0));
  std::vector<double> u(n);
  JacobianBounds out;
  out.raw = 0.0;
  out.lambda_min = kInf;
  out.lambda_max = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    rng.point_in_ball(u);
    const Eigen::MatrixXd J = d.jacobian(u);
    if ((J - J.transpose()).norm() > 1e-12 * J.norm())
      throw Error(ErrorKind::DegenerateJacobian, "Jacobian is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(J, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0))
      throw Error(ErrorKind::DegenerateJacobian, "Jacobian has a non-positive eigenvalue");
    out.lambda_min = std::min(out.lambda_min, lo);
    out.lambda_max = std::max(out.lambda_max, hi);
    out.raw = std::max({out.raw, hi, 1.0 / lo});
  }
  out.c12 = kJacobianSafety * out.raw;
  out.sample_count = samples;
  return out;
}

} // namespace kato::geo
