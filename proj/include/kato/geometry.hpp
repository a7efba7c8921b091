#pragma once

// Bounded domains in R^n, all presented as images of the unit ball under a
// smooth map phi:
//
//   Ball       phi(u) = c + R u
//   Ellipsoid  phi(u) = diag(a) u                  (centred at the origin)
//   RadialMap  phi(u) = g(|u|) u,  g(t) = g0 + a t^2
//
// Distances to the boundary are exact for balls and ellipsoids and computed
// on a boundary mesh for radial maps.

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace kato::geo {

using Point = std::vector<double>;

struct Ball {
  int n = 2;
  double radius = 1.0;
  Point center; // empty means the origin
};

struct Ellipsoid {
  std::vector<double> axes;
};

struct RadialMap {
  int n = 2;
  double g0 = 1.0;
  double a = 0.0;

  double g(double t) const { return g0 + a * t * t; }
  double dg(double t) const { return 2.0 * a * t; }
};

class Domain {
public:
  using Kind = std::variant<Ball, Ellipsoid, RadialMap>;

  explicit Domain(Kind kind);
  static Domain unit_ball(int n) { return Domain(Ball{n, 1.0, {}}); }

  const Kind &kind() const { return kind_; }
  int dim() const { return n_; }
  bool is_ball() const { return std::holds_alternative<Ball>(kind_); }
  bool is_unit_ball() const;

  bool contains(std::span<const double> p) const;
  // min over the boundary of |p - z|; OutsideDomain when p is not in the
  // closed domain.
  double distance_to_boundary(std::span<const double> p) const;
  // Largest l with p + l*dir in the closure; p inside, |dir| = 1.
  double ray_exit(std::span<const double> p, std::span<const double> dir) const;

  Point map(std::span<const double> u) const;
  Eigen::MatrixXd jacobian(std::span<const double> u) const;
  double jacobian_det(std::span<const double> u) const;

  double inradius() const;
  double volume() const;
  // Spec-grammar rendering, e.g. "ellipsoid(a=1.5,b=1)".
  std::string describe() const;

private:
  double mesh_distance(std::span<const double> p) const;

  Kind kind_;
  int n_;
};

// Direction theta(angles) on S^{n-1} for n in {2,3}: angle count n-1.
Point sphere_direction(int n, std::span<const double> angles);

// Global minimum over S^{n-1} (n in {2,3}) of f by a latitude-longitude
// mesh followed by two local refinement passes around the best nodes.
// Returns the minimal value; `argmin` receives the direction if given.
double minimize_on_sphere(int n, const std::function<double(const Point &)> &f,
                          int resolution = 180, Point *argmin = nullptr);

struct NestedPair {
  Domain outer;
  Domain inner;
  double gap; // kappa
};

double nesting_kappa(const Domain &outer, const Domain &inner);
// Validates closure(inner) in outer on an inner-boundary mesh and computes
// kappa; EmptyGap when kappa <= 0.
NestedPair make_nested_pair(Domain outer, Domain inner);
std::string describe(const NestedPair &pair);

struct JacobianBounds {
  double c12 = 1.0;     // inflated bound
  double raw = 1.0;     // max over samples of max(lambda_max, 1/lambda_min)
  double lambda_min = 1.0;
  double lambda_max = 1.0;
  std::size_t sample_count = 0;
};

inline constexpr double kJacobianSafety = 1.05;

JacobianBounds estimate_jacobian_bounds(const Domain &d, std::size_t samples,
                                        std::uint64_t seed = 1);

} // namespace kato::geo
