#pragma once

// Parametric function families evaluated by the energy and verify modules.
//
// Radial profiles f(r), r >= 0:
//   constant(c)
//   indicator(a, b)    1 on [a, b), 0 elsewhere
//   power(alpha, tau)  (1-r)^{-alpha} on [0, 1-tau], linear taper to 0 on
//                      [1-tau, 1-tau/2], 0 beyond
//   bump(c, w)         exp(1 - 1/(1 - ((r-c)/w)^2)) for |r-c| < w
//   spline(k_i, v_i)   piecewise linear through (k_i, v_i), constant outside
// Every profile accepts an optional overall multiplier `scale`.
//
// Fields on R^n: radial(profile), coordinate(i) = x_i,
// shifted_bump(center, w), product(a, b), modulus(f).

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kato::fn {

class RadialProfile {
public:
  enum class Family { Constant, Indicator, Power, Bump, Spline };

  static RadialProfile constant(double c);
  static RadialProfile indicator(double a, double b);
  static RadialProfile power(double alpha, double tau);
  static RadialProfile bump(double center, double width);
  static RadialProfile spline(std::vector<double> knots, std::vector<double> values);

  Family family() const { return family_; }
  double operator()(double r) const;
  // f(r + t) - f(r) for t >= 0, evaluated piecewise without cancellation.
  double increment(double r, double t) const;

  // Points where the profile has a jump or kink (within [0, 1]).
  std::vector<double> breakpoints() const;
  bool has_jump() const;
  // sup{ r : f(r) != 0 }, infinity when f does not vanish for large r.
  double support_end() const;
  bool is_constant() const;

  const std::vector<double> &params() const { return params_; }
  const std::vector<double> &knots() const { return knots_; }
  const std::vector<double> &values() const { return values_; }

  // Every value multiplied by `s`; rendered with an extra `scale` key.
  RadialProfile scaled(double s) const;
  double scale() const { return scale_; }

  std::string describe() const;

private:
  double smooth_increment(double a, double h) const;
  std::vector<double> raw_breakpoints() const;

  Family family_ = Family::Constant;
  std::vector<double> params_;
  std::vector<double> knots_, values_;
  double scale_ = 1.0;
};

class FieldFunction {
public:
  enum class Kind { Radial, Coordinate, ShiftedBump, Product, Modulus };

  static FieldFunction radial(RadialProfile p);
  static FieldFunction coordinate(int index); // 1-based
  static FieldFunction shifted_bump(std::vector<double> center, double width);
  static FieldFunction product(const FieldFunction &a, const FieldFunction &b);
  static FieldFunction modulus(const FieldFunction &f);

  Kind kind() const;
  double operator()(std::span<const double> x) const;

  // The profile when the field is radial about the origin.
  std::optional<RadialProfile> as_radial() const;
  // Upper bound on sup{|x| : f(x) != 0}; infinity when unknown/unbounded.
  double support_radius() const;
  bool is_identically_zero() const;
  // Radii |x| at which the field may fail to be smooth (radial factors only).
  std::vector<double> kink_radii() const;

  FieldFunction scaled(double s) const;
  std::string describe() const;

private:
  struct Node;
  explicit FieldFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

} // namespace kato::fn
