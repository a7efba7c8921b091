#include "kato/functions.hpp"

#include "kato/error.hpp"
#include "kato/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kato::fn {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double bump_value(double d, double w) {
  const double q = d / w;
  if (std::abs(q) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - q * q));
}

std::string kv(const std::string &k, double v) { return k + "=" + format_number(v); }
} // namespace

RadialProfile RadialProfile::constant(double c) {
  RadialProfile p;
  p.family_ = Family::Constant;
  p.params_ = {c};
  return p;
}

RadialProfile RadialProfile::indicator(double a, double b) {
  if (!(a >= 0.0 && a < b))
    throw Error(ErrorKind::InvalidArgument, "indicator: require 0 <= a < b");
  RadialProfile p;
  p.family_ = Family::Indicator;
  p.params_ = {a, b};
  return p;
}

RadialProfile RadialProfile::power(double alpha, double tau) {
  if (!(alpha < 0.5) || !(alpha >= 0.0))
    throw Error(ErrorKind::InvalidArgument, "power: require 0 <= alpha < 1/2");
  if (!(tau > 0.0 && tau < 1.0))
    throw Error(ErrorKind::InvalidArgument, "power: require 0 < tau < 1");
  RadialProfile p;
  p.family_ = Family::Power;
  p.params_ = {alpha, tau};
  return p;
}

RadialProfile RadialProfile::bump(double center, double width) {
  if (!(width > 0.0)) throw Error(ErrorKind::InvalidArgument, "bump: width must be positive");
  RadialProfile p;
  p.family_ = Family::Bump;
  p.params_ = {center, width};
  return p;
}

RadialProfile RadialProfile::spline(std::vector<double> knots, std::vector<double> values) {
  if (knots.size() != values.size() || knots.empty())
    throw Error(ErrorKind::InvalidArgument, "spline: need matching, non-empty knots and values");
  for (std::size_t i = 1; i < knots.size(); ++i)
    if (!(knots[i] > knots[i - 1]))
      throw Error(ErrorKind::InvalidArgument, "spline: knots must be strictly increasing");
  RadialProfile p;
  p.family_ = Family::Spline;
  p.knots_ = std::move(knots);
  p.values_ = std::move(values);
  return p;
}

double RadialProfile::operator()(double r) const {
  double v = 0.0;
  switch (family_) {
  case Family::Constant: v = params_[0]; break;
  case Family::Indicator: v = (r >= params_[0] && r < params_[1]) ? 1.0 : 0.0; break;
  case Family::Power: {
    const double alpha = params_[0], tau = params_[1];
    if (r <= 1.0 - tau) {
      v = std::pow(1.0 - r, -alpha);
    } else if (r < 1.0 - 0.5 * tau) {
      const double top = std::pow(tau, -alpha);
      v = top * (1.0 - 0.5 * tau - r) / (0.5 * tau);
    }
    break;
  }
  case Family::Bump: v = bump_value(r - params_[0], params_[1]); break;
  case Family::Spline: {
    if (r <= knots_.front()) {
      v = values_.front();
    } else if (r >= knots_.back()) {
      v = values_.back();
    } else {
      const auto it = std::upper_bound(knots_.begin(), knots_.end(), r);
      const std::size_t j = static_cast<std::size_t>(it - knots_.begin());
      const double t = (r - knots_[j - 1]) / (knots_[j] - knots_[j - 1]);
      v = values_[j - 1] + t * (values_[j] - values_[j - 1]);
    }
    break;
  }
  }
  return scale_ * v;
}

std::vector<double> RadialProfile::raw_breakpoints() const {
  switch (family_) {
  case Family::Constant: return {};
  case Family::Indicator: return {params_[0], params_[1]};
  case Family::Power: return {1.0 - params_[1], 1.0 - 0.5 * params_[1]};
  case Family::Bump: return {params_[0] - params_[1], params_[0], params_[0] + params_[1]};
  case Family::Spline: return knots_;
  }
  return {};
}

// Increment over [a, a + h] containing no breakpoint in its interior.
double RadialProfile::smooth_increment(double a, double h) const {
  if (h == 0.0) return 0.0;
  const double mid = a + 0.5 * h;
  switch (family_) {
  case Family::Constant: return 0.0;
  case Family::Indicator: return (*this)(a + h) - (*this)(a);
  case Family::Power: {
    const double alpha = params_[0], tau = params_[1];
    if (mid < 1.0 - tau) {
      const double base = std::pow(1.0 - a, -alpha);
      return scale_ * base * std::expm1(-alpha * std::log1p(-h / (1.0 - a)));
    }
    if (mid < 1.0 - 0.5 * tau) return -scale_ * std::pow(tau, -alpha) * h / (0.5 * tau);
    return 0.0;
  }
  case Family::Bump: {
    const double c = params_[0], w = params_[1];
    if (std::abs(mid - c) >= w) return 0.0;
    const double qa = (a - c) / w;
    const double qb = (a + h - c) / w;
    if (std::abs(qa) >= 1.0 || std::abs(qb) >= 1.0) return (*this)(a + h) - (*this)(a);
    const double ea = 1.0 - qa * qa, eb = 1.0 - qb * qb;
    // 1/ea - 1/eb with qa^2 - qb^2 = -(h/w)(qa + qb)
    const double delta = (-(h / w) * (qa + qb)) / (ea * eb);
    const double fa = (*this)(a);
    if (fa == 0.0 || std::abs(delta) > 0.5) return (*this)(a + h) - fa;
    return fa * std::expm1(delta);
  }
  case Family::Spline: {
    if (mid <= knots_.front() || mid >= knots_.back()) return 0.0;
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), mid);
    const std::size_t j = static_cast<std::size_t>(it - knots_.begin());
    return scale_ * (values_[j] - values_[j - 1]) / (knots_[j] - knots_[j - 1]) * h;
  }
  }
  return 0.0;
}

double RadialProfile::increment(double r, double t) const {
  if (family_ == Family::Constant || scale_ == 0.0) return 0.0;
  if (family_ == Family::Spline) {
    double total = 0.0;
    double a = r;
    for (auto it = std::upper_bound(knots_.begin(), knots_.end(), r);
         it != knots_.end() && *it - r < t; ++it) {
      total += smooth_increment(a, *it - a);
      a = *it;
    }
    return total + smooth_increment(a, a == r ? t : t - (a - r));
  }
  std::vector<double> cuts;
  for (double b : raw_breakpoints())
    if (b > r && b - r < t) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  double a = r;
  for (double b : cuts) {
    total += smooth_increment(a, b - a);
    a = b;
  }
  total += smooth_increment(a, a == r ? t : t - (a - r));
  return total;
}

std::vector<double> RadialProfile::breakpoints() const {
  std::vector<double> out;
  switch (family_) {
  case Family::Constant: break;
  case Family::Indicator: out = {params_[0], params_[1]}; break;
  case Family::Power: out = {1.0 - params_[1], 1.0 - 0.5 * params_[1]}; break;
  case Family::Bump: out = {params_[0] - params_[1], params_[0], params_[0] + params_[1]}; break;
  case Family::Spline: out = knots_; break;
  }
  std::vector<double> inside;
  for (double b : out)
    if (b > 0.0 && b < 1.0) inside.push_back(b);
  return inside;
}

bool RadialProfile::has_jump() const {
  if (family_ != Family::Indicator) return false;
  return params_[0] > 0.0 || params_[1] < 1.0;
}

double RadialProfile::support_end() const {
  if (scale_ == 0.0) return 0.0;
  switch (family_) {
  case Family::Constant: return params_[0] == 0.0 ? 0.0 : kInf;
  case Family::Indicator: return params_[1];
  case Family::Power: return 1.0 - 0.5 * params_[1];
  case Family::Bump: return std::max(0.0, params_[0] + params_[1]);
  case Family::Spline: {
    if (values_.back() != 0.0) return kInf;
    for (std::size_t i = values_.size(); i-- > 0;)
      if (values_[i] != 0.0) return knots_[i + 1];
    return 0.0;
  }
  }
  return kInf;
}

bool RadialProfile::is_constant() const {
  if (scale_ == 0.0) return true;
  if (family_ == Family::Constant) return true;
  if (family_ == Family::Spline)
    return std::all_of(values_.begin(), values_.end(),
                       [&](double v) { return v == values_.front(); });
  return false;
}

RadialProfile RadialProfile::scaled(double s) const {
  RadialProfile p = *this;
  p.scale_ *= s;
  return p;
}

std::string RadialProfile::describe() const {
  std::string s;
  switch (family_) {
  case Family::Constant: s = "constant(" + kv("c", params_[0]); break;
  case Family::Indicator: s = "indicator(" + kv("a", params_[0]) + "," + kv("b", params_[1]); break;
  case Family::Power: s = "power(" + kv("alpha", params_[0]) + "," + kv("tau", params_[1]); break;
  case Family::Bump: s = "bump(" + kv("c", params_[0]) + "," + kv("w", params_[1]); break;
  case Family::Spline:
    s = "spline(";
    for (std::size_t i = 0; i < knots_.size(); ++i) {
      if (i) s += ",";
      s += kv("k" + std::to_string(i), knots_[i]) + "," + kv("v" + std::to_string(i), values_[i]);
    }
    break;
  }
  if (scale_ != 1.0) s += "," + kv("scale", scale_);
  return s + ")";
}

// ---------------------------------------------------------------------------

struct FieldFunction::Node {
  Kind kind;
  std::optional<RadialProfile> profile;
  int index = 0;
  std::vector<double> center;
  double width = 0.0;
  std::shared_ptr<const Node> a, b;
};

FieldFunction FieldFunction::radial(RadialProfile p) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Radial;
  n->profile = std::move(p);
  return FieldFunction(n);
}

FieldFunction FieldFunction::coordinate(int index) {
  if (index < 1) throw Error(ErrorKind::InvalidArgument, "coordinate: index is 1-based");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Coordinate;
  n->index = index;
  return FieldFunction(n);
}

FieldFunction FieldFunction::shifted_bump(std::vector<double> center, double width) {
  if (!(width > 0.0)) throw Error(ErrorKind::InvalidArgument, "shifted_bump: width must be positive");
  if (center.empty()) throw Error(ErrorKind::InvalidArgument, "shifted_bump: empty center");
  auto n = std::make_shared<Node>();
  n->kind = Kind::ShiftedBump;
  n->center = std::move(center);
  n->width = width;
  return FieldFunction(n);
}

FieldFunction FieldFunction::product(const FieldFunction &a, const FieldFunction &b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->a = a.node_;
  n->b = b.node_;
  return FieldFunction(n);
}

FieldFunction FieldFunction::modulus(const FieldFunction &f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Modulus;
  n->a = f.node_;
  return FieldFunction(n);
}

FieldFunction::Kind FieldFunction::kind() const { return node_->kind; }

double FieldFunction::operator()(std::span<const double> x) const {
  const Node &n = *node_;
  switch (n.kind) {
  case Kind::Radial: {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return (*n.profile)(std::sqrt(r2));
  }
  case Kind::Coordinate:
    if (n.index > static_cast<int>(x.size()))
      throw Error(ErrorKind::InvalidArgument, "coordinate index exceeds dimension");
    return x[n.index - 1];
  case Kind::ShiftedBump: {
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double c = i < n.center.size() ? n.center[i] : 0.0;
      d2 += (x[i] - c) * (x[i] - c);
    }
    return bump_value(std::sqrt(d2), n.width);
  }
  case Kind::Product: return FieldFunction(n.a)(x) * FieldFunction(n.b)(x);
  case Kind::Modulus: return std::abs(FieldFunction(n.a)(x));
  }
  return 0.0;
}

std::optional<RadialProfile> FieldFunction::as_radial() const {
  if (node_->kind == Kind::Radial) return node_->profile;
  return std::nullopt;
}

double FieldFunction::support_radius() const {
  const Node &n = *node_;
  switch (n.kind) {
  case Kind::Radial: return n.profile->support_end();
  case Kind::Coordinate: return kInf;
  case Kind::ShiftedBump: {
    double c2 = 0.0;
    for (double c : n.center) c2 += c * c;
    return std::sqrt(c2) + n.width;
  }
  case Kind::Product:
    return std::min(FieldFunction(n.a).support_radius(), FieldFunction(n.b).support_radius());
  case Kind::Modulus: return FieldFunction(n.a).support_radius();
  }
  return kInf;
}

bool FieldFunction::is_identically_zero() const {
  const Node &n = *node_;
  switch (n.kind) {
  case Kind::Radial: {
    const RadialProfile &p = *n.profile;
    if (p.scale() == 0.0) return true;
    if (p.family() == RadialProfile::Family::Constant) return p.params()[0] == 0.0;
    if (p.family() == RadialProfile::Family::Spline)
      return std::all_of(p.values().begin(), p.values().end(), [](double v) { return v == 0.0; });
    return false;
  }
  case Kind::Coordinate:
  case Kind::ShiftedBump: return false;
  case Kind::Product:
    return FieldFunction(n.a).is_identically_zero() || FieldFunction(n.b).is_identically_zero();
  case Kind::Modulus: return FieldFunction(n.a).is_identically_zero();
  }
  return false;
}

std::vector<double> FieldFunction::kink_radii() const {
  const Node &n = *node_;
  switch (n.kind) {
  case Kind::Radial: return n.profile->breakpoints();
  case Kind::Coordinate:
  case Kind::ShiftedBump: return {};
  case Kind::Product: {
    std::vector<double> out = FieldFunction(n.a).kink_radii();
    const std::vector<double> b = FieldFunction(n.b).kink_radii();
    out.insert(out.end(), b.begin(), b.end());
    return out;
  }
  case Kind::Modulus: return FieldFunction(n.a).kink_radii();
  }
  return {};
}

FieldFunction FieldFunction::scaled(double s) const {
  if (node_->kind == Kind::Radial) return radial(node_->profile->scaled(s));
  return product(*this, radial(RadialProfile::constant(s)));
}

std::string FieldFunction::describe() const {
  const Node &n = *node_;
  switch (n.kind) {
  case Kind::Radial: return "radial(profile=" + n.profile->describe() + ")";
  case Kind::Coordinate: return "coordinate(i=" + std::to_string(n.index) + ")";
  case Kind::ShiftedBump: {
    std::string s = "shifted_bump(";
    for (std::size_t i = 0; i < n.center.size(); ++i)
      s += kv("c" + std::to_string(i + 1), n.center[i]) + ",";
    return s + kv("w", n.width) + ")";
  }
  case Kind::Product:
    return "product(a=" + FieldFunction(n.a).describe() + ",b=" + FieldFunction(n.b).describe() + ")";
  case Kind::Modulus: return "modulus(f=" + FieldFunction(n.a).describe() + ")";
  }
  return "";
}

} // namespace kato::fn
