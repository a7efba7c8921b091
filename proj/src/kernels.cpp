#include "kato/kernels.hpp"

#include "kato/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace kato::kern {

namespace {
constexpr double kPi = std::numbers::pi;

void check_n(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 2");
}
void check_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw Error(ErrorKind::InvalidArgument, "J(k) requires finite k > 0");
}
} // namespace

std::string_view to_string(WeightKind w) {
  switch (w) {
  case WeightKind::Hardy: return "hardy";
  case WeightKind::Kato: return "kato";
  case WeightKind::LogKato: return "logkato";
  }
  return "unknown";
}

WeightKind parse_weight(std::string_view name) {
  if (name == "hardy") return WeightKind::Hardy;
  if (name == "kato") return WeightKind::Kato;
  if (name == "logkato") return WeightKind::LogKato;
  throw Error(ErrorKind::InvalidArgument,
              "unknown weight '" + std::string(name) + "' (hardy|kato|logkato)");
}

double weight(WeightKind kind, double rho) {
  if (!(rho > 0.0))
    throw Error(ErrorKind::NonPositiveDistance, "weight requires rho > 0");
  switch (kind) {
  case WeightKind::Hardy: return 1.0 / (rho * rho);
  case WeightKind::Kato: return 1.0 / rho;
  case WeightKind::LogKato: {
    const double L = std::abs(std::log(rho));
    return 1.0 / (rho * (1.0 + L * L * L));
  }
  }
  return 0.0;
}

double nonlocal_kernel(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "nonlocal_kernel: dimension mismatch");
  double d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
  if (d2 == 0.0) throw Error(ErrorKind::CoincidentPoints, "nonlocal_kernel at x = y");
  const int n = static_cast<int>(x.size());
  return std::pow(d2, -0.5 * (n + 1));
}

double reduced_radial_kernel(double r, double s, int n) {
  check_n(n);
  if (!(r > 0.0) || !(s > 0.0))
    throw Error(ErrorKind::InvalidArgument, "reduced_radial_kernel requires r, s > 0");
  if (r == s) throw Error(ErrorKind::CoincidentRadii, "reduced_radial_kernel at r = s");
  const double d = r - s;
  return std::pow(r * s / (r + s), n - 1) / (d * d);
}

quad::QuadratureResult euler_J(double k, int n, double rel_tol) {
  check_n(n);
  check_k(k);
  const double k2 = k * k;
  const double scale = std::pow(2.0, n - 1);
  const double ex = 0.5 * (n + 1);
  // integrand in x = sin(phi/2): 2^{n-1} x^{n-2} (1-x^2)^{(n-3)/2} / (k^2+x^2)^{(n+1)/2}
  auto piece = [&](double lo, double hi) {
    return quad::integrate_1d_endpoint(
        [&](double x, double, double to_b) {
          const double one_minus_x2 =
              hi == 1.0 ? to_b * (2.0 - to_b) : (1.0 - x) * (1.0 + x);
          return scale * std::pow(x, n - 2) * std::pow(one_minus_x2, 0.5 * (n - 3)) /
                 std::pow(k2 + x * x, ex);
        },
        lo, hi, 1e-300, rel_tol);
  };
  if (k >= 1.0) return piece(0.0, 1.0);
  quad::QuadratureResult out = piece(0.0, k);
  out += piece(k, 1.0);
  return out;
}

bool has_closed_form_J(int n) { return n == 2 || n == 3; }

double euler_J_closed(double k, int n) {
  check_k(k);
  const double k2 = k * k;
  if (n == 2) {
    // 2 int_0^{pi/2} (k^2 + sin^2 x)^{-3/2} dx = 2 E(m) / (k^2 sqrt(k^2+1)),
    // modulus m = (k^2+1)^{-1/2}.
    const double m = 1.0 / std::sqrt(k2 + 1.0);
    return 2.0 * std::comp_ellint_2(m) / (k2 * std::sqrt(k2 + 1.0));
  }
  if (n == 3) return 2.0 / (k2 * (k2 + 1.0));
  throw Error(ErrorKind::InvalidArgument, "closed-form J available for n = 2, 3 only");
}

double euler_J_value(double k, int n) {
  if (has_closed_form_J(n)) return euler_J_closed(k, n);
  return euler_J(k, n).value;
}

double J_lower_bound(double k, int n) {
  check_n(n);
  check_k(k);
  return std::pow(2.0, 2 * n - 3) * std::pow(kPi, 2 - n) /
         ((n - 1) * k * k * std::pow(k * k + 1.0, 0.5 * (n - 1)));
}

double J_upper_bound(double k, int n) {
  check_n(n);
  check_k(k);
  return std::pow(kPi, n - 1) / ((n - 1) * k * k * std::pow(k * k + 1.0, 0.5 * (n - 1)));
}

double J_intermediate_lower_bound(double k, int n) {
  check_n(n);
  check_k(k);
  return std::pow(2.0, n - 2) * kPi /
         ((n - 1) * k * k * std::pow(k * k + kPi * kPi / 4.0, 0.5 * (n - 1)));
}

} // namespace kato::kern
