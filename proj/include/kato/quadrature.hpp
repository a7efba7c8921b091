#pragma once

// Integration engines shared by every other module.
//
//   integrate_1d            tanh-sinh (double exponential), endpoint singularities
//   integrate_adaptive      globally adaptive Gauss-Kronrod 7/15, interior kinks
//   integrate_semi_infinite split at 1, then t = m + u/(1-u)
//   principal_value         symmetric folding around the pole
//   integrate_diagonal_double
//                           unit square, dyadic strips in |r-s|
//   mc_ball / mc_double_ball
//                           seeded, sharded Monte Carlo over unit n-balls
//   limit_extrapolate       Richardson/Neville extrapolation to eps -> 0
//
// Deterministic engines report the last-refinement difference as the error
// estimate; Monte Carlo engines report 3 standard errors.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace kato::quad {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  // Monte Carlo only: samples rejected and redrawn (diagonal excision).
  std::size_t rejected = 0;

  QuadratureResult &operator+=(const QuadratureResult &o) {
    value += o.value;
    error_estimate += o.error_estimate;
    evaluations += o.evaluations;
    rejected += o.rejected;
    return *this;
  }
};

using Fn1 = std::function<double(double)>;
// Integrand that also receives the exact distances x-a and b-x, so formulas
// near an endpoint can avoid cancellation.
using EndpointFn = std::function<double(double x, double from_a, double to_b)>;
using Fn2 = std::function<double(double, double)>;
// g(r, s) together with the exact offset t = s - r (s = r + t is rounded).
using DiagonalFn = std::function<double(double r, double s, double t)>;
using PointFn = std::function<double(std::span<const double>)>;
using PairFn =
    std::function<double(std::span<const double>, std::span<const double>)>;

// Converged when error_estimate <= max(tol, rel_tol * |value|).
QuadratureResult integrate_1d(const Fn1 &f, double a, double b, double tol,
                              double rel_tol = 0.0);
QuadratureResult integrate_1d_endpoint(const EndpointFn &f, double a, double b,
                                       double tol, double rel_tol = 0.0);

QuadratureResult integrate_adaptive(const Fn1 &f, double a, double b,
                                    double tol, double rel_tol = 0.0,
                                    std::span<const double> breakpoints = {});

// Gauss-Legendre nodes and weights on [-1, 1].
std::vector<std::pair<double, double>> gauss_legendre(int m);

// Fixed 15-point Kronrod rule; error estimate |K15 - G7|.
QuadratureResult gauss_kronrod_15(const Fn1 &f, double a, double b);

QuadratureResult integrate_semi_infinite(const Fn1 &f, double a, double tol,
                                         double rel_tol = 0.0);

// PV of f over (lo, hi) with a simple pole at `center`. `f_offset(t)` must
// return f(center + t); hi may be +infinity.
QuadratureResult principal_value(const Fn1 &f_offset, double center, double lo,
                                 double hi, double tol, double rel_tol = 0.0);

// Integral of a symmetric g over (0,1)^2 whose only singular behaviour is on
// the diagonal. `breakpoints` are r-values where g(., s) has kinks or jumps.
QuadratureResult integrate_diagonal_double(const DiagonalFn &g, double tol,
                                           double band = 1e-7,
                                           std::span<const double> breakpoints = {},
                                           double rel_tol = 0.0);
QuadratureResult integrate_diagonal_double(const Fn2 &g, double tol,
                                           double band = 1e-7,
                                           std::span<const double> breakpoints = {},
                                           double rel_tol = 0.0);

// ---------------------------------------------------------------------------
// Monte Carlo

struct MCConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  std::uint32_t shards = 8;
};

enum class PairSampler {
  // x, y independent and uniform on B x B.
  Uniform,
  // x uniform, y = x + l*theta with theta uniform on the sphere and l uniform
  // on the chord; the weight carries l^{n-1}, cancelling |x-y|^{1-n}
  // growth at the diagonal.
  DiagonalPolar,
};

// Counter-based seed for shard `index`; independent of execution order.
std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double normal();
  void unit_vector(std::span<double> out);
  void point_in_ball(std::span<double> out);

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

double ball_volume(int n);
double sphere_area(int n); // |S^{n-1}|, the boundary of the unit n-ball

QuadratureResult mc_ball(const PointFn &F, int n, const MCConfig &cfg);
QuadratureResult mc_double_ball(const PairFn &F, int n, const MCConfig &cfg,
                                PairSampler sampler = PairSampler::Uniform,
                                double reject_radius = 1e-9);

// ---------------------------------------------------------------------------
// eps -> 0 limits

struct LimitPolicy {
  std::vector<double> sequence{1e-2, 1e-3, 1e-4};
  int extrapolation_order = 2;

  void validate() const;
};

// `values` are (eps, value) pairs ordered by decreasing eps.
double limit_extrapolate(std::span<const std::pair<double, double>> values,
                         const LimitPolicy &policy);

// Evaluates `f(eps)` on the policy sequence and extrapolates.
double limit_of(const std::function<double(double)> &f,
                const LimitPolicy &policy);

// ---------------------------------------------------------------------------
// Wallis integrals W_m = int_0^pi sin^m

double wallis(int m);
QuadratureResult wallis_quadrature(int m);

} // namespace kato::quad
