#pragma once

// Nonlocal energy E[f] = int int |f(x)-f(y)|^2 / |x-y|^{n+1} dx dy over a
// domain, boundary-weighted norms, and the rotation-average symmetrization.
//
// For a radial f on the unit ball the double integral reduces to
//   E = |S^{n-1}| |S^{n-2}| int int (f(r)-f(s))^2 (rs)^{n-1} (4rs)^{-(n+1)/2}
//         J(|r-s| / (2 sqrt(rs))) dr ds.
// The reduction with the angular factor c6 in place of |S^{n-1}||S^{n-2}| is
// reported by normalized_energy.

#include "kato/functions.hpp"
#include "kato/geometry.hpp"
#include "kato/kernels.hpp"
#include "kato/quadrature.hpp"

#include <vector>

namespace kato::energy {

struct DimensionalConstants {
  int n = 2;
  double c5 = 0.0;
  double c6 = 0.0;
  double c11 = 0.0;
  double angular = 0.0; // |S^{n-1}| |S^{n-2}|
};

DimensionalConstants dimensional_constants(int n);

quad::QuadratureResult energy_radial_exact(const fn::RadialProfile &f, int n, double tol = 1e-9,
                                           double rel_tol = 1e-10);

// int int (f(r)-f(s))^2 / (r-s)^2 (rs/(r+s))^{n-1} dr ds over [0,1]^2.
quad::QuadratureResult radial_reduced_integral(const fn::RadialProfile &f, int n,
                                               double tol = 1e-9);

// E * c6 / (|S^{n-1}| |S^{n-2}|).
double normalized_energy(double E, int n);

quad::QuadratureResult energy_general_mc(const fn::FieldFunction &f, int n,
                                         const quad::MCConfig &cfg);
// Over phi(B) x phi(B) for a mapped domain, sampled on the reference ball.
quad::QuadratureResult energy_general_mc(const fn::FieldFunction &f, const geo::Domain &d,
                                         const quad::MCConfig &cfg);

struct NormOptions {
  double tol = 1e-10;
  double rel_tol = 1e-9;
  bool force_mc = false;
  int angular_nodes = 256; // directions per great circle
  quad::MCConfig mc{};
};

// int_d |f|^2 w(rho_d(x)) dx. DivergentNorm when the boundary layer grows
// without bound.
quad::QuadratureResult weighted_norm(const fn::FieldFunction &f, const geo::Domain &d,
                                     kern::WeightKind kind, const NormOptions &opts = {});

inline constexpr int kSymmetrizationGrid = 512;
std::vector<double> symmetrization_radii();

// psi(r) = (mean over |x| = r of |f(x)|^2)^{1/2}, on the Chebyshev grid.
fn::RadialProfile symmetrize(const fn::FieldFunction &f, int n, int sphere_samples = 2048);

} // namespace kato::energy
