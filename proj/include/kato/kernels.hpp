#pragma once

#include "kato/quadrature.hpp"

#include <span>
#include <string_view>

namespace kato::kern {

enum class WeightKind { Hardy, Kato, LogKato };

std::string_view to_string(WeightKind w);
// Accepts "hardy", "kato", "logkato"; InvalidArgument otherwise.
WeightKind parse_weight(std::string_view name);

// Hardy rho^-2, Kato rho^-1, LogKato 1/(rho (1 + |ln rho|^3)).
double weight(WeightKind kind, double rho);

// |x - y|^{-(n+1)}.
double nonlocal_kernel(std::span<const double> x, std::span<const double> y);

// (rs/(r+s))^{n-1} / (r-s)^2.
double reduced_radial_kernel(double r, double s, int n);

// J(k) = int_0^pi |sin phi|^{n-2} / (k^2 + sin^2(phi/2))^{(n+1)/2} dphi,
// by tanh-sinh in x = sin(phi/2), split at x = k.
quad::QuadratureResult euler_J(double k, int n, double rel_tol = 1e-12);

// Closed forms: n = 2 through the complete elliptic integral of the second
// kind, n = 3 rational. InvalidArgument for other n.
double euler_J_closed(double k, int n);
bool has_closed_form_J(int n);
// Closed form when available, quadrature otherwise.
double euler_J_value(double k, int n);

// Two-sided analytic bounds on J:
//   lower  2^{2n-3} pi^{2-n} / ((n-1) k^2 (k^2+1)^{(n-1)/2})
//   upper  pi^{n-1} / ((n-1) k^2 (k^2+1)^{(n-1)/2})
// and the intermediate lower estimate
//          2^{n-2} pi / ((n-1) k^2 (k^2+pi^2/4)^{(n-1)/2}).
double J_lower_bound(double k, int n);
double J_upper_bound(double k, int n);
double J_intermediate_lower_bound(double k, int n);

} // namespace kato::kern
