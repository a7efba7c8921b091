// Acceptance runner: one line per criterion, "PASS" or "FAIL" with the
// measured quantities. `acceptance 3 7` runs criteria 3 and 7; no argument
// runs all of them. Exit status is the number of failed criteria (capped).

#include "kato/energy.hpp"
#include "kato/kernels.hpp"
#include "kato/liebyau.hpp"
#include "kato/spec.hpp"
#include "kato/verify.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace kato;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char *title;
  double budget_seconds; // 0: no runtime requirement
  std::function<Outcome()> run;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::vector<fn::RadialProfile> radial_corpus() {
  return {fn::RadialProfile::bump(0, 0.6), fn::RadialProfile::bump(0.5, 0.3),
          fn::RadialProfile::spline({0, 0.4, 0.8}, {1, 1, 0}), fn::RadialProfile::power(0.3, 0.1),
          fn::RadialProfile::spline({0.2, 0.5, 0.9}, {0, 1, 0})};
}

verify::CampaignConfig acceptance_campaign() {
  verify::CampaignConfig cfg;
  cfg.mc.samples = 1'000'000;
  return cfg;
}

Outcome c8() {
  const ly::ScalarConstants pc = ly::scalar_constants();
  const double d1 = std::abs(pc.c8 - 0.695869349);
  const double d2 = std::abs(pc.psi_quarter - ly::psi_beta_closed(0.25));
  return {d1 <= 1e-8 && d2 <= 1e-10,
          "c8 = " + sci(pc.c8) + " (|diff| " + sci(d1) + "), psi(1/4) quadrature vs closed " +
              sci(d2)};
}

Outcome c9() {
  const ly::ScalarConstants pc = ly::scalar_constants();
  const double d1 = std::abs(pc.c9 - 39.47841761);
  const double d2 = std::abs(pc.c9 - 4.0 * pi * pi);
  return {d1 <= 1e-6 && d2 <= 1e-8,
          "c9 = " + sci(pc.c9) + " (|diff| " + sci(d1) + "), vs 4 pi^2 " + sci(d2)};
}

Outcome c7() {
  const ly::ScalarConstants pc = ly::scalar_constants();
  const double d = std::abs(pc.c7 - 0.002941558950);
  return {d <= 1e-10, "c7 = " + sci(pc.c7) + " (|diff| " + sci(d) + ")"};
}

Outcome c10() {
  const ly::ScalarConstants pc = ly::scalar_constants();
  const double d1 = std::abs(pc.c10_closed - 0.004322994);
  const double d2 = std::abs(pc.c10_quadrature - 0.004322994);
  return {d1 <= 1e-8 && d2 <= 1e-8, "closed " + sci(pc.c10_closed) + ", quadrature " +
                                        sci(pc.c10_quadrature)};
}

Outcome sandwich() {
  Outcome out;
  int checked = 0;
  double worst_sigma = 0.0;
  quad::MCConfig mc;
  mc.samples = 1'000'000;
  for (int n : {2, 3}) {
    const energy::DimensionalConstants dc = energy::dimensional_constants(n);
    for (const fn::RadialProfile &p : radial_corpus()) {
      const double E_raw = energy::energy_radial_exact(p, n).value;
      const double E = energy::normalized_energy(E_raw, n);
      const double I = energy::radial_reduced_integral(p, n).value;
      const double upper = std::pow(2.0, 3 - 2 * n) * std::pow(pi, 2 * n - 3) * dc.c5 * I;
      const quad::QuadratureResult m = energy::energy_general_mc(fn::FieldFunction::radial(p), n, mc);
      worst_sigma = std::max(worst_sigma, 3.0 * std::abs(m.value - E_raw) / m.error_estimate);
      const bool ok = dc.c5 * I <= E && E <= upper && std::abs(m.value - E_raw) <= m.error_estimate;
      if (!ok) {
        out.pass = false;
        out.detail += "[n=" + std::to_string(n) + " " + p.describe() + "] ";
      }
      ++checked;
    }
  }
  out.detail += std::to_string(checked) + " profile/dimension pairs, largest MC deviation " +
                sci(worst_sigma) + " sigma";
  return out;
}

Outcome j_bounds() {
  Outcome out;
  int checked = 0;
  for (int n : {2, 3, 4}) {
    for (int i = 0; i < 20; ++i) {
      const double k = std::pow(10.0, -2.0 + 4.0 * i / 19.0);
      const double J = kern::euler_J(k, n).value;
      if (!(kern::J_lower_bound(k, n) <= J && J <= kern::J_upper_bound(k, n))) {
        out.pass = false;
        out.detail += "[n=" + std::to_string(n) + " k=" + sci(k) + "] ";
      }
      ++checked;
    }
    const double k = 1e3;
    const double rel = std::abs(kern::euler_J(k, n).value * std::pow(k, n + 1) /
                                    quad::wallis(n - 2) -
                                1.0);
    out.detail += "n=" + std::to_string(n) + " Wallis deviation " + sci(rel) + "; ";
    if (!(rel < 0.01)) out.pass = false;
  }
  out.detail += std::to_string(checked) + " sandwich checks";
  return out;
}

Outcome discrete_lieb_yau() {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int m = 50;
  int violations = 0;
  double worst = INFINITY;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXd K(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j <= i; ++j) K(i, j) = K(j, i) = u(gen);
    std::vector<double> h(m), f(m), w(m);
    for (int i = 0; i < m; ++i) {
      h[i] = 0.05 + 20.0 * u(gen);
      f[i] = 2.0 * u(gen) - 1.0;
      w[i] = 0.5 + u(gen);
    }
    const ly::DiscreteLiebYau r = ly::discrete_lieb_yau(K, h, f, w);
    const double slack = r.lhs - r.rhs;
    worst = std::min(worst, slack / std::abs(r.lhs));
    if (slack < -1e-12 * std::abs(r.lhs)) ++violations;
  }
  return {violations == 0, "100 instances, " + std::to_string(violations) +
                               " violations, smallest relative slack " + sci(worst)};
}

Outcome potential_grids() {
  const ly::ScalarConstants pc = ly::scalar_constants();
  Outcome out;
  int checks = 0, failures = 0;
  for (double w : {0.05, 0.1, 0.2}) {
    const ly::TestFunctionH h = ly::TestFunctionH::barrier(w, ly::kKappa);
    for (int i = 1; i <= 9; ++i) {
      const double r = 0.1 * i;
      const double mu = 1.0 / (1.0 - r);
      const double rhs = ly::potential_lower_bound(r, w);
      for (int n : {2, 3}) {
        const double lhs = ly::radial_potential_lhs(r, h, n);
        ++checks;
        if (!(lhs >= rhs)) {
          ++failures;
          out.detail += "[potential n=" + std::to_string(n) + " r=" + sci(r) + " w=" + sci(w) + "] ";
        }
      }
      const double A = ly::limit_A(mu, w);
      const double B = ly::limit_B(mu, w);
      const double L = ly::limit_integral(mu, w);
      checks += 3;
      if (!(A >= pc.c8 * w * w)) {
        ++failures;
        out.detail += "[A(" + sci(mu) + "," + sci(w) + ") = " + sci(A) + " < " +
                      sci(pc.c8 * w * w) + "] ";
      }
      if (!(B <= pc.c9 * w * w / 99.0)) {
        ++failures;
        out.detail += "[B(" + sci(mu) + "," + sci(w) + ") = " + sci(B) + "] ";
      }
      const double bound = pc.c7 * w * w / std::pow(mu, w);
      if (!(L >= bound)) {
        ++failures;
        out.detail += "[limit integral(" + sci(mu) + "," + sci(w) + ") = " + sci(L) + " < " +
                      sci(bound) + "] ";
      }
    }
  }
  out.pass = failures == 0;
  out.detail += std::to_string(checks) + " checks, " + std::to_string(failures) + " violations";
  return out;
}

Outcome omega_average_bound() {
  const ly::ScalarConstants pc = ly::scalar_constants();
  Outcome out;
  double worst = 0.0;
  for (double mu : {1.0 + 1e-3, std::exp(1.0), 10.0, 1e3})
    worst = std::max(worst, std::abs(ly::omega_average(mu) - ly::omega_average_closed(mu)));
  if (!(worst <= 1e-9)) out.pass = false;
  int below = 0;
  for (int i = 0; i <= 240; ++i) {
    const double mu = std::pow(10.0, 6.0 * i / 240.0);
    const double l = std::log(mu);
    if (!(ly::omega_average(mu) >= pc.c10 / (1.0 + l * l * l))) ++below;
  }
  if (below) out.pass = false;
  out.detail = "closed-form deviation " + sci(worst) + ", " + std::to_string(below) +
               " of 241 grid points below c10/(1+ln^3)";
  return out;
}

std::string campaign_detail(const verify::Report &rep) {
  return "verdict " + std::string(verify::to_string(rep.verdict)) + ", min ratio " +
         sci(rep.min_ratio) + " +- " + sci(rep.min_ratio_error) + " vs " + rep.constant_name +
         " = " + sci(rep.constant);
}

Outcome compact_support_campaign() {
  const geo::NestedPair pair =
      spec::to_pair(spec::parse("pair(outer=ball(n=2,r=2),inner=ball(n=2,r=1))"));
  const verify::Report rep = verify::verify_compact_support(
      pair, verify::parse_corpus(verify::default_corpus(2)), acceptance_campaign());
  const bool ok = rep.verdict == verify::Verdict::Pass &&
                  rep.min_ratio - rep.min_ratio_error >= 2.0 * rep.chain.c2;
  return {ok, campaign_detail(rep)};
}

Outcome kato_log_campaign() {
  Outcome out;
  for (int n : verify::kCorpusDimensions) {
    const verify::Report rep = verify::verify_kato_log(
        n, verify::parse_corpus(verify::default_corpus(n)), acceptance_campaign());
    bool ok = rep.verdict == verify::Verdict::Pass;
    int sym = 0;
    for (const verify::Record &r : rep.records) {
      if (!r.has_symmetrization) continue;
      ++sym;
      ok = ok && r.sym_energy_decreases && r.sym_norm_preserved;
    }
    out.pass = out.pass && ok && sym > 0;
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += "n=" + std::to_string(n) + ": " + campaign_detail(rep) + ", " +
                  std::to_string(sym) + " symmetrization checks";
  }
  return out;
}

Outcome mapped_domain_campaign() {
  const verify::Report rep =
      verify::verify_mapped_domain(spec::parse_domain("ellipsoid(a=1.5,b=1)"),
                              verify::parse_corpus(verify::default_corpus(2)), acceptance_campaign());
  return {rep.verdict == verify::Verdict::Pass, campaign_detail(rep)};
}

} // namespace

int main(int argc, char **argv) {
  const std::vector<Criterion> criteria = {
      {1, "constant c8", 1.0, c8},
      {2, "constant c9", 1.0, c9},
      {3, "constant c7", 0.0, c7},
      {4, "constant c10", 0.0, c10},
      {5, "radial reduction sandwich with Monte Carlo cross-check", 300.0, sandwich},
      {6, "J(k) sandwich and Wallis asymptotics", 0.0, j_bounds},
      {7, "discrete Lieb-Yau inequality", 0.0, discrete_lieb_yau},
      {8, "radial potential and A/B/limit-integral grids", 120.0, potential_grids},
      {9, "omega average closed form and lower bound", 0.0, omega_average_bound},
      {10, "compact-support campaign, balls (2,1), n=2", 300.0, compact_support_campaign},
      {11, "log-corrected campaign on the unit ball, n=2,3", 0.0, kato_log_campaign},
      {12, "mapped-domain campaign, ellipsoid(1.5,1), n=2", 0.0, mapped_domain_campaign},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failed = 0;
  for (const Criterion &c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end())
      continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_seconds > 0.0 && secs > c.budget_seconds) {
      o.pass = false;
      o.detail += " [over the " + sci(c.budget_seconds) + " s budget]";
    }
    std::printf("criterion %2d %s: %s (%s; %.2f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.title,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return std::min(failed, 125);
}
