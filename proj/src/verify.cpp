#include "kato/verify.hpp"

#include "kato/error.hpp"
#include "kato/format.hpp"
#include "kato/spec.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>

namespace kato::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using kern::WeightKind;

} // namespace

std::string_view to_string(Inequality q) {
  switch (q) {
  case Inequality::CompactSupport: return "compact-support";
  case Inequality::KatoLog: return "kato-log";
  case Inequality::MappedDomain: return "mapped-domain";
  }
  return "";
}

Inequality parse_inequality(std::string_view name) {
  if (name == "compact-support") return Inequality::CompactSupport;
  if (name == "kato-log") return Inequality::KatoLog;
  if (name == "mapped-domain") return Inequality::MappedDomain;
  throw Error(ErrorKind::InvalidArgument,
              "unknown inequality '" + std::string(name) + "' (compact-support, kato-log, mapped-domain)");
}

std::string_view to_string(Verdict v) {
  switch (v) {
  case Verdict::Pass: return "pass";
  case Verdict::PassWithSlack: return "pass-with-slack";
  case Verdict::Inconclusive: return "inconclusive";
  case Verdict::HypothesisViolation: return "hypothesis-violation";
  case Verdict::Violation: return "violation";
  }
  return "";
}

int exit_code(Verdict v) {
  switch (v) {
  case Verdict::Pass:
  case Verdict::PassWithSlack: return 0;
  case Verdict::Inconclusive: return 2;
  case Verdict::HypothesisViolation: return 3;
  case Verdict::Violation: return 1;
  }
  return 1;
}

Verdict decide(const std::vector<Record> &records, double constant) {
  bool hypothesis = false, inconclusive = false, divergent = false, violation = false;
  bool any = false;
  for (const Record &r : records) {
    if (r.hypothesis_violation) {
      hypothesis = true;
      continue;
    }
    any = true;
    if (r.divergent_energy) {
      divergent = true;
      continue;
    }
    if (r.ratio + r.ratio_error < constant) violation = true;
    else if (r.ratio - r.ratio_error < constant) inconclusive = true;
  }
  if (violation) return Verdict::Violation;
  if (hypothesis) return Verdict::HypothesisViolation;
  if (!any || inconclusive) return Verdict::Inconclusive;
  return divergent ? Verdict::PassWithSlack : Verdict::Pass;
}

// ---------------------------------------------------------------------------
// Records

namespace {

void set_ratio(Record &r) {
  if (r.divergent_energy) {
    r.ratio = kInf;
    r.ratio_error = 0.0;
    return;
  }
  if (!(r.norm > 0.0))
    throw Error(ErrorKind::EmptyFunction, r.function + " has zero weighted norm");
  r.ratio = r.energy / r.norm;
  r.ratio_error = r.energy > 0.0
                      ? r.ratio * (r.energy_error / r.energy + r.norm_error / r.norm)
                      : r.energy_error / r.norm;
}

void fill_energy_mc(Record &r, const fn::FieldFunction &f, const geo::Domain &d,
                    const CampaignConfig &cfg) {
  const quad::QuadratureResult e = energy::energy_general_mc(f, d, cfg.mc);
  r.energy = e.value;
  r.energy_error = e.error_estimate;
  r.energy_method = "monte-carlo(samples=" + std::to_string(cfg.mc.samples) +
                    ",seed=" + std::to_string(cfg.mc.seed) + ")";
}

void fill_energy_radial(Record &r, const fn::RadialProfile &p, int n, const CampaignConfig &cfg) {
  r.energy_method = "radial-quadrature";
  try {
    const quad::QuadratureResult e = energy::energy_radial_exact(p, n, cfg.tol);
    r.energy = e.value;
    r.energy_error = e.error_estimate;
  } catch (const Error &err) {
    if (err.kind() != ErrorKind::DiagonalDivergence) throw;
    r.divergent_energy = true;
    r.energy = kInf;
    r.note = "energy diverges at a jump of the profile";
  }
}

void fill_norm(Record &r, const fn::FieldFunction &f, const geo::Domain &d, WeightKind w,
               const CampaignConfig &cfg) {
  const quad::QuadratureResult q = energy::weighted_norm(f, d, w, cfg.norm);
  r.norm = q.value;
  r.norm_error = q.error_estimate;
  r.norm_method = std::string(kern::to_string(w)) +
                  (f.as_radial() && d.is_ball() ? "/radial-quadrature" : "/directional-quadrature");
}

void symmetrization_check(Record &r, const fn::FieldFunction &f, int n, const CampaignConfig &cfg) {
  const fn::RadialProfile psi = energy::symmetrize(f, n, cfg.sphere_samples);
  const geo::Domain ball = geo::Domain::unit_ball(n);
  const quad::QuadratureResult e = energy::energy_radial_exact(psi, n, 1e-6, 1e-7);
  const quad::QuadratureResult m =
      energy::weighted_norm(fn::FieldFunction::radial(psi), ball, WeightKind::LogKato, cfg.norm);
  // Grid interpolation error: the same profile on every other knot.
  std::vector<double> k, v;
  for (std::size_t i = 0; i < psi.knots().size(); i += 2) {
    k.push_back(psi.knots()[i]);
    v.push_back(psi.values()[i]);
  }
  if (k.back() != psi.knots().back()) {
    k.push_back(psi.knots().back());
    v.push_back(psi.values().back());
  }
  const double coarse = energy::weighted_norm(
                            fn::FieldFunction::radial(fn::RadialProfile::spline(k, v)), ball,
                            WeightKind::LogKato, cfg.norm)
                            .value;
  r.has_symmetrization = true;
  r.sym_energy = e.value;
  r.sym_energy_error = e.error_estimate;
  r.sym_norm = m.value;
  r.sym_norm_tolerance = r.norm_error + m.error_estimate + std::abs(m.value - coarse);
  r.sym_energy_decreases = e.value <= r.energy + r.energy_error + e.error_estimate;
  r.sym_norm_preserved = std::abs(r.norm - m.value) <= r.sym_norm_tolerance;
}

void finish(Report &rep, const CampaignConfig &cfg, const std::vector<fn::FieldFunction> &fs) {
  std::sort(rep.records.begin(), rep.records.end(),
            [](const Record &a, const Record &b) { return a.function < b.function; });
  rep.min_ratio = kInf;
  rep.min_ratio_error = 0.0;
  for (const Record &r : rep.records) {
    if (r.hypothesis_violation || r.divergent_energy) continue;
    if (r.ratio - r.ratio_error < rep.min_ratio - rep.min_ratio_error || rep.min_ratio == kInf) {
      rep.min_ratio = r.ratio;
      rep.min_ratio_error = r.ratio_error;
    }
  }
  rep.verdict = decide(rep.records, rep.constant);
  if (std::isfinite(rep.min_ratio) && rep.min_ratio > 1e6 * rep.constant)
    rep.notes.push_back("chain constant is " +
                        format_number(std::floor(std::log10(rep.min_ratio / rep.constant))) +
                        " orders of magnitude below the smallest observed ratio");
  std::vector<std::string> specs;
  for (const fn::FieldFunction &f : fs) specs.push_back(f.describe());
  std::sort(specs.begin(), specs.end());
  rep.config = {{"inequality", std::string(to_string(rep.inequality))},
                {"dimension", rep.dimension},
                {"domain", rep.domain},
                {"functions", specs},
                {"campaign", to_json(cfg)}};
}

// max |f| on a fixed sample of d; both sides are then evaluated for f / peak,
// which makes every quadrature decision independent of the scale of f.
double peak(const fn::FieldFunction &f, const geo::Domain &d) {
  quad::Rng rng(0x243f6a8885a308d3ULL);
  std::vector<double> u(d.dim(), 0.0);
  double m = std::abs(f(d.map(u)));
  for (int k = 0; k < 8192; ++k) {
    rng.point_in_ball(u);
    m = std::max(m, std::abs(f(d.map(u))));
  }
  return m > 0.0 && std::isfinite(m) ? m : 1.0;
}

void rescale(Record &r, double m) {
  const double s = m * m;
  r.energy *= s;
  r.energy_error *= s;
  r.norm *= s;
  r.norm_error *= s;
  r.sym_energy *= s;
  r.sym_energy_error *= s;
  r.sym_norm *= s;
  r.sym_norm_tolerance *= s;
}

void require_nonzero(const fn::FieldFunction &f) {
  if (f.is_identically_zero())
    throw Error(ErrorKind::EmptyFunction, f.describe() + " vanishes identically");
}

bool centred(const geo::Domain &d) {
  if (const auto *b = std::get_if<geo::Ball>(&d.kind()))
    return std::all_of(b->center.begin(), b->center.end(), [](double c) { return c == 0.0; });
  return true;
}

// f = 0 near the boundary of d: by the support radius when d is centred,
// otherwise on a sample of the shell 1 - 1e-3 < |u| < 1 of the reference ball.
bool vanishes_near_boundary(const fn::FieldFunction &f, const geo::Domain &d,
                            std::size_t samples, std::uint64_t seed) {
  if (centred(d) && f.support_radius() < d.inradius()) return true;
  quad::Rng rng(quad::shard_seed(seed, 0x5bd1e995));
  std::vector<double> u(d.dim());
  for (std::size_t k = 0; k < samples; ++k) {
    rng.unit_vector(u);
    const double t = 1.0 - 1e-3 * rng.uniform();
    for (double &c : u) c *= t;
    if (f(d.map(u)) != 0.0) return false;
  }
  return true;
}

} // namespace

Report verify_compact_support(const geo::NestedPair &pair, const std::vector<fn::FieldFunction> &fs,
                       const CampaignConfig &cfg) {
  if (fs.empty()) throw Error(ErrorKind::InvalidArgument, "verify_compact_support: empty corpus");
  Report rep;
  rep.inequality = Inequality::CompactSupport;
  rep.dimension = pair.inner.dim();
  rep.domain = geo::describe(pair);
  rep.chain = ly::chain_constants(pair);
  rep.constant_name = "2*c2";
  rep.constant = 2.0 * rep.chain.c2;
  const int n = rep.dimension;

  for (const fn::FieldFunction &f : fs) {
    require_nonzero(f);
    const bool inside_by_radius = centred(pair.inner) && pair.inner.is_ball() &&
                                  f.support_radius() <= pair.inner.inradius();
    if (!inside_by_radius) {
      quad::Rng rng(quad::shard_seed(cfg.mc.seed, 0x9e3779b9));
      std::vector<double> u(n);
      for (std::size_t k = 0; k < cfg.support_samples; ++k) {
        rng.point_in_ball(u);
        const geo::Point x = pair.outer.map(u);
        if (f(x) != 0.0 && !pair.inner.contains(x))
          throw Error(ErrorKind::SupportViolation,
                      f.describe() + " does not vanish outside the inner domain");
      }
    }
    const double m = peak(f, pair.inner);
    const fn::FieldFunction g = f.scaled(1.0 / m);
    Record r;
    r.function = f.describe();
    fill_energy_mc(r, g, pair.outer, cfg);
    fill_norm(r, g, pair.inner, WeightKind::Kato, cfg);
    rescale(r, m);
    set_ratio(r);
    rep.records.push_back(std::move(r));
  }
  finish(rep, cfg, fs);
  return rep;
}

Report verify_kato_log(int n, const std::vector<fn::FieldFunction> &fs, const CampaignConfig &cfg) {
  if (fs.empty()) throw Error(ErrorKind::InvalidArgument, "verify_kato_log: empty corpus");
  Report rep;
  rep.inequality = Inequality::KatoLog;
  rep.dimension = n;
  const geo::Domain ball = geo::Domain::unit_ball(n);
  rep.domain = ball.describe();
  rep.chain = ly::chain_constants(n);
  rep.constant_name = "c4";
  rep.constant = rep.chain.c4;

  for (const fn::FieldFunction &f : fs) {
    require_nonzero(f);
    const double m = peak(f, ball);
    const fn::FieldFunction g = f.scaled(1.0 / m);
    Record r;
    r.function = f.describe();
    r.hypothesis_violation = !(f.support_radius() < 1.0);
    if (const auto p = g.as_radial()) {
      fill_energy_radial(r, *p, n, cfg);
    } else {
      fill_energy_mc(r, g, ball, cfg);
    }
    try {
      fill_norm(r, g, ball, WeightKind::LogKato, cfg);
    } catch (const Error &err) {
      if (!r.hypothesis_violation || err.kind() != ErrorKind::DivergentNorm) throw;
      r.norm = kInf;
    }
    if (!r.hypothesis_violation && !g.as_radial()) symmetrization_check(r, g, n, cfg);
    rescale(r, m);
    if (r.hypothesis_violation) {
      r.note = "support reaches the boundary";
      r.ratio = r.divergent_energy ? kInf : r.energy / r.norm;
      r.ratio_error = 0.0;
    } else {
      set_ratio(r);
    }
    rep.records.push_back(std::move(r));
  }
  finish(rep, cfg, fs);
  return rep;
}

Report verify_mapped_domain(const geo::Domain &d, const std::vector<fn::FieldFunction> &fs,
                       const CampaignConfig &cfg) {
  if (fs.empty()) throw Error(ErrorKind::InvalidArgument, "verify_mapped_domain: empty corpus");
  Report rep;
  rep.inequality = Inequality::MappedDomain;
  rep.dimension = d.dim();
  rep.domain = d.describe();
  rep.chain = ly::chain_constants(d, cfg.jacobian_samples, cfg.mc.seed);
  rep.constant_name = "c14";
  rep.constant = rep.chain.c14;

  for (const fn::FieldFunction &f : fs) {
    require_nonzero(f);
    const double m = peak(f, d);
    const fn::FieldFunction g = f.scaled(1.0 / m);
    Record r;
    r.function = f.describe();
    r.hypothesis_violation = !vanishes_near_boundary(f, d, cfg.support_samples, cfg.mc.seed);
    fill_energy_mc(r, g, d, cfg);
    try {
      fill_norm(r, g, d, WeightKind::LogKato, cfg);
    } catch (const Error &err) {
      if (!r.hypothesis_violation || err.kind() != ErrorKind::DivergentNorm) throw;
      r.norm = kInf;
    }
    rescale(r, m);
    if (r.hypothesis_violation) {
      r.note = "does not vanish near the boundary";
      r.ratio = r.energy / r.norm;
      r.ratio_error = 0.0;
    } else {
      set_ratio(r);
    }
    rep.records.push_back(std::move(r));
  }
  finish(rep, cfg, fs);
  return rep;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

nlohmann::json to_json(const ly::ConstantChain &c) {
  nlohmann::json j = {
      {"n", c.n},          {"c4", number(c.c4)},   {"c5", number(c.c5)},
      {"c6", number(c.c6)}, {"c7", number(c.c7)},   {"c8", number(c.c8)},
      {"c9", number(c.c9)}, {"c10", number(c.c10)}, {"c11", number(c.c11)},
      {"c12", number(c.c12)}, {"c12_raw", number(c.c12_raw)}, {"c13", number(c.c13)},
      {"c14", number(c.c14)}, {"c14_presafety", number(c.c14_presafety)},
  };
  if (c.c2 > 0.0) {
    j["c1"] = number(c.c1);
    j["c2"] = number(c.c2);
    j["c3"] = number(c.c3);
    j["kappa"] = number(c.kappa_gap);
  }
  nlohmann::json prov = nlohmann::json::object();
  for (const auto &[k, v] : c.provenance) prov[k] = v;
  j["provenance"] = prov;
  return j;
}

nlohmann::json to_json(const CampaignConfig &c) {
  return {{"mc", {{"samples", c.mc.samples}, {"seed", c.mc.seed}, {"shards", c.mc.shards}}},
          {"tol", c.tol},
          {"norm",
           {{"tol", c.norm.tol},
            {"rel_tol", c.norm.rel_tol},
            {"angular_nodes", c.norm.angular_nodes},
            {"force_mc", c.norm.force_mc}}},
          {"jacobian_samples", c.jacobian_samples},
          {"support_samples", c.support_samples},
          {"sphere_samples", c.sphere_samples}};
}

nlohmann::json to_json(const Report &r) {
  nlohmann::json recs = nlohmann::json::array();
  for (const Record &x : r.records) {
    nlohmann::json j = {{"function", x.function},
                        {"energy", number(x.energy)},
                        {"energy_error", number(x.energy_error)},
                        {"energy_method", x.energy_method},
                        {"norm", number(x.norm)},
                        {"norm_error", number(x.norm_error)},
                        {"norm_method", x.norm_method},
                        {"ratio", number(x.ratio)},
                        {"ratio_error", number(x.ratio_error)},
                        {"divergent_energy", x.divergent_energy},
                        {"hypothesis_violation", x.hypothesis_violation}};
    if (!x.note.empty()) j["note"] = x.note;
    if (x.has_symmetrization)
      j["symmetrization"] = {{"energy", number(x.sym_energy)},
                             {"energy_error", number(x.sym_energy_error)},
                             {"norm", number(x.sym_norm)},
                             {"norm_tolerance", number(x.sym_norm_tolerance)},
                             {"energy_decreases", x.sym_energy_decreases},
                             {"norm_preserved", x.sym_norm_preserved}};
    recs.push_back(std::move(j));
  }
  return {{"inequality", std::string(to_string(r.inequality))},
          {"dimension", r.dimension},
          {"domain", r.domain},
          {"constant_chain", to_json(r.chain)},
          {"constant", {{"name", r.constant_name}, {"value", number(r.constant)}}},
          {"records", recs},
          {"min_ratio", number(r.min_ratio)},
          {"min_ratio_error", number(r.min_ratio_error)},
          {"verdict", std::string(to_string(r.verdict))},
          {"notes", r.notes},
          {"config", r.config}};
}

// ---------------------------------------------------------------------------
// Corpus

std::vector<std::string> default_corpus(int n) {
  std::vector<std::string> out = {
      "radial(profile=bump(c=0,w=0.6))",
      "radial(profile=bump(c=0.5,w=0.3))",
      "radial(profile=spline(k0=0,v0=1,k1=0.4,v1=1,k2=0.8,v2=0))",
      "radial(profile=power(alpha=0.3,tau=0.1))",
      "radial(profile=spline(k0=0.2,v0=0,k1=0.5,v1=1,k2=0.9,v2=0))",
      "product(a=coordinate(i=1),b=radial(profile=bump(c=0,w=0.8)))",
  };
  if (n == 2) {
    out.push_back("shifted_bump(c1=0.3,c2=0,w=0.5)");
    out.push_back("shifted_bump(c1=-0.2,c2=0.3,w=0.4)");
  } else if (n == 3) {
    out.push_back("shifted_bump(c1=0.3,c2=0,c3=0,w=0.5)");
    out.push_back("shifted_bump(c1=-0.2,c2=0.3,c3=0.1,w=0.4)");
  } else {
    throw Error(ErrorKind::InvalidArgument, "the default corpus covers n = 2 and n = 3");
  }
  return out;
}

std::vector<fn::FieldFunction> parse_corpus(const std::vector<std::string> &specs) {
  std::vector<fn::FieldFunction> out;
  out.reserve(specs.size());
  for (const std::string &s : specs) out.push_back(spec::parse_field(s));
  return out;
}

KeyValues read_key_values(std::istream &in) {
  KeyValues out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    std::string key = trim(line.substr(0, eq));
    if (eq == std::string::npos || key.empty() || key.find('(') != std::string::npos)
      throw Error(ErrorKind::InvalidArgument,
                  "config line " + std::to_string(lineno) + ": expected 'key = value'");
    out.emplace_back(std::move(key), trim(line.substr(eq + 1)));
  }
  return out;
}

KeyValues read_key_values_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open config file " + path);
  return read_key_values(in);
}

std::vector<std::string> corpus_functions(const KeyValues &kv) {
  std::vector<std::string> out;
  for (const auto &[k, v] : kv)
    if (k == "f") out.push_back(v);
  return out;
}

// ---------------------------------------------------------------------------
// Best constants

void EstimateConfig::validate() const {
  if (inequality != Inequality::KatoLog)
    throw Error(ErrorKind::InvalidArgument, "estimate supports the kato-log inequality");
  if (knots < 3) throw Error(ErrorKind::InvalidArgument, "estimate: need at least 3 knots");
  if (!(support_end > 0.0 && support_end < 1.0))
    throw Error(ErrorKind::InvalidArgument, "estimate: support_end must lie in (0, 1)");
  if (!(power_tau > 0.0 && power_tau < 1.0))
    throw Error(ErrorKind::InvalidArgument, "estimate: power_tau must lie in (0, 1)");
  if (max_iterations < 100)
    throw Error(ErrorKind::InvalidArgument, "estimate: iteration budget must be >= 100");
  if (restarts < 2) throw Error(ErrorKind::InvalidArgument, "estimate: need >= 2 restarts");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "estimate: tol must be positive");
}

namespace {

std::vector<double> family_knots(int knots, double end) {
  std::vector<double> k(knots);
  for (int i = 0; i < knots; ++i) k[i] = end * i / (knots - 1);
  return k;
}

fn::RadialProfile spline_of(const std::vector<double> &knots, const std::vector<double> &free) {
  std::vector<double> v(free);
  v.push_back(0.0);
  return fn::RadialProfile::spline(knots, v);
}

double rayleigh(const fn::RadialProfile &p, int n) {
  const double e = energy::energy_radial_exact(p, n, 1e-10).value;
  const double m = energy::weighted_norm(fn::FieldFunction::radial(p), geo::Domain::unit_ball(n),
                                         WeightKind::LogKato)
                       .value;
  return e / m;
}

struct Objective {
  std::function<double(const std::vector<double> &)> f;
  int evaluations = 0;
};

double gsl_objective(const gsl_vector *x, void *params) {
  auto *obj = static_cast<Objective *>(params);
  std::vector<double> v(x->size);
  for (std::size_t i = 0; i < x->size; ++i) v[i] = gsl_vector_get(x, i);
  ++obj->evaluations;
  const double y = obj->f(v);
  return std::isfinite(y) ? y : 1e300;
}

// One Nelder-Mead run from x0 with initial step `step`.
double nelder_mead(Objective &obj, std::vector<double> &x, double step, int max_iter, double tol) {
  const std::size_t m = x.size();
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> gx(gsl_vector_alloc(m), gsl_vector_free);
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> gs(gsl_vector_alloc(m), gsl_vector_free);
  for (std::size_t i = 0; i < m; ++i) gsl_vector_set(gx.get(), i, x[i]);
  gsl_vector_set_all(gs.get(), step);
  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> s(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, m),
      gsl_multimin_fminimizer_free);
  gsl_multimin_function fn{&gsl_objective, m, &obj};
  gsl_multimin_fminimizer_set(s.get(), &fn, gx.get(), gs.get());
  for (int it = 0; it < max_iter; ++it) {
    if (gsl_multimin_fminimizer_iterate(s.get())) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s.get()), tol) == GSL_SUCCESS) break;
  }
  const gsl_vector *best = gsl_multimin_fminimizer_x(s.get());
  for (std::size_t i = 0; i < m; ++i) x[i] = gsl_vector_get(best, i);
  return gsl_multimin_fminimizer_minimum(s.get());
}

} // namespace

SplineForms spline_forms(int n, int knots, double support_end) {
  SplineForms out;
  out.knots = family_knots(knots, support_end);
  const int m = knots - 1;
  const geo::Domain ball = geo::Domain::unit_ball(n);
  auto hat = [&](int i, int j) {
    std::vector<double> v(m, 0.0);
    v[i] += 1.0;
    if (j >= 0) v[j] += 1.0;
    return spline_of(out.knots, v);
  };
  auto E = [&](const fn::RadialProfile &p) { return energy::energy_radial_exact(p, n, 1e-11).value; };
  auto N = [&](const fn::RadialProfile &p) {
    return energy::weighted_norm(fn::FieldFunction::radial(p), ball, WeightKind::LogKato).value;
  };
  out.energy = Eigen::MatrixXd::Zero(m, m);
  out.norm = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    out.energy(i, i) = E(hat(i, -1));
    out.norm(i, i) = N(hat(i, -1));
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const fn::RadialProfile p = hat(i, j);
      out.energy(i, j) = out.energy(j, i) = 0.5 * (E(p) - out.energy(i, i) - out.energy(j, j));
      if (j == i + 1)
        out.norm(i, j) = out.norm(j, i) = 0.5 * (N(p) - out.norm(i, i) - out.norm(j, j));
    }
  return out;
}

EstimateResult estimate_best_constant(int n, const EstimateConfig &cfg) {
  cfg.validate();
  gsl_set_error_handler_off();
  EstimateResult res;
  res.chain_constant = ly::chain_constants(n).c4;
  quad::Rng rng(quad::shard_seed(cfg.seed, 17));

  Objective obj;
  std::vector<double> x;
  std::function<std::string(const std::vector<double> &)> describe;
  std::function<double(const std::vector<double> &)> verify;
  double step = 0.5;

  if (cfg.family == EstimateFamily::Spline) {
    const SplineForms forms = spline_forms(n, cfg.knots, cfg.support_end);
    obj.f = [forms](const std::vector<double> &v) {
      const Eigen::Map<const Eigen::VectorXd> q(v.data(), static_cast<Eigen::Index>(v.size()));
      const double den = q.dot(forms.norm * q);
      if (!(den > 1e-300)) return 1e300;
      return q.dot(forms.energy * q) / den;
    };
    x.assign(cfg.knots - 1, 1.0);
    describe = [knots = forms.knots](const std::vector<double> &v) {
      double s = 0.0;
      for (double a : v) s = std::max(s, std::abs(a));
      std::vector<double> w(v);
      for (double &a : w) a /= s;
      return fn::FieldFunction::radial(spline_of(knots, w)).describe();
    };
    verify = [n, knots = forms.knots](const std::vector<double> &v) {
      return rayleigh(spline_of(knots, v), n);
    };
  } else {
    // Outside [kAlphaMin, kAlphaMax] the ratio at the nearest end plus a
    // quadratic penalty.
    static constexpr double kAlphaMin = 1e-3, kAlphaMax = 0.499;
    auto clamp = [](double a) { return std::clamp(a, kAlphaMin, kAlphaMax); };
    auto profile = [&cfg, clamp](double a) {
      return fn::RadialProfile::power(clamp(a), cfg.power_tau);
    };
    obj.f = [n, profile, clamp](const std::vector<double> &v) {
      const double d = v[0] - clamp(v[0]);
      return rayleigh(profile(v[0]), n) + 1e3 * d * d;
    };
    x.assign(1, 0.25);
    step = 0.1;
    describe = [profile](const std::vector<double> &v) {
      return fn::FieldFunction::radial(profile(v[0])).describe();
    };
    verify = [n, profile](const std::vector<double> &v) { return rayleigh(profile(v[0]), n); };
  }

  std::vector<double> best = x;
  double best_value = obj.f(x);
  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<double> start = best;
    if (r > 0)
      for (double &a : start) a += 0.1 * (2.0 * rng.uniform() - 1.0);
    const double v = nelder_mead(obj, start, step, cfg.max_iterations, cfg.tol);
    res.restart_values.push_back(v);
    if (v < best_value) {
      best_value = v;
      best = start;
    }
  }
  res.evaluations = obj.evaluations;
  res.constant = best_value;
  res.argmin = describe(best);
  res.verified = verify(best);
  const double first = res.restart_values.front();
  res.stalled = std::none_of(res.restart_values.begin() + 1, res.restart_values.end(),
                             [&](double v) { return v < first * (1.0 - 1e-12); });
  if (res.verified < res.chain_constant)
    throw Error(ErrorKind::ViolationFound, "empirical constant " + format_number(res.verified) +
                                               " is below the chain constant " +
                                               format_number(res.chain_constant));
  return res;
}

nlohmann::json to_json(const EstimateResult &r) {
  return {{"constant", number(r.constant)},
          {"verified", number(r.verified)},
          {"argmin", r.argmin},
          {"chain_constant", number(r.chain_constant)},
          {"stalled", r.stalled},
          {"evaluations", r.evaluations},
          {"restart_values", r.restart_values}};
}

} // namespace kato::verify
