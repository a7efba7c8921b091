#include "kato/energy.hpp"
#include "kato/error.hpp"
#include "kato/liebyau.hpp"
#include "kato/spec.hpp"
#include "kato/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace kato;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string command;
  int n = 2;
  std::string domain;
  std::vector<std::string> functions;
  std::string corpus;
  std::string inequality = "kato-log";
  std::string h = "barrier(omega=0.1)";
  std::string family = "spline";
  double tol = 1e-8;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  int points = 64;
  int knots = 8;
  int restarts = 3;
  int max_iterations = 200;
  int angular_nodes = 256;
  std::string out;
};

json to_json(const RunConfig &c) {
  return {{"command", c.command}, {"n", c.n},
          {"domain", c.domain},   {"f", c.functions},
          {"corpus", c.corpus},   {"inequality", c.inequality},
          {"h", c.h},             {"family", c.family},
          {"tol", c.tol},         {"samples", c.samples},
          {"seed", c.seed},       {"points", c.points},
          {"knots", c.knots},     {"restarts", c.restarts},
          {"max_iterations", c.max_iterations},
          {"angular_nodes", c.angular_nodes}};
}

// Values of a config file: `key = value` lines, or a report whose
// "run_config" is replayed.
verify::KeyValues load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') {
    std::istringstream lines(text);
    return verify::read_key_values(lines);
  }
  json j = json::parse(text);
  if (j.contains("run_config")) j = j["run_config"];
  verify::KeyValues kv;
  for (const auto &[k, v] : j.items()) {
    if (k == "command") continue;
    if (v.is_array()) {
      for (const auto &e : v) kv.emplace_back(k, e.get<std::string>());
    } else if (v.is_string()) {
      kv.emplace_back(k, v.get<std::string>());
    } else {
      kv.emplace_back(k, v.dump());
    }
  }
  return kv;
}

void emit(const RunConfig &cfg, const std::string &text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + cfg.out);
  f << text;
}

void emit_json(const RunConfig &cfg, json j) {
  j["run_config"] = to_json(cfg);
  emit(cfg, j.dump(2) + "\n");
}

verify::CampaignConfig campaign_config(const RunConfig &c) {
  verify::CampaignConfig cc;
  cc.mc.samples = c.samples;
  cc.mc.seed = c.seed;
  cc.tol = c.tol;
  cc.norm.angular_nodes = c.angular_nodes;
  return cc;
}

std::vector<std::string> corpus_specs(const RunConfig &c) {
  std::vector<std::string> specs;
  if (c.corpus == "default") {
    specs = verify::default_corpus(c.n);
  } else if (!c.corpus.empty()) {
    specs = verify::corpus_functions(verify::read_key_values_file(c.corpus));
  }
  specs.insert(specs.end(), c.functions.begin(), c.functions.end());
  if (specs.empty())
    throw Error(ErrorKind::InvalidArgument, "no functions: pass --f or --corpus");
  return specs;
}

int run_constants(const RunConfig &c) {
  const ly::ScalarConstants pc = ly::scalar_constants();
  json j;
  j["constants"] = {{"c7", pc.c7},
                    {"c8", pc.c8},
                    {"c9", pc.c9},
                    {"c10", pc.c10},
                    {"c8_closed", pc.c8_closed},
                    {"c9_closed", pc.c9_closed},
                    {"c10_closed", pc.c10_closed},
                    {"c10_quadrature", pc.c10_quadrature},
                    {"psi_quarter", pc.psi_quarter},
                    {"kappa", ly::kKappa}};
  ly::ConstantChain chain;
  if (c.domain.empty()) {
    chain = ly::chain_constants(c.n);
  } else {
    const spec::Expr e = spec::parse(c.domain);
    if (e.name == "pair") {
      chain = ly::chain_constants(spec::to_pair(e));
    } else {
      chain = ly::chain_constants(spec::to_domain(e), 20000, c.seed);
    }
  }
  j["constant_chain"] = verify::to_json(chain);
  emit_json(c, j);
  return 0;
}

int run_energy(const RunConfig &c) {
  if (c.functions.size() != 1) throw Error(ErrorKind::InvalidArgument, "energy takes one --f");
  const fn::FieldFunction f = spec::parse_field(c.functions.front());
  const geo::Domain d =
      c.domain.empty() ? geo::Domain::unit_ball(c.n) : spec::parse_domain(c.domain);
  json j = {{"function", f.describe()}, {"domain", d.describe()}, {"divergent", false}};
  const auto p = f.as_radial();
  if (p && d.is_unit_ball()) {
    j["method"] = "radial-quadrature";
    try {
      const quad::QuadratureResult e = energy::energy_radial_exact(*p, d.dim(), c.tol);
      j["energy"] = e.value;
      j["energy_error"] = e.error_estimate;
    } catch (const Error &err) {
      if (err.kind() != ErrorKind::DiagonalDivergence) throw;
      j["energy"] = nullptr;
      j["energy_error"] = nullptr;
      j["divergent"] = true;
    }
  } else {
    quad::MCConfig mc;
    mc.samples = c.samples;
    mc.seed = c.seed;
    const quad::QuadratureResult e = energy::energy_general_mc(f, d, mc);
    j["method"] = "monte-carlo";
    j["energy"] = e.value;
    j["energy_error"] = e.error_estimate;
  }
  emit_json(c, j);
  return 0;
}

int run_verify(const RunConfig &c) {
  const verify::Inequality q = verify::parse_inequality(c.inequality);
  const std::vector<fn::FieldFunction> fs = verify::parse_corpus(corpus_specs(c));
  const verify::CampaignConfig cc = campaign_config(c);
  verify::Report rep;
  switch (q) {
  case verify::Inequality::CompactSupport:
    rep = verify::verify_compact_support(
        spec::to_pair(spec::parse(c.domain.empty()
                                      ? "pair(outer=ball(n=" + std::to_string(c.n) +
                                            ",r=2),inner=ball(n=" + std::to_string(c.n) + "))"
                                      : c.domain)),
        fs, cc);
    break;
  case verify::Inequality::KatoLog:
    rep = verify::verify_kato_log(c.n, fs, cc);
    break;
  case verify::Inequality::MappedDomain:
    if (c.domain.empty()) throw Error(ErrorKind::InvalidArgument, "mapped-domain needs --domain");
    rep = verify::verify_mapped_domain(spec::parse_domain(c.domain), fs, cc);
    break;
  }
  emit_json(c, verify::to_json(rep));
  std::cerr << "verdict: " << verify::to_string(rep.verdict) << "\n";
  return verify::exit_code(rep.verdict);
}

int run_estimate(const RunConfig &c) {
  verify::EstimateConfig ec;
  ec.inequality = verify::parse_inequality(c.inequality);
  if (c.family == "spline") {
    ec.family = verify::EstimateFamily::Spline;
  } else if (c.family == "power") {
    ec.family = verify::EstimateFamily::Power;
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown family '" + c.family + "' (spline, power)");
  }
  ec.knots = c.knots;
  ec.restarts = c.restarts;
  ec.max_iterations = c.max_iterations;
  ec.seed = c.seed;
  const verify::EstimateResult r = verify::estimate_best_constant(c.n, ec);
  if (r.stalled) std::cerr << "note: no restart improved on the first run\n";
  emit_json(c, verify::to_json(r));
  return 0;
}

int run_potential(const RunConfig &c) {
  if (c.points < 1) throw Error(ErrorKind::InvalidArgument, "--points must be positive");
  const ly::TestFunctionH h = spec::to_test_function(spec::parse(c.h));
  std::vector<double> radii(c.points);
  for (int k = 0; k < c.points; ++k) radii[k] = (k + 0.5) / c.points;
  std::ostringstream csv;
  csv.precision(17);
  csv << "r,L\n";
  for (const auto &[r, L] : ly::potential_profile(h, c.n, radii)) csv << r << "," << L << "\n";
  emit(c, csv.str());
  return 0;
}

// Config values for options that were not given on the command line.
void apply_config(CLI::App &sub, const verify::KeyValues &kv) {
  std::vector<std::string> pending_f;
  for (const auto &[key, value] : kv) {
    CLI::Option *opt = nullptr;
    try {
      opt = sub.get_option("--" + key);
    } catch (const CLI::OptionNotFound &) {
      throw Error(ErrorKind::InvalidArgument, "config: unknown key '" + key + "'");
    }
    if (opt->count() > 0) continue;
    if (key == "f") {
      pending_f.push_back(value);
      continue;
    }
    opt->clear();
    opt->add_result(value);
    opt->run_callback();
  }
  if (!pending_f.empty()) {
    CLI::Option *opt = sub.get_option("--f");
    opt->clear();
    for (const std::string &v : pending_f) opt->add_result(v);
    opt->run_callback();
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"kato_lab: fractional Hardy-type inequalities, constants and campaigns"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  RunConfig cfg;
  std::string config_path;

  auto common = [&](CLI::App *s) {
    s->add_option("--n", cfg.n, "dimension")->check(CLI::Range(2, 8));
    s->add_option("--tol", cfg.tol, "quadrature tolerance");
    s->add_option("--seed", cfg.seed, "Monte Carlo seed");
    s->add_option("--samples", cfg.samples, "Monte Carlo samples");
    s->add_option("--out", cfg.out, "output file (default stdout)");
    s->add_option("--config", config_path, "config file (key = value lines or a report)");
    s->add_option("--domain", cfg.domain, "domain spec, e.g. ellipsoid(a=1.5,b=1)");
    s->add_option("--f", cfg.functions, "function spec (repeatable)");
    s->add_option("--inequality", cfg.inequality, "compact-support, kato-log, mapped-domain");
    s->add_option("--corpus", cfg.corpus, "'default' or a corpus file");
    s->add_option("--angular-nodes,--angular_nodes", cfg.angular_nodes,
                  "directions per great circle for weighted norms");
    s->add_option("--test-function,--h", cfg.h, "test function spec for potential");
    s->add_option("--points", cfg.points, "radii in the potential profile");
    s->add_option("--family", cfg.family, "estimate family: spline or power");
    s->add_option("--knots", cfg.knots, "spline knots");
    s->add_option("--restarts", cfg.restarts, "optimizer restarts");
    s->add_option("--max-iterations,--max_iterations", cfg.max_iterations,
                  "optimizer iterations per restart");
  };

  struct Command {
    const char *name;
    const char *help;
    int (*run)(const RunConfig &);
  };
  const Command commands[] = {
      {"constants", "emit the scalar constants and the constant chain", run_constants},
      {"energy", "energy of one function", run_energy},
      {"verify", "run an inequality campaign", run_verify},
      {"estimate", "search for the best constant over a family", run_estimate},
      {"potential", "radial potential profile as CSV (r,L)", run_potential},
  };
  std::vector<CLI::App *> subs;
  for (const Command &c : commands) {
    CLI::App *s = app.add_subcommand(c.name, c.help);
    common(s);
    subs.push_back(s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!subs[i]->parsed()) continue;
      cfg.command = commands[i].name;
      if (!config_path.empty()) apply_config(*subs[i], load_config(config_path));
      return commands[i].run(cfg);
    }
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
