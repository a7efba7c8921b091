#pragma once

// Inequality campaigns: each function of a corpus gets its energy, weighted
// norm and ratio with error bars, and the campaign compares the smallest
// ratio with the constant of the chain.

#include "kato/energy.hpp"
#include "kato/functions.hpp"
#include "kato/geometry.hpp"
#include "kato/liebyau.hpp"

#include <json.hpp>

#include <cstdint>
#include <istream>
#include <utility>
#include <string>
#include <string_view>
#include <vector>

namespace kato::verify {

enum class Inequality { CompactSupport, KatoLog, MappedDomain };
std::string_view to_string(Inequality q);
// "compact-support", "kato-log", "mapped-domain".
Inequality parse_inequality(std::string_view name);

enum class Verdict { Pass, PassWithSlack, Inconclusive, HypothesisViolation, Violation };
std::string_view to_string(Verdict v);
// 0 pass, 2 inconclusive, 3 hypothesis violation, 1 violation.
int exit_code(Verdict v);

struct CampaignConfig {
  quad::MCConfig mc{1'000'000, 1, 8};
  double tol = 1e-8;
  energy::NormOptions norm{};
  std::size_t jacobian_samples = 20000;
  std::size_t support_samples = 20000;
  int sphere_samples = 2048;
};

struct Record {
  std::string function;
  double energy = 0.0;
  double energy_error = 0.0;
  double norm = 0.0;
  double norm_error = 0.0;
  double ratio = 0.0;
  double ratio_error = 0.0;
  bool divergent_energy = false;
  bool hypothesis_violation = false;
  std::string energy_method;
  std::string norm_method;
  std::string note;
  // Symmetrization cross-check (non-radial fields on the ball).
  bool has_symmetrization = false;
  double sym_energy = 0.0;
  double sym_energy_error = 0.0;
  double sym_norm = 0.0;
  double sym_norm_tolerance = 0.0;
  bool sym_energy_decreases = false;
  bool sym_norm_preserved = false;
};

struct Report {
  Inequality inequality = Inequality::KatoLog;
  int dimension = 2;
  std::string domain;
  std::string constant_name;
  double constant = 0.0;
  ly::ConstantChain chain;
  std::vector<Record> records; // sorted by function
  double min_ratio = 0.0;      // over finite records; infinity when none
  double min_ratio_error = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> notes;
  nlohmann::json config;
};

// Support of f inside closure(inner) on a sample of the outer domain
// (SupportViolation, EmptyFunction otherwise); E over outer x outer by Monte
// Carlo against 2 c2 int_inner |f|^2 / rho_inner.
Report verify_compact_support(const geo::NestedPair &pair, const std::vector<fn::FieldFunction> &fs,
                       const CampaignConfig &cfg = {});

// Unit ball: E against c4 int |f|^2 / ((1-|x|)(1 + |ln(1-|x|)|^3)).
Report verify_kato_log(int n, const std::vector<fn::FieldFunction> &fs,
                       const CampaignConfig &cfg = {});

// Mapped domain: E_Omega against c14 int |f|^2 / (rho (1 + |ln rho|^3)).
Report verify_mapped_domain(const geo::Domain &d, const std::vector<fn::FieldFunction> &fs,
                       const CampaignConfig &cfg = {});

// The verdict rule applied to a list of records and a constant.
Verdict decide(const std::vector<Record> &records, double constant);

nlohmann::json to_json(const Report &r);
nlohmann::json to_json(const ly::ConstantChain &c);
nlohmann::json to_json(const CampaignConfig &c);
// Numbers with non-finite values become null.
nlohmann::json number(double x);

inline constexpr int kCorpusDimensions[] = {2, 3};
// Five radial and three non-radial specs for n in {2, 3}.
std::vector<std::string> default_corpus(int n);
std::vector<fn::FieldFunction> parse_corpus(const std::vector<std::string> &specs);

// Configuration files: one `key = value` per line, '#' starts a comment.
using KeyValues = std::vector<std::pair<std::string, std::string>>;
KeyValues read_key_values(std::istream &in);
KeyValues read_key_values_file(const std::string &path);
// The values of every `f = ...` line.
std::vector<std::string> corpus_functions(const KeyValues &kv);

// ---------------------------------------------------------------------------
// Empirical best constants

enum class EstimateFamily { Spline, Power };

struct EstimateConfig {
  Inequality inequality = Inequality::KatoLog;
  EstimateFamily family = EstimateFamily::Spline;
  int knots = 8;
  double support_end = 0.95; // last knot, where the spline is pinned to 0
  double power_tau = 0.05;
  int max_iterations = 200;
  int restarts = 3;
  double tol = 1e-10;
  std::uint64_t seed = 1;

  void validate() const;
};

struct EstimateResult {
  double constant = 0.0;  // smallest ratio found
  double verified = 0.0;  // ratio of the argmin re-evaluated from scratch
  std::string argmin;
  double chain_constant = 0.0;
  bool stalled = false; // no restart improved on the first
  int evaluations = 0;
  std::vector<double> restart_values;
};

// Energy and LogKato-norm Gram matrices of the hat basis of the spline
// family; the generalized eigenvalue problem A x = l B x gives the exact
// minimum of the Rayleigh ratio over the family.
struct SplineForms {
  std::vector<double> knots;
  Eigen::MatrixXd energy;
  Eigen::MatrixXd norm;
};
SplineForms spline_forms(int n, int knots, double support_end);

EstimateResult estimate_best_constant(int n, const EstimateConfig &cfg = {});
nlohmann::json to_json(const EstimateResult &r);

} // namespace kato::verify
