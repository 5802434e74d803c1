#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "missmass/bounds.hpp"
#include "missmass/chernoff.hpp"
#include "missmass/model.hpp"
#include "missmass/oracle.hpp"
#include "missmass/side.hpp"

namespace missmass {

enum class Scenario { FourPoint, Table1, Birthday, Custom };

struct ExperimentConfig {
  Scenario scenario = Scenario::Custom;
  // Empty means the scenario default.
  std::vector<double> eps_list;
  std::uint64_t trials = 200;
  std::uint64_t seed = 42;
  // Empty means the scenario default.
  std::vector<Family> families;
  std::string output_path = "-";
  unsigned threads = 0;
};

// One bound family evaluated at one (eps, side).
struct FamilyOutcome {
  Family family;
  Side side;
  // "ok", "trivial: tail is zero", or "domain_mismatch: ..." / "error: ..."
  std::string status;
  std::optional<ChernoffResult> result;
};

struct ComparisonRow {
  std::string scenario;
  std::size_t m = 0;
  std::uint64_t n = 0;
  double eps = 0.0;
  std::vector<FamilyOutcome> families;
  // Upper-tail oracle at eps.
  OracleEstimate oracle;
  // Two-sided Rosenthal/Markov tail with default (uncertified) constants.
  double rosenthal_tail = 1.0;
  // Baseline log tail bound minus exact_am_gm log tail bound, upper tail.
  double logp_improvement = 0.0;
  bool trivial = false;
};

/// Optimized Chernoff tails of `families` on `sides` at each eps, with an
/// exact oracle when m <= 20 and a Monte-Carlo oracle of the true missing
/// mass otherwise. Infeasible family/side pairs are reported per row.
std::vector<ComparisonRow> compare_families(const SampleModel& model, const std::string& scenario,
                                            const std::vector<double>& eps_list,
                                            const std::vector<Family>& families,
                                            const std::vector<Side>& sides,
                                            std::uint64_t mc_trials, std::uint64_t seed,
                                            unsigned threads);

struct CurvePoint {
  double t;
  Family family;
  // t eps - L(t); the Chernoff objective before optimization
  double exponent;
};

struct FourPointReport {
  std::vector<ComparisonRow> rows;
  std::vector<CurvePoint> curve;
  double curve_eps = 0.25;
};

SampleModel fourpoint_model();

// 20 log-spaced points per decade on [1e-2, n], endpoints included.
std::vector<double> curve_grid(double t_max);

/// p = (0.1, 0.2, 0.3, 0.4), n = 10, eps = 0.25 plus config.eps_list; families
/// weighted, exact AM-GM, poissonized and baseline on the upper tail.
FourPointReport run_fourpoint(const ExperimentConfig& config);

struct Table1Row {
  double eps = 0.0;
  double mean_improvement = 0.0;
  double stderr_improvement = 0.0;
  double sd_improvement = 0.0;
};

struct Table1Summary {
  std::size_t m = 30;
  std::uint64_t n = 30;
  double alpha = 0.5;
  std::uint64_t trials = 0;
  double mean_missing_mass = 0.0;
  std::vector<Table1Row> rows;
  // Per-trial values, trial-major: improvements[trial][eps index].
  std::vector<double> trial_mean_mass;
  std::vector<std::vector<double>> trial_improvements;
};

/// Dirichlet(0.5) weights on m = 30 symbols, n = 30, one seed per trial
/// derived from (config.seed, trial). Default eps list {0.01, 0.1}.
Table1Summary run_table1(const ExperimentConfig& config);

double logp_improvement(const SampleModel& model, double eps);

struct BirthdayRow {
  std::uint64_t n = 0;
  std::size_t m = 0;
  double eps = 0.0;
  double v_minus_sq_n3 = 0.0;
  double n_one_minus_mass = 0.0;
  double theta_min = 0.0;  // at t = n^2
  double theta_max = 0.0;
  double upper_exponent = 0.0;           // exact AM-GM
  double upper_weighted_exponent = 0.0;  // theta-weighted
  double lower_exponent = 0.0;           // lower Gaussian
  double upper_scaled = 0.0;             // upper_exponent / (n^3 eps^2)
  double lower_scaled = 0.0;
  double upper_lower_ratio = 0.0;
};

/// Uniform p on m = n^2 symbols for n in {10, 20, 40, 80}, eps = 1/(2n).
std::vector<BirthdayRow> run_birthday(const ExperimentConfig& config,
                                      const std::vector<std::uint64_t>& ns = {10, 20, 40, 80});

/// Reads a distribution file: JSON object {"p": [weights...], "n": integer}.
/// Throws InputError with line/column context on malformed input.
SampleModel load_model_file(const std::string& path);
SampleModel parse_model_json(const std::string& text);

/// Full family comparison on a distribution file; writes CSV to
/// config.output_path unless it is empty.
std::vector<ComparisonRow> run_custom(const ExperimentConfig& config, const std::string& dist_file);

}  // namespace missmass
