#include "missmass/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "missmass/errors.hpp"
#include "missmass/parallel.hpp"
#include "missmass/report.hpp"
#include "missmass/rng.hpp"

namespace missmass {
namespace {

constexpr double kFourPointEps = 0.25;

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::FourPoint: return "fourpoint";
    case Scenario::Table1: return "table1";
    case Scenario::Birthday: return "birthday";
    case Scenario::Custom: return "custom";
  }
  return "custom";
}

void validate_eps(const std::vector<double>& eps_list) {
  for (double eps : eps_list) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw InputError("eps values must be positive");
  }
}

double upper_exponent(Family family, const SampleModel& model, double eps) {
  return chernoff_tail(make_bound(family, model), eps, Side::Upper).exponent;
}

}  // namespace

double logp_improvement(const SampleModel& model, double eps) {
  const auto ours = chernoff_tail(make_bound(Family::ExactAmGm, model), eps, Side::Upper);
  const auto theirs = chernoff_tail(make_bound(Family::Baseline, model), eps, Side::Upper);
  return theirs.log_tail_bound - ours.log_tail_bound;
}

std::vector<ComparisonRow> compare_families(const SampleModel& model, const std::string& scenario,
                                            const std::vector<double>& eps_list,
                                            const std::vector<Family>& families,
                                            const std::vector<Side>& sides,
                                            std::uint64_t mc_trials, std::uint64_t seed,
                                            unsigned threads) {
  validate_eps(eps_list);

  // Building a bound can fail (e.g. a Bernstein fit on a degenerate model);
  // such failures become per-row statuses.
  std::vector<std::optional<LogMgfBound>> bounds;
  std::vector<std::string> build_errors;
  for (Family f : families) {
    try {
      bounds.emplace_back(make_bound(f, model));
      build_errors.emplace_back();
    } catch (const std::exception& e) {
      bounds.emplace_back(std::nullopt);
      build_errors.emplace_back(std::string("error: ") + e.what());
    }
  }

  std::vector<double> mc_samples;
  const bool exact = model.size() <= kMaxEnumerationSymbols;
  if (!exact) {
    mc_samples = simulate_missing_mass(model.dist(), model.n(), mc_trials, seed, threads);
  }

  std::vector<ComparisonRow> rows;
  for (double eps : eps_list) {
    ComparisonRow row;
    row.scenario = scenario;
    row.m = model.size();
    row.n = model.n();
    row.eps = eps;
    // |M - EM| <= 1, so neither tail can exceed eps >= 1.
    row.trivial = eps >= 1.0;
    for (Side side : sides) {
      for (std::size_t i = 0; i < families.size(); ++i) {
        FamilyOutcome outcome{families[i], side, "ok", std::nullopt};
        if (!bounds[i]) {
          outcome.status = build_errors[i];
        } else {
          try {
            outcome.result = chernoff_tail(*bounds[i], eps, side);
            if (row.trivial) outcome.status = "trivial: tail is zero";
          } catch (const DomainError& e) {
            outcome.status = std::string("domain_mismatch: ") + e.what();
          }
        }
        row.families.push_back(std::move(outcome));
      }
    }
    row.oracle = exact ? exact_surrogate_tail(model, eps, Side::Upper)
                       : empirical_tail(mc_samples, model.mean_mass(), eps, Side::Upper);
    row.rosenthal_tail = rosenthal_tail(model, eps, RosenthalConfig::defaults());
    row.logp_improvement = logp_improvement(model, eps);
    rows.push_back(std::move(row));
  }
  return rows;
}

SampleModel fourpoint_model() {
  return SampleModel(DiscreteDistribution({0.1, 0.2, 0.3, 0.4}), 10);
}

std::vector<double> curve_grid(double t_max) {
  std::vector<double> grid;
  for (int j = 0;; ++j) {
    const double t = std::pow(10.0, -2.0 + j / 20.0);
    if (t > t_max * (1.0 + 1e-12)) break;
    grid.push_back(t);
  }
  if (grid.empty() || std::abs(grid.back() - t_max) > 1e-12 * t_max) grid.push_back(t_max);
  return grid;
}

FourPointReport run_fourpoint(const ExperimentConfig& config) {
  std::vector<double> eps_list{kFourPointEps};
  for (double eps : config.eps_list) {
    if (std::find(eps_list.begin(), eps_list.end(), eps) == eps_list.end()) eps_list.push_back(eps);
  }
  std::vector<Family> families = config.families;
  if (families.empty()) {
    families = {Family::WeightedTheta, Family::ExactAmGm, Family::PoissonizedSigma,
                Family::Baseline};
  }

  const SampleModel model = fourpoint_model();
  FourPointReport report;
  report.curve_eps = kFourPointEps;
  report.rows = compare_families(model, "fourpoint", eps_list, families, {Side::Upper},
                                 config.trials, config.seed, config.threads);

  const auto grid = curve_grid(static_cast<double>(model.n()));
  for (Family f : families) {
    const LogMgfBound bound = make_bound(f, model);
    for (double t : grid) {
      if (!bound.domain().contains(t)) continue;
      report.curve.push_back({t, f, t * kFourPointEps - bound(t)});
    }
  }
  return report;
}

Table1Summary run_table1(const ExperimentConfig& config) {
  if (config.trials < 30) throw InputError("table1 needs at least 30 trials");
  std::vector<double> eps_list = config.eps_list;
  if (eps_list.empty()) eps_list = {0.01, 0.1};
  validate_eps(eps_list);

  Table1Summary s;
  s.trials = config.trials;
  s.trial_mean_mass.assign(config.trials, 0.0);
  s.trial_improvements.assign(config.trials, std::vector<double>(eps_list.size(), 0.0));

  parallel_for(config.trials, config.threads, [&](std::size_t trial) {
    const SampleModel model(sample_dirichlet(s.m, s.alpha, derive_seed(config.seed, trial)), s.n);
    s.trial_mean_mass[trial] = model.mean_mass();
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
      s.trial_improvements[trial][e] = logp_improvement(model, eps_list[e]);
    }
  });

  const double count = static_cast<double>(config.trials);
  s.mean_missing_mass =
      std::accumulate(s.trial_mean_mass.begin(), s.trial_mean_mass.end(), 0.0) / count;
  for (std::size_t e = 0; e < eps_list.size(); ++e) {
    double sum = 0.0;
    for (const auto& t : s.trial_improvements) sum += t[e];
    const double mean = sum / count;
    double ss = 0.0;
    for (const auto& t : s.trial_improvements) ss += (t[e] - mean) * (t[e] - mean);
    const double sd = std::sqrt(ss / (count - 1.0));
    s.rows.push_back({eps_list[e], mean, sd / std::sqrt(count), sd});
  }
  return s;
}

std::vector<BirthdayRow> run_birthday(const ExperimentConfig& /*config*/,
                                      const std::vector<std::uint64_t>& ns) {
  std::vector<BirthdayRow> rows;
  for (std::uint64_t n : ns) {
    const double nd = static_cast<double>(n);
    const SampleModel model(DiscreteDistribution::uniform(static_cast<std::size_t>(n * n)), n);
    BirthdayRow r;
    r.n = n;
    r.m = model.size();
    r.eps = 1.0 / (2.0 * nd);
    r.v_minus_sq_n3 = model.v_minus_sq() * nd * nd * nd;
    r.n_one_minus_mass = nd * (1.0 - model.mean_mass());
    const ThetaWeights theta = theta_weights(model, nd * nd);
    const auto [lo, hi] = std::minmax_element(theta.theta.begin(), theta.theta.end());
    r.theta_min = *lo;
    r.theta_max = *hi;
    r.upper_exponent = upper_exponent(Family::ExactAmGm, model, r.eps);
    r.upper_weighted_exponent = upper_exponent(Family::WeightedTheta, model, r.eps);
    r.lower_exponent =
        chernoff_tail(make_bound(Family::LowerGaussian, model), r.eps, Side::Lower).exponent;
    const double scale = nd * nd * nd * r.eps * r.eps;
    r.upper_scaled = r.upper_exponent / scale;
    r.lower_scaled = r.lower_exponent / scale;
    r.upper_lower_ratio = r.upper_exponent / r.lower_exponent;
    rows.push_back(r);
  }
  return rows;
}

SampleModel parse_model_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into a line and column.
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < byte; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    const std::size_t start = text.rfind('\n', byte > 0 ? byte - 1 : 0);
    const std::size_t begin = start == std::string::npos ? 0 : start + 1;
    const std::size_t end = text.find('\n', begin);
    throw InputError("JSON parse error at line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ": " + text.substr(begin, end - begin));
  }
  if (!j.is_object()) throw InputError("distribution file must be a JSON object");
  if (!j.contains("p") || !j["p"].is_array()) throw InputError("field \"p\" must be an array");
  if (!j.contains("n")) throw InputError("field \"n\" is required");

  std::vector<double> weights;
  for (const auto& x : j["p"]) {
    if (!x.is_number()) throw InputError("field \"p\" must contain only numbers");
    weights.push_back(x.get<double>());
  }
  const auto& jn = j["n"];
  if (!jn.is_number_integer() || (!jn.is_number_unsigned() && jn.get<std::int64_t>() <= 0)) {
    throw InputError("field \"n\" must be a positive integer");
  }
  return SampleModel(DiscreteDistribution::from_weights(std::move(weights)),
                     jn.get<std::uint64_t>());
}

SampleModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read distribution file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model_json(buf.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<ComparisonRow> run_custom(const ExperimentConfig& config, const std::string& dist_file) {
  const SampleModel model = load_model_file(dist_file);
  std::vector<double> eps_list = config.eps_list;
  if (eps_list.empty()) eps_list = {0.01, 0.05, 0.1, 0.25};
  std::vector<Family> families = config.families;
  if (families.empty()) families.assign(std::begin(kAllFamilies), std::end(kAllFamilies));

  auto rows = compare_families(model, scenario_name(config.scenario), eps_list, families,
                               {Side::Upper, Side::Lower}, config.trials, config.seed,
                               config.threads);
  if (!config.output_path.empty()) {
    std::ostringstream out;
    write_comparison(out, rows);
    write_to_path(config.output_path, out.str());
  }
  return rows;
}

}  // namespace missmass
