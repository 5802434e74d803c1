// missmass: confidence bounds for the missing mass of a known distribution.
//
// Exit codes: 0 success, 2 input error, 3 domain error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "missmass/bounds.hpp"
#include "missmass/chernoff.hpp"
#include "missmass/errors.hpp"
#include "missmass/experiments.hpp"
#include "missmass/oracle.hpp"
#include "missmass/report.hpp"

namespace {

using namespace missmass;

constexpr int kExitInput = 2;
constexpr int kExitDomain = 3;

struct GlobalOptions {
  std::uint64_t seed = 42;
  std::optional<std::uint64_t> trials;
  std::vector<double> eps;
  std::string out = "-";
  std::string format = "csv";
  unsigned threads = 0;
};

OutputFormat output_format(const GlobalOptions& g) {
  const auto f = parse_format(g.format);
  if (!f) throw InputError("--format must be csv or json");
  return *f;
}

Family family_or_throw(const std::string& name) {
  const auto f = parse_family(name);
  if (!f) throw InputError("unknown bound family: " + name);
  return *f;
}

void emit(const GlobalOptions& g, const std::string& content) { write_to_path(g.out, content); }

int cmd_bound(const GlobalOptions& g, const std::string& dist, const std::string& family,
              const std::vector<double>& ts) {
  const SampleModel model = load_model_file(dist);
  const LogMgfBound bound = make_bound(family_or_throw(family), model);
  std::ostringstream out;
  if (output_format(g) == OutputFormat::Csv) {
    CsvWriter csv(out);
    csv.row({"family", "t", "log_mgf_bound"});
    for (double t : ts) csv.row({bound.name(), format_number(t), format_number(bound(t))});
  } else {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (double t : ts) arr.push_back({{"family", bound.name()}, {"t", t}, {"log_mgf_bound", bound(t)}});
    out << arr.dump(2) << '\n';
  }
  emit(g, out.str());
  return 0;
}

int cmd_tail(const GlobalOptions& g, const std::string& dist, const std::string& family,
             const std::string& side_text) {
  const auto side = parse_side(side_text);
  if (!side) throw InputError("--side must be upper or lower");
  if (g.eps.empty()) throw InputError("tail needs --eps");
  const SampleModel model = load_model_file(dist);
  const LogMgfBound bound = make_bound(family_or_throw(family), model);
  std::ostringstream out;
  const bool csv_out = output_format(g) == OutputFormat::Csv;
  CsvWriter csv(out);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  if (csv_out) {
    csv.row({"family", "side", "eps", "t_star", "exponent", "log_tail_bound", "tail_bound"});
  }
  for (double eps : g.eps) {
    if (!(eps > 0.0)) throw InputError("eps values must be positive");
    const ChernoffResult r = chernoff_tail(bound, eps, *side);
    if (csv_out) {
      csv.row({r.family, side_text, format_number(eps), format_number(r.t_star),
               format_number(r.exponent), format_number(r.log_tail_bound),
               format_number(r.tail_bound())});
    } else {
      arr.push_back({{"family", r.family},
                     {"side", side_text},
                     {"eps", eps},
                     {"t_star", r.t_star},
                     {"exponent", r.exponent},
                     {"log_tail_bound", r.log_tail_bound},
                     {"tail_bound", r.tail_bound()}});
    }
  }
  if (!csv_out) out << arr.dump(2) << '\n';
  emit(g, out.str());
  return 0;
}

int cmd_compare(const GlobalOptions& g, const std::string& dist) {
  ExperimentConfig cfg;
  cfg.scenario = Scenario::Custom;
  cfg.eps_list = g.eps;
  cfg.trials = g.trials.value_or(100000);
  cfg.seed = g.seed;
  cfg.threads = g.threads;
  cfg.output_path.clear();
  const auto rows = run_custom(cfg, dist);
  std::ostringstream out;
  write_comparison(out, rows, output_format(g));
  emit(g, out.str());
  return 0;
}

int cmd_experiment(const GlobalOptions& g, const std::string& scenario, const std::string& curve_out) {
  ExperimentConfig cfg;
  cfg.eps_list = g.eps;
  cfg.seed = g.seed;
  cfg.threads = g.threads;
  cfg.output_path = g.out;
  const OutputFormat fmt = output_format(g);
  std::ostringstream out;
  if (scenario == "fourpoint") {
    cfg.scenario = Scenario::FourPoint;
    cfg.trials = g.trials.value_or(100000);
    const FourPointReport report = run_fourpoint(cfg);
    write_comparison(out, report.rows, fmt);
    if (!curve_out.empty()) {
      std::ostringstream curve;
      write_curve(curve, report.curve, fmt);
      write_to_path(curve_out, curve.str());
    }
  } else if (scenario == "table1") {
    cfg.scenario = Scenario::Table1;
    cfg.trials = g.trials.value_or(200);
    write_table1(out, run_table1(cfg), fmt);
  } else if (scenario == "birthday") {
    cfg.scenario = Scenario::Birthday;
    write_birthday(out, run_birthday(cfg), fmt);
  } else {
    throw InputError("unknown scenario: " + scenario);
  }
  emit(g, out.str());
  return 0;
}

int cmd_simulate(const GlobalOptions& g, const std::string& dist) {
  const SampleModel model = load_model_file(dist);
  const std::uint64_t trials = g.trials.value_or(100000);
  std::vector<double> eps_list = g.eps;
  if (eps_list.empty()) eps_list = {0.01, 0.05, 0.1};
  const auto samples = simulate_missing_mass(model.dist(), model.n(), trials, g.seed, g.threads);
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= static_cast<double>(samples.size());

  std::ostringstream out;
  const bool csv_out = output_format(g) == OutputFormat::Csv;
  CsvWriter csv(out);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  if (csv_out) {
    csv.row({"m", "n", "trials", "seed", "mc_mean_missing_mass", "exact_mean_missing_mass", "eps",
             "side", "frequency", "ci_low", "ci_high"});
  }
  for (double eps : eps_list) {
    if (!(eps > 0.0)) throw InputError("eps values must be positive");
    for (Side side : {Side::Upper, Side::Lower}) {
      const OracleEstimate est = empirical_tail(samples, model.mean_mass(), eps, side);
      if (csv_out) {
        csv.row({std::to_string(model.size()), std::to_string(model.n()), std::to_string(trials),
                 std::to_string(g.seed), format_number(mean), format_number(model.mean_mass()),
                 format_number(eps), std::string(side_name(side)), format_number(est.value),
                 format_number(est.ci_low), format_number(est.ci_high)});
      } else {
        arr.push_back({{"m", model.size()},
                       {"n", model.n()},
                       {"trials", trials},
                       {"seed", g.seed},
                       {"mc_mean_missing_mass", mean},
                       {"exact_mean_missing_mass", model.mean_mass()},
                       {"eps", eps},
                       {"side", side_name(side)},
                       {"frequency", est.value},
                       {"ci_low", est.ci_low},
                       {"ci_high", est.ci_high}});
      }
    }
  }
  if (!csv_out) out << arr.dump(2) << '\n';
  emit(g, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Confidence bounds for the missing mass of a discrete distribution"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--trials", g.trials, "Monte-Carlo trials / experiment repetitions");
  app.add_option("--eps", g.eps, "Comma-separated deviations")->delimiter(',');
  app.add_option("--out", g.out, "Output path, - for stdout")->capture_default_str();
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads, 0 = all cores")->capture_default_str();

  std::string dist;
  std::string family = "exact_am_gm";
  std::string side = "upper";
  std::vector<double> ts;

  auto* bound = app.add_subcommand("bound", "Evaluate a log-MGF bound at given t");
  bound->add_option("--dist", dist, "Distribution JSON {\"p\": [...], \"n\": int}")->required();
  bound->add_option("--family", family, "Bound family")->capture_default_str();
  bound->add_option("--t", ts, "Comma-separated t values")->delimiter(',')->required();

  auto* tail = app.add_subcommand("tail", "Optimized Chernoff tail bound");
  tail->add_option("--dist", dist, "Distribution JSON")->required();
  tail->add_option("--family", family, "Bound family")->capture_default_str();
  tail->add_option("--side", side, "upper or lower")->capture_default_str();

  auto* compare = app.add_subcommand("compare", "All bound families and the oracle");
  compare->add_option("--dist", dist, "Distribution JSON")->required();

  std::string scenario;
  std::string curve_out;
  auto* experiment = app.add_subcommand("experiment", "Run a built-in scenario");
  experiment->add_option("scenario", scenario, "fourpoint | table1 | birthday")
      ->required()
      ->check(CLI::IsMember({"fourpoint", "table1", "birthday"}));
  experiment->add_option("--curve-out", curve_out, "fourpoint: exponent-vs-t curve output");

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo of the true missing mass");
  simulate->add_option("--dist", dist, "Distribution JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (*bound) return cmd_bound(g, dist, family, ts);
    if (*tail) return cmd_tail(g, dist, family, side);
    if (*compare) return cmd_compare(g, dist);
    if (*experiment) return cmd_experiment(g, scenario, curve_out);
    if (*simulate) return cmd_simulate(g, dist);
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
