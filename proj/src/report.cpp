#include "missmass/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>

#include <json.hpp>

#include "missmass/errors.hpp"

namespace missmass {
namespace {

using nlohmann::ordered_json;

std::string quote_if_needed(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string number_or_empty(const std::optional<ChernoffResult>& r, double ChernoffResult::*field) {
  return r ? format_number((*r).*field) : std::string{};
}

// JSON cannot carry inf/nan; emit null for those.
ordered_json json_number(double x) {
  return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr);
}

const std::vector<std::string> kComparisonHeader = {
    "scenario",     "m",          "n",            "eps",           "side",
    "family",       "status",     "t_star",       "exponent",      "log_tail_bound",
    "tail_bound",   "oracle_method", "oracle_value", "oracle_ci_low", "oracle_ci_high",
    "oracle_trials", "rosenthal_tail", "logp_improvement"};

}  // namespace

std::optional<OutputFormat> parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  return std::nullopt;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << quote_if_needed(fields[i]);
  }
  out_ << "\r\n";
}

void write_comparison(std::ostream& out, const std::vector<ComparisonRow>& rows,
                      OutputFormat format) {
  if (format == OutputFormat::Csv) {
    CsvWriter csv(out);
    csv.row(kComparisonHeader);
    for (const auto& row : rows) {
      for (const auto& f : row.families) {
        csv.row({row.scenario, std::to_string(row.m), std::to_string(row.n),
                 format_number(row.eps), std::string(side_name(f.side)),
                 std::string(family_name(f.family)), f.status,
                 number_or_empty(f.result, &ChernoffResult::t_star),
                 number_or_empty(f.result, &ChernoffResult::exponent),
                 number_or_empty(f.result, &ChernoffResult::log_tail_bound),
                 f.result ? format_number(f.result->tail_bound()) : std::string{},
                 std::string(oracle_method_name(row.oracle.method)),
                 format_number(row.oracle.value), format_number(row.oracle.ci_low),
                 format_number(row.oracle.ci_high), std::to_string(row.oracle.trials),
                 format_number(row.rosenthal_tail), format_number(row.logp_improvement)});
      }
    }
    return;
  }
  ordered_json arr = ordered_json::array();
  for (const auto& row : rows) {
    for (const auto& f : row.families) {
      ordered_json j;
      j["scenario"] = row.scenario;
      j["m"] = row.m;
      j["n"] = row.n;
      j["eps"] = row.eps;
      j["side"] = side_name(f.side);
      j["family"] = family_name(f.family);
      j["status"] = f.status;
      if (f.result) {
        j["t_star"] = json_number(f.result->t_star);
        j["exponent"] = json_number(f.result->exponent);
        j["log_tail_bound"] = json_number(f.result->log_tail_bound);
        j["tail_bound"] = json_number(f.result->tail_bound());
      } else {
        j["t_star"] = j["exponent"] = j["log_tail_bound"] = j["tail_bound"] = nullptr;
      }
      j["oracle_method"] = oracle_method_name(row.oracle.method);
      j["oracle_value"] = row.oracle.value;
      j["oracle_ci_low"] = row.oracle.ci_low;
      j["oracle_ci_high"] = row.oracle.ci_high;
      j["oracle_trials"] = row.oracle.trials;
      j["rosenthal_tail"] = json_number(row.rosenthal_tail);
      j["logp_improvement"] = json_number(row.logp_improvement);
      arr.push_back(std::move(j));
    }
  }
  out << arr.dump(2) << '\n';
}

void write_curve(std::ostream& out, const std::vector<CurvePoint>& curve, OutputFormat format) {
  if (format == OutputFormat::Csv) {
    CsvWriter csv(out);
    csv.row({"t", "family", "exponent"});
    for (const auto& pt : curve) {
      csv.row({format_number(pt.t), std::string(family_name(pt.family)), format_number(pt.exponent)});
    }
    return;
  }
  ordered_json arr = ordered_json::array();
  for (const auto& pt : curve) {
    arr.push_back({{"t", pt.t}, {"family", family_name(pt.family)}, {"exponent", json_number(pt.exponent)}});
  }
  out << arr.dump(2) << '\n';
}

void write_table1(std::ostream& out, const Table1Summary& s, OutputFormat format) {
  // "ours" is the exact AM-GM family and "theirs" the baseline; the columns
  // make the comparison explicit in every row.
  if (format == OutputFormat::Csv) {
    CsvWriter csv(out);
    csv.row({"m", "n", "alpha", "trials", "mean_missing_mass", "eps", "ours_family",
             "theirs_family", "mean_logp_improvement", "stderr_logp_improvement",
             "sd_logp_improvement"});
    for (const auto& r : s.rows) {
      csv.row({std::to_string(s.m), std::to_string(s.n), format_number(s.alpha),
               std::to_string(s.trials), format_number(s.mean_missing_mass), format_number(r.eps),
               std::string(family_name(Family::ExactAmGm)), std::string(family_name(Family::Baseline)),
               format_number(r.mean_improvement), format_number(r.stderr_improvement),
               format_number(r.sd_improvement)});
    }
    return;
  }
  ordered_json j;
  j["m"] = s.m;
  j["n"] = s.n;
  j["alpha"] = s.alpha;
  j["trials"] = s.trials;
  j["mean_missing_mass"] = s.mean_missing_mass;
  j["ours_family"] = family_name(Family::ExactAmGm);
  j["theirs_family"] = family_name(Family::Baseline);
  j["rows"] = ordered_json::array();
  for (const auto& r : s.rows) {
    j["rows"].push_back({{"eps", r.eps},
                         {"mean_logp_improvement", r.mean_improvement},
                         {"stderr_logp_improvement", r.stderr_improvement},
                         {"sd_logp_improvement", r.sd_improvement}});
  }
  out << j.dump(2) << '\n';
}

void write_birthday(std::ostream& out, const std::vector<BirthdayRow>& rows, OutputFormat format) {
  const std::vector<std::string> header = {
      "n", "m", "eps", "v_minus_sq_n3", "n_one_minus_mass", "theta_min", "theta_max",
      "upper_exponent", "upper_weighted_exponent", "lower_exponent", "upper_scaled",
      "lower_scaled", "upper_lower_ratio"};
  auto values = [](const BirthdayRow& r) {
    return std::vector<double>{r.eps, r.v_minus_sq_n3, r.n_one_minus_mass, r.theta_min,
                               r.theta_max, r.upper_exponent, r.upper_weighted_exponent,
                               r.lower_exponent, r.upper_scaled, r.lower_scaled,
                               r.upper_lower_ratio};
  };
  if (format == OutputFormat::Csv) {
    CsvWriter csv(out);
    csv.row(header);
    for (const auto& r : rows) {
      std::vector<std::string> fields = {std::to_string(r.n), std::to_string(r.m)};
      for (double v : values(r)) fields.push_back(format_number(v));
      csv.row(fields);
    }
    return;
  }
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["n"] = r.n;
    j["m"] = r.m;
    const auto v = values(r);
    for (std::size_t i = 0; i < v.size(); ++i) j[header[i + 2]] = json_number(v[i]);
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << '\n';
}

void write_to_path(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content << std::flush;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw InputError("cannot open output file: " + path);
  file << content;
  if (!file) throw InputError("failed writing output file: " + path);
}

}  // namespace missmass
