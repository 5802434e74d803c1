#include "missmass/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "missmass/errors.hpp"

namespace missmass {
namespace {

// w a + (1 - w) b, skipping a term whose weight is exactly zero so that an
// overflowed phi cannot turn 0 * inf into NaN.
double mix(double w, double a, double b) noexcept {
  double out = 0.0;
  if (w > 0.0) out += w * a;
  if (w < 1.0) out += (1.0 - w) * b;
  return out;
}

// Beyond this argument the direct z_i sum risks overflow; switch to log space.
constexpr double kLogSpaceThreshold = 500.0;

}  // namespace

std::string_view family_name(Family f) noexcept {
  switch (f) {
    case Family::WeightedTheta: return "weighted_theta";
    case Family::ExactAmGm: return "exact_am_gm";
    case Family::PoissonizedSigma: return "poissonized_sigma";
    case Family::Baseline: return "baseline";
    case Family::LowerGaussian: return "lower_gaussian";
    case Family::Bernstein: return "bernstein";
    case Family::SimpleUpper: return "simple_upper";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : kAllFamilies) {
    if (family_name(f) == name) return f;
  }
  if (name == "weighted") return Family::WeightedTheta;
  if (name == "exact_amgm") return Family::ExactAmGm;
  if (name == "poissonized") return Family::PoissonizedSigma;
  return std::nullopt;
}

ThetaWeights theta_weights(const SampleModel& model, double t) {
  const auto p = model.p();
  const auto q = model.q();
  const auto var = model.var();
  ThetaWeights out;
  out.theta.resize(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.theta[i] = mix(q[i], phi(t * p[i] * q[i]), phi(t * p[i] * (1.0 - q[i])));
    if (var[i] > 0.0) acc += out.theta[i] * var[i];
  }
  out.sigma_sq = 2.0 * acc;
  return out;
}

double log_mgf_weighted(const SampleModel& model, double t) {
  if (t == 0.0) return 0.0;
  const double m = static_cast<double>(model.size());
  const double sigma_sq = theta_weights(model, t).sigma_sq;
  return m * std::log1p(t * t * sigma_sq / (2.0 * m));
}

double log_mgf_exact_amgm(const SampleModel& model, double t) {
  if (t == 0.0) return 0.0;
  const auto p = model.p();
  const auto q = model.q();
  const auto var = model.var();
  const double m = static_cast<double>(model.size());

  // Centered values of symbol i, scaled by t: a_i when missed, b_i when seen.
  double max_arg = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (var[i] == 0.0) continue;
    max_arg = std::max({max_arg, t * p[i] * (1.0 - q[i]), -t * p[i] * q[i]});
  }

  if (max_arg < kLogSpaceThreshold) {
    // z_i = q(e^a - 1 - a) + (1-q)(e^b - 1 - b) = t^2 var_i ((1-q) phi(a) + q phi(b));
    // the linear terms cancel because the summand is centered.
    double z_sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (var[i] == 0.0) continue;
      const double a = t * p[i] * (1.0 - q[i]);
      const double b = -t * p[i] * q[i];
      z_sum += t * t * var[i] * ((1.0 - q[i]) * phi(a) + q[i] * phi(b));
    }
    return m * std::log1p(z_sum / m);
  }

  // 1 + mean z = mean_i E e^{t(X_i - EX_i)}; accumulate logs of the means.
  double log_total = -HUGE_VAL;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double ell = 0.0;
    if (var[i] > 0.0) {
      ell = log_add_exp(std::log(q[i]) + t * p[i] * (1.0 - q[i]),
                        std::log1p(-q[i]) - t * p[i] * q[i]);
    }
    log_total = log_add_exp(log_total, ell);
  }
  return m * (log_total - std::log(m));
}

double poissonized_sigma_sq(const SampleModel& model, double t) {
  const double n = static_cast<double>(model.n());
  double acc = 0.0;
  for (double pi : model.p()) {
    if (pi == 0.0) continue;
    acc += std::exp(2.0 * std::log(pi) - n * pi + log_phi(t * pi));
  }
  return 2.0 * acc;
}

double log_mgf_poissonized(const SampleModel& model, double t) {
  if (!(t > 0.0)) throw DomainError("poissonized bound requires t > 0");
  return 0.5 * t * t * poissonized_sigma_sq(model, t);
}

double log_mgf_baseline(const OccupancyStats& stats, double t) {
  const double n = static_cast<double>(stats.n);
  if (!(t > 0.0) || !(t < n)) throw DomainError("baseline bound requires 0 < t < n");
  return t * t * stats.v_plus_sq / (2.0 * (1.0 - t / n));
}

double log_mgf_simple_upper(const OccupancyStats& stats) {
  const double n = static_cast<double>(stats.n);
  return 0.5 * n * n * stats.v_plus_sq;
}

double log_mgf_lower_gaussian(const SampleModel& model, double t) {
  if (!(t < 0.0)) throw DomainError("lower-tail Gaussian bound requires t < 0");
  return 0.5 * t * t * model.v_minus_sq();
}

double centered_abs_moment_sum(const SampleModel& model, int k) {
  if (k < 1) throw InputError("moment order must be at least 1");
  const auto p = model.p();
  const auto q = model.q();
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double hi = p[i] * (1.0 - q[i]);  // deviation when the symbol is missed
    const double lo = p[i] * q[i];          // deviation when it is seen
    acc += q[i] * std::pow(hi, k) + (1.0 - q[i]) * std::pow(lo, k);
  }
  return acc;
}

BernsteinParams fit_bernstein_params(const SampleModel& model, int k_max) {
  if (k_max < 3) throw InputError("Bernstein fit needs k_max >= 3");
  const double s2 = centered_abs_moment_sum(model, 2);
  if (!(s2 > 0.0)) throw InputError("degenerate model: every symbol is certainly seen or unseen");

  BernsteinParams out;
  out.v_sq = s2;
  out.k_max = k_max;
  const double log_v = std::log(s2);
  for (int k = 3; k <= k_max; ++k) {
    const double sk = centered_abs_moment_sum(model, k);
    if (sk == 0.0) continue;
    const double log_b =
        (std::log(2.0) + std::log(sk) - std::lgamma(k + 1.0) - log_v) / (k - 2);
    out.b = std::max(out.b, std::exp(log_b));
  }

  // S_{k+1} <= d S_k, so b >= d/(k_max+1) keeps the ratio decreasing past k_max.
  double d = 0.0;
  const auto p = model.p();
  const auto q = model.q();
  const auto var = model.var();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (var[i] > 0.0) d = std::max(d, p[i] * std::max(q[i], 1.0 - q[i]));
  }
  out.b = std::max(out.b, d / (k_max + 1));
  return out;
}

double bernstein_condition_ratio(const SampleModel& model, const BernsteinParams& params,
                                 int k) {
  if (k < 2) throw InputError("moment order must be at least 2");
  const double sk = centered_abs_moment_sum(model, k);
  if (sk == 0.0) return 0.0;
  return std::exp(std::log(2.0) + std::log(sk) - std::lgamma(k + 1.0) - std::log(params.v_sq) -
                  (k - 2) * std::log(params.b));
}

double log_mgf_bernstein(const BernsteinParams& params, double t) {
  const double scaled = std::abs(t) * params.b;
  if (!(scaled < 1.0)) throw DomainError("Bernstein bound requires |t| < 1/b");
  return params.v_sq * t * t / (1.0 - scaled);
}

RosenthalConfig RosenthalConfig::defaults(int k_max) {
  RosenthalConfig cfg;
  cfg.c = [](int k) { return std::sqrt(static_cast<double>(k)); };
  cfg.C = [](int k) { return static_cast<double>(k); };
  cfg.k_max = k_max;
  cfg.certified = false;
  return cfg;
}

RosenthalConfig RosenthalConfig::constant(double c, double C, int k_max, bool certified) {
  RosenthalConfig cfg;
  cfg.c = [c](int) { return c; };
  cfg.C = [C](int) { return C; };
  cfg.k_max = k_max;
  cfg.certified = certified;
  return cfg;
}

double rosenthal_moment_bound(const SampleModel& model, int k, const RosenthalConfig& config) {
  if (k < 2) throw InputError("Rosenthal bound needs k >= 2");
  if (k > config.k_max) throw InputError("moment order exceeds RosenthalConfig::k_max");
  const double c = config.c(k);
  const double C = config.C(k);
  if (!(c >= 0.0) || !(C >= 0.0) || !std::isfinite(c) || !std::isfinite(C)) {
    throw InputError("Rosenthal constants must be finite and nonnegative");
  }
  const double s2 = centered_abs_moment_sum(model, 2);
  const double sk = centered_abs_moment_sum(model, k);
  return c * std::sqrt(s2) + C * std::pow(sk, 1.0 / k);
}

double rosenthal_moment_envelope(std::uint64_t n, int k) {
  const double kd = static_cast<double>(k);
  return std::exp((kd - 1.0) * (std::log(kd) - 1.0) + (1.0 - kd) * std::log(static_cast<double>(n)));
}

double rosenthal_tail(const SampleModel& model, double eps, const RosenthalConfig& config) {
  if (!(eps > 0.0)) throw InputError("eps must be positive");
  if (config.k_max < 2) throw InputError("RosenthalConfig::k_max must be at least 2");
  double best = 0.0;  // log of the trivial bound 1
  for (int k = 2; k <= config.k_max; k += 2) {
    const double bound = rosenthal_moment_bound(model, k, config);
    if (bound == 0.0) return 0.0;  // M' is constant
    best = std::min(best, k * (std::log(bound) - std::log(eps)));
  }
  return std::exp(best);
}

LogMgfBound::LogMgfBound(std::string name, Interval domain, Eval eval,
                         std::optional<Family> family)
    : name_(std::move(name)), domain_(domain), eval_(std::move(eval)), family_(family) {}

double LogMgfBound::operator()(double t) const {
  if (!domain_.contains(t)) {
    throw DomainError(name_ + ": t = " + std::to_string(t) + " is outside the validity interval");
  }
  return eval_(t);
}

LogMgfBound make_bound(Family family, const SampleModel& model, const BoundOptions& options) {
  auto shared = std::make_shared<const SampleModel>(model);
  const double n = static_cast<double>(model.n());
  constexpr double inf = std::numeric_limits<double>::infinity();
  const std::string name(family_name(family));

  switch (family) {
    case Family::WeightedTheta:
      return {name, Interval{0.0, inf, true, false},
              [shared](double t) { return log_mgf_weighted(*shared, t); }, family};
    case Family::ExactAmGm:
      return {name, Interval{-inf, inf, false, false},
              [shared](double t) { return log_mgf_exact_amgm(*shared, t); }, family};
    case Family::PoissonizedSigma:
      return {name, Interval{0.0, inf, false, false},
              [shared](double t) { return log_mgf_poissonized(*shared, t); }, family};
    case Family::Baseline: {
      const OccupancyStats stats = occupancy_stats(model, 2);
      return {name, Interval{0.0, n, false, false},
              [stats](double t) { return log_mgf_baseline(stats, t); }, family};
    }
    case Family::LowerGaussian:
      return {name, Interval{-inf, 0.0, false, false},
              [shared](double t) { return log_mgf_lower_gaussian(*shared, t); }, family};
    case Family::Bernstein: {
      const BernsteinParams params = fit_bernstein_params(model, options.bernstein_k_max);
      const double edge = 1.0 / params.b;
      return {name, Interval{-edge, edge, false, false},
              [params](double t) { return log_mgf_bernstein(params, t); }, family};
    }
    case Family::SimpleUpper: {
      // The stated value n^2 v+^2/2 is reached at t = n; on (0, n] the
      // t-dependent t^2 v+^2/2 dominates the poissonized bound and vanishes at 0.
      const double v_plus_sq = occupancy_stats(model, 2).v_plus_sq;
      return {name, Interval{0.0, n, false, true},
              [v_plus_sq](double t) { return 0.5 * t * t * v_plus_sq; }, family};
    }
  }
  throw InputError("unknown bound family");
}

}  // namespace missmass
