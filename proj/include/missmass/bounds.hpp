#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "missmass/kernel.hpp"
#include "missmass/model.hpp"

namespace missmass {

// Upper bounds on log E exp(t (M - EM)) for the missing mass M.
//
// All families bound the log-MGF of the independent surrogate
// M' = sum_i p_i Bern(q_i), which dominates the true missing mass in MGF order.

enum class Family {
  WeightedTheta,     // AM-GM product with the printed theta weights
  ExactAmGm,         // AM-GM product over the exact per-symbol centered MGFs
  PoissonizedSigma,  // Gaussian form with the occupancy (poissonized) proxy
  Baseline,          // t^2 v+^2 / (2 (1 - t/n))
  LowerGaussian,     // t^2 v-^2 / 2 for t < 0
  Bernstein,         // v^2 t^2 / (1 - |t| b) from fitted moment parameters
  SimpleUpper,       // t^2 v+^2 / 2 on (0, n]
};

inline constexpr Family kAllFamilies[] = {
    Family::WeightedTheta, Family::ExactAmGm,     Family::PoissonizedSigma,
    Family::Baseline,      Family::LowerGaussian, Family::Bernstein,
    Family::SimpleUpper};

std::string_view family_name(Family f) noexcept;

// Accepts the snake_case names returned by family_name() plus the short
// aliases "weighted", "exact_amgm" and "poissonized".
std::optional<Family> parse_family(std::string_view name);

/// Real interval with optionally open ends; infinite ends are always open.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_closed = false;
  bool hi_closed = false;

  bool contains(double t) const noexcept {
    return (t > lo || (lo_closed && t == lo)) && (t < hi || (hi_closed && t == hi));
  }
};

struct ThetaWeights {
  std::vector<double> theta;
  // 2 * sum_i theta_i var_i
  double sigma_sq = 0.0;
};

// theta_i = q_i phi(t p_i q_i) + (1 - q_i) phi(t p_i (1 - q_i))
ThetaWeights theta_weights(const SampleModel& model, double t);

// m log(1 + t^2 sigma^2 / (2m)) with the theta-weighted proxy. Certified for t >= 0.
double log_mgf_weighted(const SampleModel& model, double t);

// m log(1 + mean_i z_i) with z_i the exact centered MGF of p_i Bern(q_i) minus one.
// Valid for every real t and exact when all symbols share one probability.
double log_mgf_exact_amgm(const SampleModel& model, double t);

// 2 sum_i p_i^2 e^{-n p_i} phi(t p_i); the occupancy-number series in closed form.
double poissonized_sigma_sq(const SampleModel& model, double t);

// t^2 sigma_poiss^2(t) / 2. Requires t > 0.
double log_mgf_poissonized(const SampleModel& model, double t);

// t^2 v+^2 / (2 (1 - t/n)). Requires 0 < t < n.
double log_mgf_baseline(const OccupancyStats& stats, double t);

// n^2 v+^2 / 2, the t-independent value stated for 0 < t <= n.
double log_mgf_simple_upper(const OccupancyStats& stats);

// t^2 v-^2 / 2. Requires t < 0.
double log_mgf_lower_gaussian(const SampleModel& model, double t);

// --- Flexible Bernstein ---

struct BernsteinParams {
  double v_sq = 0.0;
  double b = 0.0;
  int k_max = 0;
};

// S_k = sum_i E|X_i - E X_i|^k = sum_i p_i^k (q_i (1-q_i)^k + (1-q_i) q_i^k)
double centered_abs_moment_sum(const SampleModel& model, int k);

// v_sq = S_2 and b = max over 3 <= k <= k_max of (2 S_k / (k! v_sq))^{1/(k-2)},
// raised if needed to d / (k_max + 1), d = max_i |X_i - E X_i|, so that the
// moment condition also holds for every k > k_max.
BernsteinParams fit_bernstein_params(const SampleModel& model, int k_max);

// 2 S_k / (k! v_sq b^{k-2}); the moment condition holds at k iff this is <= 1.
double bernstein_condition_ratio(const SampleModel& model, const BernsteinParams& params,
                                 int k);

// v_sq t^2 / (1 - |t| b) for |t| < 1/b.
double log_mgf_bernstein(const BernsteinParams& params, double t);

// --- Rosenthal moments ---

/// Constants of the asymmetric Rosenthal inequality
///   (E|sum X_i|^k)^{1/k} <= c(k) (sum E X_i^2)^{1/2} + C(k) (sum E|X_i|^k)^{1/k}.
/// Only the orders c = O(sqrt k), C = O(k) are known in closed form, so the
/// defaults c(k) = sqrt(k), C(k) = k are not certified and tails derived from
/// them are heuristic.
struct RosenthalConfig {
  std::function<double(int)> c;
  std::function<double(int)> C;
  int k_max = 16;
  bool certified = false;

  static RosenthalConfig defaults(int k_max = 16);
  static RosenthalConfig constant(double c, double C, int k_max, bool certified = false);
};

double rosenthal_moment_bound(const SampleModel& model, int k, const RosenthalConfig& config);

// Analytic envelope (k/e)^{k-1} n^{1-k} for S_k.
double rosenthal_moment_envelope(std::uint64_t n, int k);

// min over even k <= k_max of (rosenthal_moment_bound(k) / eps)^k, clamped to 1.
// Bounds the two-sided tail Pr[|M - EM| >= eps].
double rosenthal_tail(const SampleModel& model, double eps, const RosenthalConfig& config);

// --- Uniform interface for the Chernoff optimizer ---

struct BoundOptions {
  int bernstein_k_max = 20;
};

/// A log-MGF bound t -> L(t) together with the interval of t where it is valid.
class LogMgfBound {
 public:
  using Eval = std::function<double(double)>;

  LogMgfBound(std::string name, Interval domain, Eval eval,
              std::optional<Family> family = std::nullopt);

  // Throws DomainError outside domain().
  double operator()(double t) const;

  const std::string& name() const noexcept { return name_; }
  const Interval& domain() const noexcept { return domain_; }
  std::optional<Family> family() const noexcept { return family_; }

 private:
  std::string name_;
  Interval domain_;
  Eval eval_;
  std::optional<Family> family_;
};

LogMgfBound make_bound(Family family, const SampleModel& model, const BoundOptions& options = {});

}  // namespace missmass
