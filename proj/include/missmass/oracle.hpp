#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "missmass/model.hpp"
#include "missmass/side.hpp"

namespace missmass {

// Ground truth used to check that bounds dominate reality: exact enumeration
// of the independent surrogate for small alphabets, and seeded Monte-Carlo of
// the true (dependent) missing mass.

enum class OracleMethod { ExactEnumeration, MonteCarlo };

constexpr std::string_view oracle_method_name(OracleMethod m) noexcept {
  return m == OracleMethod::ExactEnumeration ? "exact" : "monte_carlo";
}

struct OracleEstimate {
  double value = 0.0;
  OracleMethod method = OracleMethod::ExactEnumeration;
  // 95% interval; equal to [value, value] for exact results
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t trials = 0;
};

inline constexpr std::size_t kMaxEnumerationSymbols = 20;

/// Pr[M' - EM > eps] (upper) or Pr[M' - EM < -eps] (lower) for the independent
/// surrogate, summed over all 2^m seen/unseen patterns. Requires m <= 20.
OracleEstimate exact_surrogate_tail(const SampleModel& model, double eps, Side side);

/// E|M' - EM|^k by enumeration. Requires m <= 20 and k >= 1.
double exact_surrogate_moment(const SampleModel& model, int k);

/// log E exp(t (M' - EM)) = sum_i log(q_i e^{t p_i (1-q_i)} + (1-q_i) e^{-t p_i q_i}).
double exact_surrogate_log_mgf(const SampleModel& model, double t);

/// Missing mass of `trials` independent samples of size n from dist. Trial j
/// uses its own generator seeded from (seed, j); output is identical for any
/// thread count (0 = hardware concurrency).
std::vector<double> simulate_missing_mass(const DiscreteDistribution& dist, std::uint64_t n,
                                          std::uint64_t trials, std::uint64_t seed,
                                          unsigned threads = 0);

/// Draws of the independent surrogate M' = sum_i p_i Bern(q_i).
std::vector<double> simulate_surrogate(const SampleModel& model, std::uint64_t trials,
                                       std::uint64_t seed, unsigned threads = 0);

struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
};

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

/// Frequency of x - center > eps (upper) or x - center < -eps (lower) with a
/// Wilson 95% interval.
OracleEstimate empirical_tail(std::span<const double> samples, double center, double eps,
                              Side side);

}  // namespace missmass
