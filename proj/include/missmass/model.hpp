#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace missmass {

/// Probability vector over m >= 1 symbols.
///
/// The strict constructor accepts vectors whose total is within 1e-6 of one and
/// renormalizes them; from_weights() accepts any nonnegative weights with a
/// positive total. Zero-probability symbols are kept.
class DiscreteDistribution {
 public:
  static constexpr double kSumTolerance = 1e-6;

  explicit DiscreteDistribution(std::vector<double> p);

  static DiscreteDistribution from_weights(std::vector<double> weights);
  static DiscreteDistribution uniform(std::size_t m);

  std::span<const double> p() const noexcept { return p_; }
  double operator[](std::size_t i) const noexcept { return p_[i]; }
  std::size_t size() const noexcept { return p_.size(); }

 private:
  struct Normalized {};
  DiscreteDistribution(Normalized, std::vector<double> p) : p_(std::move(p)) {}

  std::vector<double> p_;
};

/// (1 - p)^n evaluated as exp(n * log1p(-p)); exactly 0 for p == 1.
double miss_probability(double p, std::uint64_t n) noexcept;

/// A distribution observed through n IID draws, together with the statistics of
/// the independent surrogate sum  M' = sum_i p_i * Bern(q_i),  q_i = (1 - p_i)^n.
class SampleModel {
 public:
  SampleModel(DiscreteDistribution dist, std::uint64_t n);

  const DiscreteDistribution& dist() const noexcept { return dist_; }
  std::span<const double> p() const noexcept { return dist_.p(); }
  std::uint64_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return dist_.size(); }

  std::span<const double> q() const noexcept { return q_; }
  // p_i^2 q_i (1 - q_i)
  std::span<const double> var() const noexcept { return var_; }
  double mean_mass() const noexcept { return mean_mass_; }
  double v_minus_sq() const noexcept { return v_minus_sq_; }

 private:
  DiscreteDistribution dist_;
  std::uint64_t n_;
  std::vector<double> q_;
  std::vector<double> var_;
  double mean_mass_ = 0.0;
  double v_minus_sq_ = 0.0;
};

inline SampleModel build_sample_model(DiscreteDistribution dist, std::uint64_t n) {
  return SampleModel(std::move(dist), n);
}

/// Expected Poisson occupancy counts E K_r(n) = sum_i e^{-n p_i} (n p_i)^r / r!
/// for r = 0..r_max, and the upper-tail proxy v_plus^2 = 2 n^-2 sum_{r>=2} E K_r(n).
struct OccupancyStats {
  std::uint64_t n = 0;
  std::size_t m = 0;
  std::vector<double> ek;
  double v_plus_sq = 0.0;

  double expected_count(std::size_t r) const { return ek.at(r); }
};

/// v_plus_sq is evaluated in closed form, not from the truncated ek table.
OccupancyStats occupancy_stats(const SampleModel& model, int r_max);

/// Symmetric Dirichlet(alpha) draw from m independent Gamma(alpha, 1) variates.
/// Deterministic in seed.
DiscreteDistribution sample_dirichlet(std::size_t m, double alpha, std::uint64_t seed);

}  // namespace missmass
