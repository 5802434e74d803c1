#include "missmass/model.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "missmass/errors.hpp"
#include "missmass/kernel.hpp"
#include "missmass/rng.hpp"

namespace missmass {
namespace {

double checked_total(const std::vector<double>& p) {
  if (p.empty()) throw InputError("distribution must have at least one symbol");
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p[i]) || p[i] < 0.0) {
      throw InputError("probability at index " + std::to_string(i) +
                       " is negative or not finite");
    }
    total += p[i];
  }
  return total;
}

std::vector<double> normalized(std::vector<double> p, double total) {
  for (double& x : p) x /= total;
  return p;
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<double> p) {
  const double total = checked_total(p);
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw InputError("probabilities sum to " + std::to_string(total) + ", expected 1");
  }
  p_ = normalized(std::move(p), total);
}

DiscreteDistribution DiscreteDistribution::from_weights(std::vector<double> weights) {
  const double total = checked_total(weights);
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw InputError("weights must have a positive finite total");
  }
  return DiscreteDistribution(Normalized{}, normalized(std::move(weights), total));
}

DiscreteDistribution DiscreteDistribution::uniform(std::size_t m) {
  if (m == 0) throw InputError("distribution must have at least one symbol");
  return DiscreteDistribution(Normalized{},
                              std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

double miss_probability(double p, std::uint64_t n) noexcept {
  if (p >= 1.0) return 0.0;
  return std::exp(static_cast<double>(n) * std::log1p(-p));
}

SampleModel::SampleModel(DiscreteDistribution dist, std::uint64_t n)
    : dist_(std::move(dist)), n_(n) {
  if (n == 0) throw InputError("sample size n must be at least 1");
  const auto p = dist_.p();
  q_.resize(p.size());
  var_.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double q = miss_probability(p[i], n);
    q_[i] = q;
    var_[i] = p[i] * p[i] * q * (1.0 - q);
    mean_mass_ += p[i] * q;
    v_minus_sq_ += var_[i];
  }
}

OccupancyStats occupancy_stats(const SampleModel& model, int r_max) {
  if (r_max < 2) throw InputError("r_max must be at least 2");
  OccupancyStats out;
  out.n = model.n();
  out.m = model.size();
  out.ek.assign(static_cast<std::size_t>(r_max) + 1, 0.0);
  const double n = static_cast<double>(model.n());
  double tail = 0.0;  // sum_{r>=2} E K_r(n)
  for (double p : model.p()) {
    const double lambda = n * p;
    if (lambda == 0.0) {
      out.ek[0] += 1.0;
      continue;
    }
    const double log_lambda = std::log(lambda);
    for (int r = 0; r <= r_max; ++r) {
      out.ek[static_cast<std::size_t>(r)] +=
          std::exp(r * log_lambda - lambda - std::lgamma(r + 1.0));
    }
    // e^{-l} (e^l - 1 - l); the phi form avoids cancellation for small l
    tail += lambda < 1.0 ? std::exp(-lambda) * lambda * lambda * phi(lambda)
                         : -std::expm1(-lambda) - lambda * std::exp(-lambda);
  }
  out.v_plus_sq = 2.0 * tail / (n * n);
  return out;
}

DiscreteDistribution sample_dirichlet(std::size_t m, double alpha, std::uint64_t seed) {
  if (m == 0) throw InputError("Dirichlet dimension must be at least 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InputError("Dirichlet concentration must be positive");
  }
  if (m == 1) return DiscreteDistribution::uniform(1);
  std::mt19937_64 eng(splitmix64(seed));
  std::gamma_distribution<double> gamma(alpha, 1.0);
  std::vector<double> w(m);
  for (;;) {
    for (double& x : w) x = gamma(eng);
    // All draws can underflow to zero for tiny alpha; redraw.
    if (std::accumulate(w.begin(), w.end(), 0.0) > 0.0) break;
  }
  return DiscreteDistribution::from_weights(std::move(w));
}

}  // namespace missmass
