#include "missmass/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "missmass/errors.hpp"
#include "missmass/kernel.hpp"
#include "missmass/parallel.hpp"
#include "missmass/rng.hpp"

namespace missmass {
namespace {

// Neumaier's compensated summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void require_enumerable(const SampleModel& model) {
  if (model.size() > kMaxEnumerationSymbols) {
    throw InputError("exact enumeration supports at most " +
                     std::to_string(kMaxEnumerationSymbols) + " symbols, got " +
                     std::to_string(model.size()));
  }
}

// Calls visit(value, probability) for every seen/unseen pattern of nonzero
// probability; bit i set means symbol i is unseen.
template <class Visit>
void for_each_pattern(const SampleModel& model, Visit&& visit) {
  const auto p = model.p();
  const auto q = model.q();
  const std::size_t m = p.size();
  const std::uint64_t patterns = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    double prob = 1.0;
    double value = 0.0;
    for (std::size_t i = 0; i < m && prob > 0.0; ++i) {
      if (mask >> i & 1U) {
        prob *= q[i];
        value += p[i];
      } else {
        prob *= 1.0 - q[i];
      }
    }
    if (prob > 0.0) visit(value, prob);
  }
}

}  // namespace

OracleEstimate exact_surrogate_tail(const SampleModel& model, double eps, Side side) {
  require_enumerable(model);
  const double mean = model.mean_mass();
  CompensatedSum tail;
  for_each_pattern(model, [&](double value, double prob) {
    const double dev = value - mean;
    if (side == Side::Upper ? dev > eps : dev < -eps) tail.add(prob);
  });
  const double v = std::clamp(tail.value(), 0.0, 1.0);
  return OracleEstimate{v, OracleMethod::ExactEnumeration, v, v, 0};
}

double exact_surrogate_moment(const SampleModel& model, int k) {
  require_enumerable(model);
  if (k < 1) throw InputError("moment order must be at least 1");
  const double mean = model.mean_mass();
  CompensatedSum acc;
  for_each_pattern(model, [&](double value, double prob) {
    acc.add(prob * std::pow(std::abs(value - mean), k));
  });
  return acc.value();
}

double exact_surrogate_log_mgf(const SampleModel& model, double t) {
  const auto p = model.p();
  const auto q = model.q();
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] == 0.0 || q[i] == 1.0) continue;  // constant summand
    acc += log_add_exp(std::log(q[i]) + t * p[i] * (1.0 - q[i]),
                       std::log1p(-q[i]) - t * p[i] * q[i]);
  }
  return acc;
}

std::vector<double> simulate_missing_mass(const DiscreteDistribution& dist, std::uint64_t n,
                                          std::uint64_t trials, std::uint64_t seed,
                                          unsigned threads) {
  if (trials == 0) throw InputError("trials must be at least 1");
  const auto p = dist.p();
  std::vector<double> cdf(p.size());
  double running = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    running += p[i];
    cdf[i] = running;
  }
  // Close the CDF at the last symbol with positive mass so rounding never
  // selects a trailing zero-probability symbol.
  std::size_t last = p.size() - 1;
  while (last > 0 && p[last] == 0.0) --last;
  std::fill(cdf.begin() + static_cast<std::ptrdiff_t>(last), cdf.end(), 1.0);

  std::vector<double> out(trials);
  parallel_for(trials, threads, [&](std::size_t trial) {
    auto eng = make_engine(seed, trial);
    std::vector<char> seen(p.size(), 0);
    for (std::uint64_t draw = 0; draw < n; ++draw) {
      const double u = uniform01(eng);
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      seen[static_cast<std::size_t>(it - cdf.begin())] = 1;
    }
    double mass = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!seen[i]) mass += p[i];
    }
    out[trial] = mass;
  });
  return out;
}

std::vector<double> simulate_surrogate(const SampleModel& model, std::uint64_t trials,
                                       std::uint64_t seed, unsigned threads) {
  if (trials == 0) throw InputError("trials must be at least 1");
  const auto p = model.p();
  const auto q = model.q();
  std::vector<double> out(trials);
  parallel_for(trials, threads, [&](std::size_t trial) {
    auto eng = make_engine(seed, trial);
    double mass = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (uniform01(eng) < q[i]) mass += p[i];
    }
    out[trial] = mass;
  });
  return out;
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw InputError("Wilson interval needs at least one trial");
  if (successes > trials) throw InputError("Wilson interval: successes exceed trials");
  const double nn = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (phat + z2 / (2.0 * nn)) / denom;
  const double half = z / denom * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn));
  WilsonInterval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
  if (successes == 0) ci.low = 0.0;
  if (successes == trials) ci.high = 1.0;
  // Guard the rounding of center -/+ half around phat.
  ci.low = std::min(ci.low, phat);
  ci.high = std::max(ci.high, phat);
  return ci;
}

OracleEstimate empirical_tail(std::span<const double> samples, double center, double eps,
                              Side side) {
  if (samples.empty()) throw InputError("empirical_tail needs at least one sample");
  std::uint64_t hits = 0;
  for (double x : samples) {
    const double dev = x - center;
    if (side == Side::Upper ? dev > eps : dev < -eps) ++hits;
  }
  const auto trials = static_cast<std::uint64_t>(samples.size());
  const WilsonInterval ci = wilson_interval(hits, trials);
  return OracleEstimate{static_cast<double>(hits) / static_cast<double>(trials),
                        OracleMethod::MonteCarlo, ci.low, ci.high, trials};
}

}  // namespace missmass
