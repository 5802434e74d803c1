#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "missmass/bounds.hpp"
#include "missmass/side.hpp"

namespace missmass {

struct ChernoffResult {
  double t_star = 0.0;
  // sup_t  |t| eps - L(t)  over the requested half-line, floored at 0
  double exponent = 0.0;
  double log_tail_bound = 0.0;
  std::string family;

  // exp(log_tail_bound), floored at the smallest normal double so that a
  // reported probability stays in (0, 1].
  double tail_bound() const noexcept {
    return std::max(std::exp(log_tail_bound), std::numeric_limits<double>::min());
  }
};

// Largest |t| the optimizer will try; bounds whose supremum is unbounded
// (the tail is exactly zero) report the exponent reached here.
inline constexpr double kMaxChernoffT = 1e12;

/// Optimized Chernoff bound Pr[M - EM >= eps] (upper) or Pr[M - EM <= -eps] (lower).
///
/// Maximizes g(s) = s eps - L(+-s) over s > 0 inside the bound's domain:
/// geometric bracketing from s = 1e-6, then golden-section search to a
/// relative tolerance of 1e-10 in s. Throws DomainError if the bound is not
/// defined on the requested half-line and InputError for negative eps.
ChernoffResult chernoff_tail(const LogMgfBound& bound, double eps, Side side);

}  // namespace missmass
