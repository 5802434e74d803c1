#pragma once

#include <cmath>
#include <utility>

namespace missmass {

/// phi(x) = (e^x - 1 - x) / x^2, with phi(0) = 1/2.
///
/// Near zero the direct formula cancels catastrophically, so |x| < 1e-2 uses
/// the Taylor series sum_j x^j / (j+2)! truncated after eight terms (the
/// remainder is below 1e-20 relative). Positive, strictly increasing, and
/// +inf once e^x overflows.
inline double phi(double x) noexcept {
  if (std::abs(x) < 1e-2) {
    // Horner form of 1/2! + x/3! + ... + x^7/9!
    constexpr double c[] = {1.0 / 2,      1.0 / 6,       1.0 / 24,       1.0 / 120,
                            1.0 / 720,    1.0 / 5040,    1.0 / 40320,    1.0 / 362880};
    double acc = c[7];
    for (int j = 6; j >= 0; --j) acc = acc * x + c[j];
    return acc;
  }
  return (std::expm1(x) - x) / (x * x);
}

/// log phi(x), finite for arguments where phi itself overflows.
inline double log_phi(double x) noexcept {
  if (x < 700.0) return std::log(phi(x));
  return x - 2.0 * std::log(x) + std::log1p(-(1.0 + x) * std::exp(-x));
}

/// log(e^a + e^b) without overflow.
inline double log_add_exp(double a, double b) noexcept {
  if (a < b) std::swap(a, b);
  if (b == -HUGE_VAL) return a;
  return a + std::log1p(std::exp(b - a));
}

}  // namespace missmass
