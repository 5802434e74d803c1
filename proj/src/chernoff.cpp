#include "missmass/chernoff.hpp"

#include <algorithm>
#include <cmath>

#include "missmass/errors.hpp"

namespace missmass {
namespace {

constexpr double kStart = 1e-6;
constexpr double kRelTol = 1e-10;
constexpr double kGolden = 0.6180339887498949;  // (sqrt 5 - 1) / 2

}  // namespace

ChernoffResult chernoff_tail(const LogMgfBound& bound, double eps, Side side) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw InputError("eps must be a nonnegative number");

  const Interval& dom = bound.domain();
  const double sign = side == Side::Upper ? 1.0 : -1.0;
  // Half-line s > 0 mapped into the domain: s ranges over (0, edge).
  const double raw_edge = side == Side::Upper ? dom.hi : -dom.lo;
  const bool edge_closed = side == Side::Upper ? dom.hi_closed : dom.lo_closed;
  const bool reaches_zero = side == Side::Upper ? (dom.lo <= 0.0) : (dom.hi >= 0.0);
  if (!(raw_edge > 0.0) || !reaches_zero) {
    throw DomainError(bound.name() + " is not defined for the " + std::string(side_name(side)) +
                      " tail");
  }

  ChernoffResult out;
  out.family = bound.name();
  if (eps == 0.0) return out;

  double edge = std::min(raw_edge, kMaxChernoffT);
  if (edge == raw_edge && !edge_closed) edge = std::nextafter(edge, 0.0);

  auto objective = [&](double s) {
    const double value = s * eps - bound(sign * s);
    return std::isnan(value) ? -HUGE_VAL : value;
  };

  double best_s = 0.0;
  double best_g = 0.0;
  auto record = [&](double s, double g) {
    if (g > best_g) {
      best_g = g;
      best_s = s;
    }
  };

  // Bracket: a < b < c with g(b) >= g(c), or c pinned at the edge.
  double a = 0.0;
  double b = std::min(kStart, 0.5 * edge);
  double gb = objective(b);
  record(b, gb);
  double c = std::min(2.0 * b, edge);
  double gc = objective(c);
  record(c, gc);
  if (gb > 0.0) {
    while (gc > gb && c < edge) {
      a = b;
      b = c;
      gb = gc;
      c = std::min(2.0 * c, edge);
      gc = objective(c);
      record(c, gc);
    }
  } else {
    // Objective already below its value at 0: the maximizer lies in (0, b].
    c = b;
  }

  double lo = a;
  double hi = c;
  double x1 = hi - kGolden * (hi - lo);
  double x2 = lo + kGolden * (hi - lo);
  double g1 = objective(x1);
  double g2 = objective(x2);
  for (int iter = 0; iter < 400 && (hi - lo) > kRelTol * hi; ++iter) {
    if (g1 < g2) {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + kGolden * (hi - lo);
      g2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - kGolden * (hi - lo);
      g1 = objective(x1);
    }
  }
  record(x1, g1);
  record(x2, g2);

  out.t_star = sign * best_s;
  out.exponent = best_g;
  out.log_tail_bound = -best_g;
  return out;
}

}  // namespace missmass
