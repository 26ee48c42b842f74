#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "vertex_pattern.hpp"

namespace spherarea {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Numerical knobs shared by the solvers and classifiers.
struct Tolerances {
  double root = 1e-13;     // bracket width on the side length, radians
  double equal = 1e-10;    // "same a_c" / "zero defect" threshold
  int max_iterations = 200;
};

/// Largest side length for which a regular n-gon fits in a hemisphere.
inline double hemisphere_bound(int n) { return kTwoPi / n; }

namespace detail {

// arcsin with clamping of roundoff excess; a real excess is a caller bug.
inline double guarded_asin(double x) {
  constexpr double kGuard = 1e-9;
  if (x > 1.0) {
    if (x - 1.0 > kGuard) throw DomainError("arcsin argument " + std::to_string(x) + " exceeds 1");
    return kPi / 2;
  }
  if (x < -1.0) {
    if (-1.0 - x > kGuard) throw DomainError("arcsin argument " + std::to_string(x) + " below -1");
    return -kPi / 2;
  }
  return std::asin(x);
}

inline double corner_angle(int n, double a) {
  return 2.0 * guarded_asin(std::cos(kPi / n) / std::cos(a / 2));
}

}  // namespace detail

/// Interior angle β of the regular spherical n-gon with side a, from
/// cos(a/2)·sin(β/2) = cos(π/n).
inline double interior_angle(int n, double a) {
  if (n < 3) throw DomainError("polygon degree must be at least 3");
  if (!(a > 0.0) || a > hemisphere_bound(n)) {
    throw DomainError("side length " + std::to_string(a) + " outside (0, 2pi/" +
                      std::to_string(n) + "]");
  }
  return detail::corner_angle(n, a);
}

/// Area n·β − (n−2)π of the regular spherical n-gon with side a.
inline double polygon_area(int n, double a) {
  return n * interior_angle(n, a) - (n - 2) * kPi;
}

/// Total angle θ_a at a vertex of the given pattern. a = 0 is the Euclidean limit.
inline double total_angle(const VertexPattern& p, double a) {
  if (!(a >= 0.0) || a > hemisphere_bound(p.max_degree())) {
    throw DomainError("side length " + std::to_string(a) + " outside [0, 2pi/" +
                      std::to_string(p.max_degree()) + "] for " + p.to_string());
  }
  double sum = 0.0;
  for (int f : p) sum += detail::corner_angle(f, a);
  return sum;
}

/// Angle defect K_a = 2π − θ_a. Strictly decreasing in a.
inline double angle_defect(const VertexPattern& p, double a) {
  return kTwoPi - total_angle(p, a);
}

/// Outcome of monotone_bisect. The sign certificate is kept: f(lower) and
/// f(upper) have opposite weak signs.
struct BisectionResult {
  double root = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double f_lower = 0.0;
  double f_upper = 0.0;
  double bracket_width = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Pure bisection with a fixed midpoint rule, so results are reproducible.
/// Requires f(lo)·f(hi) <= 0 and f monotone on [lo, hi].
template <typename Function>
BisectionResult monotone_bisect(Function&& f, double lo, double hi, double tol,
                                int max_iterations = 200) {
  if (!(lo < hi)) throw DomainError("bisection needs lo < hi");
  if (!(tol > 0.0)) throw DomainError("bisection tolerance must be positive");
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo * f_hi > 0.0) {
    throw NoSignChange("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  BisectionResult r;
  auto finish = [&](double root, double f_root) {
    r.root = root;
    r.lower = lo;
    r.upper = hi;
    r.f_lower = f_lo;
    r.f_upper = f_hi;
    r.bracket_width = hi - lo;
    r.residual = std::abs(f_root);
    return r;
  };
  if (f_lo == 0.0) {
    hi = lo;
    f_hi = f_lo;
    return finish(lo, 0.0);
  }
  if (f_hi == 0.0) {
    lo = hi;
    f_lo = f_hi;
    return finish(hi, 0.0);
  }
  const bool lo_positive = f_lo > 0.0;
  while (hi - lo > tol) {
    if (r.iterations >= max_iterations) {
      throw MaxIterations("bisection did not reach width " + std::to_string(tol));
    }
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) {
      throw MaxIterations("bisection tolerance " + std::to_string(tol) + " below floating-point resolution");
    }
    ++r.iterations;
    const double f_mid = f(mid);
    if (f_mid == 0.0) {
      lo = hi = mid;
      f_lo = f_hi = 0.0;
      return finish(mid, 0.0);
    }
    if ((f_mid > 0.0) == lo_positive) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  const double root = lo + 0.5 * (hi - lo);
  return finish(root, f(root));
}

}  // namespace spherarea
