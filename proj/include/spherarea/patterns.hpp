#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "spherical_core.hpp"
#include "vertex_pattern.hpp"

namespace spherarea {

/// Upper bound on face degrees of positively curved planar graphs that are
/// neither prisms nor antiprisms.
inline constexpr int kMaxFaceDegree = 41;

/// Lower end of the bisection bracket for critical side lengths.
inline constexpr double kBisectFloor = 1e-9;

inline bool is_admissible(const VertexPattern& p) {
  return combinatorial_curvature(p).sign() > 0 && p.max_degree() <= kMaxFaceDegree;
}

inline void require_admissible(const VertexPattern& p) {
  if (combinatorial_curvature(p).sign() <= 0) {
    throw NotAdmissible(p.to_string() + ": curvature not positive (phi = " +
                        combinatorial_curvature(p).to_string() + ")");
  }
  if (p.max_degree() > kMaxFaceDegree) {
    throw NotAdmissible(p.to_string() + ": face degree exceeds 41");
  }
}

/// p ≤_emb q: some subsequence of q dominates p entrywise. Greedy matching on
/// the sorted tuples is exact.
inline bool emb_leq(const VertexPattern& p, const VertexPattern& q) {
  std::size_t j = 0;
  for (int f : p) {
    while (j < q.size() && q[j] < f) ++j;
    if (j == q.size()) return false;
    ++j;
  }
  return true;
}

inline bool emb_less(const VertexPattern& p, const VertexPattern& q) {
  return p != q && emb_leq(p, q);
}

/// p ⊑ q: all but the last degree of p embed into all but the last of q, and
/// the last degree of p is at least the last of q.
inline bool sqsubseteq(const VertexPattern& p, const VertexPattern& q) {
  if (p.max_degree() < q.max_degree()) return false;
  std::size_t j = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    while (j + 1 < q.size() && q[j] < p[i]) ++j;
    if (j + 1 >= q.size()) return false;
    ++j;
  }
  return true;
}

/// Membership in M, the admissible patterns whose defect is still positive at
/// the hemisphere bound: (3,3,k) 5≤k≤41, (3,4,k) 7≤k≤41, (3,5,k) 11≤k≤41.
inline bool membership_M(const VertexPattern& p) {
  require_admissible(p);
  if (p.size() != 3 || p[0] != 3) return false;
  switch (p[1]) {
    case 3: return p[2] >= 5;
    case 4: return p[2] >= 7;
    case 5: return p[2] >= 11;
    default: return false;
  }
}

enum class BoundarySign { negative = -1, zero = 0, positive = 1 };

/// Sign of K_{2π/f3}(f1,f2,f3), via cos²(π/f3) − cos²(π/f1) − cos²(π/f2).
inline BoundarySign triple_boundary_sign(int f1, int f2, int f3) {
  if (!(3 <= f1 && f1 <= f2 && f2 <= f3)) {
    throw DomainError("triple_boundary_sign needs 3 <= f1 <= f2 <= f3");
  }
  auto c2 = [](int f) {
    const double c = std::cos(kPi / f);
    return c * c;
  };
  const double diff = c2(f3) - c2(f1) - c2(f2);
  if (std::abs(diff) < 1e-12) return BoundarySign::zero;
  return diff > 0 ? BoundarySign::positive : BoundarySign::negative;
}

/// K at the hemisphere bound 2π/f_N, the quantity whose sign defines M.
inline double boundary_defect(const VertexPattern& p) {
  return angle_defect(p, hemisphere_bound(p.max_degree()));
}

struct CriticalSolve {
  double a_c = 0.0;
  bool at_boundary = false;  // pattern ∈ M, a_c = 2π/f_N
  double residual = 0.0;     // |K_{a_c}|, 0 for boundary and closed-form cases
  double bracket_width = 0.0;
  int iterations = 0;
};

/// Critical side length a_c(p) = max{a ∈ [0, 2π/f_N] : K_a(p) ≥ 0}.
///
/// The boundary case is decided by the closed-form list of M. The three
/// triples with K_{2π/f_N} = 0 exactly ((3,3,4), (3,4,6), (3,5,10)) also sit at
/// the bound but have zero defect; they are returned in closed form since
/// bisection converges only at square-root rate on the arcsin singularity.
inline CriticalSolve critical_side_length(const VertexPattern& p, const Tolerances& tol = {}) {
  require_admissible(p);
  const double bound = hemisphere_bound(p.max_degree());
  if (membership_M(p)) return {bound, true, 0.0, 0.0, 0};
  if (p.size() == 3 && triple_boundary_sign(p[0], p[1], p[2]) == BoundarySign::zero) {
    return {bound, false, 0.0, 0.0, 0};
  }
  auto defect = [&p](double a) { return angle_defect(p, a); };
  const BisectionResult r = monotone_bisect(defect, kBisectFloor, bound, tol.root, tol.max_iterations);
  return {r.root, false, r.residual, r.bracket_width, r.iterations};
}

/// Vertex patterns of the prism (4,4,n) and antiprism (3,3,3,n) series.
inline bool in_prism_series(const VertexPattern& p) {
  const auto n = p.max_degree();
  return p == VertexPattern{4, 4, n} || p == VertexPattern{3, 3, 3, n};
}

/// a_c for a vertex of a solid. Same as critical_side_length, except that the
/// prism and antiprism series are accepted at every n, not only up to degree 41.
inline CriticalSolve census_critical_side_length(const VertexPattern& p, const Tolerances& tol = {}) {
  if (p.max_degree() <= kMaxFaceDegree || !in_prism_series(p)) return critical_side_length(p, tol);
  auto defect = [&p](double a) { return angle_defect(p, a); };
  const BisectionResult r =
      monotone_bisect(defect, kBisectFloor, hemisphere_bound(p.max_degree()), tol.root, tol.max_iterations);
  return {r.root, false, r.residual, r.bracket_width, r.iterations};
}

/// Enclosure of K_a(q) for a ∈ [center − radius, center + radius] ∩ [0, 2π/g_m],
/// exploiting monotonicity in a. Returns {lowest, highest}.
inline std::pair<double, double> defect_enclosure(const VertexPattern& q, double center,
                                                  double radius) {
  const double bound = hemisphere_bound(q.max_degree());
  const double lo = std::max(0.0, center - radius);
  const double hi = std::min(bound, center + radius);
  if (lo > bound) throw DomainError("enclosure lies beyond the hemisphere bound of " + q.to_string());
  return {angle_defect(q, hi), angle_defect(q, lo)};
}

/// The 342 admissible patterns in canonical order, with their critical solves.
class AdmissibleCatalog {
 public:
  AdmissibleCatalog(std::vector<VertexPattern> patterns, const Tolerances& tol)
      : patterns_(std::move(patterns)) {
    std::sort(patterns_.begin(), patterns_.end());
    solves_.reserve(patterns_.size());
    for (const auto& p : patterns_) solves_.push_back(critical_side_length(p, tol));
  }

  std::span<const VertexPattern> patterns() const { return patterns_; }
  std::size_t size() const { return patterns_.size(); }
  const VertexPattern& pattern(std::size_t i) const { return patterns_[i]; }
  const CriticalSolve& solve(std::size_t i) const { return solves_[i]; }

  /// Index of `p`, or size() if absent.
  std::size_t index_of(const VertexPattern& p) const {
    auto it = std::lower_bound(patterns_.begin(), patterns_.end(), p);
    if (it == patterns_.end() || *it != p) return patterns_.size();
    return static_cast<std::size_t>(it - patterns_.begin());
  }
  bool contains(const VertexPattern& p) const { return index_of(p) != size(); }

  const CriticalSolve& solve(const VertexPattern& p) const {
    const std::size_t i = index_of(p);
    if (i == size()) throw NotAdmissible(p.to_string() + ": not in the admissible catalog");
    return solves_[i];
  }

 private:
  std::vector<VertexPattern> patterns_;
  std::vector<CriticalSolve> solves_;
};

namespace detail {

inline void extend_admissible(std::vector<int>& prefix, std::size_t length, Rational partial,
                              std::vector<VertexPattern>& out) {
  if (prefix.size() == length) {
    if (partial.sign() > 0) out.emplace_back(prefix);
    return;
  }
  const int start = prefix.empty() ? 3 : prefix.back();
  const auto remaining = static_cast<std::int64_t>(length - prefix.size());
  for (int f = start; f <= kMaxFaceDegree; ++f) {
    // Every remaining degree is >= f, so Φ can only shrink from here.
    if ((partial + Rational{remaining, f}).sign() <= 0) break;
    prefix.push_back(f);
    extend_admissible(prefix, length, partial + Rational{1, f}, out);
    prefix.pop_back();
  }
}

}  // namespace detail

/// Enumerates every sorted degree tuple with Φ > 0 and f_N ≤ 41.
inline AdmissibleCatalog enumerate_admissible(const Tolerances& tol = {}) {
  std::vector<VertexPattern> out;
  for (std::size_t n = 3;; ++n) {
    // Φ of (3,...,3) bounds every pattern of length n from above.
    const Rational best = Rational{2 - static_cast<std::int64_t>(n), 2} +
                          Rational{static_cast<std::int64_t>(n), 3};
    if (best.sign() <= 0) break;
    std::vector<int> prefix;
    detail::extend_admissible(prefix, n, Rational{2 - static_cast<std::int64_t>(n), 2}, out);
  }
  return AdmissibleCatalog(std::move(out), tol);
}

/// The nine unordered pattern pairs known to share a critical side length with
/// zero defect: (3,4,5)/(4,4,4) plus the pattern pairs of the tiling Johnson
/// solids with more than one vertex pattern.
inline const std::array<std::pair<VertexPattern, VertexPattern>, 9>& zset() {
  static const std::array<std::pair<VertexPattern, VertexPattern>, 9> pairs = {{
      {{3, 4, 5}, {4, 4, 4}},
      {{3, 3, 3, 3}, {3, 3, 4}},
      {{3, 3, 4, 4}, {3, 4, 6}},
      {{3, 3, 5, 5}, {3, 5, 10}},
      {{3, 3, 3, 3, 3}, {3, 3, 3, 5}},
      {{3, 4, 4, 4}, {4, 4, 8}},
      {{3, 3, 3, 3, 3}, {3, 5, 5}},
      {{3, 3, 3, 5}, {3, 5, 5}},
      {{3, 4, 4, 5}, {4, 5, 10}},
  }};
  return pairs;
}

inline bool in_zset(const VertexPattern& p, const VertexPattern& q) {
  for (const auto& [a, b] : zset()) {
    if ((a == p && b == q) || (a == q && b == p)) return true;
  }
  return false;
}

}  // namespace spherarea
