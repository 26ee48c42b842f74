#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "catalog.hpp"
#include "errors.hpp"
#include "patterns.hpp"
#include "tessellation.hpp"

namespace spherarea {

// ---------------------------------------------------------------------------
// Minimal critical area: lower bound from the faces around one vertex.

struct AreaEntry {
  VertexPattern pattern;
  double a_c = 0.0;
  double local_area = 0.0;  // Σ_i Area(Δ_{f_i}(a_c(p)))
};

struct AreaMinReport {
  std::vector<AreaEntry> ranked;  // ascending, ties by pattern order
  double separation = 0.0;        // second − first
  double propagated_error = 0.0;  // area change over the root brackets of first and second
  bool separated = false;         // separation > 10 × propagated_error

  const AreaEntry& first() const { return ranked.at(0); }
  const AreaEntry& second() const { return ranked.at(1); }
};

inline double local_area(const VertexPattern& p, double a) {
  double sum = 0.0;
  for (int f : p) sum += polygon_area(f, a);
  return sum;
}

inline AreaMinReport area_min_search(const AdmissibleCatalog& catalog, const Tolerances& tol = {}) {
  AreaMinReport r;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const auto& p = catalog.pattern(i);
    const double a = catalog.solve(i).a_c;
    r.ranked.push_back({p, a, local_area(p, a)});
  }
  std::stable_sort(r.ranked.begin(), r.ranked.end(), [](const AreaEntry& x, const AreaEntry& y) {
    return std::tie(x.local_area, x.pattern) < std::tie(y.local_area, y.pattern);
  });
  auto spread = [&](const AreaEntry& e) {
    const CriticalSolve& cs = catalog.solve(e.pattern);
    if (cs.bracket_width == 0.0) return 0.0;
    const double hi = std::min(e.a_c + tol.root, hemisphere_bound(e.pattern.max_degree()));
    return local_area(e.pattern, hi) - local_area(e.pattern, e.a_c - tol.root);
  };
  r.separation = r.second().local_area - r.first().local_area;
  r.propagated_error = spread(r.first()) + spread(r.second());
  r.separated = r.separation > 10.0 * r.propagated_error;
  return r;
}

// ---------------------------------------------------------------------------
// Gap search over S(ε).

struct GapEntry {
  VertexPattern p;
  VertexPattern q;
  double k = 0.0;
  bool diagonal = false;
};

struct GapReport {
  double epsilon = 0.0;
  std::vector<GapEntry> entries;  // ascending k, ties by (p, q)
  std::size_t candidates = 0;     // triples examined before the ε filters
  std::size_t skipped_domain = 0; // a_c(p) beyond the hemisphere bound of q

  std::size_t size() const { return entries.size(); }
  const GapEntry& first() const { return entries.at(0); }
  const GapEntry& second() const { return entries.at(1); }
};

inline constexpr double kMaxGapMargin = 1e-3;

/// Builds S(ε):
///  - one diagonal entry (p, p, K_{2π/f_N}(p)) for every p ∈ M;
///  - (p, q, K_{a_c(p)}(q)) for p ∉ M, p ≠ (3,3,3), q ≠ p, {p,q} ∉ Z, with
///    a_c(q) ≥ ε + a_c(p) and K_{a_c(p)}(q) > ε.
/// The pair loop is split over `jobs` threads; the result does not depend on it.
inline GapReport gap_search(double epsilon, const AdmissibleCatalog& catalog, unsigned jobs = 1) {
  if (!(std::abs(epsilon) <= kMaxGapMargin)) {
    throw MarginTooLarge("margin " + std::to_string(epsilon) + " exceeds 1e-3 in magnitude");
  }
  const VertexPattern least{3, 3, 3};
  const std::size_t n = catalog.size();

  struct Partial {
    std::vector<GapEntry> entries;
    std::size_t candidates = 0;
    std::size_t skipped = 0;
  };
  auto scan = [&](std::size_t begin, std::size_t end, Partial& out) {
    for (std::size_t i = begin; i < end; ++i) {
      const VertexPattern& p = catalog.pattern(i);
      const CriticalSolve& sp = catalog.solve(i);
      if (sp.at_boundary) {
        ++out.candidates;
        out.entries.push_back({p, p, boundary_defect(p), true});
        continue;
      }
      if (p == least) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const VertexPattern& q = catalog.pattern(j);
        if (in_zset(p, q)) continue;
        ++out.candidates;
        if (!(catalog.solve(j).a_c >= epsilon + sp.a_c)) continue;
        if (sp.a_c > hemisphere_bound(q.max_degree())) {
          ++out.skipped;
          continue;
        }
        const double k = angle_defect(q, sp.a_c);
        if (k > epsilon) out.entries.push_back({p, q, k, false});
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  std::vector<Partial> parts(workers);
  if (workers == 1) {
    scan(0, n, parts[0]);
  } else {
    std::vector<std::jthread> threads;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t b = std::min(n, w * chunk);
      const std::size_t e = std::min(n, b + chunk);
      threads.emplace_back([&, b, e, w] { scan(b, e, parts[w]); });
    }
  }

  GapReport r;
  r.epsilon = epsilon;
  for (auto& part : parts) {
    r.candidates += part.candidates;
    r.skipped_domain += part.skipped;
    r.entries.insert(r.entries.end(), std::make_move_iterator(part.entries.begin()),
                     std::make_move_iterator(part.entries.end()));
  }
  std::stable_sort(r.entries.begin(), r.entries.end(), [](const GapEntry& x, const GapEntry& y) {
    return std::tie(x.k, x.p, x.q) < std::tie(y.k, y.p, y.q);
  });
  return r;
}

/// First and second minima agree in pattern pairs and within `tolerance` in value.
inline bool gap_minima_agree(const GapReport& a, const GapReport& b, double tolerance = 1e-9) {
  if (a.size() < 2 || b.size() < 2) return false;
  for (int rank = 0; rank < 2; ++rank) {
    const GapEntry& x = rank == 0 ? a.first() : a.second();
    const GapEntry& y = rank == 0 ? b.first() : b.second();
    if (x.p != y.p || x.q != y.q || std::abs(x.k - y.k) > tolerance) return false;
  }
  return true;
}

/// How much K_{a_c(p)}(q) can move while a_c(p) ranges over its root bracket.
inline double gap_entry_spread(const GapEntry& e, const AdmissibleCatalog& catalog, const Tolerances& tol = {}) {
  if (e.diagonal) return 0.0;
  const CriticalSolve& sp = catalog.solve(e.p);
  if (sp.bracket_width == 0.0) return 0.0;
  const auto [low, high] = defect_enclosure(e.q, sp.a_c, tol.root);
  return high - low;
}

struct GapRobustness {
  bool minima_agree = false;     // ε = +m and ε = −m runs pick the same two entries
  double separation = 0.0;       // second.k − first.k of the +m run
  double propagated_error = 0.0;
  bool separated = false;        // separation > 10 × propagated_error

  bool ok() const { return minima_agree && separated; }
};

inline GapRobustness gap_robustness(const GapReport& plus, const GapReport& minus, const AdmissibleCatalog& catalog,
                                    const Tolerances& tol = {}) {
  GapRobustness g;
  g.minima_agree = gap_minima_agree(plus, minus);
  if (plus.size() < 2) return g;
  g.separation = plus.second().k - plus.first().k;
  g.propagated_error = gap_entry_spread(plus.first(), catalog, tol) + gap_entry_spread(plus.second(), catalog, tol);
  g.separated = g.separation > 10.0 * g.propagated_error;
  return g;
}

// ---------------------------------------------------------------------------
// Witness solids.

struct SolidWitness {
  std::string name;
  double a_c = 0.0;
  std::vector<VertexPattern> argmin;
  double area = 0.0;             // via the face census
  double area_from_defect = 0.0; // 4π − Σ count·K_{a_c}, via the vertex census
};

inline SolidWitness solid_witness(const SolidRecord& s, const Tolerances& tol = {}) {
  const GraphCritical g = graph_a_c(s, tol);
  return {s.name, g.a_c, g.argmin, area_at(s, g.a_c), 2.0 * kTwoPi - total_defect_at(s, g.a_c)};
}

/// J16: the non-tiling solid whose critical area bounds the largest one from below.
inline SolidWitness gap_upper_witness(const Tolerances& tol = {}) {
  return solid_witness(*find_solid("J16"), tol);
}

/// Gamma: a solid with small critical area.
inline SolidWitness area_min_upper_witness(const Tolerances& tol = {}) {
  return solid_witness(*find_solid("Gamma"), tol);
}

// ---------------------------------------------------------------------------

/// Admissible patterns whose a_c lies strictly between a_c(p) and a_c(q).
inline std::vector<std::pair<VertexPattern, double>> neighborhood_probe(const VertexPattern& p,
                                                                       const VertexPattern& q,
                                                                       const AdmissibleCatalog& catalog) {
  const double a = catalog.solve(p).a_c;
  const double b = catalog.solve(q).a_c;
  const double lo = std::min(a, b), hi = std::max(a, b);
  std::vector<std::pair<VertexPattern, double>> out;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const double r = catalog.solve(i).a_c;
    if (lo < r && r < hi) out.emplace_back(catalog.pattern(i), r);
  }
  return out;
}

struct ZCertificate {
  VertexPattern p, q;
  double a_c_difference = 0.0;      // a_c(p) − a_c(q)
  double cross_pq = 0.0;            // K_{a_c(p)}(q), point value
  double cross_qp = 0.0;            // K_{a_c(q)}(p), point value
  double cross_bound = 0.0;         // max |K| needed for the enclosures to reach zero
  bool certified = false;
};

/// Checks each Z pair: same a_c within tol.equal and cross defects zero within
/// tol.equal. The cross defect is judged on the monotone enclosure over the
/// root bracket a_c ± tol.root.
inline std::vector<ZCertificate> certify_zset(const AdmissibleCatalog& catalog, const Tolerances& tol = {}) {
  auto enclosure_gap = [&](const VertexPattern& from, const VertexPattern& to) {
    const double a = catalog.solve(from).a_c;
    const double radius = catalog.solve(from).bracket_width == 0.0 ? 0.0 : tol.root;
    const auto [low, high] = defect_enclosure(to, a, radius);
    if (low <= 0.0 && 0.0 <= high) return 0.0;
    return std::min(std::abs(low), std::abs(high));
  };
  std::vector<ZCertificate> out;
  for (const auto& [p, q] : zset()) {
    ZCertificate c{p, q};
    const double ap = catalog.solve(p).a_c;
    const double aq = catalog.solve(q).a_c;
    c.a_c_difference = ap - aq;
    auto point = [](const VertexPattern& at, double a) {
      return angle_defect(at, std::min(a, hemisphere_bound(at.max_degree())));
    };
    c.cross_pq = point(q, ap);
    c.cross_qp = point(p, aq);
    c.cross_bound = std::max(enclosure_gap(p, q), enclosure_gap(q, p));
    c.certified = std::abs(c.a_c_difference) < tol.equal && c.cross_bound < tol.equal;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace spherarea
