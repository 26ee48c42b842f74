#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "patterns.hpp"
#include "spherical_core.hpp"
#include "vertex_pattern.hpp"

namespace spherarea {

/// Combinatorial surface given by face cycles. Edges and incidences are
/// derived from the cycles and never supplied separately.
class PlanarTessellation {
 public:
  using Edge = std::pair<int, int>;  // first < second

  PlanarTessellation() = default;

  /// Vertex count defaults to 1 + the largest index used.
  explicit PlanarTessellation(std::vector<std::vector<int>> faces, int vertex_count = -1)
      : faces_(std::move(faces)) {
    int max_index = -1;
    for (const auto& face : faces_) {
      for (int v : face) max_index = std::max(max_index, v);
    }
    vertex_count_ = vertex_count < 0 ? max_index + 1 : vertex_count;
    vertex_faces_.assign(static_cast<std::size_t>(std::max(vertex_count_, 0)), {});
    for (std::size_t f = 0; f < faces_.size(); ++f) {
      const auto& face = faces_[f];
      for (std::size_t i = 0; i < face.size(); ++i) {
        const int v = face[i];
        if (v >= 0 && v < vertex_count_) vertex_faces_[static_cast<std::size_t>(v)].push_back(static_cast<int>(f));
        const int w = face[(i + 1) % face.size()];
        edge_faces_[make_edge(v, w)].push_back(static_cast<int>(f));
      }
    }
  }

  static Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

  int vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edge_faces_.size(); }
  std::size_t face_count() const { return faces_.size(); }
  const std::vector<std::vector<int>>& faces() const { return faces_; }
  const std::map<Edge, std::vector<int>>& edge_faces() const { return edge_faces_; }
  const std::vector<int>& faces_at(int v) const { return vertex_faces_[static_cast<std::size_t>(v)]; }

  int euler_characteristic() const {
    return vertex_count_ - static_cast<int>(edge_count()) + static_cast<int>(face_count());
  }

  /// Number of distinct neighbours of v.
  int vertex_degree(int v) const {
    std::set<int> nbrs;
    for (int f : faces_at(v)) {
      const auto& face = faces_[static_cast<std::size_t>(f)];
      const auto n = face.size();
      for (std::size_t i = 0; i < n; ++i) {
        if (face[i] == v) {
          nbrs.insert(face[(i + 1) % n]);
          nbrs.insert(face[(i + n - 1) % n]);
        }
      }
    }
    return static_cast<int>(nbrs.size());
  }

  VertexPattern pattern_at(int v) const {
    std::vector<int> degrees;
    for (int f : faces_at(v)) degrees.push_back(static_cast<int>(faces_[static_cast<std::size_t>(f)].size()));
    return VertexPattern(std::move(degrees));
  }

 private:
  std::vector<std::vector<int>> faces_;
  int vertex_count_ = 0;
  std::map<Edge, std::vector<int>> edge_faces_;
  std::vector<std::vector<int>> vertex_faces_;
};

struct ValidationReport {
  bool ok = true;
  std::string rule;    // first violated rule, empty when ok
  std::string detail;
};

/// Checks the tessellation axioms on the face-cycle encoding, the degree
/// bounds and χ = 2. Never throws; reports the first violation.
inline ValidationReport validate(const PlanarTessellation& t) {
  auto fail = [](std::string rule, std::string detail) {
    return ValidationReport{false, std::move(rule), std::move(detail)};
  };
  const auto& faces = t.faces();
  if (faces.empty()) return fail("faces", "no faces");
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& face = faces[f];
    if (face.size() < 3) return fail("face-degree", "face " + std::to_string(f) + " has fewer than 3 vertices");
    std::set<int> seen;
    for (int v : face) {
      if (v < 0 || v >= t.vertex_count()) {
        return fail("faces", "face " + std::to_string(f) + " uses undeclared vertex " + std::to_string(v));
      }
      if (!seen.insert(v).second) {
        return fail("faces", "face " + std::to_string(f) + " repeats vertex " + std::to_string(v));
      }
    }
  }
  for (const auto& [edge, owners] : t.edge_faces()) {
    if (owners.size() != 2 || owners[0] == owners[1]) {
      return fail("edge-two-faces", "edge " + std::to_string(edge.first) + "-" + std::to_string(edge.second) +
                                        " lies in " + std::to_string(owners.size()) + " face slot(s)");
    }
  }
  // Two faces may share one vertex or one edge, nothing more.
  for (int v = 0; v < t.vertex_count(); ++v) {
    const auto& around = t.faces_at(v);
    for (std::size_t i = 0; i < around.size(); ++i) {
      for (std::size_t j = i + 1; j < around.size(); ++j) {
        const auto& a = faces[static_cast<std::size_t>(around[i])];
        const auto& b = faces[static_cast<std::size_t>(around[j])];
        std::vector<int> shared;
        for (int x : a) {
          if (std::find(b.begin(), b.end(), x) != b.end()) shared.push_back(x);
        }
        bool ok = shared.size() == 1;
        if (shared.size() == 2) {
          const auto e = PlanarTessellation::make_edge(shared[0], shared[1]);
          auto it = t.edge_faces().find(e);
          ok = it != t.edge_faces().end() &&
               std::find(it->second.begin(), it->second.end(), around[i]) != it->second.end() &&
               std::find(it->second.begin(), it->second.end(), around[j]) != it->second.end();
        }
        if (!ok) {
          return fail("face-intersection", "faces " + std::to_string(around[i]) + " and " +
                                               std::to_string(around[j]) + " share " +
                                               std::to_string(shared.size()) + " vertices not forming one edge");
        }
      }
    }
  }
  for (int v = 0; v < t.vertex_count(); ++v) {
    if (t.vertex_degree(v) < 3) {
      return fail("vertex-degree", "vertex " + std::to_string(v) + " has degree " + std::to_string(t.vertex_degree(v)));
    }
    if (static_cast<int>(t.faces_at(v).size()) != t.vertex_degree(v)) {
      return fail("vertex-link", "vertex " + std::to_string(v) + " is not surrounded by a single face cycle");
    }
  }
  if (t.euler_characteristic() != 2) {
    return fail("euler", "V - E + F = " + std::to_string(t.euler_characteristic()));
  }
  return {};
}

/// (pattern, count) pairs in canonical pattern order.
struct VertexCensus {
  std::vector<std::pair<VertexPattern, int>> entries;

  int vertex_count() const {
    int n = 0;
    for (const auto& e : entries) n += e.second;
    return n;
  }
};

/// (degree, count) pairs in increasing degree.
struct FaceCensus {
  std::vector<std::pair<int, int>> entries;

  int face_count() const {
    int n = 0;
    for (const auto& e : entries) n += e.second;
    return n;
  }
  int max_degree() const { return entries.empty() ? 0 : entries.back().first; }
};

inline VertexCensus vertex_census_of(const PlanarTessellation& t) {
  std::map<VertexPattern, int> counts;
  for (int v = 0; v < t.vertex_count(); ++v) ++counts[t.pattern_at(v)];
  return {{counts.begin(), counts.end()}};
}

inline FaceCensus face_census_of(const PlanarTessellation& t) {
  std::map<int, int> counts;
  for (const auto& face : t.faces()) ++counts[static_cast<int>(face.size())];
  return {{counts.begin(), counts.end()}};
}

struct SolidRecord {
  std::string name;
  VertexCensus vertex_census;
  FaceCensus face_census;
  std::optional<PlanarTessellation> tessellation;

  static SolidRecord from_tessellation(std::string name, PlanarTessellation t) {
    SolidRecord s{std::move(name), vertex_census_of(t), face_census_of(t), std::nullopt};
    s.tessellation = std::move(t);
    return s;
  }
};

/// Incidence identities between the two censuses: for every degree d, the d-gon
/// corners counted from vertices equal d·#(d-gons); #E is integral; V − E + F = 2.
/// Returns the violated identities (empty when consistent).
inline std::vector<std::string> census_violations(const SolidRecord& s) {
  std::vector<std::string> out;
  std::map<int, long> from_vertices, from_faces;
  std::set<VertexPattern> seen_patterns;
  for (const auto& [p, c] : s.vertex_census.entries) {
    if (c <= 0) out.push_back("vertex count for " + p.to_string() + " must be positive");
    if (!seen_patterns.insert(p).second) out.push_back("pattern " + p.to_string() + " listed twice");
    for (int f : p) from_vertices[f] += c;
  }
  std::set<int> seen_degrees;
  long corner_total = 0;
  for (const auto& [d, c] : s.face_census.entries) {
    if (d < 3) out.push_back("face degree " + std::to_string(d) + " below 3");
    if (c <= 0) out.push_back("face count for degree " + std::to_string(d) + " must be positive");
    if (!seen_degrees.insert(d).second) out.push_back("face degree " + std::to_string(d) + " listed twice");
    from_faces[d] += static_cast<long>(d) * c;
    corner_total += static_cast<long>(d) * c;
  }
  if (!out.empty()) return out;
  if (from_vertices != from_faces) {
    std::set<int> all;
    for (const auto& [d, n] : from_vertices) all.insert(d);
    for (const auto& [d, n] : from_faces) all.insert(d);
    for (int d : all) {
      const long a = from_vertices.count(d) ? from_vertices[d] : 0;
      const long b = from_faces.count(d) ? from_faces[d] : 0;
      if (a != b) {
        out.push_back("handshake for " + std::to_string(d) + "-gons: " + std::to_string(a) +
                      " corners at vertices vs " + std::to_string(b) + " from faces");
      }
    }
  }
  if (corner_total % 2 != 0) {
    out.push_back("odd corner total " + std::to_string(corner_total) + " gives non-integral edge count");
  } else {
    const long euler = s.vertex_census.vertex_count() - corner_total / 2 + s.face_census.face_count();
    if (euler != 2) out.push_back("Euler characteristic V - E + F = " + std::to_string(euler));
  }
  return out;
}

struct GraphCritical {
  double a_c = 0.0;
  std::vector<VertexPattern> argmin;
};

/// a_c(G) = min over census patterns of a_c(pattern); argmin within 1e-12.
inline GraphCritical graph_a_c(const SolidRecord& s, const Tolerances& tol = {}) {
  if (s.vertex_census.entries.empty()) throw DomainError(s.name + ": empty vertex census");
  std::vector<std::pair<VertexPattern, double>> values;
  for (const auto& [p, c] : s.vertex_census.entries) values.emplace_back(p, census_critical_side_length(p, tol).a_c);
  GraphCritical g;
  g.a_c = values.front().second;
  for (const auto& v : values) g.a_c = std::min(g.a_c, v.second);
  for (const auto& [p, a] : values) {
    if (a - g.a_c <= 1e-12) g.argmin.push_back(p);
  }
  std::sort(g.argmin.begin(), g.argmin.end());
  return g;
}

/// Largest side length at which every face still fits in a hemisphere.
inline double side_bound(const SolidRecord& s) {
  return hemisphere_bound(s.face_census.max_degree());
}

/// Area of S_a(G) summed over the face census.
inline double area_at(const SolidRecord& s, double a) {
  if (!(a > 0.0) || a > side_bound(s)) {
    throw DomainError(s.name + ": side length " + std::to_string(a) + " exceeds the face bound");
  }
  double area = 0.0;
  for (const auto& [d, c] : s.face_census.entries) area += c * polygon_area(d, a);
  return area;
}

/// Σ count·K_a(pattern) over the vertex census.
inline double total_defect_at(const SolidRecord& s, double a) {
  double total = 0.0;
  for (const auto& [p, c] : s.vertex_census.entries) total += c * angle_defect(p, a);
  return total;
}

/// |Area_a + Σ K_a − 4π|.
inline double gauss_bonnet_residual(const SolidRecord& s, double a) {
  return std::abs(area_at(s, a) + total_defect_at(s, a) - 2.0 * kTwoPi);
}

inline double critical_area(const SolidRecord& s, const Tolerances& tol = {}) {
  return area_at(s, graph_a_c(s, tol).a_c);
}

struct TilingWitnessRow {
  VertexPattern pattern;
  double a_c = 0.0;
  bool at_boundary = false;
  double defect = 0.0;  // K_{a_c(x)}(x)
};

struct TilingVerdict {
  bool tiling = false;
  std::string reason;
  std::optional<double> shared_a_c;
  std::vector<TilingWitnessRow> witness;
};

/// Spherical tiling test: all census patterns share one a_c and have zero
/// defect there. Equal a_c is decided within tol.equal or by a Z certificate.
inline TilingVerdict is_spherical_tiling(const SolidRecord& s, const Tolerances& tol = {}) {
  TilingVerdict v;
  for (const auto& [p, c] : s.vertex_census.entries) {
    const CriticalSolve cs = census_critical_side_length(p, tol);
    v.witness.push_back({p, cs.a_c, cs.at_boundary, angle_defect(p, cs.a_c)});
  }
  for (const auto& row : v.witness) {
    if (row.at_boundary || std::abs(row.defect) > tol.equal) {
      v.reason = row.pattern.to_string() + " keeps positive defect " + std::to_string(row.defect) +
                 " at its critical side length";
      return v;
    }
  }
  for (std::size_t i = 0; i < v.witness.size(); ++i) {
    for (std::size_t j = i + 1; j < v.witness.size(); ++j) {
      const auto& x = v.witness[i];
      const auto& y = v.witness[j];
      if (std::abs(x.a_c - y.a_c) > tol.equal && !in_zset(x.pattern, y.pattern)) {
        v.reason = "a_c" + x.pattern.to_string() + " = " + std::to_string(x.a_c) + " differs from a_c" +
                   y.pattern.to_string() + " = " + std::to_string(y.a_c);
        return v;
      }
    }
  }
  v.tiling = true;
  v.shared_a_c = v.witness.front().a_c;
  for (const auto& row : v.witness) *v.shared_a_c = std::min(*v.shared_a_c, row.a_c);
  return v;
}

/// n-gonal prism: vertices 0..n-1 on top, n..2n-1 below.
inline PlanarTessellation generate_prism(int n) {
  if (n < 3) throw DomainError("prism needs n >= 3");
  std::vector<std::vector<int>> faces;
  std::vector<int> top, bottom;
  for (int i = 0; i < n; ++i) {
    top.push_back(i);
    bottom.push_back(2 * n - 1 - i);
    const int j = (i + 1) % n;
    faces.push_back({i, n + i, n + j, j});
  }
  faces.push_back(top);
  faces.push_back(bottom);
  return PlanarTessellation(std::move(faces), 2 * n);
}

/// n-gonal antiprism: vertex i on the even (top) or odd (bottom) ring,
/// triangles (i, i+1, i+2). For n = 3 this is the octahedron.
inline PlanarTessellation generate_antiprism(int n) {
  if (n < 3) throw DomainError("antiprism needs n >= 3");
  const int m = 2 * n;
  std::vector<std::vector<int>> faces;
  for (int i = 0; i < m; ++i) {
    if (i % 2 == 0) {
      faces.push_back({i, (i + 1) % m, (i + 2) % m});
    } else {
      faces.push_back({i, (i + 2) % m, (i + 1) % m});
    }
  }
  std::vector<int> even, odd;
  for (int i = 0; i < n; ++i) {
    even.push_back(2 * i);
    odd.push_back(2 * (n - 1 - i) + 1);
  }
  faces.push_back(even);
  faces.push_back(odd);
  return PlanarTessellation(std::move(faces), m);
}

/// Replaces face `f` by a fan of triangles around a new apex vertex.
inline PlanarTessellation cap_face(const PlanarTessellation& t, std::size_t f) {
  auto faces = t.faces();
  const std::vector<int> rim = faces.at(f);
  faces.erase(faces.begin() + static_cast<std::ptrdiff_t>(f));
  const int apex = t.vertex_count();
  for (std::size_t i = 0; i < rim.size(); ++i) faces.push_back({rim[i], rim[(i + 1) % rim.size()], apex});
  return PlanarTessellation(std::move(faces), apex + 1);
}

/// Combinatorial dual of a valid tessellation; dual vertex i is face i.
inline PlanarTessellation dual_of(const PlanarTessellation& t) {
  // Directed edge (u -> w) belongs to the face that traverses it.
  std::map<std::pair<int, int>, int> owner;
  for (std::size_t f = 0; f < t.faces().size(); ++f) {
    const auto& face = t.faces()[f];
    for (std::size_t i = 0; i < face.size(); ++i) owner[{face[i], face[(i + 1) % face.size()]}] = static_cast<int>(f);
  }
  std::vector<std::vector<int>> dual_faces;
  for (int v = 0; v < t.vertex_count(); ++v) {
    const int start = t.faces_at(v).front();
    std::vector<int> cycle;
    int f = start;
    do {
      cycle.push_back(f);
      const auto& face = t.faces()[static_cast<std::size_t>(f)];
      const auto it = std::find(face.begin(), face.end(), v);
      const auto idx = static_cast<std::size_t>(it - face.begin());
      const int prev = face[(idx + face.size() - 1) % face.size()];
      f = owner.at({v, prev});
    } while (f != start && cycle.size() <= t.faces().size());
    dual_faces.push_back(std::move(cycle));
  }
  return PlanarTessellation(std::move(dual_faces), static_cast<int>(t.face_count()));
}

struct UnitPoint {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline double dot(const UnitPoint& a, const UnitPoint& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline UnitPoint cross(const UnitPoint& a, const UnitPoint& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const UnitPoint& a) { return std::sqrt(dot(a, a)); }

/// Great-circle distance, well conditioned for short and long arcs.
inline double great_circle_distance(const UnitPoint& a, const UnitPoint& b) {
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

/// Spherical angle at `at` between the arcs towards `a` and `b`.
inline double corner_angle_at(const UnitPoint& at, const UnitPoint& a, const UnitPoint& b) {
  const UnitPoint na = cross(at, a);
  const UnitPoint nb = cross(at, b);
  return std::atan2(norm(cross(na, nb)), dot(na, nb));
}

struct AntiprismGeometry {
  int n = 0;
  std::vector<UnitPoint> points;
  std::vector<std::pair<int, int>> edges;
};

/// Vertices of the n-gonal antiprism tiling on the unit sphere (n >= 4):
/// P_i at colatitude π/2 ± arctan(½·√(2 − 4cos²(π/n) + 2cos(π/n))) and
/// longitude πi/n, adjacent to P_{i±1} and P_{i±2}.
inline AntiprismGeometry antiprism_coordinates(int n) {
  if (n < 4) throw DomainError("antiprism coordinates need n >= 4");
  const double c = std::cos(kPi / n);
  const double offset = std::atan(0.5 * std::sqrt(2.0 - 4.0 * c * c + 2.0 * c));
  AntiprismGeometry g;
  g.n = n;
  const int m = 2 * n;
  for (int i = 0; i < m; ++i) {
    const double colatitude = kPi / 2 + (i % 2 == 0 ? offset : -offset);
    const double longitude = kPi * i / n;
    g.points.push_back({std::sin(colatitude) * std::cos(longitude), std::sin(colatitude) * std::sin(longitude),
                        std::cos(colatitude)});
  }
  for (int i = 0; i < m; ++i) {
    g.edges.emplace_back(i, (i + 1) % m);
    g.edges.emplace_back(i, (i + 2) % m);
  }
  return g;
}

/// Sum of the four corner angles at P_i: three triangles and one n-gon.
inline double antiprism_vertex_total_angle(const AntiprismGeometry& g, int i) {
  const int m = 2 * g.n;
  auto p = [&](int k) { return g.points[static_cast<std::size_t>(((i + k) % m + m) % m)]; };
  const UnitPoint at = p(0);
  return corner_angle_at(at, p(-2), p(-1)) + corner_angle_at(at, p(-1), p(1)) +
         corner_angle_at(at, p(1), p(2)) + corner_angle_at(at, p(2), p(-2));
}

}  // namespace spherarea
