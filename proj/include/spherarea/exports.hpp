#pragma once

#include <ostream>
#include <string>

#include "extremal.hpp"
#include "patterns.hpp"
#include "report.hpp"
#include "tessellation.hpp"

namespace spherarea {

inline void write_pattern(JsonWriter& w, const VertexPattern& p) { w.value(p.degrees()); }

/// Catalog export; columns: pattern, phi, a_c, at_boundary, residual.
inline void write_catalog_json(std::ostream& out, const AdmissibleCatalog& catalog) {
  JsonWriter w(out);
  w.begin_object().field("count", catalog.size()).key("patterns").begin_array();
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const auto& p = catalog.pattern(i);
    const auto& s = catalog.solve(i);
    w.begin_object();
    w.key("pattern");
    write_pattern(w, p);
    w.field("phi", combinatorial_curvature(p).to_string())
        .field("a_c", s.a_c)
        .field("at_boundary", s.at_boundary)
        .field("residual", s.residual)
        .end_object();
  }
  w.end_array().end_object();
  out << '\n';
}

inline void write_catalog_csv(std::ostream& out, const AdmissibleCatalog& catalog) {
  csv_row(out, {"pattern", "phi", "a_c", "at_boundary", "residual"});
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const auto& p = catalog.pattern(i);
    const auto& s = catalog.solve(i);
    csv_row(out, {p.to_string(), combinatorial_curvature(p).to_string(), format_real(s.a_c),
                  s.at_boundary ? "true" : "false", format_real(s.residual)});
  }
}

inline void write_area_min_json(std::ostream& out, const AreaMinReport& r) {
  JsonWriter w(out);
  w.begin_object();
  auto entry = [&](const AreaEntry& e) {
    w.begin_object().key("pattern");
    write_pattern(w, e.pattern);
    w.field("a_c", e.a_c).field("local_area", e.local_area).end_object();
  };
  w.key("first");
  entry(r.first());
  w.key("second");
  entry(r.second());
  w.field("separation", r.separation).field("propagated_error", r.propagated_error).field("separated", r.separated);
  w.key("ranked").begin_array();
  for (const auto& e : r.ranked) entry(e);
  w.end_array().end_object();
  out << '\n';
}

inline void write_area_min_csv(std::ostream& out, const AreaMinReport& r) {
  csv_row(out, {"rank", "pattern", "a_c", "local_area"});
  for (std::size_t i = 0; i < r.ranked.size(); ++i) {
    const auto& e = r.ranked[i];
    csv_row(out, {std::to_string(i + 1), e.pattern.to_string(), format_real(e.a_c), format_real(e.local_area)});
  }
}

inline void write_gap_entry(JsonWriter& w, const GapEntry& e) {
  w.begin_object().key("p");
  write_pattern(w, e.p);
  w.key("q");
  write_pattern(w, e.q);
  w.field("k", e.k).field("diagonal", e.diagonal).end_object();
}

/// Gap report: ε, counts and the leading `top` entries.
inline void write_gap_json(std::ostream& out, const GapReport& r, std::size_t top = 20) {
  JsonWriter w(out);
  w.begin_object()
      .field("epsilon", r.epsilon)
      .field("size", r.size())
      .field("candidates", r.candidates)
      .field("skipped_domain", r.skipped_domain);
  w.key("first");
  write_gap_entry(w, r.first());
  w.key("second");
  write_gap_entry(w, r.second());
  w.key("top").begin_array();
  for (std::size_t i = 0; i < std::min(top, r.size()); ++i) write_gap_entry(w, r.entries[i]);
  w.end_array().end_object();
  out << '\n';
}

inline void write_gap_csv(std::ostream& out, const GapReport& r, std::size_t top = 20) {
  csv_row(out, {"epsilon", "size", "rank", "p", "q", "k", "diagonal"});
  for (std::size_t i = 0; i < std::min(top, r.size()); ++i) {
    const auto& e = r.entries[i];
    csv_row(out, {format_real(r.epsilon), std::to_string(r.size()), std::to_string(i + 1), e.p.to_string(),
                  e.q.to_string(), format_real(e.k), e.diagonal ? "true" : "false"});
  }
}

inline void write_tiling_json(std::ostream& out, const std::string& name, const TilingVerdict& v) {
  JsonWriter w(out);
  w.begin_object().field("name", name).field("spherical_tiling", v.tiling);
  if (v.shared_a_c) w.field("a_c", *v.shared_a_c);
  w.field("reason", v.reason).key("witness").begin_array();
  for (const auto& row : v.witness) {
    w.begin_object().key("pattern");
    write_pattern(w, row.pattern);
    w.field("a_c", row.a_c).field("at_boundary", row.at_boundary).field("defect", row.defect).end_object();
  }
  w.end_array().end_object();
  out << '\n';
}

}  // namespace spherarea
