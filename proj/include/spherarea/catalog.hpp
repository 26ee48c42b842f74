#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "tessellation.hpp"

namespace spherarea {

namespace detail {

inline SolidRecord census_solid(std::string name, std::vector<std::pair<VertexPattern, int>> vertices,
                                std::vector<std::pair<int, int>> faces) {
  std::sort(vertices.begin(), vertices.end());
  std::sort(faces.begin(), faces.end());
  return {std::move(name), {std::move(vertices)}, {std::move(faces)}, std::nullopt};
}

inline PlanarTessellation tetrahedron() {
  return PlanarTessellation({{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {2, 3, 0}});
}

inline PlanarTessellation icosahedron() {
  // Faces 0..9 are the band triangles, 10 and 11 the two pentagons.
  const PlanarTessellation ring = generate_antiprism(5);
  return cap_face(cap_face(ring, 11), 10);
}

}  // namespace detail

/// Solids shipped with the library.
///
/// Platonic solids carry full face lists. All other entries are vertex and
/// face censuses; Archimedean and Johnson counts follow standard polyhedron
/// tables. Census consistency is enforced by census_violations() and the
/// Gauss–Bonnet test suite.
inline std::vector<SolidRecord> builtin_catalog() {
  using detail::census_solid;
  std::vector<SolidRecord> out;
  out.push_back(SolidRecord::from_tessellation("tetrahedron", detail::tetrahedron()));
  out.push_back(SolidRecord::from_tessellation("cube", generate_prism(4)));
  out.push_back(SolidRecord::from_tessellation("octahedron", generate_antiprism(3)));
  out.push_back(SolidRecord::from_tessellation("dodecahedron", dual_of(detail::icosahedron())));
  out.push_back(SolidRecord::from_tessellation("icosahedron", detail::icosahedron()));

  // Archimedean solids.
  out.push_back(census_solid("truncated-tetrahedron", {{{3, 6, 6}, 12}}, {{3, 4}, {6, 4}}));
  out.push_back(census_solid("cuboctahedron", {{{3, 3, 4, 4}, 12}}, {{3, 8}, {4, 6}}));
  out.push_back(census_solid("truncated-cube", {{{3, 8, 8}, 24}}, {{3, 8}, {8, 6}}));
  out.push_back(census_solid("truncated-octahedron", {{{4, 6, 6}, 24}}, {{4, 6}, {6, 8}}));
  out.push_back(census_solid("rhombicuboctahedron", {{{3, 4, 4, 4}, 24}}, {{3, 8}, {4, 18}}));
  out.push_back(census_solid("truncated-cuboctahedron", {{{4, 6, 8}, 48}}, {{4, 12}, {6, 8}, {8, 6}}));
  out.push_back(census_solid("snub-cube", {{{3, 3, 3, 3, 4}, 24}}, {{3, 32}, {4, 6}}));
  out.push_back(census_solid("icosidodecahedron", {{{3, 3, 5, 5}, 30}}, {{3, 20}, {5, 12}}));
  out.push_back(census_solid("truncated-dodecahedron", {{{3, 10, 10}, 60}}, {{3, 20}, {10, 12}}));
  out.push_back(census_solid("truncated-icosahedron", {{{5, 6, 6}, 60}}, {{5, 12}, {6, 20}}));
  out.push_back(census_solid("rhombicosidodecahedron", {{{3, 4, 4, 5}, 60}}, {{3, 20}, {4, 30}, {5, 12}}));
  out.push_back(census_solid("truncated-icosidodecahedron", {{{4, 6, 10}, 120}}, {{4, 30}, {6, 20}, {10, 12}}));
  out.push_back(census_solid("snub-dodecahedron", {{{3, 3, 3, 3, 5}, 60}}, {{3, 80}, {5, 12}}));

  // Johnson solids.
  out.push_back(census_solid("J1", {{{3, 3, 3, 3}, 1}, {{3, 3, 4}, 4}}, {{3, 4}, {4, 1}}));
  out.push_back(census_solid("J2", {{{3, 3, 3, 3, 3}, 1}, {{3, 3, 5}, 5}}, {{3, 5}, {5, 1}}));
  out.push_back(census_solid("J3", {{{3, 3, 4, 4}, 3}, {{3, 4, 6}, 6}}, {{3, 4}, {4, 3}, {6, 1}}));
  out.push_back(census_solid("J4", {{{3, 4, 4, 4}, 4}, {{3, 4, 8}, 8}}, {{3, 4}, {4, 5}, {8, 1}}));
  out.push_back(census_solid("J5", {{{3, 4, 4, 5}, 5}, {{3, 4, 10}, 10}}, {{3, 5}, {4, 5}, {5, 1}, {10, 1}}));
  out.push_back(census_solid("J6", {{{3, 3, 5, 5}, 10}, {{3, 5, 10}, 10}}, {{3, 10}, {5, 6}, {10, 1}}));
  out.push_back(census_solid("J11", {{{3, 3, 3, 3, 3}, 6}, {{3, 3, 3, 5}, 5}}, {{3, 15}, {5, 1}}));
  out.push_back(census_solid("J16", {{{3, 3, 4, 4}, 10}, {{3, 3, 3, 3, 3}, 2}}, {{3, 10}, {4, 5}}));
  out.push_back(census_solid("J19", {{{3, 4, 4, 4}, 12}, {{4, 4, 8}, 8}}, {{3, 4}, {4, 13}, {8, 1}}));
  out.push_back(census_solid("J27", {{{3, 3, 4, 4}, 12}}, {{3, 8}, {4, 6}}));
  out.push_back(census_solid("J34", {{{3, 3, 5, 5}, 30}}, {{3, 20}, {5, 12}}));
  out.push_back(census_solid("J37", {{{3, 4, 4, 4}, 24}}, {{3, 8}, {4, 18}}));
  out.push_back(census_solid("J62", {{{3, 3, 3, 3, 3}, 2}, {{3, 3, 3, 5}, 6}, {{3, 5, 5}, 2}}, {{3, 10}, {5, 2}}));
  out.push_back(census_solid("J63", {{{3, 3, 3, 5}, 3}, {{3, 5, 5}, 6}}, {{3, 5}, {5, 3}}));
  for (const char* name : {"J72", "J73", "J74", "J75"}) {
    out.push_back(census_solid(name, {{{3, 4, 4, 5}, 60}}, {{3, 20}, {4, 30}, {5, 12}}));
  }
  for (const char* name : {"J76", "J77", "J78", "J79"}) {
    out.push_back(census_solid(name, {{{3, 4, 4, 5}, 45}, {{4, 5, 10}, 10}}, {{3, 15}, {4, 25}, {5, 11}, {10, 1}}));
  }
  for (const char* name : {"J80", "J81", "J82"}) {
    out.push_back(census_solid(name, {{{3, 4, 4, 5}, 30}, {{4, 5, 10}, 20}}, {{3, 10}, {4, 20}, {5, 10}, {10, 2}}));
  }
  out.push_back(census_solid("J83", {{{3, 4, 4, 5}, 15}, {{4, 5, 10}, 30}}, {{3, 5}, {4, 15}, {5, 9}, {10, 3}}));

  // Small-area example with a (3,7,41) vertex.
  out.push_back(census_solid("Gamma",
                             {{{3, 5, 7}, 2},
                              {{3, 3, 5, 5}, 6},
                              {{3, 3, 5, 7}, 53},
                              {{3, 5, 41}, 8},
                              {{3, 3, 3, 41}, 11},
                              {{3, 7, 41}, 22}},
                             {{3, 61}, {5, 15}, {7, 11}, {41, 1}}));
  return out;
}

/// Parses one catalog record; `where` prefixes error locations.
inline SolidRecord parse_solid(const nlohmann::json& j, const std::string& where, bool check_handshake = true) {
  auto need = [&](const char* key) -> const nlohmann::json& {
    if (!j.is_object() || !j.contains(key)) throw ParseError(where, std::string("missing field '") + key + "'");
    return j.at(key);
  };
  auto as_int = [](const nlohmann::json& v, const std::string& at) {
    if (!v.is_number_integer()) throw ParseError(at, "expected an integer");
    return v.get<int>();
  };
  const auto& name = need("name");
  if (!name.is_string()) throw ParseError(where + ".name", "expected a string");
  SolidRecord s;
  s.name = name.get<std::string>();

  const auto& vc = need("vertex_census");
  if (!vc.is_array() || vc.empty()) throw ParseError(where + ".vertex_census", "expected a nonempty array");
  for (std::size_t i = 0; i < vc.size(); ++i) {
    const std::string at = where + ".vertex_census[" + std::to_string(i) + "]";
    const auto& row = vc[i];
    if (!row.is_array() || row.size() != 2 || !row[0].is_array()) {
      throw ParseError(at, "expected [[f1,...,fN], count]");
    }
    std::vector<int> degrees;
    for (std::size_t k = 0; k < row[0].size(); ++k) {
      degrees.push_back(as_int(row[0][k], at + "[0][" + std::to_string(k) + "]"));
    }
    const int count = as_int(row[1], at + "[1]");
    if (count <= 0) throw ParseError(at + "[1]", "count must be positive");
    try {
      s.vertex_census.entries.emplace_back(VertexPattern(std::move(degrees)), count);
    } catch (const DomainError& e) {
      throw ParseError(at + "[0]", e.what());
    }
  }
  std::sort(s.vertex_census.entries.begin(), s.vertex_census.entries.end());

  const auto& fc = need("face_census");
  if (!fc.is_array() || fc.empty()) throw ParseError(where + ".face_census", "expected a nonempty array");
  for (std::size_t i = 0; i < fc.size(); ++i) {
    const std::string at = where + ".face_census[" + std::to_string(i) + "]";
    const auto& row = fc[i];
    if (!row.is_array() || row.size() != 2) throw ParseError(at, "expected [degree, count]");
    const int degree = as_int(row[0], at + "[0]");
    const int count = as_int(row[1], at + "[1]");
    if (degree < 3) throw ParseError(at + "[0]", "face degree must be at least 3");
    if (count <= 0) throw ParseError(at + "[1]", "count must be positive");
    s.face_census.entries.emplace_back(degree, count);
  }
  std::sort(s.face_census.entries.begin(), s.face_census.entries.end());

  if (j.contains("faces")) {
    const auto& faces = j.at("faces");
    if (!faces.is_array()) throw ParseError(where + ".faces", "expected an array of vertex cycles");
    std::vector<std::vector<int>> cycles;
    for (std::size_t i = 0; i < faces.size(); ++i) {
      const std::string at = where + ".faces[" + std::to_string(i) + "]";
      if (!faces[i].is_array()) throw ParseError(at, "expected an array of vertex indices");
      std::vector<int> cycle;
      for (std::size_t k = 0; k < faces[i].size(); ++k) {
        cycle.push_back(as_int(faces[i][k], at + "[" + std::to_string(k) + "]"));
      }
      cycles.push_back(std::move(cycle));
    }
    s.tessellation = PlanarTessellation(std::move(cycles));
  }

  if (!check_handshake) return s;
  if (const auto bad = census_violations(s); !bad.empty()) {
    std::string msg = "handshake failure:";
    for (const auto& b : bad) msg += " " + b + ";";
    throw ParseError(where, msg);
  }
  return s;
}

/// Parses catalog text: one record object or an array of them.
inline std::vector<SolidRecord> parse_catalog(std::string_view text, const std::string& origin = "<catalog>",
                                              bool check_handshake = true) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin, e.what());
  }
  std::vector<SolidRecord> out;
  if (doc.is_array()) {
    for (std::size_t i = 0; i < doc.size(); ++i) out.push_back(parse_solid(doc[i], origin + ":[" + std::to_string(i) + "]", check_handshake));
  } else {
    out.push_back(parse_solid(doc, origin, check_handshake));
  }
  return out;
}

inline std::vector<SolidRecord> load_catalog(const std::string& path, bool check_handshake = true) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_catalog(buffer.str(), path, check_handshake);
}

/// Resolves builtin names, "prism:N", "antiprism:N", then `extra` records.
inline std::optional<SolidRecord> find_solid(std::string_view name, const std::vector<SolidRecord>& extra = {}) {
  for (std::string_view prefix : {"prism:", "antiprism:"}) {
    if (name.substr(0, prefix.size()) == prefix) {
      const std::string_view digits = name.substr(prefix.size());
      int n = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
      if (ec != std::errc{} || ptr != digits.data() + digits.size() || n < 3) return std::nullopt;
      auto t = prefix == "prism:" ? generate_prism(n) : generate_antiprism(n);
      return SolidRecord::from_tessellation(std::string(name), std::move(t));
    }
  }
  for (auto& s : builtin_catalog()) {
    if (s.name == name) return s;
  }
  for (const auto& s : extra) {
    if (s.name == name) return s;
  }
  return std::nullopt;
}

}  // namespace spherarea
