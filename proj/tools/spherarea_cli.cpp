// Command-line front end: admissible patterns, solids and the extremal searches.
//
// Exit codes: 0 success, 2 bad input, 3 validation failure, 4 robustness failure.

#include <cstdlib>
#include <functional>
#include <optional>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "spherarea/exports.hpp"
#include "spherarea/spherarea.hpp"

namespace sa = spherarea;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitValidation = 3;
constexpr int kExitRobustness = 4;

struct RunConfig {
  std::string format = "text";
  std::string out_path;
  double tol_root = 1e-13;
  double tol_eq = 1e-10;
  unsigned jobs = 1;

  sa::Tolerances tolerances() const {
    sa::Tolerances t;
    t.root = tol_root;
    t.equal = tol_eq;
    return t;
  }
};

class BadInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writes `body` to --out when given, else to stdout.
void emit(const RunConfig& cfg, const std::string& body) {
  if (cfg.out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw BadInput("cannot write " + cfg.out_path);
  out << body;
}

std::vector<sa::SolidRecord> extra_catalog() {
  const char* path = std::getenv("SPHERAREA_CATALOG");
  if (path == nullptr || *path == '\0') return {};
  return sa::load_catalog(path);
}

sa::SolidRecord resolve_solid(const std::string& name) {
  auto s = sa::find_solid(name, extra_catalog());
  if (!s) throw BadInput("unknown solid '" + name + "'");
  return *s;
}

// ---------------------------------------------------------------------------
// patterns

int cmd_patterns_list(const RunConfig& cfg) {
  const auto catalog = sa::enumerate_admissible(cfg.tolerances());
  std::ostringstream os;
  if (cfg.format == "json") {
    sa::write_catalog_json(os, catalog);
  } else if (cfg.format == "csv") {
    sa::write_catalog_csv(os, catalog);
  } else {
    for (std::size_t i = 0; i < catalog.size(); ++i) {
      const auto& p = catalog.pattern(i);
      const auto& s = catalog.solve(i);
      os << p.to_string() << "  phi=" << sa::combinatorial_curvature(p).to_string()
         << "  a_c=" << sa::format_short(s.a_c) << (s.at_boundary ? "  (boundary)" : "") << '\n';
    }
  }
  emit(cfg, os.str());
  return kExitOk;
}

int cmd_patterns_solve(const RunConfig& cfg, const std::string& text) {
  sa::VertexPattern p;
  try {
    p = sa::VertexPattern::parse(text);
  } catch (const sa::DomainError& e) {
    throw BadInput(e.what());
  }
  const sa::CriticalSolve s = sa::critical_side_length(p, cfg.tolerances());
  const double k = sa::angle_defect(p, s.a_c);
  std::ostringstream os;
  if (cfg.format == "json") {
    sa::JsonWriter w(os);
    w.begin_object().key("pattern").value(p.degrees());
    w.field("phi", sa::combinatorial_curvature(p).to_string())
        .field("a_c", s.a_c)
        .field("at_boundary", s.at_boundary)
        .field("defect", k)
        .field("residual", s.residual)
        .field("bracket_width", s.bracket_width)
        .end_object();
    os << '\n';
  } else if (cfg.format == "csv") {
    sa::csv_row(os, {"pattern", "phi", "a_c", "at_boundary", "defect", "residual"});
    sa::csv_row(os, {p.to_string(), sa::combinatorial_curvature(p).to_string(), sa::format_real(s.a_c),
                     s.at_boundary ? "true" : "false", sa::format_real(k), sa::format_real(s.residual)});
  } else {
    os << "pattern     " << p.to_string() << '\n'
       << "phi         " << sa::combinatorial_curvature(p).to_string() << '\n'
       << "a_c         " << sa::format_short(s.a_c) << '\n'
       << "at_boundary " << (s.at_boundary ? "yes" : "no") << '\n'
       << "K_a_c       " << sa::format_short(k) << '\n';
  }
  emit(cfg, os.str());
  return kExitOk;
}

int cmd_patterns_export(const RunConfig& cfg) {
  const auto catalog = sa::enumerate_admissible(cfg.tolerances());
  std::ostringstream os;
  if (cfg.format == "csv") {
    sa::write_catalog_csv(os, catalog);
  } else {
    sa::write_catalog_json(os, catalog);
  }
  emit(cfg, os.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// solid

int cmd_solid_info(const RunConfig& cfg, const std::string& name) {
  const auto s = resolve_solid(name);
  const auto g = sa::graph_a_c(s, cfg.tolerances());
  std::ostringstream os;
  if (cfg.format == "json") {
    sa::JsonWriter w(os);
    w.begin_object().field("name", s.name).key("vertex_census").begin_array();
    for (const auto& [p, c] : s.vertex_census.entries) {
      w.begin_array().value(p.degrees()).value(c).end_array();
    }
    w.end_array().key("face_census").begin_array();
    for (const auto& [d, c] : s.face_census.entries) w.begin_array().value(d).value(c).end_array();
    w.end_array().field("a_c", g.a_c).key("argmin").begin_array();
    for (const auto& p : g.argmin) w.value(p.degrees());
    w.end_array().end_object();
    os << '\n';
  } else {
    os << "solid " << s.name << "\nvertices:";
    for (const auto& [p, c] : s.vertex_census.entries) os << ' ' << c << "x" << p.to_string();
    os << "\nfaces:";
    for (const auto& [d, c] : s.face_census.entries) os << ' ' << c << "x" << d << "-gon";
    os << "\na_c = " << sa::format_short(g.a_c) << " at";
    for (const auto& p : g.argmin) os << ' ' << p.to_string();
    os << '\n';
  }
  emit(cfg, os.str());
  return kExitOk;
}

int cmd_solid_area(const RunConfig& cfg, const std::string& name, const std::optional<double>& side) {
  const auto s = resolve_solid(name);
  const double a = side ? *side : sa::graph_a_c(s, cfg.tolerances()).a_c;
  double area = 0.0;
  try {
    area = sa::area_at(s, a);
  } catch (const sa::DomainError& e) {
    throw BadInput(e.what());
  }
  const double deficit = 2.0 * sa::kTwoPi - area;
  std::ostringstream os;
  if (cfg.format == "json") {
    sa::JsonWriter w(os);
    w.begin_object()
        .field("name", s.name)
        .field("side", a)
        .field("critical", !side.has_value())
        .field("area", area)
        .field("four_pi_minus_area", deficit)
        .end_object();
    os << '\n';
  } else if (cfg.format == "csv") {
    sa::csv_row(os, {"name", "side", "area", "four_pi_minus_area"});
    sa::csv_row(os, {s.name, sa::format_real(a), sa::format_real(area), sa::format_real(deficit)});
  } else {
    os << s.name << ": side " << sa::format_short(a) << (side ? "" : " (critical)") << ", area "
       << sa::format_short(area) << " = 4pi - " << sa::format_short(deficit) << '\n';
  }
  emit(cfg, os.str());
  return kExitOk;
}

int cmd_solid_classify(const RunConfig& cfg, const std::string& name) {
  const auto s = resolve_solid(name);
  const auto v = sa::is_spherical_tiling(s, cfg.tolerances());
  std::ostringstream os;
  if (cfg.format == "json") {
    sa::write_tiling_json(os, s.name, v);
  } else if (cfg.format == "csv") {
    sa::csv_row(os, {"name", "pattern", "a_c", "at_boundary", "defect", "spherical_tiling"});
    for (const auto& row : v.witness) {
      sa::csv_row(os, {s.name, row.pattern.to_string(), sa::format_real(row.a_c), row.at_boundary ? "true" : "false",
                       sa::format_real(row.defect), v.tiling ? "true" : "false"});
    }
  } else {
    if (v.tiling) {
      os << s.name << ": spherical tiling, a_c = " << sa::format_short(*v.shared_a_c) << '\n';
    } else {
      os << s.name << ": not a spherical tiling (" << v.reason << ")\n";
    }
    for (const auto& row : v.witness) {
      os << "  " << row.pattern.to_string() << "  a_c=" << sa::format_short(row.a_c)
         << "  K=" << sa::format_short(row.defect) << (row.at_boundary ? "  (boundary)" : "") << '\n';
    }
  }
  emit(cfg, os.str());
  return kExitOk;
}

int cmd_solid_check(const RunConfig& cfg, const std::string& path) {
  std::vector<sa::SolidRecord> records;
  try {
    records = sa::load_catalog(path, false);
  } catch (const sa::ParseError& e) {
    throw BadInput(e.what());
  }
  bool all_ok = true;
  std::ostringstream os;
  sa::JsonWriter w(os);
  const bool json = cfg.format == "json";
  if (json) w.begin_array();
  for (const auto& s : records) {
    std::vector<std::string> problems = sa::census_violations(s);
    if (s.tessellation) {
      const auto report = sa::validate(*s.tessellation);
      if (!report.ok) {
        problems.push_back("tessellation rule '" + report.rule + "': " + report.detail);
      } else {
        const auto vc = sa::vertex_census_of(*s.tessellation);
        const auto fc = sa::face_census_of(*s.tessellation);
        if (vc.entries != s.vertex_census.entries) problems.push_back("vertex census disagrees with faces");
        if (fc.entries != s.face_census.entries) problems.push_back("face census disagrees with faces");
      }
    }
    double worst = 0.0;
    if (problems.empty()) {
      try {
        const double bound = sa::side_bound(s);
        for (int k = 1; k <= 20; ++k) worst = std::max(worst, sa::gauss_bonnet_residual(s, bound * (k / 20.0)));
        if (!(worst < 1e-9)) problems.push_back("Gauss-Bonnet residual " + sa::format_real(worst));
      } catch (const std::exception& e) {
        problems.push_back(e.what());
      }
    }
    all_ok = all_ok && problems.empty();
    if (json) {
      w.begin_object().field("name", s.name).field("ok", problems.empty()).field("gauss_bonnet_max", worst);
      w.key("problems").begin_array();
      for (const auto& p : problems) w.value(p);
      w.end_array().end_object();
    } else {
      os << s.name << ": " << (problems.empty() ? "ok" : "FAILED") << "  max Gauss-Bonnet residual "
         << sa::format_real(worst) << '\n';
      for (const auto& p : problems) os << "  " << p << '\n';
    }
  }
  if (json) {
    w.end_array();
    os << '\n';
  }
  emit(cfg, os.str());
  return all_ok ? kExitOk : kExitValidation;
}

// ---------------------------------------------------------------------------
// extremal

int cmd_extremal_area_min(const RunConfig& cfg) {
  const auto catalog = sa::enumerate_admissible(cfg.tolerances());
  const auto r = sa::area_min_search(catalog, cfg.tolerances());
  const auto gamma = sa::area_min_upper_witness(cfg.tolerances());
  std::ostringstream summary;
  summary << "minimal critical area: " << sa::format_short(r.first().local_area) << " <= Area_min <= "
          << sa::format_short(gamma.area) << '\n'
          << "  lower bound at " << r.first().pattern.to_string() << ", second "
          << r.second().pattern.to_string() << " = " << sa::format_short(r.second().local_area) << '\n'
          << "  upper bound from " << gamma.name << " at a_c = " << sa::format_short(gamma.a_c) << '\n';
  if (cfg.format == "text") {
    emit(cfg, summary.str());
  } else {
    std::cout << summary.str();
    std::ostringstream os;
    if (cfg.format == "json") {
      sa::write_area_min_json(os, r);
    } else {
      sa::write_area_min_csv(os, r);
    }
    if (cfg.out_path.empty()) {
      std::cout << os.str();
    } else {
      emit(cfg, os.str());
    }
  }
  if (!r.separated) {
    std::cerr << "robustness gate failed: first and second minima within 10x propagated error\n";
    return kExitRobustness;
  }
  return kExitOk;
}

int cmd_extremal_gap(const RunConfig& cfg, double epsilon) {
  if (!(std::abs(epsilon) <= sa::kMaxGapMargin)) {
    throw BadInput("margin too large: |epsilon| must be at most 1e-3");
  }
  const auto catalog = sa::enumerate_admissible(cfg.tolerances());
  const auto run = sa::gap_search(epsilon, catalog, cfg.jobs);
  const double margin = epsilon != 0.0 ? std::abs(epsilon) : 1e-5;
  const auto plus = sa::gap_search(margin, catalog, cfg.jobs);
  const auto minus = sa::gap_search(-margin, catalog, cfg.jobs);
  const auto robust = sa::gap_robustness(plus, minus, catalog, cfg.tolerances());
  const auto j16 = sa::gap_upper_witness(cfg.tolerances());

  std::ostringstream summary;
  summary << "critical area gap: " << sa::format_short(run.first().k) << " <= 4pi - Area_max <= "
          << sa::format_short(2.0 * sa::kTwoPi - j16.area) << '\n'
          << "  epsilon " << sa::format_short(epsilon) << ", |S| = " << run.size() << '\n'
          << "  first  " << run.first().p.to_string() << "/" << run.first().q.to_string() << " = "
          << sa::format_short(run.first().k) << '\n'
          << "  second " << run.second().p.to_string() << "/" << run.second().q.to_string() << " = "
          << sa::format_short(run.second().k) << '\n'
          << "  +/-" << sa::format_short(margin) << " runs agree: " << (robust.minima_agree ? "yes" : "no") << '\n';
  if (cfg.format == "text") {
    emit(cfg, summary.str());
  } else {
    std::cout << summary.str();
    std::ostringstream os;
    if (cfg.format == "json") {
      sa::write_gap_json(os, run);
    } else {
      sa::write_gap_csv(os, run);
    }
    if (cfg.out_path.empty()) {
      std::cout << os.str();
    } else {
      emit(cfg, os.str());
    }
  }
  if (!robust.ok()) {
    std::cerr << "robustness gate failed: "
              << (robust.minima_agree ? "first and second minima too close" : "epsilon runs disagree") << '\n';
    return kExitRobustness;
  }
  return kExitOk;
}

int cmd_extremal_witnesses(const RunConfig& cfg) {
  const auto gamma = sa::area_min_upper_witness(cfg.tolerances());
  const auto j16 = sa::gap_upper_witness(cfg.tolerances());
  std::ostringstream os;
  if (cfg.format == "json") {
    sa::JsonWriter w(os);
    w.begin_array();
    for (const auto* s : {&gamma, &j16}) {
      w.begin_object().field("name", s->name).field("a_c", s->a_c).key("argmin").begin_array();
      for (const auto& p : s->argmin) w.value(p.degrees());
      w.end_array()
          .field("area", s->area)
          .field("four_pi_minus_area", 2.0 * sa::kTwoPi - s->area)
          .field("area_from_defect", s->area_from_defect)
          .end_object();
    }
    w.end_array();
    os << '\n';
  } else if (cfg.format == "csv") {
    sa::csv_row(os, {"name", "a_c", "argmin", "area", "four_pi_minus_area"});
    for (const auto* s : {&gamma, &j16}) {
      std::string argmin;
      for (const auto& p : s->argmin) argmin += p.to_string();
      sa::csv_row(os, {s->name, sa::format_real(s->a_c), argmin, sa::format_real(s->area),
                       sa::format_real(2.0 * sa::kTwoPi - s->area)});
    }
  } else {
    for (const auto* s : {&gamma, &j16}) {
      os << s->name << ": a_c = " << sa::format_short(s->a_c) << " at";
      for (const auto& p : s->argmin) os << ' ' << p.to_string();
      os << ", critical area " << sa::format_short(s->area) << " = 4pi - "
         << sa::format_short(2.0 * sa::kTwoPi - s->area) << '\n';
    }
  }
  emit(cfg, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regular spherical polyhedral surfaces: critical side lengths, areas and tilings"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out_path, "Write the report to PATH");
  app.add_option("--tol-root", cfg.tol_root, "Bisection bracket width")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--tol-eq", cfg.tol_eq, "Equality tolerance for a_c and defects")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "Worker threads for extremal searches")->check(CLI::PositiveNumber);

  std::function<int()> action;

  auto* patterns = app.add_subcommand("patterns", "Admissible vertex patterns");
  patterns->require_subcommand(1);
  patterns->add_subcommand("list", "List all admissible patterns")->callback([&] {
    action = [&] { return cmd_patterns_list(cfg); };
  });
  std::string pattern_text;
  auto* solve = patterns->add_subcommand("solve", "Critical side length of one pattern");
  solve->add_option("pattern", pattern_text, "Comma-separated degrees, e.g. 3,7,29")->required();
  solve->callback([&] { action = [&] { return cmd_patterns_solve(cfg, pattern_text); }; });
  patterns->add_subcommand("catalog-export", "Export the catalog as JSON or CSV")->callback([&] {
    action = [&] { return cmd_patterns_export(cfg); };
  });

  auto* solid = app.add_subcommand("solid", "Solids from the builtin catalog or a file");
  solid->require_subcommand(1);
  std::string solid_name;
  std::optional<double> side;
  auto* info = solid->add_subcommand("info", "Censuses and critical side length");
  info->add_option("name", solid_name)->required();
  info->callback([&] { action = [&] { return cmd_solid_info(cfg, solid_name); }; });
  auto* area = solid->add_subcommand("area", "Area at a side length (default: critical)");
  area->add_option("name", solid_name)->required();
  area->add_option("--side", side, "Side length in radians");
  area->callback([&] { action = [&] { return cmd_solid_area(cfg, solid_name, side); }; });
  auto* classify = solid->add_subcommand("classify", "Spherical tiling verdict with witness");
  classify->add_option("name", solid_name)->required();
  classify->callback([&] { action = [&] { return cmd_solid_classify(cfg, solid_name); }; });
  std::string check_path;
  auto* check = solid->add_subcommand("check", "Validate a catalog file");
  check->add_option("file", check_path)->required();
  check->callback([&] { action = [&] { return cmd_solid_check(cfg, check_path); }; });

  auto* extremal = app.add_subcommand("extremal", "Exhaustive extremal searches");
  extremal->require_subcommand(1);
  extremal->add_subcommand("area-min", "Minimal critical area bounds")->callback([&] {
    action = [&] { return cmd_extremal_area_min(cfg); };
  });
  double epsilon = 1e-5;
  auto* gap = extremal->add_subcommand("gap", "Critical area gap search over S(epsilon)");
  gap->add_option("--epsilon", epsilon, "Margin of the search inequalities")->capture_default_str();
  gap->callback([&] { action = [&] { return cmd_extremal_gap(cfg, epsilon); }; });
  extremal->add_subcommand("witnesses", "Gamma and J16 witness solids")->callback([&] {
    action = [&] { return cmd_extremal_witnesses(cfg); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    return action();
  } catch (const BadInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const sa::NotAdmissible& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const sa::MarginTooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const sa::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const sa::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
