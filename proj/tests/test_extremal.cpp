#include <cmath>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spherarea/exports.hpp"
#include "spherarea/spherarea.hpp"

namespace sa = spherarea;
using sa::kPi;
using sa::VertexPattern;

namespace {

const sa::AdmissibleCatalog& catalog() {
  static const sa::AdmissibleCatalog c = sa::enumerate_admissible();
  return c;
}

const sa::GapReport& gap(double eps) {
  static const sa::GapReport plus = sa::gap_search(1e-5, catalog());
  static const sa::GapReport zero = sa::gap_search(0.0, catalog());
  static const sa::GapReport minus = sa::gap_search(-1e-5, catalog());
  return eps > 0 ? plus : eps < 0 ? minus : zero;
}

std::vector<int> degrees(const VertexPattern& p) { return {p.begin(), p.end()}; }

}  // namespace

TEST(AreaMin, FirstAndSecond) {
  const auto r = sa::area_min_search(catalog());
  EXPECT_EQ(r.ranked.size(), 342u);
  EXPECT_EQ(r.first().pattern, (VertexPattern{3, 11, 13}));
  EXPECT_EQ(r.second().pattern, (VertexPattern{3, 7, 41}));
  EXPECT_NEAR(r.first().local_area, 8.3755e-2, 1e-6);
  EXPECT_NEAR(r.second().local_area, 1.2823e-1, 1e-5);
  EXPECT_TRUE(r.separated);
}

TEST(AreaMin, LocalAreaMatchesOracle) {
  for (const auto& e : sa::area_min_search(catalog()).ranked) {
    long double total = 0;
    for (int f : e.pattern) total += oracle::area_geometric(f, oracle::side(f, e.a_c));
    EXPECT_NEAR(e.local_area, static_cast<double>(total), 1e-10) << e.pattern.to_string();
  }
}

TEST(AreaMin, SortedAscending) {
  const auto r = sa::area_min_search(catalog());
  for (std::size_t i = 1; i < r.ranked.size(); ++i) EXPECT_LE(r.ranked[i - 1].local_area, r.ranked[i].local_area);
}

TEST(Gap, MinimaAtAllThreeMargins) {
  for (double eps : {-1e-5, 0.0, 1e-5}) {
    const auto& r = gap(eps);
    EXPECT_EQ(r.first().p, (VertexPattern{3, 7, 29})) << eps;
    EXPECT_EQ(r.first().q, (VertexPattern{3, 9, 16})) << eps;
    EXPECT_EQ(r.second().p, (VertexPattern{4, 4, 28})) << eps;
    EXPECT_EQ(r.second().q, (VertexPattern{5, 5, 9})) << eps;
    EXPECT_NEAR(r.first().k, 1.64727e-5, 1e-10);
    EXPECT_NEAR(r.second().k, 1.79161e-5, 1e-10);
  }
}

TEST(Gap, MinimumMatchesOracle) {
  const auto& e = gap(1e-5).first();
  const long double a = oracle::critical(degrees(e.p));
  EXPECT_NEAR(e.k, static_cast<double>(oracle::defect(degrees(e.q), a)), 1e-12);
}

TEST(Gap, CandidateAndDiagonalCounts) {
  for (double eps : {-1e-5, 0.0, 1e-5}) {
    const auto& r = gap(eps);
    EXPECT_EQ(r.candidates, 81243u);
    std::size_t diagonal = 0;
    for (const auto& e : r.entries) diagonal += e.diagonal;
    EXPECT_EQ(diagonal, 103u);
    EXPECT_LE(r.size(), r.candidates);
  }
  EXPECT_LE(gap(1e-5).size(), gap(0.0).size());
  EXPECT_LE(gap(0.0).size(), gap(-1e-5).size());
}

TEST(Gap, EntriesSatisfyTheFilters) {
  const auto& r = gap(1e-5);
  for (const auto& e : r.entries) {
    EXPECT_GT(e.k, 0.0);
    if (e.diagonal) {
      EXPECT_TRUE(sa::membership_M(e.p));
      continue;
    }
    EXPECT_FALSE(sa::membership_M(e.p));
    EXPECT_NE(e.p, e.q);
    EXPECT_NE(e.p, (VertexPattern{3, 3, 3}));
    EXPECT_FALSE(sa::in_zset(e.p, e.q));
    EXPECT_GE(catalog().solve(e.q).a_c, 1e-5 + catalog().solve(e.p).a_c);
    EXPECT_GT(e.k, 1e-5);
  }
}

TEST(Gap, SortedByDefect) {
  const auto& r = gap(0.0);
  for (std::size_t i = 1; i < r.size(); ++i) EXPECT_LE(r.entries[i - 1].k, r.entries[i].k);
}

TEST(Gap, MarginTooLarge) {
  EXPECT_THROW(sa::gap_search(2e-3, catalog()), sa::MarginTooLarge);
  EXPECT_THROW(sa::gap_search(-2e-3, catalog()), sa::MarginTooLarge);
  EXPECT_THROW(sa::gap_search(std::nan(""), catalog()), sa::MarginTooLarge);
}

TEST(Gap, ThreadCountDoesNotChangeOutput) {
  auto dump = [](const sa::GapReport& r) {
    std::ostringstream os;
    sa::write_gap_json(os, r);
    sa::write_gap_csv(os, r);
    return os.str();
  };
  const auto one = sa::gap_search(1e-5, catalog(), 1);
  const auto four = sa::gap_search(1e-5, catalog(), 4);
  EXPECT_EQ(dump(one), dump(four));
  EXPECT_EQ(dump(one), dump(sa::gap_search(1e-5, catalog(), 1)));
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one.entries[i].p, four.entries[i].p);
    EXPECT_EQ(one.entries[i].q, four.entries[i].q);
    EXPECT_EQ(one.entries[i].k, four.entries[i].k);
  }
}

TEST(Gap, RobustnessGate) {
  const auto g = sa::gap_robustness(gap(1e-5), gap(-1e-5), catalog());
  EXPECT_TRUE(g.minima_agree);
  EXPECT_TRUE(g.separated);
  EXPECT_TRUE(g.ok());
  EXPECT_TRUE(sa::gap_minima_agree(gap(1e-5), gap(0.0)));
}

TEST(Gap, NoPatternBetweenTheMinimisingPair) {
  EXPECT_NEAR(catalog().solve(VertexPattern{3, 7, 29}).a_c, 0.14267, 1e-5);
  EXPECT_NEAR(catalog().solve(VertexPattern{3, 9, 16}).a_c, 0.14270, 1e-5);
  EXPECT_TRUE(sa::neighborhood_probe({3, 7, 29}, {3, 9, 16}, catalog()).empty());
  EXPECT_FALSE(sa::neighborhood_probe({3, 3, 3}, {3, 3, 41}, catalog()).empty());
}

TEST(Witnesses, J16) {
  const auto w = sa::gap_upper_witness();
  EXPECT_NEAR(w.a_c, kPi / 3, 1e-10);
  EXPECT_NEAR(sa::critical_side_length({3, 3, 3, 3, 3}).a_c, 1.1071487, 1e-7);
  EXPECT_NEAR(4 * kPi - w.area, 0.25678, 1e-5);
  EXPECT_NEAR(w.area, w.area_from_defect, 1e-9);
  EXPECT_GT(4 * kPi - w.area, gap(1e-5).first().k);
}

TEST(Witnesses, Gamma) {
  const auto w = sa::area_min_upper_witness();
  EXPECT_NEAR(w.a_c, 0.030382, 1e-6);
  ASSERT_EQ(w.argmin.size(), 1u);
  EXPECT_EQ(w.argmin[0], (VertexPattern{3, 7, 41}));
  EXPECT_NEAR(w.area, 2.0961e-1, 1e-5);
  EXPECT_NEAR(w.area, w.area_from_defect, 1e-9);
  EXPECT_GT(w.area, sa::area_min_search(catalog()).first().local_area);
}

TEST(ZCertification, AllNinePairs) {
  const auto certs = sa::certify_zset(catalog());
  ASSERT_EQ(certs.size(), 9u);
  for (const auto& c : certs) {
    EXPECT_TRUE(c.certified) << c.p.to_string() << " " << c.q.to_string();
    EXPECT_LT(std::abs(c.a_c_difference), 1e-10);
    EXPECT_LT(c.cross_bound, 1e-10);
  }
}

TEST(ZCertification, PairsShareTheOracleRoot) {
  for (const auto& [p, q] : sa::zset()) {
    EXPECT_NEAR(static_cast<double>(oracle::critical(degrees(p))), static_cast<double>(oracle::critical(degrees(q))),
                1e-9)
        << p.to_string() << " " << q.to_string();
  }
}

TEST(Exports, CatalogCsvHasOneRowPerPattern) {
  std::ostringstream os;
  sa::write_catalog_csv(os, catalog());
  const std::string s = os.str();
  EXPECT_EQ(static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')), 343u);
}
