#include "vitpoly/hull.hpp"

#include "support/oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace vitpoly;
using hull::Point;
using hull::PointSet;

namespace {

// Table 1 coordinates for length 2m (left column) and 2m+1 (right column).
std::vector<Point> table1_even(int m) {
  return {{2 * m, 0, 0, 0}, {2 * m - 1, 1, 0, 0}, {1, m, m - 1, 0}, {0, m, m - 1, 1},
          {0, m, m, 0},     {0, 1, 1, 2 * m - 2}, {0, 1, 0, 2 * m - 1}};
}
std::vector<Point> table1_odd(int m) {
  return {{2 * m + 1, 0, 0, 0}, {2 * m, 1, 0, 0}, {1, m, m, 0}, {0, m, m, 1},
          {0, m + 1, m, 0},     {0, 1, 1, 2 * m - 1}, {0, 1, 0, 2 * m}};
}

int count_vertices(const hull::HullReport& r) {
  int n = 0;
  for (char f : r.vertex_flags) n += f;
  return n;
}

// LP face test: S is the vertex set of a face iff some functional is
// constant on S and strictly larger elsewhere. Used as an independent check
// of the facet-scan face lattice.
bool is_face(const std::vector<Point>& pts, const std::vector<int>& subset) {
  const int d = static_cast<int>(pts[0].size());
  std::vector<char> in_subset(pts.size(), 0);
  for (int i : subset) in_subset[i] = 1;
  const Point& base = pts[subset[0]];
  // variables: w (split into +/-), surplus per outside point
  std::vector<int> outside;
  for (size_t i = 0; i < pts.size(); ++i)
    if (!in_subset[i]) outside.push_back(static_cast<int>(i));
  const int rows = static_cast<int>(subset.size()) - 1 + static_cast<int>(outside.size());
  const int cols = 2 * d + static_cast<int>(outside.size());
  if (rows == 0) return true;
  RMat A(rows, RVec(cols, Rational(0)));
  RVec b(rows, Rational(0));
  int r = 0;
  for (size_t s = 1; s < subset.size(); ++s, ++r)
    for (int c = 0; c < d; ++c) {
      Rational diff = Rational(pts[subset[s]][c] - base[c]);
      A[r][c] = diff;
      A[r][d + c] = -diff;
    }
  for (size_t o = 0; o < outside.size(); ++o, ++r) {
    for (int c = 0; c < d; ++c) {
      Rational diff = Rational(pts[outside[o]][c] - base[c]);
      A[r][c] = diff;
      A[r][d + c] = -diff;
    }
    A[r][2 * d + static_cast<int>(o)] = -1;
    b[r] = 1;
  }
  auto res = lp::solve_eq(A, b, RVec(cols, Rational(0)));
  return res.status == lp::Status::optimal;
}

}  // namespace

TEST_CASE("vertex detection on the length-6 catalog points") {
  PointSet ps(4, table1_even(3));
  auto report = hull::vertices(ps);
  REQUIRE(count_vertices(report) == 7);  // all seven are extreme

  SECTION("witnesses separate strictly") {
    for (size_t v = 0; v < ps.points.size(); ++v) {
      REQUIRE(report.vertex_flags[v]);
      const auto& w = *report.witnesses[v];
      for (size_t q = 0; q < ps.points.size(); ++q) {
        if (q == v) continue;
        Rational dv = 0, dq = 0;
        for (int i = 0; i < 4; ++i) {
          dv += w[i] * ps.points[v][i];
          dq += w[i] * ps.points[q][i];
        }
        REQUIRE(dv < dq);
      }
    }
  }
}

TEST_CASE("degenerate point sets") {
  SECTION("collinear middle point is not a vertex") {
    PointSet ps(2, {{0, 0}, {1, 1}, {2, 2}});
    auto report = hull::vertices(ps);
    REQUIRE(report.vertex_flags[0]);
    REQUIRE_FALSE(report.vertex_flags[1]);
    REQUIRE(report.vertex_flags[2]);
  }
  SECTION("single point is a vertex") {
    PointSet ps(3, {{5, -2, 7}});
    auto report = hull::vertices(ps);
    REQUIRE(report.vertex_flags[0]);
  }
  SECTION("duplicates are removed on construction") {
    PointSet ps(2, {{1, 1}, {1, 1}, {0, 0}});
    REQUIRE(ps.points.size() == 2);
  }
}

TEST_CASE("edges via tie LPs") {
  SECTION("two points form one edge") {
    PointSet ps(3, {{0, 0, 0}, {1, 2, 3}});
    auto report = hull::vertices(ps);
    auto e = hull::edges(ps, report.vertex_flags);
    REQUIRE(e.size() == 1);
  }
  SECTION("unit square has four edges and no diagonal") {
    PointSet ps(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    auto report = hull::vertices(ps);
    auto e = hull::edges(ps, report.vertex_flags);
    REQUIRE(e.size() == 4);
    for (auto [a, b] : e) {
      // diagonals differ in both coordinates
      bool diagonal = ps.points[a][0] != ps.points[b][0] && ps.points[a][1] != ps.points[b][1];
      REQUIRE_FALSE(diagonal);
    }
  }
  SECTION("Table 1 polytopes have 12 edges") {
    for (auto pts : {table1_even(3), table1_odd(3)}) {
      PointSet ps(4, pts);
      auto report = hull::vertices(ps);
      REQUIRE(hull::edges(ps, report.vertex_flags).size() == 12);
    }
  }
}

TEST_CASE("f-vectors") {
  SECTION("3-simplex") {
    PointSet ps(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    REQUIRE(hull::f_vector(ps) == std::vector<long long>{4, 6, 4});
  }
  SECTION("segment and point") {
    REQUIRE(hull::f_vector(PointSet(2, {{0, 0}, {2, 2}, {1, 1}})) == std::vector<long long>{2});
    REQUIRE(hull::f_vector(PointSet(2, {{3, 4}})) == std::vector<long long>{1});
  }
  SECTION("square") {
    PointSet ps(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    REQUIRE(hull::f_vector(ps) == std::vector<long long>{4, 4});
  }
  SECTION("Table 1 polytopes, both parities, several m") {
    for (int m : {2, 3, 5}) {
      REQUIRE(hull::f_vector(PointSet(4, table1_even(m))) == std::vector<long long>{7, 12, 7});
      // golden value derived for the odd column: same combinatorics
      REQUIRE(hull::f_vector(PointSet(4, table1_odd(m))) == std::vector<long long>{7, 12, 7});
    }
  }
  SECTION("dimension limit is enforced") {
    PointSet ps(5, {{0, 0, 0, 0, 0}, {1, 0, 0, 0, 0}, {0, 1, 0, 0, 0},
                    {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}});
    REQUIRE_THROWS_AS(hull::f_vector(ps, 4), hull::DimensionLimitError);
    REQUIRE(hull::f_vector(ps, 5) == std::vector<long long>{6, 15, 20, 15, 6});
  }
  SECTION("face lattice agrees with the LP face oracle") {
    auto pts = table1_even(3);
    PointSet ps(4, pts);
    auto fv = hull::f_vector(ps);
    // count faces by brute force over all vertex subsets
    std::vector<long long> counts(3, 0);
    for (int mask = 1; mask < (1 << 7); ++mask) {
      std::vector<int> subset;
      for (int i = 0; i < 7; ++i)
        if (mask & (1 << i)) subset.push_back(i);
      if (!is_face(pts, subset)) continue;
      std::vector<Point> sub;
      for (int i : subset) sub.push_back(pts[i]);
      int d = hull::detail::affine_chart(sub).dim;
      if (d < 3) ++counts[d];
    }
    REQUIRE(counts == fv);
  }
}

TEST_CASE("vertex flags agree with the Caratheodory oracle") {
  std::mt19937 rng(97);
  std::uniform_int_distribution<int> coord(-4, 4);
  std::uniform_int_distribution<int> dims(2, 4);
  std::uniform_int_distribution<int> sizes(3, 12);
  for (int trial = 0; trial < 25; ++trial) {
    int d = dims(rng);
    int m = sizes(rng);
    std::set<Point> unique;
    while (static_cast<int>(unique.size()) < m) {
      Point p(d);
      for (auto& x : p) x = coord(rng);
      unique.insert(p);
    }
    PointSet ps(d, {unique.begin(), unique.end()});
    auto report = hull::vertices(ps);
    for (size_t v = 0; v < ps.points.size(); ++v) {
      std::vector<Point> others;
      for (size_t q = 0; q < ps.points.size(); ++q)
        if (q != v) others.push_back(ps.points[q]);
      bool inside = oracle::caratheodory_in_hull(ps.points[v], others);
      REQUIRE(report.vertex_flags[v] == static_cast<char>(!inside));
    }
  }
}

TEST_CASE("vertices are invariant under translation and coordinate permutation") {
  std::mt19937 rng(83);
  std::uniform_int_distribution<int> coord(-5, 5);
  for (int trial = 0; trial < 10; ++trial) {
    int d = 3;
    std::set<Point> unique;
    while (unique.size() < 9) {
      Point p(d);
      for (auto& x : p) x = coord(rng);
      unique.insert(p);
    }
    std::vector<Point> pts(unique.begin(), unique.end());
    auto base = hull::vertices(PointSet(d, pts));

    std::vector<Point> shifted = pts;
    for (auto& p : shifted)
      for (int i = 0; i < d; ++i) p[i] += 7 - 3 * i;
    auto moved = hull::vertices(PointSet(d, shifted));
    REQUIRE(moved.vertex_flags == base.vertex_flags);

    std::vector<Point> permuted = pts;
    for (auto& p : permuted) std::swap(p[0], p[2]);
    auto perm = hull::vertices(PointSet(d, permuted));
    REQUIRE(perm.vertex_flags == base.vertex_flags);
  }
}

TEST_CASE("large-set oracle agrees with per-point LP flags") {
  std::mt19937 rng(71);
  std::uniform_int_distribution<int> coord(-3, 3);
  std::set<Point> unique;
  while (unique.size() < 40) {
    Point p(3);
    for (auto& x : p) x = coord(rng);
    unique.insert(p);
  }
  std::vector<Point> pts(unique.begin(), unique.end());
  auto report = hull::vertices(PointSet(3, pts));
  std::vector<Point> expected;
  for (size_t i = 0; i < pts.size(); ++i)
    if (report.vertex_flags[i]) expected.push_back(pts[i]);
  std::sort(expected.begin(), expected.end());
  REQUIRE(oracle::brute_force_hull_vertices(pts) == expected);
}
