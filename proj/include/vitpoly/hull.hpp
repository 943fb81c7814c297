#pragma once

#include "vitpoly/lp.hpp"
#include "vitpoly/parallel.hpp"
#include "vitpoly/rational.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace vitpoly::hull {

using Point = std::vector<long long>;

struct PointSet {
  int dim = 0;
  std::vector<Point> points;  // distinct, insertion order preserved

  PointSet() = default;
  PointSet(int dim_, std::vector<Point> pts) : dim(dim_) {
    std::set<Point> seen;
    for (auto& p : pts) {
      if (static_cast<int>(p.size()) != dim) throw std::invalid_argument("PointSet: bad point dim");
      if (seen.insert(p).second) points.push_back(std::move(p));
    }
  }
};

struct HullReport {
  std::vector<char> vertex_flags;
  // For each vertex, an integer weight vector w with w.v < w.q for every
  // other point q (strict, verified exactly). Empty for non-vertices.
  std::vector<std::optional<std::vector<Rational>>> witnesses;
  std::vector<std::pair<int, int>> edges;
  std::optional<std::vector<long long>> f_vector;
};

// f_vector past this affine dimension is refused unless the caller raises the
// limit; the facet scan is exponential in the dimension.
constexpr int kDefaultFVectorDimLimit = 4;

class DimensionLimitError : public std::runtime_error {
 public:
  explicit DimensionLimitError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

struct MarginResult {
  Rational eps;  // optimal separation margin
  RVec w;        // maximizing weight vector, inside the requested box
};

// Margin LP: maximize eps s.t. w.d >= eps for every difference vector d,
// lo <= w_i <= 1 (lo is -1 or 0). Solved through its dual, whose tableau has
// dim+1 rows regardless of the number of points; the primal solution is the
// vector of dual prices, re-verified exactly before returning.
inline MarginResult max_margin(const std::vector<RVec>& diffs, int dim, bool nonnegative) {
  if (diffs.empty()) return {Rational(1), RVec(dim, Rational(0))};
  const int nq = static_cast<int>(diffs.size());
  const int cols = nq + 2 * dim;
  RMat A(dim + 1, RVec(cols, Rational(0)));
  RVec b(dim + 1, Rational(0));
  RVec c(cols, Rational(0));
  // row 0: sum lambda = 1; rows 1+i: -sum lambda_q d_q[i] + mu+_i - mu-_i = 0
  b[0] = 1;
  for (int q = 0; q < nq; ++q) {
    A[0][q] = 1;
    for (int i = 0; i < dim; ++i) A[1 + i][q] = -diffs[q][i];
  }
  for (int i = 0; i < dim; ++i) {
    A[1 + i][nq + i] = 1;
    A[1 + i][nq + dim + i] = -1;
    c[nq + i] = -1;                              // mu+ cost (bound w_i <= 1)
    c[nq + dim + i] = nonnegative ? 0 : Rational(-1);  // mu- cost (w_i >= lo)
  }
  auto res = lp::solve_eq(std::move(A), std::move(b), c);
  if (res.status != lp::Status::optimal)
    throw std::logic_error("max_margin: dual LP did not solve to optimality");

  MarginResult out;
  out.eps = -res.dual[0];
  out.w.resize(dim);
  for (int i = 0; i < dim; ++i) out.w[i] = -res.dual[1 + i];

  // The dual prices must reproduce a primal-feasible, margin-attaining w.
  Rational lo = nonnegative ? Rational(0) : Rational(-1);
  for (int i = 0; i < dim; ++i)
    if (out.w[i] < lo || out.w[i] > 1) throw std::logic_error("max_margin: witness outside box");
  Rational worst;
  bool first = true;
  for (const auto& d : diffs) {
    Rational dot = 0;
    for (int i = 0; i < dim; ++i) dot += out.w[i] * d[i];
    if (first || dot < worst) worst = dot, first = false;
  }
  if (worst != out.eps) throw std::logic_error("max_margin: margin mismatch");
  return out;
}

inline RVec point_diff(const Point& q, const Point& v) {
  RVec d(q.size());
  for (size_t i = 0; i < q.size(); ++i) d[i] = Rational(q[i] - v[i]);
  return d;
}

// Clears denominators and common factors; preserves signs.
inline RVec primitive_integer_vector(const RVec& w) {
  BigInt lcm = 1;
  for (const auto& x : w) lcm = boost::multiprecision::lcm(lcm, BigInt(denominator(x)));
  std::vector<BigInt> ints;
  ints.reserve(w.size());
  BigInt gcd = 0;
  for (const auto& x : w) {
    BigInt v = BigInt(numerator(x)) * (lcm / BigInt(denominator(x)));
    gcd = boost::multiprecision::gcd(gcd, v);
    ints.push_back(v);
  }
  if (gcd == 0) gcd = 1;
  RVec out(w.size());
  for (size_t i = 0; i < w.size(); ++i) out[i] = Rational(ints[i] / gcd);
  return out;
}

// Gaussian elimination to reduced row echelon form. Returns pivot columns.
inline std::vector<int> rref(RMat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(m[r], m[sel]);
    Rational inv = m[r][c];
    for (int j = 0; j < cols; ++j) m[r][j] /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (int j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Coordinates of each point inside its affine hull. For points in reduced
// row echelon coordinates, the components at the pivot columns of p - p0 are
// exactly the coefficients in the RREF basis, so integer points stay integer.
struct AffineChart {
  int dim = 0;                      // affine dimension
  std::vector<Point> coords;        // one per input point
};

inline AffineChart affine_chart(const std::vector<Point>& pts) {
  AffineChart chart;
  if (pts.empty()) return chart;
  const int d = static_cast<int>(pts[0].size());
  RMat diffs;
  for (size_t i = 1; i < pts.size(); ++i) {
    RVec row(d);
    for (int j = 0; j < d; ++j) row[j] = Rational(pts[i][j] - pts[0][j]);
    diffs.push_back(std::move(row));
  }
  auto pivots = rref(diffs);
  chart.dim = static_cast<int>(pivots.size());
  chart.coords.reserve(pts.size());
  for (const auto& p : pts) {
    Point c(pivots.size());
    for (size_t j = 0; j < pivots.size(); ++j) c[j] = p[pivots[j]] - pts[0][pivots[j]];
    chart.coords.push_back(std::move(c));
  }
  return chart;
}

// Normal of the hyperplane spanned by (sub[1]-sub[0], ..): the 1-dimensional
// nullspace of the difference matrix, or empty when the subset is degenerate.
inline std::optional<RVec> hyperplane_normal(const std::vector<Point>& sub) {
  const int d = static_cast<int>(sub[0].size());
  RMat m;
  for (size_t i = 1; i < sub.size(); ++i) {
    RVec row(d);
    for (int j = 0; j < d; ++j) row[j] = Rational(sub[i][j] - sub[0][j]);
    m.push_back(std::move(row));
  }
  auto pivots = rref(m);
  if (static_cast<int>(pivots.size()) != d - 1) return std::nullopt;
  std::vector<char> is_pivot(d, 0);
  for (int c : pivots) is_pivot[c] = 1;
  int free_col = -1;
  for (int j = 0; j < d; ++j)
    if (!is_pivot[j]) {
      free_col = j;
      break;
    }
  RVec normal(d, Rational(0));
  normal[free_col] = 1;
  for (size_t r = 0; r < pivots.size(); ++r) normal[pivots[r]] = -m[r][free_col];
  return normal;
}

}  // namespace detail

// Is `p` in the convex hull of `others`? Exact LP feasibility; when outside,
// `witness` carries an integer vector u with u.p < u.q for every q.
struct MembershipResult {
  bool inside = false;
  RVec witness;
};

inline MembershipResult in_convex_hull(const Point& p, const std::vector<Point>& others) {
  MembershipResult out;
  if (others.empty()) {
    out.inside = false;
    out.witness.assign(p.size(), Rational(0));
    return out;
  }
  const int d = static_cast<int>(p.size());
  const int nq = static_cast<int>(others.size());
  RMat A(d + 1, RVec(nq, Rational(0)));
  RVec b(d + 1);
  for (int i = 0; i < d; ++i) {
    b[i] = Rational(p[i]);
    for (int q = 0; q < nq; ++q) A[i][q] = Rational(others[q][i]);
  }
  b[d] = 1;
  for (int q = 0; q < nq; ++q) A[d][q] = 1;
  auto res = lp::solve_eq(std::move(A), std::move(b), RVec(nq, Rational(0)));
  if (res.status == lp::Status::optimal) {
    out.inside = true;
    return out;
  }
  if (res.status != lp::Status::infeasible)
    throw std::logic_error("in_convex_hull: unexpected LP status");
  // farkas y = (w, g) with w.q + g <= 0 for all q and w.p + g > 0;
  // u = -w separates p strictly below every q.
  RVec u(d);
  for (int i = 0; i < d; ++i) u[i] = -res.farkas[i];
  u = detail::primitive_integer_vector(u);
  Rational up = 0;
  for (int i = 0; i < d; ++i) up += u[i] * p[i];
  for (const auto& q : others) {
    Rational uq = 0;
    for (int i = 0; i < d; ++i) uq += u[i] * q[i];
    if (!(up < uq)) throw std::logic_error("in_convex_hull: certificate failed verification");
  }
  out.witness = std::move(u);
  return out;
}

// Flags each point that is a vertex of the hull (not in the convex hull of
// the remaining points) and attaches a strict separating witness, obtained
// from the margin-maximizing LP and scaled to a primitive integer vector.
inline HullReport vertices(const PointSet& ps, int threads = 0) {
  if (ps.points.empty()) throw std::invalid_argument("vertices: empty point set");
  HullReport report;
  const auto npts = ps.points.size();
  report.vertex_flags.assign(npts, 0);
  report.witnesses.assign(npts, std::nullopt);
  parallel_for(
      npts,
      [&](std::size_t v) {
        std::vector<RVec> diffs;
        diffs.reserve(npts - 1);
        for (std::size_t q = 0; q < npts; ++q)
          if (q != v) diffs.push_back(detail::point_diff(ps.points[q], ps.points[v]));
        auto margin = detail::max_margin(diffs, ps.dim, /*nonnegative=*/false);
        if (margin.eps > 0) {
          report.vertex_flags[v] = 1;
          auto w = detail::primitive_integer_vector(margin.w);
          // strictness re-check on the integer-scaled witness
          for (const auto& d : diffs) {
            Rational dot = 0;
            for (int i = 0; i < ps.dim; ++i) dot += w[i] * d[i];
            if (!(dot > 0)) throw std::logic_error("vertices: scaled witness lost strictness");
          }
          report.witnesses[v] = std::move(w);
        }
      },
      threads);
  return report;
}

// (u,v) is an edge iff some weight vector minimizes exactly {u,v}: an LP with
// the additional constraint w.(u-v) = 0, edge iff the margin is positive.
inline std::vector<std::pair<int, int>> edges(const PointSet& ps, const std::vector<char>& vertex_flags,
                                              int threads = 0) {
  std::vector<int> verts;
  for (size_t i = 0; i < ps.points.size(); ++i)
    if (vertex_flags.at(i)) verts.push_back(static_cast<int>(i));
  std::vector<std::pair<int, int>> pairs;
  for (size_t a = 0; a < verts.size(); ++a)
    for (size_t b = a + 1; b < verts.size(); ++b) pairs.emplace_back(verts[a], verts[b]);

  std::vector<char> is_edge(pairs.size(), 0);
  parallel_for(
      pairs.size(),
      [&](std::size_t idx) {
        auto [u, v] = pairs[idx];
        const int d = ps.dim;
        std::vector<RVec> diffs;
        for (size_t q = 0; q < ps.points.size(); ++q)
          if (static_cast<int>(q) != u && static_cast<int>(q) != v)
            diffs.push_back(detail::point_diff(ps.points[q], ps.points[u]));
        if (diffs.empty()) {  // segment: the two points bound one edge
          is_edge[idx] = 1;
          return;
        }
        // Dual tableau as in max_margin plus two columns for the free
        // multiplier of the equality w.(u-v) = 0.
        const int nq = static_cast<int>(diffs.size());
        const int cols = nq + 2 + 2 * d;
        RMat A(d + 1, RVec(cols, Rational(0)));
        RVec b(d + 1, Rational(0));
        RVec c(cols, Rational(0));
        b[0] = 1;
        for (int q = 0; q < nq; ++q) {
          A[0][q] = 1;
          for (int i = 0; i < d; ++i) A[1 + i][q] = -diffs[q][i];
        }
        for (int i = 0; i < d; ++i) {
          Rational uv = Rational(ps.points[u][i] - ps.points[v][i]);
          A[1 + i][nq] = uv;
          A[1 + i][nq + 1] = -uv;
          A[1 + i][nq + 2 + i] = 1;
          A[1 + i][nq + 2 + d + i] = -1;
          c[nq + 2 + i] = -1;
          c[nq + 2 + d + i] = -1;
        }
        auto res = lp::solve_eq(std::move(A), std::move(b), c);
        if (res.status != lp::Status::optimal)
          throw std::logic_error("edges: dual LP did not solve");
        Rational eps = -res.dual[0];
        if (eps <= 0) return;
        RVec w(d);
        for (int i = 0; i < d; ++i) w[i] = -res.dual[1 + i];
        Rational along = 0;
        for (int i = 0; i < d; ++i) along += w[i] * Rational(ps.points[u][i] - ps.points[v][i]);
        if (along != 0) throw std::logic_error("edges: extracted w violates tie constraint");
        is_edge[idx] = 1;
      },
      threads);

  std::vector<std::pair<int, int>> out;
  for (size_t i = 0; i < pairs.size(); ++i)
    if (is_edge[i]) out.push_back(pairs[i]);
  return out;
}

// Face counts (f_0, ..., f_{d-1}) of conv(points), d = affine dimension.
// Facets are found by scanning supporting hyperplanes through d-subsets of
// vertices; the face lattice is the intersection closure of the facets.
inline std::vector<long long> f_vector(const PointSet& ps, int dim_limit = kDefaultFVectorDimLimit,
                                       int threads = 0) {
  auto report = vertices(ps, threads);
  std::vector<Point> vpts;
  for (size_t i = 0; i < ps.points.size(); ++i)
    if (report.vertex_flags[i]) vpts.push_back(ps.points[i]);

  auto chart = detail::affine_chart(vpts);
  const int d = chart.dim;
  if (d > dim_limit)
    throw DimensionLimitError("f_vector: affine dimension " + std::to_string(d) +
                              " exceeds limit " + std::to_string(dim_limit) +
                              " (raise the limit only for small point sets; the facet scan cost "
                              "grows with binomial(points, dim))");
  if (d == 0) return {1};

  const auto& pts = chart.coords;
  const int m = static_cast<int>(pts.size());
  if (d == 1) return {2};

  // All supporting hyperplanes spanned by d affinely independent vertices.
  std::set<std::vector<int>> facets;
  std::vector<int> subset(d);
  std::function<void(int, int)> scan = [&](int pos, int from) {
    if (pos == d) {
      std::vector<Point> sub;
      for (int idx : subset) sub.push_back(pts[idx]);
      auto normal = detail::hyperplane_normal(sub);
      if (!normal) return;
      Rational h = 0;
      for (int i = 0; i < d; ++i) h += (*normal)[i] * sub[0][i];
      bool any_below = false, any_above = false;
      std::vector<int> on_plane;
      for (int q = 0; q < m; ++q) {
        Rational dot = 0;
        for (int i = 0; i < d; ++i) dot += (*normal)[i] * pts[q][i];
        if (dot < h) any_below = true;
        else if (dot > h) any_above = true;
        else on_plane.push_back(q);
      }
      if (any_below && any_above) return;
      facets.insert(on_plane);
      return;
    }
    for (int i = from; i < m; ++i) {
      subset[pos] = i;
      scan(pos + 1, i + 1);
    }
  };
  scan(0, 0);

  // Intersection closure = all proper nonempty faces.
  std::set<std::vector<int>> faces(facets.begin(), facets.end());
  std::vector<std::vector<int>> work(faces.begin(), faces.end());
  while (!work.empty()) {
    auto f = std::move(work.back());
    work.pop_back();
    for (const auto& g : facets) {
      std::vector<int> meet;
      std::set_intersection(f.begin(), f.end(), g.begin(), g.end(), std::back_inserter(meet));
      if (meet.empty() || meet == f) continue;
      if (faces.insert(meet).second) work.push_back(meet);
    }
  }

  std::vector<long long> fv(d, 0);
  for (const auto& face : faces) {
    std::vector<Point> sub;
    for (int idx : face) sub.push_back(pts[idx]);
    int fd = detail::affine_chart(sub).dim;
    if (fd < d) ++fv[fd];
  }
  if (fv[0] != m) throw std::logic_error("f_vector: vertex count disagrees with face lattice");
  return fv;
}

inline int affine_dimension(const PointSet& ps) { return detail::affine_chart(ps.points).dim; }

}  // namespace vitpoly::hull
