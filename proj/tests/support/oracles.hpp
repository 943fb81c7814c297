#pragma once

// Independent oracles for the test suite: exhaustive path enumeration for
// the DP results, Caratheodory-style hull membership by subset enumeration,
// and a sampled-plus-certified vertex oracle for large lattice point sets.
// These deliberately avoid the code paths they are used to check.

#include "vitpoly/chain.hpp"
#include "vitpoly/hull.hpp"
#include "vitpoly/lp.hpp"
#include "vitpoly/rational.hpp"
#include "vitpoly/sequence.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using vitpoly::ExponentVector;
using vitpoly::MarkovChain;
using vitpoly::Rational;
using vitpoly::RMat;
using vitpoly::RVec;
using vitpoly::Sequence;
using vitpoly::WeightScheme;

// Every length-n sequence over k states with the given start (or all starts).
inline std::vector<Sequence> all_sequences(int k, int n, std::optional<int> start) {
  std::vector<Sequence> out;
  std::vector<int> cur;
  std::function<void()> grow = [&] {
    if (static_cast<int>(cur.size()) == n + 1) {
      out.emplace_back(k, cur);
      return;
    }
    for (int j = 0; j < k; ++j) {
      cur.push_back(j);
      grow();
      cur.pop_back();
    }
  };
  for (int s = 0; s < k; ++s) {
    if (start && *start != s) continue;
    cur.assign(1, s);
    grow();
  }
  return out;
}

struct BruteOptimum {
  Rational value;
  std::vector<Sequence> paths;                 // all optimizers, lexicographic
  std::set<std::vector<long long>> classes;    // their exponent counts
};

inline BruteOptimum brute_min_weight(const WeightScheme& ws, int n, std::optional<int> start) {
  BruteOptimum out;
  bool first = true;
  for (const auto& seq : all_sequences(ws.k, n, start)) {
    Rational v = vitpoly::weight(ws, seq, !start.has_value());
    if (first || v < out.value) {
      out.value = v;
      out.paths.clear();
      out.classes.clear();
      first = false;
    }
    if (v == out.value) {
      out.paths.push_back(seq);
      out.classes.insert(vitpoly::exponent_of(seq).counts);
    }
  }
  return out;
}

inline BruteOptimum brute_viterbi(const MarkovChain& chain, int n) {
  BruteOptimum out;
  bool first = true;
  for (const auto& seq : all_sequences(chain.k, n, std::nullopt)) {
    Rational v = vitpoly::probability(chain, seq);
    if (first || v > out.value) {
      out.value = v;
      out.paths.clear();
      out.classes.clear();
      first = false;
    }
    if (v == out.value) {
      out.paths.push_back(seq);
      out.classes.insert(vitpoly::exponent_of(seq).counts);
    }
  }
  return out;
}

// Best weight among length-n sequences from `start` NOT equivalent to `ev`.
inline std::optional<Rational> brute_best_other_weight(const WeightScheme& ws,
                                                       const ExponentVector& ev, int n) {
  std::optional<Rational> best;
  for (const auto& seq : all_sequences(ws.k, n, ev.start)) {
    if (vitpoly::exponent_of(seq) == ev) continue;
    Rational v = vitpoly::weight(ws, seq, false);
    if (!best || v < *best) best = v;
  }
  return best;
}

inline std::optional<Rational> brute_best_other_probability(const MarkovChain& chain,
                                                            const ExponentVector& ev, int n) {
  std::optional<Rational> best;
  for (const auto& seq : all_sequences(chain.k, n, std::nullopt)) {
    if (vitpoly::exponent_of(seq) == ev) continue;
    Rational v = vitpoly::probability(chain, seq);
    if (!best || v > *best) best = v;
  }
  return best;
}

// The distinct exponent vectors of all k^n paths from `start`.
inline std::vector<std::vector<long long>> all_classes(int k, int n, int start) {
  std::set<std::vector<long long>> classes;
  for (const auto& seq : all_sequences(k, n, start))
    classes.insert(vitpoly::exponent_of(seq).counts);
  return {classes.begin(), classes.end()};
}

// ---- Caratheodory membership: v in conv(points)? ----
// Enumerates subsets of size <= d+1, solves for barycentric coordinates by
// exact elimination, and accepts when all are nonnegative. No LP involved.

inline bool solve_barycentric(const std::vector<std::vector<long long>>& sub,
                              const std::vector<long long>& v) {
  const int d = static_cast<int>(v.size());
  const int m = static_cast<int>(sub.size());
  // rows: d coordinate equations + normalization, columns: m weights + rhs
  RMat a(d + 1, RVec(m + 1));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < m; ++j) a[i][j] = Rational(sub[j][i]);
    a[i][m] = Rational(v[i]);
  }
  for (int j = 0; j < m; ++j) a[d][j] = 1;
  a[d][m] = 1;

  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < m && r <= d; ++c) {
    int sel = -1;
    for (int i = r; i <= d; ++i)
      if (a[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[r], a[sel]);
    Rational inv = a[r][c];
    for (auto& x : a[r]) x /= inv;
    for (int i = 0; i <= d; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (int j = 0; j <= m; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i <= d; ++i)
    if (a[i][m] != 0) return false;  // inconsistent
  if (static_cast<int>(pivot_col.size()) < m) return false;  // underdetermined: skip, another subset will be independent
  for (int i = 0; i < m; ++i)
    if (a[i][m] < 0) return false;
  return true;
}

inline bool caratheodory_in_hull(const std::vector<long long>& v,
                                 const std::vector<std::vector<long long>>& points) {
  const int d = static_cast<int>(v.size());
  const int m = static_cast<int>(points.size());
  for (int size = 1; size <= std::min(m, d + 1); ++size) {
    std::vector<int> idx(size);
    std::function<bool(int, int)> pick = [&](int pos, int from) {
      if (pos == size) {
        std::vector<std::vector<long long>> sub;
        for (int i : idx) sub.push_back(points[i]);
        return solve_barycentric(sub, v);
      }
      for (int i = from; i < m; ++i) {
        idx[pos] = i;
        if (pick(pos + 1, i + 1)) return true;
      }
      return false;
    };
    if (pick(0, 0)) return true;
  }
  return false;
}

// ---- vertex sets of large lattice point clouds ----
// Seeds the vertex set with strict minimizers of random integer directions,
// then settles every remaining point with an exact membership LP (cheap when
// it lands inside the seeded hull, full test otherwise). Exact regardless of
// sampling luck.

inline std::vector<std::vector<long long>> brute_force_hull_vertices(
    const std::vector<std::vector<long long>>& points, unsigned rng_seed = 12345) {
  using vitpoly::hull::in_convex_hull;
  const int d = points.empty() ? 0 : static_cast<int>(points[0].size());
  const int m = static_cast<int>(points.size());
  std::set<int> vertex_idx;
  std::mt19937 rng(rng_seed);
  std::uniform_int_distribution<int> coeff(-8, 8);
  for (int trial = 0; trial < 40 * d + 200; ++trial) {
    std::vector<long long> w(d);
    for (auto& x : w) x = coeff(rng);
    long long best = 0;
    std::vector<int> argmin;
    for (int i = 0; i < m; ++i) {
      long long dot = 0;
      for (int c = 0; c < d; ++c) dot += w[c] * points[i][c];
      if (argmin.empty() || dot < best) {
        best = dot;
        argmin.assign(1, i);
      } else if (dot == best) {
        argmin.push_back(i);
      }
    }
    if (argmin.size() == 1) vertex_idx.insert(argmin[0]);
  }
  for (int i = 0; i < m; ++i) {
    if (vertex_idx.count(i)) continue;
    std::vector<std::vector<long long>> seeded;
    for (int v : vertex_idx)
      if (v != i) seeded.push_back(points[v]);
    if (!seeded.empty() && in_convex_hull(points[i], seeded).inside) continue;
    std::vector<std::vector<long long>> others;
    for (int q = 0; q < m; ++q)
      if (q != i) others.push_back(points[q]);
    if (!in_convex_hull(points[i], others).inside) vertex_idx.insert(i);
  }
  std::vector<std::vector<long long>> out;
  for (int i : vertex_idx) out.push_back(points[i]);
  std::sort(out.begin(), out.end());
  return out;
}

// ---- random exact-rational generators ----

inline Rational random_rational(std::mt19937& rng, int num_lo = -20, int num_hi = 20,
                                int den_hi = 10) {
  std::uniform_int_distribution<int> num(num_lo, num_hi);
  std::uniform_int_distribution<int> den(1, den_hi);
  return Rational(num(rng), den(rng));
}

inline WeightScheme random_weights(std::mt19937& rng, int k) {
  RMat w(k, RVec(k));
  for (auto& row : w)
    for (auto& x : row) x = random_rational(rng);
  RVec omega(k);
  for (auto& x : omega) x = random_rational(rng, 0, 5);
  return WeightScheme(k, w, omega);
}

inline MarkovChain random_chain(std::mt19937& rng, int k) {
  auto random_distribution = [&](int size) {
    std::uniform_int_distribution<int> part(1, 20);
    std::vector<long long> raw(size);
    long long total = 0;
    for (auto& x : raw) {
      x = part(rng);
      total += x;
    }
    RVec out(size);
    for (int i = 0; i < size; ++i) out[i] = Rational(raw[i], total);
    return out;
  };
  RVec pi = random_distribution(k);
  RMat p(k);
  for (auto& row : p) row = random_distribution(k);
  return MarkovChain(k, pi, p);
}

}  // namespace oracle
