#pragma once

#include "vitpoly/catalog.hpp"
#include "vitpoly/hull.hpp"
#include "vitpoly/sequence.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vitpoly::propagate {

class BudgetExceededError : public std::runtime_error {
 public:
  explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

struct Options {
  std::size_t max_candidates = 200000;  // per extension step
  int threads = 0;
  bool allow_experimental_k = false;  // k >= 4 has no published numbers to check against
};

namespace detail {

// Applies a state transposition (0 i) to rows and columns of the counts, to
// every state of the representative, and to the witness matrix.
inline CatalogEntry permute_entry(const CatalogEntry& e, int i) {
  auto sigma = [i](int s) { return s == 0 ? i : (s == i ? 0 : s); };
  const int k = e.exponents.k;
  CatalogEntry out = e;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) out.exponents.at(sigma(a), sigma(b)) = e.exponents.at(a, b);
  out.exponents.start = sigma(e.exponents.start);
  for (size_t t = 0; t < e.representative.states.size(); ++t)
    out.representative.states[t] = sigma(e.representative.states[t]);
  if (!e.witness.empty())
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) out.witness[sigma(a)][sigma(b)] = e.witness[a][b];
  return out;
}

inline RMat reshape_witness(const std::vector<Rational>& flat, int k) {
  RMat w(k, RVec(k, Rational(0)));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) w[i][j] = flat[static_cast<size_t>(i) * k + j];
  return w;
}

}  // namespace detail

// Swapping states 0 and i turns the catalog of min-weight sequences that
// start with 0 into the catalog for start i (and back: an involution).
inline VertexCatalog relabel(const VertexCatalog& cat, int i) {
  if (i < 0 || i >= cat.k) throw std::invalid_argument("relabel: state out of range");
  VertexCatalog out;
  out.k = cat.k;
  out.n = cat.n;
  out.start = cat.start == 0 ? i : (cat.start == i ? 0 : cat.start);
  out.entries.reserve(cat.entries.size());
  for (const auto& e : cat.entries) out.entries.push_back(detail::permute_entry(e, i));
  std::sort(out.entries.begin(), out.entries.end(),
            [](const CatalogEntry& a, const CatalogEntry& b) { return a.exponents < b.exponents; });
  return out;
}

// One step of the enumeration recursion: prepend `start` to every entry of
// every per-start catalog at length n-1 (incrementing x_{start,i} for a
// suffix starting at i), then keep exactly the hull vertices of the
// candidate points. Only suffixes that are themselves min-weight can extend
// to a min-weight sequence, which is what makes the pruning sound.
inline VertexCatalog extend(const std::vector<VertexCatalog>& per_start, int start,
                            const Options& opts = {}) {
  if (per_start.empty()) throw std::invalid_argument("extend: no catalogs");
  const int k = per_start[0].k;
  const int n_prev = per_start[0].n;
  for (const auto& c : per_start)
    if (c.k != k || c.n != n_prev) throw std::invalid_argument("extend: inconsistent catalogs");

  std::map<std::vector<long long>, Sequence> candidates;
  for (int i = 0; i < k; ++i) {
    const VertexCatalog* cat = nullptr;
    for (const auto& c : per_start)
      if (c.start == i) cat = &c;
    if (!cat) throw std::invalid_argument("extend: missing catalog for start " + std::to_string(i));
    for (const auto& e : cat->entries) {
      std::vector<long long> counts = e.exponents.counts;
      counts[static_cast<size_t>(start) * k + i] += 1;
      Sequence rep(k, {});
      rep.states.reserve(e.representative.states.size() + 1);
      rep.states.push_back(start);
      rep.states.insert(rep.states.end(), e.representative.states.begin(),
                        e.representative.states.end());
      auto it = candidates.find(counts);
      if (it == candidates.end()) candidates.emplace(std::move(counts), std::move(rep));
      else if (rep < it->second) it->second = std::move(rep);
    }
  }
  if (candidates.size() > opts.max_candidates)
    throw BudgetExceededError("extend: candidate budget exceeded at length " +
                              std::to_string(n_prev + 1) + " (" +
                              std::to_string(candidates.size()) + " points)");

  std::vector<hull::Point> pts;
  std::vector<Sequence> reps;
  pts.reserve(candidates.size());
  for (auto& [counts, rep] : candidates) {
    pts.push_back(counts);
    reps.push_back(rep);
  }
  hull::PointSet ps(k * k, pts);
  auto report = hull::vertices(ps, opts.threads);

  VertexCatalog out;
  out.k = k;
  out.n = n_prev + 1;
  out.start = start;
  for (size_t i = 0; i < ps.points.size(); ++i) {
    if (!report.vertex_flags[i]) continue;
    CatalogEntry entry;
    entry.exponents = ExponentVector(k, start, ps.points[i]);
    entry.representative = reps[i];
    entry.witness = detail::reshape_witness(*report.witnesses[i], k);
    entry.status = EntryStatus::min_weight;
    out.entries.push_back(std::move(entry));
  }
  return out;  // map iteration is already sorted by counts
}

// Memoizing driver for the recursion. Catalogs for start 0 are computed once
// per (k, n); other starts are relabels.
class Enumerator {
 public:
  explicit Enumerator(Options opts = {}) : opts_(std::move(opts)) {}

  const Options& options() const { return opts_; }

  const VertexCatalog& start0(int k, int n) {
    check_k(k);
    if (n < 1) throw std::invalid_argument("enumerate: n must be >= 1");
    auto key = std::make_pair(k, n);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    VertexCatalog cat;
    if (n == 1) {
      cat.k = k;
      cat.n = 1;
      cat.start = 0;
      std::vector<hull::Point> pts;
      std::vector<Sequence> reps;
      for (int j = 0; j < k; ++j) {
        std::vector<long long> counts(static_cast<size_t>(k) * k, 0);
        counts[j] = 1;  // transition 0 -> j
        pts.push_back(counts);
        reps.emplace_back(k, std::vector<int>{0, j});
      }
      hull::PointSet ps(k * k, pts);
      auto report = hull::vertices(ps, opts_.threads);
      for (size_t i = 0; i < ps.points.size(); ++i) {
        if (!report.vertex_flags[i]) continue;
        CatalogEntry e;
        e.exponents = ExponentVector(k, 0, ps.points[i]);
        e.representative = reps[i];
        e.witness = detail::reshape_witness(*report.witnesses[i], k);
        cat.entries.push_back(std::move(e));
      }
    } else {
      const VertexCatalog& prev = start0(k, n - 1);
      std::vector<VertexCatalog> per_start;
      per_start.push_back(prev);
      for (int i = 1; i < k; ++i) per_start.push_back(relabel(prev, i));
      cat = extend(per_start, 0, opts_);
    }
    return memo_.emplace(key, std::move(cat)).first->second;
  }

  VertexCatalog get(int k, int n, int start) {
    const VertexCatalog& zero = start0(k, n);
    if (start == 0) return zero;
    if (start < 0 || start >= k) throw std::invalid_argument("enumerate: start out of range");
    return relabel(zero, start);
  }

  // Lets a persistence layer inject previously computed catalogs.
  void preload(VertexCatalog cat) {
    if (cat.start != 0) throw std::invalid_argument("preload: only start-0 catalogs are cached");
    memo_[{cat.k, cat.n}] = std::move(cat);
  }

  bool has(int k, int n) const { return memo_.count({k, n}) > 0; }

  // Merges classification results back into the memo so later calls see them.
  void update(const VertexCatalog& cat) {
    if (cat.start != 0) throw std::invalid_argument("update: only start-0 catalogs are cached");
    memo_[{cat.k, cat.n}] = cat;
  }

 private:
  void check_k(int k) const {
    if (k < 1) throw std::invalid_argument("enumerate: k must be >= 1");
    if (k > 3 && !opts_.allow_experimental_k)
      throw std::invalid_argument(
          "enumerate: k >= 4 is experimental (no published counts to validate against); "
          "enable it explicitly");
  }

  Options opts_;
  std::map<std::pair<int, int>, VertexCatalog> memo_;
};

inline VertexCatalog enumerate(int k, int n, int start, const Options& opts = {}) {
  Enumerator e(opts);
  return e.get(k, n, start);
}

// Start-0 and start-1 catalogs embedded with one extra coordinate recording
// the start state; for k = 2 the two length-n polytopes are opposite facets
// of this four-dimensional polytope.
struct CombinedPolytope {
  hull::PointSet points;            // dim k*k + 1
  hull::HullReport report;          // vertices, witnesses, edges, f_vector
  std::vector<ExponentVector> labels;
};

inline CombinedPolytope combined_polytope(Enumerator& eng, int n, int threads = 0) {
  const int k = 2;
  std::vector<hull::Point> pts;
  std::vector<ExponentVector> labels;
  for (int start = 0; start < k; ++start) {
    VertexCatalog cat = eng.get(k, n, start);
    for (const auto& e : cat.entries) {
      hull::Point p = e.exponents.counts;
      p.push_back(start);
      pts.push_back(std::move(p));
      labels.push_back(e.exponents);
    }
  }
  CombinedPolytope out{hull::PointSet(k * k + 1, pts), {}, std::move(labels)};
  out.report = hull::vertices(out.points, threads);
  out.report.edges = hull::edges(out.points, out.report.vertex_flags, threads);
  out.report.f_vector = hull::f_vector(out.points, hull::kDefaultFVectorDimLimit, threads);
  return out;
}

}  // namespace vitpoly::propagate
