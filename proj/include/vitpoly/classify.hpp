#pragma once

#include "vitpoly/catalog.hpp"
#include "vitpoly/chain.hpp"
#include "vitpoly/dp.hpp"
#include "vitpoly/hull.hpp"
#include "vitpoly/parallel.hpp"
#include "vitpoly/rational.hpp"
#include "vitpoly/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace vitpoly::classify {

struct Options {
  int restarts = 64;
  int max_steps = 500;
  long long snap_denominator = 1000000;
  // Run the witness search even for entries the ending rules already prove
  // pseudo-Viterbi (it cannot succeed; useful only as a sanity exercise).
  bool search_tagged_entries = false;
  int threads = 0;
};

struct VerifyResult {
  bool dominates = false;
  std::optional<Rational> ratio;        // entry prob / best competitor prob, when positive
  bool competitors_impossible = false;  // best competitor probability is zero (or none exists)
};

// Exact check that the entry's class strictly beats every non-equivalent
// length-n class under the chain. The best competitor is computed by the
// class-level second-best DP, never by sampling.
inline VerifyResult verify_witness(const MarkovChain& chain, const ExponentVector& ev, int n) {
  VerifyResult out;
  Rational p_entry = class_probability(chain, ev);
  auto best_other = dp::best_other_class_probability(chain, ev, n);
  if (!best_other || *best_other == 0) {
    out.competitors_impossible = true;
    out.dominates = p_entry > 0;
    return out;
  }
  out.dominates = p_entry > *best_other;
  out.ratio = p_entry / *best_other;
  return out;
}

namespace detail {

// Forbidden endings. For k = 2 no optimal sequence of a stochastic chain can
// end with 001 or 110; for k = 3 none can end with 11210 or 12110, and state
// relabeling extends both rules to every permutation image.
inline const std::vector<std::vector<int>>& forbidden_endings(int k) {
  static const std::vector<std::vector<int>> none;
  static const std::vector<std::vector<int>> two = {{0, 0, 1}, {1, 1, 0}};
  static const std::vector<std::vector<int>> three = [] {
    std::vector<std::vector<int>> out;
    const std::vector<std::vector<int>> base = {{1, 1, 2, 1, 0}, {1, 2, 1, 1, 0}};
    std::vector<int> perm = {0, 1, 2};
    do {
      for (const auto& word : base) {
        std::vector<int> img(word.size());
        for (size_t i = 0; i < word.size(); ++i) img[i] = perm[word[i]];
        out.push_back(img);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }();
  if (k == 2) return two;
  if (k == 3) return three;
  return none;
}

inline std::string word_str(const std::vector<int>& w) {
  std::string s;
  for (int x : w) s += std::to_string(x);
  return s;
}

}  // namespace detail

// Tags the entry when some rearrangement of its class ends in a suffix that
// provably cannot end an optimal sequence of any stochastic chain.
inline std::optional<std::string> ending_rules(const ExponentVector& ev) {
  const int k = ev.k;
  for (const auto& word : detail::forbidden_endings(k)) {
    bool in_range = std::all_of(word.begin(), word.end(), [&](int s) { return s < k; });
    if (!in_range) continue;
    std::vector<long long> rem = ev.counts;
    bool enough = true;
    for (size_t t = 0; t + 1 < word.size() && enough; ++t) {
      long long& c = rem[static_cast<size_t>(word[t]) * k + word[t + 1]];
      if (c == 0) enough = false;
      else --c;
    }
    if (!enough) continue;
    bool empty = std::all_of(rem.begin(), rem.end(), [](long long c) { return c == 0; });
    bool ok = empty ? (ev.start == word.front())
                    : realizable_walk(rem, k, ev.start, word.front());
    if (ok) return "ends-" + detail::word_str(word);
  }
  return std::nullopt;
}

namespace detail {

inline MarkovChain chain_from_rows(int k, int start, RMat rows) {
  RVec pi(k, Rational(0));
  pi[start] = 1;
  return MarkovChain(k, std::move(pi), std::move(rows));
}

inline RMat normalize_rows(const RMat& raw) {
  RMat out = raw;
  for (auto& row : out) {
    Rational sum = 0;
    for (const auto& x : row) sum += x;
    if (sum <= 0) throw std::invalid_argument("normalize_rows: nonpositive row");
    for (auto& x : row) x /= sum;
  }
  return out;
}

// Empirical transition matrix of the entry, smoothed so that every row is a
// valid distribution.
inline MarkovChain smoothed_counts_seed(const ExponentVector& ev, const Rational& eps) {
  RMat rows(ev.k, RVec(ev.k));
  for (int i = 0; i < ev.k; ++i)
    for (int j = 0; j < ev.k; ++j) rows[i][j] = Rational(ev.at(i, j)) + eps;
  return chain_from_rows(ev.k, ev.start, normalize_rows(rows));
}

// Row-normalized exp(-t w) for the entry's hull witness w, computed as a
// softmax in doubles and snapped to the rational grid. The pull toward the
// witness cone is what makes this a good starting point; exactness comes
// from the verification, not the seed.
inline std::optional<MarkovChain> witness_exponential_seed(const ExponentVector& ev,
                                                           const RMat& witness, double t,
                                                           long long snap_den) {
  RMat rows(ev.k, RVec(ev.k));
  for (int i = 0; i < ev.k; ++i) {
    double lo = to_double(witness[i][0]);
    for (int j = 1; j < ev.k; ++j) lo = std::min(lo, to_double(witness[i][j]));
    for (int j = 0; j < ev.k; ++j) {
      double x = std::exp(-t * (to_double(witness[i][j]) - lo));  // in (0, 1]
      if (!std::isfinite(x)) return std::nullopt;
      auto ticks = static_cast<long long>(x * static_cast<double>(snap_den) + 0.5);
      rows[i][j] = Rational(std::max(1ll, ticks), snap_den);
    }
  }
  return chain_from_rows(ev.k, ev.start, normalize_rows(rows));
}

// Low-temperature seeds: find a separating weight vector theta >= 0 that is
// zero at one designated transition per row, then exponentiate it with base
// 1/2^j. Rows become distributions concentrated on the designated
// transition; if theta lies in the entry's normal cone the verification
// succeeds for moderate j.
inline void cone_power_seeds(const VertexCatalog& cat, size_t idx, long long snap_den,
                             std::vector<MarkovChain>& out, SearchBudgetUsed& budget) {
  const auto& entry = cat.entries[idx];
  const int k = cat.k;
  const auto& v = entry.exponents.counts;

  // candidate designated transitions per row: the used ones, or all when the
  // row is untouched by the entry
  std::vector<std::vector<int>> choices(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j)
      if (entry.exponents.at(i, j) > 0) choices[i].push_back(j);
    if (choices[i].empty())
      for (int j = 0; j < k; ++j) choices[i].push_back(j);
  }

  std::vector<int> pick(k, 0);
  int combos = 0;
  std::function<void(int)> enumerate = [&](int row) {
    if (combos >= 40) return;
    if (row == k) {
      ++combos;
      ++budget.cone_lps;
      // free coordinates: all (i,j) except the designated one per row
      std::vector<int> free_idx;
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          if (j != choices[i][pick[i]]) free_idx.push_back(i * k + j);
      std::vector<RVec> diffs;
      for (size_t q = 0; q < cat.entries.size(); ++q) {
        if (q == idx) continue;
        RVec d(free_idx.size());
        for (size_t f = 0; f < free_idx.size(); ++f)
          d[f] = Rational(cat.entries[q].exponents.counts[free_idx[f]] - v[free_idx[f]]);
        diffs.push_back(std::move(d));
      }
      hull::detail::MarginResult margin;
      try {
        margin = hull::detail::max_margin(diffs, static_cast<int>(free_idx.size()),
                                          /*nonnegative=*/true);
      } catch (const std::exception&) {
        return;
      }
      if (margin.eps <= 0) return;
      // round theta to e/L with small integer e, keeping strict separation
      for (long long L : {16ll, 64ll, 256ll}) {
        std::vector<long long> e(free_idx.size());
        for (size_t f = 0; f < free_idx.size(); ++f) {
          Rational scaled = margin.w[f] * L;
          e[f] = rational_floor(scaled + Rational(1, 2)).convert_to<long long>();
          if (e[f] < 0) e[f] = 0;
        }
        bool strict = true;
        for (const auto& d : diffs) {
          Rational dot = 0;
          for (size_t f = 0; f < free_idx.size(); ++f) dot += Rational(e[f]) * d[f];
          if (!(dot > 0)) {
            strict = false;
            break;
          }
        }
        if (!strict) continue;
        for (int j_exp : {2, 4, 8, 16}) {
          RMat rows(k, RVec(k, Rational(1)));  // designated transition gets exponent 0
          for (size_t f = 0; f < free_idx.size(); ++f) {
            int i = free_idx[f] / k, j = free_idx[f] % k;
            Rational w = 1;
            for (long long b = 0; b < e[f] * j_exp; ++b) w /= 2;
            rows[i][j] = w;
          }
          out.push_back(chain_from_rows(k, entry.exponents.start, normalize_rows(rows)));
        }
        break;
      }
      return;
    }
    for (size_t c = 0; c < choices[row].size(); ++c) {
      pick[row] = static_cast<int>(c);
      enumerate(row + 1);
      if (combos >= 40) return;
    }
  };
  enumerate(0);
  (void)snap_den;
}

struct Score {
  bool success = false;  // strict domination
  Rational ratio;        // 0 when the entry itself has probability 0

  bool operator>(const Score& o) const {
    if (success != o.success) return success;
    return ratio > o.ratio;
  }
};

inline Score score_chain(const MarkovChain& chain, const ExponentVector& ev, int n,
                         SearchBudgetUsed& budget) {
  ++budget.verifications;
  auto res = verify_witness(chain, ev, n);
  Score s;
  s.success = res.dominates;
  if (res.ratio) s.ratio = *res.ratio;
  else if (res.dominates) s.ratio = Rational(std::numeric_limits<long long>::max());
  return s;
}

}  // namespace detail

// Searches for an exact stochastic witness certifying the entry as a Viterbi
// sequence. pi is fixed to a point mass at the entry's start state. The
// search is a multi-start hill climb over row-stochastic matrices on a
// bounded-denominator grid, scored by the exact second-best probability
// ratio; deterministic given (k, n, start, counts).
inline Classification classify_entry(const VertexCatalog& cat, size_t idx,
                                     const Options& opts = {}) {
  const auto& entry = cat.entries[idx];
  const ExponentVector& ev = entry.exponents;
  const int n = cat.n;
  Classification result;

  result.impossibility_tag = ending_rules(ev);
  if (result.impossibility_tag && !opts.search_tagged_entries) {
    result.status = EntryStatus::pseudo_viterbi;
    return result;
  }

  auto accept = [&](const MarkovChain& chain) {
    auto res = verify_witness(chain, ev, n);
    ++result.budget.verifications;
    if (!res.dominates) return false;
    result.status = EntryStatus::viterbi;
    result.witness = chain;
    result.margin_ratio = res.ratio;
    result.competitors_impossible = res.competitors_impossible;
    return true;
  };

  // deterministic seeds first
  std::vector<MarkovChain> seeds;
  for (const auto& eps : {Rational(1), Rational(1, 2), Rational(1, 8)})
    seeds.push_back(detail::smoothed_counts_seed(ev, eps));
  if (!entry.witness.empty())
    for (double t : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
      auto s = detail::witness_exponential_seed(ev, entry.witness, t, opts.snap_denominator);
      if (s) seeds.push_back(*s);
    }
  detail::cone_power_seeds(cat, idx, opts.snap_denominator, seeds, result.budget);
  result.budget.seeds_tried = static_cast<long long>(seeds.size());
  for (const auto& s : seeds)
    if (accept(s)) return result;

  // hill climb over the row-simplex parameterization: deterministic
  // coordinate sweeps with a multiplicative step that shrinks when no move
  // improves the exact ratio
  const long long D = opts.snap_denominator;
  auto snap_pos = [&](const Rational& x) {
    Rational r = snap_to_grid(x, D);
    return r <= 0 ? Rational(1, D) : (r > 1 ? Rational(1) : r);
  };
  auto evaluate = [&](const RMat& raw) {
    return detail::score_chain(detail::chain_from_rows(ev.k, ev.start,
                                                       detail::normalize_rows(raw)),
                               ev, n, result.budget);
  };
  auto climb = [&](RMat raw) {
    auto cur = evaluate(raw);
    Rational delta(1, 1);
    long long evals = 1;
    while (!cur.success && evals < opts.max_steps && delta >= Rational(1, 1024)) {
      bool improved = false;
      for (int c = 0; c < ev.k * ev.k && !cur.success && evals < opts.max_steps; ++c) {
        for (int dir = 0; dir < 2; ++dir) {
          RMat cand = raw;
          int i = c / ev.k, j = c % ev.k;
          Rational factor = 1 + delta;
          cand[i][j] = snap_pos(dir == 0 ? Rational(cand[i][j] * factor)
                                         : Rational(cand[i][j] / factor));
          if (cand[i][j] == raw[i][j]) continue;
          auto cand_score = evaluate(cand);
          ++evals;
          ++result.budget.steps;
          if (cand_score > cur) {
            raw = std::move(cand);
            cur = cand_score;
            improved = true;
            break;
          }
        }
      }
      if (!improved) delta = delta * Rational(1, 2);
    }
    return std::make_pair(raw, cur);
  };

  std::uint64_t seed_key = fnv1a([&] {
    std::vector<long long> key = {ev.k, n, ev.start};
    key.insert(key.end(), ev.counts.begin(), ev.counts.end());
    return key;
  }());
  std::mt19937_64 rng(seed_key);
  std::uniform_int_distribution<long long> grid(1, D - 1);

  RMat best_raw;
  detail::Score best_score;
  {
    detail::Score best_seed_score;
    size_t best_seed = 0;
    for (size_t i = 0; i < seeds.size(); ++i) {
      auto sc = detail::score_chain(seeds[i], ev, n, result.budget);
      if (i == 0 || sc > best_seed_score) {
        best_seed_score = sc;
        best_seed = i;
      }
    }
    best_raw = seeds.empty() ? detail::smoothed_counts_seed(ev, Rational(1)).p : seeds[best_seed].p;
    best_score = best_seed_score;
  }

  for (int restart = 0; restart < opts.restarts; ++restart) {
    ++result.budget.restarts;
    RMat raw;
    if (restart == 0) {
      raw = best_raw;
    } else if (restart <= static_cast<int>(seeds.size())) {
      raw = seeds[restart - 1].p;  // sweep from every seed before going random
    } else {
      raw.assign(ev.k, RVec(ev.k));
      for (auto& row : raw)
        for (auto& x : row) x = Rational(grid(rng), D);
    }
    auto [end_raw, end_score] = climb(std::move(raw));
    if (end_score > best_score) {
      best_score = end_score;
      best_raw = end_raw;
    }
    if (best_score.success) break;
  }

  if (best_score.success &&
      accept(detail::chain_from_rows(ev.k, ev.start, detail::normalize_rows(best_raw))))
    return result;

  result.status = result.impossibility_tag ? EntryStatus::pseudo_viterbi : EntryStatus::unresolved;
  return result;
}

// Classifies every entry; statuses and witnesses are merged into the catalog.
inline void classify_catalog(VertexCatalog& cat, const Options& opts = {}) {
  parallel_for(
      cat.entries.size(),
      [&](std::size_t i) {
        auto cls = classify_entry(cat, i, opts);
        cat.entries[i].classification = cls;
        cat.entries[i].status = cls.status;
      },
      opts.threads);
}

}  // namespace vitpoly::classify
