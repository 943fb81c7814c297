#pragma once

#include "vitpoly/chain.hpp"
#include "vitpoly/rational.hpp"
#include "vitpoly/sequence.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace vitpoly::dp {

constexpr std::size_t kDefaultPathCap = 10000;

// Result of an exact optimization over all length-n paths. Every listed path
// attains `value` exactly; tie_flag reports whether a second, non-equivalent
// class also attains it (decided exactly, independent of the cap).
struct Optimum {
  Rational value;
  std::vector<Sequence> argmax_paths;
  bool tie_flag = false;
  bool cap_hit = false;
};

namespace detail {

// bwd[t][j] = optimal value over the remaining n-t transitions starting at j.
inline RMat backward_weights(const WeightScheme& ws, int n) {
  RMat bwd(n + 1, RVec(ws.k, Rational(0)));
  for (int t = n - 1; t >= 0; --t)
    for (int j = 0; j < ws.k; ++j) {
      Rational best = ws.w[j][0] + bwd[t + 1][0];
      for (int l = 1; l < ws.k; ++l) {
        Rational cand = ws.w[j][l] + bwd[t + 1][l];
        if (cand < best) best = cand;
      }
      bwd[t][j] = best;
    }
  return bwd;
}

inline RMat backward_probs(const MarkovChain& chain, int n) {
  RMat bwd(n + 1, RVec(chain.k, Rational(1)));
  for (int t = n - 1; t >= 0; --t)
    for (int j = 0; j < chain.k; ++j) {
      Rational best = chain.p[j][0] * bwd[t + 1][0];
      for (int l = 1; l < chain.k; ++l) {
        Rational cand = chain.p[j][l] * bwd[t + 1][l];
        if (cand > best) best = cand;
      }
      bwd[t][j] = best;
    }
  return bwd;
}

// Enumerates optimal paths in lexicographic order by DFS over the states
// whose continuation still attains the optimum. Stops at the cap.
template <class Step>
void enumerate_paths(int k, int n, const std::vector<int>& starts, Step&& feasible_step,
                     std::size_t cap, std::vector<Sequence>& out, bool& cap_hit) {
  std::vector<int> cur;
  std::function<bool(int)> dfs = [&](int t) -> bool {
    if (t == n) {
      if (out.size() >= cap) {
        cap_hit = true;
        return false;
      }
      out.emplace_back(k, cur);
      return true;
    }
    for (int j = 0; j < k; ++j) {
      if (!feasible_step(t, cur.back(), j)) continue;
      cur.push_back(j);
      bool keep_going = dfs(t + 1);
      cur.pop_back();
      if (!keep_going) return false;
    }
    return true;
  };
  for (int s : starts) {
    cur.assign(1, s);
    if (!dfs(0)) break;
  }
}

// Exceedance DP over one transition coordinate: optimal value among length-n
// paths from `start` that use transition (a,b) at least `threshold` times.
// A class differs from a reference class of the same length iff it strictly
// exceeds it in some coordinate, so minimizing (or maximizing) over the k^2
// coordinate DPs yields the best non-equivalent class exactly.
struct ExceedanceDp {
  // better(x, y): x strictly improves on y.
  using Cell = std::optional<Rational>;

  template <class Combine, class Better>
  static Cell run(int k, int n, int start, const Rational& init, int a, int b, long long threshold,
                  const RMat& step_value, Combine&& combine, Better&& better) {
    if (threshold > n) return std::nullopt;
    const auto M = static_cast<std::size_t>(threshold);
    // layer[state][c], c = uses of (a,b) capped at threshold
    std::vector<std::vector<Cell>> layer(k, std::vector<Cell>(M + 1));
    layer[start][0] = init;
    for (int t = 0; t < n; ++t) {
      std::vector<std::vector<Cell>> next(k, std::vector<Cell>(M + 1));
      for (int q = 0; q < k; ++q)
        for (std::size_t c = 0; c <= M; ++c) {
          if (!layer[q][c]) continue;
          for (int j = 0; j < k; ++j) {
            std::size_t c2 = c;
            if (q == a && j == b && c2 < M) ++c2;
            Rational cand = combine(*layer[q][c], step_value[q][j]);
            if (!next[j][c2] || better(cand, *next[j][c2])) next[j][c2] = cand;
          }
        }
      layer = std::move(next);
    }
    Cell best;
    for (int q = 0; q < k; ++q)
      if (layer[q][M] && (!best || better(*layer[q][M], *best))) best = layer[q][M];
    return best;
  }
};

}  // namespace detail

// Least total weight over length-n classes from ev.start that are NOT
// equivalent to ev (transition weights only). nullopt when no such class
// exists (single-state chains).
inline std::optional<Rational> best_other_class_weight(const WeightScheme& ws,
                                                       const ExponentVector& ev, int n) {
  ws.validate();
  std::optional<Rational> best;
  for (int a = 0; a < ws.k; ++a)
    for (int b = 0; b < ws.k; ++b) {
      auto r = detail::ExceedanceDp::run(
          ws.k, n, ev.start, Rational(0), a, b, ev.at(a, b) + 1, ws.w,
          [](const Rational& x, const Rational& y) { return x + y; },
          [](const Rational& x, const Rational& y) { return x < y; });
      if (r && (!best || *r < *best)) best = r;
    }
  return best;
}

// Greatest probability over length-n classes (any start) not equivalent to
// ev, under the chain's pi. nullopt only when ev is the sole length-n class.
inline std::optional<Rational> best_other_class_probability(const MarkovChain& chain,
                                                            const ExponentVector& ev, int n) {
  chain.validate();
  std::optional<Rational> best;
  for (int a = 0; a < chain.k; ++a)
    for (int b = 0; b < chain.k; ++b) {
      auto r = detail::ExceedanceDp::run(
          chain.k, n, ev.start, chain.pi[ev.start], a, b, ev.at(a, b) + 1, chain.p,
          [](const Rational& x, const Rational& y) { return x * y; },
          [](const Rational& x, const Rational& y) { return x > y; });
      if (r && (!best || *r > *best)) best = r;
    }
  if (chain.k > 1) {
    auto bwd = detail::backward_probs(chain, n);
    for (int q = 0; q < chain.k; ++q) {
      if (q == ev.start) continue;
      Rational v = chain.pi[q] * bwd[0][q];
      if (!best || v > *best) best = v;
    }
  }
  return best;
}

// Minimum total weight over all k^n transition paths. With a fixed start the
// value is the sum of transition weights alone; without one, omega must be
// present and the optimization ranges over all starts including omega.
inline Optimum min_weight(const WeightScheme& ws, int n, std::optional<int> start,
                          std::size_t cap = kDefaultPathCap) {
  ws.validate();
  if (n < 1) throw std::invalid_argument("min_weight: n must be >= 1");
  if (!start && !ws.omega)
    throw std::invalid_argument("min_weight: omega required when start is unspecified");
  if (start && (*start < 0 || *start >= ws.k))
    throw std::invalid_argument("min_weight: start out of range");

  auto bwd = detail::backward_weights(ws, n);
  Optimum opt;
  std::vector<int> starts;
  if (start) {
    opt.value = bwd[0][*start];
    starts = {*start};
  } else {
    bool first = true;
    for (int q = 0; q < ws.k; ++q) {
      Rational v = (*ws.omega)[q] + bwd[0][q];
      if (first || v < opt.value) opt.value = v, first = false;
    }
    for (int q = 0; q < ws.k; ++q)
      if ((*ws.omega)[q] + bwd[0][q] == opt.value) starts.push_back(q);
  }

  auto initial = [&](int s) { return start ? Rational(0) : (*ws.omega)[s]; };
  // DFS feasibility: prefix + step + best suffix == optimum
  std::vector<Rational> prefix(n + 1);
  auto feasible = [&](int t, int cur, int j) {
    Rational cand = prefix[t] + ws.w[cur][j] + bwd[t + 1][j];
    if (cand == opt.value) {
      prefix[t + 1] = prefix[t] + ws.w[cur][j];
      return true;
    }
    return false;
  };
  for (int s : starts) {
    prefix[0] = initial(s);
    if (prefix[0] + bwd[0][s] != opt.value) continue;
    bool hit = false;
    detail::enumerate_paths(ws.k, n, {s}, feasible, cap, opt.argmax_paths, hit);
    opt.cap_hit = opt.cap_hit || hit;
    if (opt.cap_hit) break;
  }

  if (!opt.argmax_paths.empty()) {
    ExponentVector c0 = exponent_of(opt.argmax_paths.front());
    std::optional<Rational> other;
    auto same = best_other_class_weight(ws, c0, n);
    if (same) other = initial(c0.start) + *same;
    if (!start) {
      for (int q = 0; q < ws.k; ++q) {
        if (q == c0.start) continue;
        Rational v = (*ws.omega)[q] + bwd[0][q];
        if (!other || v < *other) other = v;
      }
    }
    opt.tie_flag = other && *other == opt.value;
  }
  return opt;
}

// Maximum-probability paths of the chain, pi included. Exact analogue of
// min_weight in the multiplicative domain.
inline Optimum viterbi(const MarkovChain& chain, int n, std::size_t cap = kDefaultPathCap) {
  chain.validate();
  if (n < 1) throw std::invalid_argument("viterbi: n must be >= 1");
  auto bwd = detail::backward_probs(chain, n);
  Optimum opt;
  bool first = true;
  for (int q = 0; q < chain.k; ++q) {
    Rational v = chain.pi[q] * bwd[0][q];
    if (first || v > opt.value) opt.value = v, first = false;
  }

  std::vector<Rational> prefix(n + 1);
  auto feasible = [&](int t, int cur, int j) {
    Rational cand = prefix[t] * chain.p[cur][j] * bwd[t + 1][j];
    if (cand == opt.value) {
      prefix[t + 1] = prefix[t] * chain.p[cur][j];
      return true;
    }
    return false;
  };
  for (int s = 0; s < chain.k; ++s) {
    prefix[0] = chain.pi[s];
    if (prefix[0] * bwd[0][s] != opt.value) continue;
    bool hit = false;
    detail::enumerate_paths(chain.k, n, {s}, feasible, cap, opt.argmax_paths, hit);
    opt.cap_hit = opt.cap_hit || hit;
    if (opt.cap_hit) break;
  }

  if (!opt.argmax_paths.empty()) {
    ExponentVector c0 = exponent_of(opt.argmax_paths.front());
    auto other = best_other_class_probability(chain, c0, n);
    opt.tie_flag = other && *other == opt.value;
  }
  return opt;
}

// (least weight over length-n paths not equivalent to s) - weight(s).
// Positive iff s is the strictly unique min-weight class from its start.
inline Rational margin(const WeightScheme& ws, const Sequence& s) {
  ExponentVector ev = exponent_of(s);
  auto other = best_other_class_weight(ws, ev, s.length());
  if (!other)
    throw std::domain_error("margin: no non-equivalent class of this length exists");
  return *other - class_weight(ws, ev);
}

}  // namespace vitpoly::dp
