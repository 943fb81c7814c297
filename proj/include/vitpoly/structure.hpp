#pragma once

#include "vitpoly/rational.hpp"
#include "vitpoly/sequence.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vitpoly::structure {

// Prefix / periodic interior / suffix blueprint of a sequence, taken modulo
// equivalence (the interior may be assembled from transitions scattered
// through the input). The period is stored as a closed state walk in its
// lexicographically least rotation ("010" is the 2-transition cycle 0->1->0).
// When repetitions > 0 the prefix ends at the interior entry state and the
// suffix starts at it; with repetitions == 0 the whole sequence is prefix.
struct Decomposition {
  int k = 0;
  std::vector<int> prefix;
  std::vector<int> period;  // closed walk, front() == back(); empty if repetitions == 0
  long long repetitions = 0;
  std::vector<int> suffix;

  int period_length() const {
    return period.empty() ? 0 : static_cast<int>(period.size()) - 1;
  }
  int prefix_transitions() const {
    return prefix.empty() ? 0 : static_cast<int>(prefix.size()) - 1;
  }
  int suffix_transitions() const {
    return suffix.empty() ? 0 : static_cast<int>(suffix.size()) - 1;
  }
};

inline Sequence reassemble(const Decomposition& d) {
  Sequence out(d.k, {});
  if (d.repetitions == 0) {
    out.states = d.prefix;
    return out;
  }
  out.states = d.prefix;
  const int p = d.period_length();
  const int entry = d.prefix.back();
  int offset = -1;
  for (int i = 0; i < p; ++i)
    if (d.period[i] == entry) offset = i;
  if (offset < 0) throw std::logic_error("reassemble: entry state not on the period");
  for (long long r = 0; r < d.repetitions; ++r)
    for (int t = 1; t <= p; ++t) out.states.push_back(d.period[(offset + t) % p]);
  if (!d.suffix.empty()) out.states.insert(out.states.end(), d.suffix.begin() + 1, d.suffix.end());
  return out;
}

namespace detail {

// Simple directed cycles with at most k transitions, as closed state walks
// canonicalized to start at their smallest state. For k = 3 these are the
// eight candidate periods 00, 11, 22, 010, 020, 121, 0120, 0210.
inline std::vector<std::vector<int>> candidate_cycles(int k, int max_len) {
  std::vector<std::vector<int>> out;
  std::vector<int> walk;
  std::vector<char> used(k, 0);
  std::function<void(int)> grow = [&](int depth) {
    int head = walk.front();
    int cur = walk.back();
    if (depth >= 1) {
      // closing edge cur -> head yields a cycle of length depth
      std::vector<int> cyc = walk;
      cyc.push_back(head);
      out.push_back(cyc);
    }
    if (depth == max_len) return;
    for (int j = head + 1; j < k; ++j) {  // head stays the smallest state
      if (used[j]) continue;
      used[j] = 1;
      walk.push_back(j);
      grow(depth + 1);
      walk.pop_back();
      used[j] = 0;
    }
  };
  for (int s = 0; s < k; ++s) {
    walk.assign(1, s);
    used.assign(k, 0);
    used[s] = 1;
    grow(1);  // closing the trivial walk yields the self-loop {s, s}
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<long long> cycle_edge_counts(const std::vector<int>& cyc, int k) {
  std::vector<long long> counts(static_cast<size_t>(k) * k, 0);
  for (size_t t = 0; t + 1 < cyc.size(); ++t)
    ++counts[static_cast<size_t>(cyc[t]) * k + cyc[t + 1]];
  return counts;
}

// Lexicographically smallest walk over the multiset from `from` to `to`.
inline std::vector<int> lex_min_walk(std::vector<long long> rem, int k, int from, int to) {
  std::vector<int> walk{from};
  long long total = 0;
  for (long long c : rem) total += c;
  int cur = from;
  for (long long t = 0; t < total; ++t) {
    bool advanced = false;
    for (int j = 0; j < k && !advanced; ++j) {
      long long& c = rem[static_cast<size_t>(cur) * k + j];
      if (c == 0) continue;
      --c;
      if (realizable_walk(rem, k, j, to)) {
        walk.push_back(j);
        cur = j;
        advanced = true;
      } else {
        ++c;
      }
    }
    if (!advanced) throw std::logic_error("lex_min_walk: stuck");
  }
  return walk;
}

}  // namespace detail

// Rearranges the sequence's transition multiset into prefix + repeated cycle
// + suffix, maximizing repetitions x period-length (ties: smaller period,
// then lexicographically smaller period word). The search tries every simple
// cycle of length <= k, takes the largest repetition count whose removal
// leaves a realizable remainder, and picks the interior entry point that
// makes the assembled sequence lexicographically smallest.
inline Decomposition decompose(const Sequence& seq) {
  if (!seq.well_formed()) throw std::invalid_argument("decompose: malformed sequence");
  const int k = seq.k;
  ExponentVector ev = exponent_of(seq);
  auto end_state = walk_end_state(ev.counts, k, ev.start);
  if (!end_state) throw std::logic_error("decompose: sequence counts not realizable");

  struct Candidate {
    std::vector<int> cycle;
    long long reps = 0;
    long long score() const { return reps * (static_cast<long long>(cycle.size()) - 1); }
  };
  std::optional<Candidate> best;
  auto better = [](const Candidate& a, const Candidate& b) {
    if (a.score() != b.score()) return a.score() > b.score();
    if (a.cycle.size() != b.cycle.size()) return a.cycle.size() < b.cycle.size();
    return a.cycle < b.cycle;
  };

  for (const auto& cyc : detail::candidate_cycles(k, k)) {
    auto edges = detail::cycle_edge_counts(cyc, k);
    long long cap = -1;
    for (size_t i = 0; i < edges.size(); ++i)
      if (edges[i] > 0) {
        long long avail = ev.counts[i] / edges[i];
        cap = cap < 0 ? avail : std::min(cap, avail);
      }
    for (long long r = cap; r >= 1; --r) {
      std::vector<long long> rem(ev.counts.size());
      for (size_t i = 0; i < rem.size(); ++i) rem[i] = ev.counts[i] - r * edges[i];
      bool rem_empty = std::all_of(rem.begin(), rem.end(), [](long long c) { return c == 0; });
      bool ok = false;
      if (rem_empty) {
        ok = std::find(cyc.begin(), cyc.end() - 1, ev.start) != cyc.end() - 1;
      } else {
        auto rem_end = walk_end_state(rem, k, ev.start);
        if (rem_end && *rem_end == *end_state) {
          for (size_t i = 0; i + 1 < cyc.size() && !ok; ++i) {
            int a = cyc[i];
            bool touched = a == ev.start;
            for (int j = 0; j < k && !touched; ++j)
              touched = rem[static_cast<size_t>(a) * k + j] > 0 || rem[static_cast<size_t>(j) * k + a] > 0;
            ok = touched;
          }
        }
      }
      if (ok) {
        Candidate cand{cyc, r};
        if (!best || better(cand, *best)) best = cand;
        break;  // smaller r cannot beat this cycle's own score
      }
    }
  }

  Decomposition d;
  d.k = k;
  if (!best) {
    d.prefix = seq.states;
    d.repetitions = 0;
    return d;
  }

  const auto& cyc = best->cycle;
  const int p = static_cast<int>(cyc.size()) - 1;
  auto edges = detail::cycle_edge_counts(cyc, k);
  std::vector<long long> rem(ev.counts.size());
  for (size_t i = 0; i < rem.size(); ++i) rem[i] = ev.counts[i] - best->reps * edges[i];
  std::vector<int> walk = detail::lex_min_walk(rem, k, ev.start, *end_state);

  // Pick the interior entry occurrence giving the lexicographically smallest
  // assembled sequence.
  std::optional<Decomposition> chosen;
  Sequence chosen_seq(k, {});
  for (size_t pos = 0; pos < walk.size(); ++pos) {
    bool on_cycle = std::find(cyc.begin(), cyc.end() - 1, walk[pos]) != cyc.end() - 1;
    if (!on_cycle) continue;
    Decomposition cand;
    cand.k = k;
    cand.prefix.assign(walk.begin(), walk.begin() + pos + 1);
    cand.period = cyc;
    cand.repetitions = best->reps;
    cand.suffix.assign(walk.begin() + pos, walk.end());
    Sequence s = reassemble(cand);
    if (!chosen || s.states < chosen_seq.states) {
      chosen = std::move(cand);
      chosen_seq = std::move(s);
    }
  }
  if (!chosen) throw std::logic_error("decompose: no interior entry point found");
  if (!(exponent_of(chosen_seq) == ev))
    throw std::logic_error("decompose: reassembly changed the equivalence class");
  return *chosen;
}

struct BoundsReport {
  bool skipped = false;  // repetitions == 0: nothing to check
  long long period = 0;
  long long prefix_transitions = 0;
  long long suffix_transitions = 0;
  bool prefix_ok = true;    // <= k p
  bool suffix_ok = true;    // <= k p
  bool combined_ok = true;  // <= k p + k - 2 p
  bool occurrence_ok = true;
  bool all_ok() const { return prefix_ok && suffix_ok && combined_ok && occurrence_ok; }
};

// Checks the structural bounds: prefix and suffix each at most kp
// transitions, combined at most kp + k - 2p, and per-state occurrence limits
// (at most p appearances in the prefix or suffix, p-1 for states on the
// period).
inline BoundsReport check_bounds(const Decomposition& d, int k) {
  BoundsReport rep;
  if (d.repetitions == 0) {
    rep.skipped = true;
    return rep;
  }
  const long long p = d.period_length();
  rep.period = p;
  rep.prefix_transitions = d.prefix_transitions();
  rep.suffix_transitions = d.suffix_transitions();
  rep.prefix_ok = rep.prefix_transitions <= k * p;
  rep.suffix_ok = rep.suffix_transitions <= k * p;
  rep.combined_ok = rep.prefix_transitions + rep.suffix_transitions <= k * p + k - 2 * p;

  std::vector<char> on_period(k, 0);
  for (size_t i = 0; i + 1 < d.period.size(); ++i) on_period[d.period[i]] = 1;
  auto occurrences_ok = [&](auto begin, auto end) {
    std::vector<long long> count(k, 0);
    for (auto it = begin; it != end; ++it) ++count[*it];
    for (int s = 0; s < k; ++s) {
      long long limit = on_period[s] ? p - 1 : p;
      if (count[s] > limit) return false;
    }
    return true;
  };
  // proper prefix excludes the interior entry state; proper suffix the exit
  bool pre_ok = d.prefix.size() <= 1 || occurrences_ok(d.prefix.begin(), d.prefix.end() - 1);
  bool suf_ok = d.suffix.size() <= 1 || occurrences_ok(d.suffix.begin() + 1, d.suffix.end());
  rep.occurrence_ok = pre_ok && suf_ok;
  return rep;
}

struct Lemma1Report {
  struct Violation {
    int i = 0, j = 0;    // subword at state x
    int i2 = 0, j2 = 0;  // subword at state y
  };
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Two same-length subwords that begin and end at two different repeated
// states must use the same transition multiset in any optimal sequence;
// reports every violating pair.
inline Lemma1Report lemma1_check(const Sequence& seq) {
  Lemma1Report rep;
  const auto& s = seq.states;
  const int n = static_cast<int>(s.size());
  const int k = seq.k;
  auto counts_of = [&](int i, int j) {
    std::vector<long long> c(static_cast<size_t>(k) * k, 0);
    for (int t = i; t < j; ++t) ++c[static_cast<size_t>(s[t]) * k + s[t + 1]];
    return c;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (s[i] != s[j]) continue;
      for (int i2 = 0; i2 < n; ++i2) {
        int j2 = i2 + (j - i);
        if (j2 >= n) break;
        if (s[i2] != s[j2] || s[i2] == s[i]) continue;
        if (counts_of(i, j) != counts_of(i2, j2))
          rep.violations.push_back({i, j, i2, j2});
      }
    }
  return rep;
}

// Upper bound on the number of min-weight sequences of a fixed large length:
// sum over period lengths p of k^(kp+k-2p+1) * k!/((k-p)! p).
inline BigInt theoretical_bound(int k) {
  if (k < 1) throw std::invalid_argument("theoretical_bound: k must be >= 1");
  BigInt total = 0;
  for (int p = 1; p <= k; ++p) {
    BigInt term = 1;
    long long exp = static_cast<long long>(k) * p + k - 2 * p + 1;
    for (long long e = 0; e < exp; ++e) term *= k;
    BigInt arrangements = 1;  // k! / ((k-p)! p)
    for (int v = k; v > k - p; --v) arrangements *= v;
    arrangements /= p;
    total += term * arrangements;
  }
  return total;
}

}  // namespace vitpoly::structure
