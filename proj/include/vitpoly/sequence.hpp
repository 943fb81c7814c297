#pragma once

#include "vitpoly/rational.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vitpoly {

// A state sequence of a k-state chain. states[0] is the initial state; the
// length of a sequence is its number of transitions, one less than the
// number of written states.
struct Sequence {
  int k = 0;
  std::vector<int> states;

  Sequence() = default;
  Sequence(int k_, std::vector<int> states_) : k(k_), states(std::move(states_)) {}

  int start() const { return states.at(0); }
  int length() const { return static_cast<int>(states.size()) - 1; }

  bool well_formed() const {
    if (k < 1 || states.empty()) return false;
    return std::all_of(states.begin(), states.end(),
                       [&](int s) { return s >= 0 && s < k; });
  }

  std::string str() const {
    std::string out;
    for (size_t i = 0; i < states.size(); ++i) {
      if (i && k > 10) out += ' ';
      out += std::to_string(states[i]);
    }
    return out;
  }

  friend bool operator==(const Sequence& a, const Sequence& b) {
    return a.k == b.k && a.states == b.states;
  }
  friend bool operator<(const Sequence& a, const Sequence& b) {
    return a.states < b.states;
  }
};

// Transition-count embedding of a sequence: counts[i*k+j] is the number of
// i -> j transitions, row-major. Together with the start state this is the
// lattice point the polytopes are built from.
struct ExponentVector {
  int k = 0;
  int start = 0;
  std::vector<long long> counts;

  ExponentVector() = default;
  ExponentVector(int k_, int start_, std::vector<long long> counts_)
      : k(k_), start(start_), counts(std::move(counts_)) {}

  long long at(int i, int j) const { return counts.at(static_cast<size_t>(i) * k + j); }
  long long& at(int i, int j) { return counts.at(static_cast<size_t>(i) * k + j); }
  long long total() const { return std::accumulate(counts.begin(), counts.end(), 0ll); }

  friend bool operator==(const ExponentVector& a, const ExponentVector& b) {
    return a.k == b.k && a.start == b.start && a.counts == b.counts;
  }
  friend bool operator<(const ExponentVector& a, const ExponentVector& b) {
    if (a.counts != b.counts) return a.counts < b.counts;
    return a.start < b.start;
  }
};

inline ExponentVector exponent_of(const Sequence& seq) {
  if (!seq.well_formed()) throw std::invalid_argument("exponent_of: malformed sequence");
  ExponentVector ev(seq.k, seq.start(), std::vector<long long>(static_cast<size_t>(seq.k) * seq.k, 0));
  for (size_t t = 0; t + 1 < seq.states.size(); ++t)
    ++ev.at(seq.states[t], seq.states[t + 1]);
  return ev;
}

// Same start state and same transition multiset: equal probability under
// every chain, hence interchangeable as optimizers.
inline bool equivalent(const Sequence& a, const Sequence& b) {
  if (a.k != b.k) throw std::invalid_argument("equivalent: mismatched state counts");
  return exponent_of(a) == exponent_of(b);
}

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

// Does a walk exist that starts at `from`, ends at `to`, and uses exactly the
// given transition multiset? Standard Eulerian-path conditions: endpoint
// imbalances plus weak connectivity of the used states (with the virtual
// edge to->from closing the circuit).
inline bool realizable_walk(const std::vector<long long>& counts, int k, int from, int to) {
  if (static_cast<int>(counts.size()) != k * k) throw std::invalid_argument("realizable_walk: bad counts size");
  if (from < 0 || from >= k || to < 0 || to >= k) return false;
  bool empty = std::all_of(counts.begin(), counts.end(), [](long long c) { return c == 0; });
  if (empty) return from == to;

  std::vector<long long> out(k, 0), in(k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      long long c = counts[static_cast<size_t>(i) * k + j];
      if (c < 0) return false;
      out[i] += c;
      in[j] += c;
    }
  for (int s = 0; s < k; ++s) {
    long long want = 0;
    if (from != to) want = (s == from) ? 1 : (s == to ? -1 : 0);
    if (out[s] - in[s] != want) return false;
  }

  detail::UnionFind uf(k);
  uf.unite(from, to);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (counts[static_cast<size_t>(i) * k + j] > 0) uf.unite(i, j);
  for (int s = 0; s < k; ++s)
    if ((out[s] + in[s]) > 0 && uf.find(s) != uf.find(from)) return false;
  return true;
}

// End state forced by the imbalances, when the multiset is realizable as a
// walk from `start`; nullopt otherwise.
inline std::optional<int> walk_end_state(const std::vector<long long>& counts, int k, int start) {
  if (start < 0 || start >= k) return std::nullopt;
  bool empty = std::all_of(counts.begin(), counts.end(), [](long long c) { return c == 0; });
  if (empty) return start;
  std::vector<long long> out(k, 0), in(k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      long long c = counts[static_cast<size_t>(i) * k + j];
      if (c < 0) return std::nullopt;
      out[i] += c;
      in[j] += c;
    }
  int plus = -1, minus = -1;
  for (int s = 0; s < k; ++s) {
    long long d = out[s] - in[s];
    if (d == 0) continue;
    if (d == 1 && plus < 0) plus = s;
    else if (d == -1 && minus < 0) minus = s;
    else return std::nullopt;
  }
  int end;
  if (plus < 0 && minus < 0) end = start;           // closed walk
  else if (plus == start && minus >= 0) end = minus;
  else return std::nullopt;
  if (!realizable_walk(counts, k, start, end)) return std::nullopt;
  return end;
}

inline bool realizable(const ExponentVector& ev) {
  return walk_end_state(ev.counts, ev.k, ev.start).has_value();
}

// Lexicographically smallest sequence with the given exponent vector:
// greedy Eulerian extension, committing to the smallest next state that
// leaves the remainder realizable.
inline Sequence realize(const ExponentVector& ev) {
  auto end = walk_end_state(ev.counts, ev.k, ev.start);
  if (!end) throw std::invalid_argument("realize: exponent vector is not realizable");
  std::vector<long long> rem = ev.counts;
  Sequence seq(ev.k, {ev.start});
  long long n = ev.total();
  int cur = ev.start;
  for (long long t = 0; t < n; ++t) {
    bool advanced = false;
    for (int j = 0; j < ev.k && !advanced; ++j) {
      long long& c = rem[static_cast<size_t>(cur) * ev.k + j];
      if (c == 0) continue;
      --c;
      if (realizable_walk(rem, ev.k, j, *end)) {
        seq.states.push_back(j);
        cur = j;
        advanced = true;
      } else {
        ++c;
      }
    }
    if (!advanced) throw std::logic_error("realize: greedy extension failed");
  }
  return seq;
}

}  // namespace vitpoly
