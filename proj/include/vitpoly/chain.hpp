#pragma once

#include "vitpoly/rational.hpp"
#include "vitpoly/sequence.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace vitpoly {

// A k-state Markov chain with exact rational parameters: initial
// distribution pi and stochastic transition matrix p.
struct MarkovChain {
  int k = 0;
  RVec pi;
  RMat p;

  MarkovChain() = default;
  MarkovChain(int k_, RVec pi_, RMat p_) : k(k_), pi(std::move(pi_)), p(std::move(p_)) {}

  void validate() const {
    if (k < 1 || static_cast<int>(pi.size()) != k || static_cast<int>(p.size()) != k)
      throw std::invalid_argument("MarkovChain: bad shape");
    Rational s = 0;
    for (const auto& x : pi) {
      if (x < 0 || x > 1) throw std::invalid_argument("MarkovChain: pi entry outside [0,1]");
      s += x;
    }
    if (s != 1) throw std::invalid_argument("MarkovChain: pi does not sum to 1");
    for (int i = 0; i < k; ++i) {
      if (static_cast<int>(p[i].size()) != k) throw std::invalid_argument("MarkovChain: bad row");
      Rational row = 0;
      for (const auto& x : p[i]) {
        if (x < 0 || x > 1) throw std::invalid_argument("MarkovChain: entry outside [0,1]");
        row += x;
      }
      if (row != 1) throw std::invalid_argument("MarkovChain: row does not sum to 1");
    }
  }

  static MarkovChain uniform(int k) {
    return MarkovChain(k, RVec(k, Rational(1, k)), RMat(k, RVec(k, Rational(1, k))));
  }
};

// A point of the linear model space: transition weights w (and optionally
// initial-state weights omega). No stochasticity constraint applies; the
// entries are arbitrary rationals.
struct WeightScheme {
  int k = 0;
  RMat w;
  std::optional<RVec> omega;

  WeightScheme() = default;
  WeightScheme(int k_, RMat w_, std::optional<RVec> omega_ = std::nullopt)
      : k(k_), w(std::move(w_)), omega(std::move(omega_)) {}

  void validate() const {
    if (k < 1 || static_cast<int>(w.size()) != k)
      throw std::invalid_argument("WeightScheme: bad shape");
    for (const auto& row : w)
      if (static_cast<int>(row.size()) != k) throw std::invalid_argument("WeightScheme: bad row");
    if (omega && static_cast<int>(omega->size()) != k)
      throw std::invalid_argument("WeightScheme: bad omega size");
  }

  static WeightScheme constant(int k, const Rational& value) {
    return WeightScheme(k, RMat(k, RVec(k, value)), RVec(k, Rational(0)));
  }
};

// Exact probability of a sequence: initial probability of the first state
// times the transition probabilities.
inline Rational probability(const MarkovChain& chain, const Sequence& seq) {
  if (!seq.well_formed() || seq.k != chain.k)
    throw std::invalid_argument("probability: malformed input");
  Rational prod = chain.pi.at(seq.start());
  for (size_t t = 0; t + 1 < seq.states.size(); ++t)
    prod *= chain.p.at(seq.states[t]).at(seq.states[t + 1]);
  return prod;
}

// Probability of a whole equivalence class, read off the exponent vector.
inline Rational class_probability(const MarkovChain& chain, const ExponentVector& ev) {
  if (ev.k != chain.k) throw std::invalid_argument("class_probability: mismatched k");
  Rational prod = chain.pi.at(ev.start);
  for (int i = 0; i < ev.k; ++i)
    for (int j = 0; j < ev.k; ++j)
      for (long long c = 0; c < ev.at(i, j); ++c) prod *= chain.p[i][j];
  return prod;
}

// Sum of transition weights, plus omega at the start state when requested.
// Depends only on the exponent vector of the sequence.
inline Rational weight(const WeightScheme& ws, const Sequence& seq, bool include_initial = false) {
  if (!seq.well_formed() || seq.k != ws.k)
    throw std::invalid_argument("weight: malformed input");
  if (include_initial && !ws.omega)
    throw std::invalid_argument("weight: initial-state weights requested but absent");
  Rational sum = include_initial ? ws.omega->at(seq.start()) : Rational(0);
  for (size_t t = 0; t + 1 < seq.states.size(); ++t)
    sum += ws.w.at(seq.states[t]).at(seq.states[t + 1]);
  return sum;
}

inline Rational class_weight(const WeightScheme& ws, const ExponentVector& ev) {
  if (ev.k != ws.k) throw std::invalid_argument("class_weight: mismatched k");
  Rational sum = 0;
  for (int i = 0; i < ev.k; ++i)
    for (int j = 0; j < ev.k; ++j)
      if (ev.at(i, j) != 0) sum += ws.w[i][j] * ev.at(i, j);
  return sum;
}

}  // namespace vitpoly
