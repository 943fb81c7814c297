#pragma once

#include "vitpoly/chain.hpp"
#include "vitpoly/rational.hpp"
#include "vitpoly/sequence.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vitpoly {

enum class EntryStatus { min_weight, viterbi, pseudo_viterbi, unresolved };

inline std::string to_string(EntryStatus s) {
  switch (s) {
    case EntryStatus::min_weight: return "minweight";
    case EntryStatus::viterbi: return "viterbi";
    case EntryStatus::pseudo_viterbi: return "pseudo_viterbi";
    case EntryStatus::unresolved: return "unresolved";
  }
  return "unresolved";
}

inline EntryStatus entry_status_from_string(const std::string& s) {
  if (s == "minweight") return EntryStatus::min_weight;
  if (s == "viterbi") return EntryStatus::viterbi;
  if (s == "pseudo_viterbi") return EntryStatus::pseudo_viterbi;
  if (s == "unresolved") return EntryStatus::unresolved;
  throw std::invalid_argument("unknown entry status: " + s);
}

struct SearchBudgetUsed {
  long long seeds_tried = 0;
  long long cone_lps = 0;
  long long restarts = 0;
  long long steps = 0;
  long long verifications = 0;
};

// Outcome of the stochastic-witness search for one catalog entry. A
// certified entry carries an exact stochastic chain under which its class
// strictly dominates every non-equivalent class of the same length.
struct Classification {
  EntryStatus status = EntryStatus::unresolved;
  std::optional<MarkovChain> witness;
  std::optional<Rational> margin_ratio;   // entry prob / best competitor prob, when finite
  bool competitors_impossible = false;    // every competitor has probability zero
  std::optional<std::string> impossibility_tag;
  SearchBudgetUsed budget;
};

struct CatalogEntry {
  ExponentVector exponents;
  Sequence representative;
  RMat witness;  // k x k weight matrix separating this vertex in the linear model
  EntryStatus status = EntryStatus::min_weight;
  std::optional<Classification> classification;
};

// All min-weight vertices for fixed (k, n, start): exponent vectors,
// readable representatives, separating witnesses, and classification state.
// Entries are sorted lexicographically by counts.
struct VertexCatalog {
  int k = 0;
  int n = 0;
  int start = 0;
  std::vector<CatalogEntry> entries;

  const CatalogEntry* find(const ExponentVector& ev) const {
    for (const auto& e : entries)
      if (e.exponents == ev) return &e;
    return nullptr;
  }
};

}  // namespace vitpoly
