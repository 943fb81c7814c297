#pragma once

#include "vitpoly/catalog.hpp"
#include "vitpoly/classify.hpp"
#include "vitpoly/propagate.hpp"
#include "vitpoly/structure.hpp"

#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace vitpoly::census {

inline long long lcm_first(int k) {
  if (k < 1) throw std::invalid_argument("lcm_first: k must be >= 1");
  long long K = 1;
  for (int i = 2; i <= k; ++i) K = std::lcm(K, static_cast<long long>(i));
  return K;
}

struct CensusRow {
  int n = 0;
  long long vertex_count = 0;
  long long certified = 0;
  long long pseudo = 0;
  long long unresolved = 0;
};

struct CensusTable {
  int k = 0;
  long long K = 0;  // lcm of 1..k, the eventual period of n -> V_k(n)
  bool classified = false;
  bool all_starts = false;
  std::vector<CensusRow> rows;
  std::optional<int> periodic_from;
  std::optional<int> period;
  // n values where V(n+K) < V(n) held in the proven regime n > K + 2k^2
  std::vector<int> monotonicity_violations;
};

struct CensusOptions {
  bool classify_entries = true;
  bool all_starts = false;  // aggregate counts over every start via relabel
  classify::Options classify_opts;
};

// Fills one row per length from the enumeration, optionally classifying each
// catalog, then checks the growth law V(n+K) >= V(n) in its proven regime
// and scans for a stabilized window to report eventual periodicity.
inline CensusTable run_census(propagate::Enumerator& eng, int k, int n_min, int n_max,
                              const CensusOptions& opts = {}) {
  if (n_min < 1 || n_max < n_min) throw std::invalid_argument("run_census: bad range");
  CensusTable table;
  table.k = k;
  table.K = lcm_first(k);
  table.classified = opts.classify_entries;
  table.all_starts = opts.all_starts;

  for (int n = n_min; n <= n_max; ++n) {
    VertexCatalog cat = eng.get(k, n, 0);
    bool fresh = cat.entries.empty() ||
                 std::any_of(cat.entries.begin(), cat.entries.end(), [](const CatalogEntry& e) {
                   return !e.classification.has_value();
                 });
    if (opts.classify_entries && fresh) {
      classify::classify_catalog(cat, opts.classify_opts);
      eng.update(cat);
    }
    CensusRow row;
    row.n = n;
    long long starts = opts.all_starts ? k : 1;
    row.vertex_count = starts * static_cast<long long>(cat.entries.size());
    if (opts.classify_entries) {
      for (const auto& e : cat.entries) {
        switch (e.status) {
          case EntryStatus::viterbi: row.certified += starts; break;
          case EntryStatus::pseudo_viterbi: row.pseudo += starts; break;
          default: row.unresolved += starts; break;
        }
      }
    }
    table.rows.push_back(row);
  }

  const long long K = table.K;
  const long long regime = K + 2ll * k * k;
  auto row_at = [&](int n) -> const CensusRow* {
    int idx = n - n_min;
    if (idx < 0 || idx >= static_cast<int>(table.rows.size())) return nullptr;
    return &table.rows[idx];
  };
  for (const auto& row : table.rows) {
    if (row.n <= regime) continue;
    const CensusRow* later = row_at(row.n + static_cast<int>(K));
    if (later && later->vertex_count < row.vertex_count)
      table.monotonicity_violations.push_back(row.n);
  }

  // periodicity: two consecutive windows of length K with identical rows;
  // report the smallest divisor of K that already repeats across them
  auto rows_equal = [&](const CensusRow& a, const CensusRow& b) {
    return a.vertex_count == b.vertex_count && a.certified == b.certified &&
           a.pseudo == b.pseudo && a.unresolved == b.unresolved;
  };
  for (int n0 = n_min; n0 + 2 * K - 1 <= n_max; ++n0) {
    bool windows_match = true;
    for (int t = 0; t < K && windows_match; ++t)
      windows_match = rows_equal(*row_at(n0 + t), *row_at(n0 + t + static_cast<int>(K)));
    if (!windows_match) continue;
    table.periodic_from = n0;
    for (int d = 1; d <= K; ++d) {
      if (K % d != 0) continue;
      bool works = true;
      for (int t = 0; n0 + t + d <= n0 + 2 * K - 1 && works; ++t)
        works = rows_equal(*row_at(n0 + t), *row_at(n0 + t + d));
      if (works) {
        table.period = d;
        break;
      }
    }
    break;
  }
  return table;
}

inline std::string to_csv(const CensusTable& table) {
  std::ostringstream out;
  out << "n,vertex_count,certified,pseudo,unresolved\n";
  for (const auto& r : table.rows) {
    out << r.n << ',' << r.vertex_count << ',';
    if (table.classified)
      out << r.certified << ',' << r.pseudo << ',' << r.unresolved;
    else
      out << ",,";
    out << '\n';
  }
  return out.str();
}

inline std::string to_markdown(const CensusTable& table) {
  std::ostringstream out;
  out << "| n | vertices | certified | pseudo | unresolved |\n";
  out << "|---|----------|-----------|--------|------------|\n";
  for (const auto& r : table.rows) {
    out << "| " << r.n << " | " << r.vertex_count << " | ";
    if (table.classified)
      out << r.certified << " | " << r.pseudo << " | " << r.unresolved << " |\n";
    else
      out << "- | - | - |\n";
  }
  out << "\nK = " << table.K;
  if (table.periodic_from)
    out << ", periodic from n = " << *table.periodic_from << " with period " << *table.period;
  out << "\n";
  return out.str();
}

}  // namespace vitpoly::census
