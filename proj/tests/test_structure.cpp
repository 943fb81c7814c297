#include "vitpoly/structure.hpp"

#include "vitpoly/propagate.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

using namespace vitpoly;

namespace {

std::multiset<std::pair<int, int>> transition_multiset(const std::vector<int>& states) {
  std::multiset<std::pair<int, int>> out;
  for (size_t i = 0; i + 1 < states.size(); ++i) out.insert({states[i], states[i + 1]});
  return out;
}

// true if `states` contains p consecutive transitions matching a rotation of
// the periodic cycle
bool contains_full_period(const std::vector<int>& states, const std::vector<int>& period) {
  const int p = static_cast<int>(period.size()) - 1;
  if (p <= 0) return false;
  for (size_t i = 0; i + p < states.size(); ++i) {
    // window states[i..i+p] must walk the cycle
    int offset = -1;
    for (int r = 0; r < p; ++r)
      if (period[r] == states[i]) offset = r;
    if (offset < 0) continue;
    bool match = true;
    for (int t = 1; t <= p && match; ++t) match = states[i + t] == period[(offset + t) % p];
    if (match) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("decompose finds the maximal periodic interior") {
  SECTION("pure run of a single state") {
    auto d = structure::decompose(Sequence(2, std::vector<int>(9, 0)));  // 0^8
    REQUIRE(d.period == std::vector<int>{0, 0});
    REQUIRE(d.repetitions == 8);
    REQUIRE(d.prefix_transitions() == 0);
    REQUIRE(d.suffix_transitions() == 0);
  }
  SECTION("three-state prefix plus cycle") {
    Sequence s(3, {2, 1, 0, 0, 2, 1, 0, 2, 1, 0, 2, 1, 0});
    auto d = structure::decompose(s);
    REQUIRE(d.period == std::vector<int>{0, 2, 1, 0});
    REQUIRE(d.repetitions == 3);
    REQUIRE(d.prefix == std::vector<int>{2, 1, 0, 0});
    REQUIRE(d.suffix_transitions() == 0);
    REQUIRE(equivalent(structure::reassemble(d), s));
  }
  SECTION("remainder split around the interior") {
    Sequence s(3, {0, 2, 1, 0, 2, 1, 0, 2, 1, 0, 1, 0});
    auto d = structure::decompose(s);
    REQUIRE(d.period == std::vector<int>{0, 2, 1, 0});
    REQUIRE(d.repetitions == 3);
    REQUIRE(equivalent(structure::reassemble(d), s));
    // remainder transitions are exactly one 0->1 and one 1->0
    auto rest = transition_multiset(d.prefix);
    for (auto t : transition_multiset(d.suffix)) rest.insert(t);
    REQUIRE(rest == std::multiset<std::pair<int, int>>{{0, 1}, {1, 0}});
  }
  SECTION("no cycle fits: everything is prefix") {
    auto d = structure::decompose(Sequence(2, {0, 1}));
    REQUIRE(d.repetitions == 0);
    REQUIRE(d.prefix == std::vector<int>{0, 1});
    REQUIRE(structure::reassemble(d).states == std::vector<int>{0, 1});
  }
  SECTION("reassembly preserves the class, prefix and suffix avoid full periods") {
    propagate::Enumerator eng;
    for (int k : {2, 3}) {
      for (int n : {6, 9}) {
        auto cat = eng.get(k, n, 0);
        for (const auto& e : cat.entries) {
          auto d = structure::decompose(e.representative);
          REQUIRE(equivalent(structure::reassemble(d), e.representative));
          if (d.repetitions > 0) {
            REQUIRE_FALSE(contains_full_period(d.prefix, d.period));
            REQUIRE_FALSE(contains_full_period(d.suffix, d.period));
          }
        }
      }
    }
  }
}

TEST_CASE("candidate periods for three states are the eight published cycles") {
  auto cycles = structure::detail::candidate_cycles(3, 3);
  std::set<std::vector<int>> got(cycles.begin(), cycles.end());
  std::set<std::vector<int>> expect = {{0, 0},    {1, 1},    {2, 2},       {0, 1, 0},
                                       {0, 2, 0}, {1, 2, 1}, {0, 1, 2, 0}, {0, 2, 1, 0}};
  REQUIRE(got == expect);
}

TEST_CASE("bound checks implement the published formulas") {
  SECTION("combined bound arithmetic") {
    structure::Decomposition d;
    d.k = 3;
    d.prefix = {0, 1, 2};       // 2 transitions
    d.suffix = {2, 0, 1, 0};    // 3 transitions
    d.period = {2, 0, 2};       // p = 2 — entry/exit state 2
    d.repetitions = 4;
    auto rep = structure::check_bounds(d, 3);
    REQUIRE(rep.period == 2);
    // prefix 2 <= kp = 6, suffix 3 <= 6, combined 5 <= kp + k - 2p = 5
    REQUIRE(rep.prefix_ok);
    REQUIRE(rep.suffix_ok);
    REQUIRE(rep.combined_ok);

    d.suffix = {2, 0, 1, 0, 1, 0};  // 5 transitions: combined 7 > 5
    REQUIRE_FALSE(structure::check_bounds(d, 3).combined_ok);
  }
  SECTION("two-state combined bound is two") {
    structure::Decomposition d;
    d.k = 2;
    d.prefix = {1, 0};  // 1 transition
    d.suffix = {0, 1};  // 1 transition
    d.period = {0, 0};  // p = 1
    d.repetitions = 5;
    auto rep = structure::check_bounds(d, 2);
    REQUIRE(rep.combined_ok);  // 2 <= 2*1 + 2 - 2 = 2
    d.suffix = {0, 1, 1};
    REQUIRE_FALSE(structure::check_bounds(d, 2).combined_ok);
  }
  SECTION("occurrence limits distinguish period states") {
    structure::Decomposition d;
    d.k = 3;
    d.period = {0, 1, 0};  // p = 2; states 0 and 1 on the period
    d.repetitions = 3;
    d.prefix = {2, 2, 0};  // state 2 twice: allowed (p = 2)
    d.suffix = {0};
    REQUIRE(structure::check_bounds(d, 3).occurrence_ok);
    d.prefix = {2, 2, 2, 0};  // three times: too many
    REQUIRE_FALSE(structure::check_bounds(d, 3).occurrence_ok);
    d.prefix = {1, 2, 0};  // period state once in the proper prefix: p - 1 = 1 allowed
    REQUIRE(structure::check_bounds(d, 3).occurrence_ok);
    d.prefix = {1, 1, 2, 0};
    REQUIRE_FALSE(structure::check_bounds(d, 3).occurrence_ok);
  }
  SECTION("trivial decomposition skips the checks") {
    auto d = structure::decompose(Sequence(2, {0, 1}));
    REQUIRE(structure::check_bounds(d, 2).skipped);
    auto full = structure::decompose(Sequence(2, std::vector<int>(9, 0)));
    auto rep = structure::check_bounds(full, 2);
    REQUIRE_FALSE(rep.skipped);
    REQUIRE(rep.all_ok());
  }
}

TEST_CASE("same-length returns at two states must share transitions") {
  SECTION("loops at two different states violate the lemma") {
    auto rep = structure::lemma1_check(Sequence(3, {0, 0, 1, 1, 2}));
    REQUIRE_FALSE(rep.ok());
  }
  SECTION("short alternation has no comparable pair") {
    REQUIRE(structure::lemma1_check(Sequence(2, {0, 1, 0})).ok());
  }
  SECTION("catalog entries pass") {
    propagate::Enumerator eng;
    for (int n : {5, 8}) {
      auto cat = eng.get(2, n, 0);
      for (const auto& e : cat.entries) {
        // pseudo-Viterbi entries may violate the lemma; Viterbi ones may not.
        // At this stage statuses are unknown, so just exercise the scan on
        // the two known-safe families.
        if (e.exponents.counts[1] == 0 || e.exponents.counts[0] == 0) {
          auto r = structure::lemma1_check(e.representative);
          REQUIRE(r.ok());
        }
      }
    }
  }
}

TEST_CASE("theoretical bound evaluates the closed-form sum") {
  REQUIRE(structure::theoretical_bound(1) == 1);
  REQUIRE(structure::theoretical_bound(2) == 24);   // 16 + 8
  REQUIRE(structure::theoretical_bound(3) == 7290); // 729 + 2187 + 4374
}
