#include "doctest.h"

#include <cmath>

#include "ssmc/oracle.hpp"
#include "ssmc/solver.hpp"
#include "test_util.hpp"

using namespace ssmc;

namespace {

SkewGraph two_cycle_graph() {
  // Pair A: two parallel (1,-1) arcs; pair B: two parallel (-1,1) arcs.
  return SkewGraph::build(1, {{1, -1}, {-1, 1}});
}

// Feasibility of the L-carrying formulation: some self-conjugate set of at
// most k arc pairs that satisfies the family and separates L from L'.
bool bf_feasible_with_terminals(const SkewGraph& g,
                                const std::vector<VertexSet>& family,
                                const VertexSet& L, int k) {
  int pairs = g.arc_pair_count();
  std::vector<int> live;
  for (int p = 0; p < pairs; ++p)
    if (!g.is_deleted(2 * p)) live.push_back(p);
  int n = static_cast<int>(live.size());
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    if (__builtin_popcountll(mask) > k) continue;
    ArcSet cut;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) {
        cut.push_back(2 * live[i]);
        cut.push_back(2 * live[i] + 1);
      }
    SkewGraph h = g;
    for (ArcId a : cut) h.delete_pair(a);
    if (!test::bf_separates(g, L, cut)) continue;
    bool all_split = true;
    auto labels = scc_labels(h);
    for (const VertexSet& j : family) {
      bool split = false;
      for (Vertex v : j)
        if (labels[dense_index(v)] != labels[dense_index(-v)]) split = true;
      if (!split) {
        all_split = false;
        break;
      }
    }
    if (all_split) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("explicit oracle scans the family in order") {
  SkewGraph g = two_cycle_graph();

  ExplicitOracle empty_family({});
  CHECK(!empty_family.find_violated(g).has_value());

  ExplicitOracle one(std::vector<VertexSet>{{1}});
  auto j = one.find_violated(g);
  REQUIRE(j.has_value());
  CHECK(*j == VertexSet{1});

  // Only pair 2 is co-strongly-connected with its conjugate here.
  SkewGraph h = SkewGraph::build(2, {{2, -2}, {-2, 2}});
  ExplicitOracle two(std::vector<VertexSet>{{1}, {2}});
  auto j2 = two.find_violated(h);
  REQUIRE(j2.has_value());
  CHECK(*j2 == VertexSet{2});

  CHECK_THROWS_AS(ExplicitOracle(std::vector<VertexSet>{{1}, {}}), MalformedInputError);
}

TEST_CASE("reduction rule picks a conjugate boundary pair") {
  SkewGraph g = two_cycle_graph();
  VertexSet L{1};
  // Both (1,-1) copies form an irregular minimum separator.
  ArcSet sep{0, 1};
  auto [y, yc] = apply_reduction_rule(g, L, sep);
  CHECK(y == 0);
  CHECK(yc == 1);

  ArcSet regular_set{0};
  CHECK_THROWS_AS(apply_reduction_rule(g, L, regular_set), ContractError);
}

TEST_CASE("reduction rule preserves feasibility on random irregular hits") {
  SplitMix64 rng(2024);
  int exercised = 0;
  for (int iter = 0; iter < 400 && exercised < 40; ++iter) {
    int pairs = 2 + static_cast<int>(rng.below(5));
    SkewGraph g = test::random_graph(rng, pairs, 2 + static_cast<int>(rng.below(9)));
    VertexSet L = test::random_regular_set(rng, pairs, 2);
    if (L.empty()) continue;
    int lam = test::bf_lambda(g, L);
    if (lam < 2 || lam > 4) continue;
    int k = 2;
    if (lam > 2 * k) continue;
    ComponentOutcome out = find_lk_component(g, L, k);
    if (out.kind != ComponentOutcome::Kind::IrregularSeparator) continue;
    ++exercised;

    auto [y, yc] = apply_reduction_rule(g, L, out.separator);
    std::vector<VertexSet> family{{L.front()}};
    bool before = bf_feasible_with_terminals(g, family, L, k);
    SkewGraph h = g;
    h.delete_pair(y);
    bool after = bf_feasible_with_terminals(h, family, L, k - 1);
    CHECK(before == after);
    (void)yc;
  }
  CHECK(exercised > 0);
}

TEST_CASE("solve on the two-cycle pair graph") {
  SkewGraph g = two_cycle_graph();
  std::vector<VertexSet> family{{1}};

  SUBCASE("empty family is always yes") {
    ExplicitOracle oracle(std::vector<VertexSet>{});
    auto sol = solve(g, oracle, 0);
    REQUIRE(sol.has_value());
    CHECK(sol->empty());
  }

  SUBCASE("k=1 deletes one conjugate pair") {
    ExplicitOracle oracle(family);
    SolveStats st;
    auto sol = solve(g, oracle, 1, &st);
    REQUIRE(sol.has_value());
    CHECK(sol->size() == 2);
    CHECK(*sol == ArcSet{0, 1});  // first pair, deterministically
    CHECK(validate_multicut(g, family, *sol));
    CHECK(st.rule_applications == 1);
  }

  SUBCASE("k=0 is infeasible") {
    ExplicitOracle oracle(family);
    CHECK(!solve(g, oracle, 0).has_value());
  }
}

TEST_CASE("validate_multicut") {
  SkewGraph g = two_cycle_graph();
  std::vector<VertexSet> family{{1}};
  CHECK(!validate_multicut(g, family, {}));        // family still violated
  CHECK(validate_multicut(g, family, {0, 1}));     // solver's own answer
  CHECK(!validate_multicut(g, family, {0}));       // not self-conjugate
}

TEST_CASE("solver agrees with brute force on random instances") {
  SplitMix64 rng(77);
  int yes = 0, no = 0;
  for (int iter = 0; iter < 250; ++iter) {
    int pairs = 2 + static_cast<int>(rng.below(7));
    int arcs = 2 + static_cast<int>(rng.below(15));
    SkewGraph g = test::random_graph(rng, pairs, arcs);
    int d = 1 + static_cast<int>(rng.below(2));
    int sets = static_cast<int>(rng.below(5));
    std::vector<VertexSet> family;
    for (int i = 0; i < sets; ++i) {
      VertexSet member;
      int size = 1 + static_cast<int>(rng.below(d));
      while (static_cast<int>(member.size()) < size) {
        member.push_back(vertex_of_dense(static_cast<int>(rng.below(2 * pairs))));
        normalize(member);
      }
      family.push_back(member);
    }
    int k = static_cast<int>(rng.below(3));

    auto expected = bf_multicut(g, family, k);
    ExplicitOracle oracle(family);
    SolveStats st;
    auto got = solve(g, oracle, k, &st);

    REQUIRE(got.has_value() == expected.has_value());
    if (got) {
      ++yes;
      CHECK(static_cast<int>(got->size()) <= 2 * k);
      CHECK(validate_multicut(g, family, *got));
    } else {
      ++no;
    }
    int dd = std::max(1, oracle.d());
    CHECK(static_cast<double>(st.leaves) <= std::pow(2.0 * dd, 2.0 * k) + 0.5);
  }
  // Make sure the corpus exercises both answers.
  CHECK(yes > 20);
  CHECK(no > 20);
}
