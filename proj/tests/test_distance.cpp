#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "dfamin/dfa.hpp"
#include "dfamin/distance.hpp"
#include "dfamin/hardness.hpp"
#include "dfamin/oracle.hpp"
#include "random_dfa.hpp"

using namespace dfamin;

TEST_CASE("distance_table: hand-built values") {
  Dfa d = parse_dfa(
      "alphabet: a\nstates: q0 q1\nstart: q0\naccept: q0 q1\ntrans: q0 a q1\n");
  DistanceTable t = distance_table(d);
  CHECK(t.at(0, 0) == 0);
  CHECK(t.at(0, 1) == 2);
  CHECK(t.at(1, 0) == 2);

  Dfa p = parse_dfa(
      "alphabet: a\nstates: q0 q1\nstart: q0\naccept: q0\n"
      "trans: q0 a q1\ntrans: q1 a q0\n");
  CHECK(distance_table(p).at(0, 1) == kInf);
}

TEST_CASE("distance_table matches the brute-force oracle") {
  std::mt19937 rng(31);
  for (int it = 0; it < 60; ++it) {
    Mode mode = it % 2 ? Mode::kTotal : Mode::kPartial;
    Dfa d = testgen::random_minimal(rng, 8, 1 + it % 3, mode);
    DistanceTable t = distance_table(d);
    for (StateId q = 0; q < d.num_states(); ++q)
      for (StateId p = q; p < d.num_states(); ++p)
        CHECK(t.at(q, p) == bf_distance(d, q, p));
  }
}

TEST_CASE("distance_table is an ultrametric with the zero-distance law") {
  std::mt19937 rng(32);
  for (int it = 0; it < 30; ++it) {
    Dfa d = testgen::random_minimal(rng, 8, 2);
    DistanceTable t = distance_table(d);
    int n = d.num_states();
    for (StateId q = 0; q < n; ++q)
      for (StateId p = 0; p < n; ++p) {
        CHECK(t.at(q, p) == t.at(p, q));
        CHECK((t.at(q, p) == 0) == (q == p));  // minimal: no equal pair
        for (StateId r = 0; r < n; ++r)
          CHECK(t.at(q, r) <= std::max(t.at(q, p), t.at(p, r)));
      }
  }
}

TEST_CASE("forest reproduces the table and passes its own checks") {
  std::mt19937 rng(33);
  for (int it = 0; it < 120; ++it) {
    Mode mode = it % 2 ? Mode::kTotal : Mode::kPartial;
    Dfa d = testgen::random_minimal(rng, 9, 1 + it % 3, mode);
    DistanceForest f = build_distance_forest(d);
    f.check(d);
    DistanceTable t = distance_table(d);
    for (StateId q = 0; q < d.num_states(); ++q)
      for (StateId p = 0; p < d.num_states(); ++p)
        CHECK(forest_lca_level(f, q, p) == t.at(q, p));
  }
}

TEST_CASE("forest splits infinitely distant states into separate trees") {
  // Parity language: the two states disagree at every length.
  Dfa p = parse_dfa(
      "alphabet: a\nstates: q0 q1\nstart: q0\naccept: q0\n"
      "trans: q0 a q1\ntrans: q1 a q0\n");
  DistanceForest f = build_distance_forest(p);
  CHECK(f.lca(f.leaf_of[0], f.leaf_of[1]) == -1);
  CHECK(forest_lca_level(f, 0, 1) == kInf);
}

TEST_CASE("forest rejects non-minimal input") {
  Dfa d = parse_dfa(
      "alphabet: a\nstates: q0 q1 q2\nstart: q0\naccept: q1 q2\n"
      "trans: q0 a q1\ntrans: q1 a q2\ntrans: q2 a q1\n");
  // q1 and q2 accept a* and are equivalent.
  CHECK_THROWS_AS(build_distance_forest(d), PreconditionError);
}

TEST_CASE("acyclic tree: matches the table and the ancestor-level law") {
  std::mt19937 rng(34);
  int done = 0;
  while (done < 80) {
    Dfa raw = testgen::random_acyclic(rng, 3 + static_cast<int>(rng() % 9), 2);
    Dfa d = minimise(raw, Mode::kPartial);
    if (d.num_states() < 2) continue;
    ++done;
    DistanceForest f = acyclic_distance_tree(d);
    f.check(d);
    DistanceTable t = distance_table(d);
    StateMeta meta = state_meta(d);
    for (StateId q = 0; q < d.num_states(); ++q)
      for (StateId p = 0; p < d.num_states(); ++p) {
        CHECK(forest_lca_level(f, q, p) == t.at(q, p));
        // Distinct longest-word lengths pin the meeting level exactly.
        if (q != p && meta.m[q] != meta.m[p])
          CHECK(forest_lca_level(f, q, p) == std::max(meta.m[q], meta.m[p]) + 1);
      }
  }
}

TEST_CASE("acyclic tree: synthetic empty-language leaf") {
  // Single accepting state, no transitions: no state has an empty language,
  // so the bottom leaf is synthetic and sits at distance m(q)+1 = 1.
  Dfa d = parse_dfa("alphabet: a\nstates: q0\nstart: q0\naccept: q0\n");
  DistanceForest f = acyclic_distance_tree(d);
  f.check(d);
  CHECK(f.bot_leaf != -1);
  CHECK(f.lca_level(f.leaf_of[0], f.bot_leaf) == 1);
}

TEST_CASE("acyclic tree: precondition failures") {
  Dfa cyc;
  cyc.add_symbol("a");
  cyc.add_state("q0");
  cyc.add_state("q1");
  cyc.set_start(0);
  cyc.set_accepting(0, true);  // a* from q0: infinite right-language
  cyc.set_accepting(1, true);
  cyc.set_next(0, 0, 0);
  CHECK_THROWS_AS(acyclic_distance_tree(cyc), PreconditionError);

  Dfa dup = parse_dfa(
      "alphabet: a b\nstates: q0 q1 q2\nstart: q0\naccept: q1 q2\n"
      "trans: q0 a q1\ntrans: q0 b q2\n");
  CHECK_THROWS_AS(acyclic_distance_tree(dup), PreconditionError);
}

TEST_CASE("forest rewrite count stays logarithmic") {
  std::mt19937 rng(35);
  for (int it = 0; it < 12; ++it) {
    int n = 16 << (it % 3);  // 16, 32, 64
    Dfa d = minimise(testgen::random_total(rng, n, 2), Mode::kTotal);
    if (d.num_states() < 2) continue;
    BuildStats stats;
    DistanceForest f = build_distance_forest(d, &stats);
    f.check(d);
    int64_t bound = static_cast<int64_t>(
        std::ceil(std::log2(static_cast<double>(d.num_states()))));
    CHECK(stats.max_entry_rewrites <= bound);
  }
}

TEST_CASE("distances inside the lower-bound instance") {
  // In the k-minimisation instance with s = 4, the accepting tails put the
  // first smiley state and the frown state at distance s + 1.
  Graph g = parse_graph("1 2\n2 3\n1 3\n");
  HardnessInstance inst = build_kmin_instance(g, 4, 17);
  const Dfa& d = inst.dfa;
  StateId sm = d.state_id("smiley_0");
  StateId fr = d.state_id("frown");
  REQUIRE(sm != kNoState);
  REQUIRE(fr != kNoState);
  CHECK(distance_table(d).at(sm, fr) == 5);
}
