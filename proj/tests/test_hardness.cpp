#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dfamin/dfa.hpp"
#include "dfamin/hardness.hpp"
#include "dfamin/kmin.hpp"
#include "dfamin/oracle.hpp"
#include "random_dfa.hpp"

using namespace dfamin;

namespace {

const char* kTriangle = "1 2\n2 3\n1 3\n";
const char* kTriangleColoring = "1 1\n2 2\n3 3\n";

}  // namespace

TEST_CASE("parse_graph: canonical order and round-trip") {
  Graph g = parse_graph("b c\na b\n# comment\nc a\n");
  REQUIRE(g.vertices == std::vector<std::string>{"a", "b", "c"});
  CHECK(g.edges.size() == 3);
  for (const auto& [lo, hi] : g.edges) CHECK(lo < hi);
  Graph back = parse_graph(serialize_graph(g));
  CHECK(back.vertices == g.vertices);
  CHECK(back.edges == g.edges);
}

TEST_CASE("parse_graph: malformed input") {
  CHECK_THROWS_AS(parse_graph("a\n"), ParseError);          // one token
  CHECK_THROWS_AS(parse_graph("a b c\n"), ParseError);      // three tokens
  CHECK_THROWS_AS(parse_graph("a a\n"), ParseError);        // self-loop
  CHECK_THROWS_AS(parse_graph("a b\nb a\n"), ParseError);   // duplicate
}

TEST_CASE("parse_coloring: validation") {
  Graph g = parse_graph(kTriangle);
  Coloring c = parse_coloring(g, kTriangleColoring);
  CHECK(c.of == std::vector<int32_t>{1, 2, 3});
  CHECK(monochromatic_edge(g, c) == -1);

  CHECK_THROWS_AS(parse_coloring(g, "1 1\n2 2\n"), ParseError);          // missing
  CHECK_THROWS_AS(parse_coloring(g, "1 1\n2 2\n3 4\n"), ParseError);     // bad colour
  CHECK_THROWS_AS(parse_coloring(g, "1 1\n2 2\n3 3\n9 1\n"), ParseError);
  CHECK_THROWS_AS(parse_coloring(g, "1 1\n1 2\n2 2\n3 3\n"), ParseError);

  Coloring mono = parse_coloring(g, "1 1\n2 1\n3 2\n");
  CHECK(monochromatic_edge(g, mono) != -1);
}

TEST_CASE("hyper instance: triangle") {
  Graph g = parse_graph(kTriangle);
  HardnessInstance inst = build_hyper_instance(g);
  CHECK(inst.family == "hyper");
  CHECK(inst.dfa.num_states() == 17);  // 14 + |V|
  CHECK(inst.dfa.total());
  CHECK(minimise(inst.dfa, Mode::kTotal).num_states() == 17);
  CHECK(inst.errors_low == 3);  // |E| * (|V| - 2)
  CHECK(inst.errors_high == 3);

  Dfa colored = build_hyper_colored(g, parse_coloring(g, kTriangleColoring));
  CHECK(colored.num_states() == 14);
  HardnessReport rep = verify_hardness(inst, colored);
  CHECK(rep.pass);
  CHECK(rep.errors == 3);
  CHECK(rep.max_error_len >= 0);
}

TEST_CASE("hyper instance: five-cycle") {
  Graph g = parse_graph("1 2\n2 3\n3 4\n4 5\n1 5\n");
  HardnessInstance inst = build_hyper_instance(g);
  CHECK(inst.dfa.num_states() == 19);
  CHECK(inst.errors_low == 15);  // 5 * 3
  Dfa colored = build_hyper_colored(g, parse_coloring(g, "1 1\n2 2\n3 1\n4 2\n5 3\n"));
  HardnessReport rep = verify_hardness(inst, colored);
  CHECK(rep.pass);
  CHECK(rep.errors == 15);
}

TEST_CASE("hyper collapse rejects improper colourings") {
  Graph g = parse_graph(kTriangle);
  CHECK_THROWS_AS(build_hyper_colored(g, parse_coloring(g, "1 1\n2 1\n3 2\n")),
                  ColoringError);
}

TEST_CASE("kmin instance: parameter constraints") {
  Graph g = parse_graph(kTriangle);
  CHECK_THROWS_AS(build_kmin_instance(g, 3, 17), ArgumentError);  // s too small
  CHECK_THROWS_AS(build_kmin_instance(g, 4, 16), ArgumentError);  // k <= 4s
  CHECK_NOTHROW(build_kmin_instance(g, 4, 17));
}

TEST_CASE("kmin instance: triangle, s=4, k=17") {
  Graph g = parse_graph(kTriangle);
  HardnessInstance inst = build_kmin_instance(g, 4, 17);
  CHECK(inst.family == "kmin");
  CHECK(inst.l == 9);
  CHECK(inst.dfa.num_states() == 80);
  // Main error term 2^{2s-1} |E| (|V|-2) plus the junction term
  // 3 * 2^{s-1} |E|; slack of 2^{s+1} |V| for the short branch words.
  CHECK(inst.errors_low == 384 + 72);
  CHECK(inst.errors_high == 456 + 96);

  Coloring c = parse_coloring(g, kTriangleColoring);
  Dfa colored = build_kmin_colored(g, c, 4, 17);
  CHECK(colored.num_states() == 75);

  HardnessReport rep = verify_hardness(inst, colored);
  CHECK(rep.pass);
  CHECK(rep.errors == 504);
  CHECK(rep.max_error_len < 17);
  CHECK(similarity_bound(inst.dfa, colored) <= 17);
}

TEST_CASE("kmin instance: gadgets pin the intended in-levels") {
  Graph g = parse_graph(kTriangle);
  HardnessInstance inst = build_kmin_instance(g, 4, 17);
  const Dfa& d = inst.dfa;
  StateMeta meta = state_meta(d);
  auto lvl = [&](const std::string& name) {
    StateId q = d.state_id(name);
    REQUIRE(q != kNoState);
    return meta.in_level[q];
  };
  CHECK(lvl("1_0") == 11);  // 3s - 1
  CHECK(lvl("2_0") == 11);
  CHECK(lvl("3_0") == 11);
  CHECK(lvl("smiley_0") == 18);  // k + 1
  CHECK(lvl("frown") == 18);
  CHECK(lvl("1_1") == 18);
  CHECK(lvl("2_1") == 18);
}

TEST_CASE("gadget_congruence: hand example and contract") {
  // Total two-letter machine, partition = its Myhill-Nerode classes.
  std::mt19937 rng(51);
  for (int it = 0; it < 12; ++it) {
    Dfa d = trim(testgen::random_total(rng, 4 + it % 3, 2), false);
    std::vector<int32_t> cls = equivalence_classes(d);
    int nc = 0;
    for (int32_t c : cls) nc = std::max(nc, c + 1);
    std::vector<std::vector<StateId>> part(nc);
    for (StateId q = 0; q < d.num_states(); ++q) part[cls[q]].push_back(q);
    Dfa n = gadget_congruence(d, part);
    CHECK(n.num_states() == d.num_states() + nc);
    CHECK(n.num_symbols() == d.num_symbols() + 2);

    // Old right-languages survive: over the old alphabet nothing changed,
    // and same-class states still take t to a common target.
    for (StateId q = 0; q < d.num_states(); ++q)
      for (SymbolId a = 0; a < d.num_symbols(); ++a)
        CHECK(n.next(q, a) == d.next(q, a));

    // Different classes become separated at every horizon.
    for (StateId q = 0; q < d.num_states(); ++q)
      for (StateId p = q + 1; p < d.num_states(); ++p)
        if (cls[q] != cls[p]) CHECK(bf_distance(n, q, p) == kInf);
  }
}

TEST_CASE("gadget_congruence rejects a partition that is not a congruence") {
  Dfa d = parse_dfa(
      "alphabet: a\nstates: q0 q1 q2\nstart: q0\naccept: q2\n"
      "trans: q0 a q1\ntrans: q1 a q2\ntrans: q2 a q2\n");
  // {q0, q1} is not closed: successors q1, q2 land in different classes.
  CHECK_THROWS_AS(gadget_congruence(d, {{0, 1}}), ArgumentError);
  CHECK_NOTHROW(gadget_congruence(d, {{0}, {1}, {2}}));
}

TEST_CASE("gadget_inlevel: chain shape and requested levels") {
  Dfa d = parse_dfa(
      "alphabet: a\nstates: q0 q1 q2\nstart: q0\naccept: q2\n"
      "trans: q0 a q1\ntrans: q1 a q2\n");
  Dfa n = gadget_inlevel(d, {{1, 5}, {2, 3}});
  StateMeta meta = state_meta(n);
  CHECK(meta.in_level[1] >= 5);
  CHECK(meta.in_level[2] >= 3);
  // The chain itself: five fresh states at in-levels 1..5.
  CHECK(n.num_states() == d.num_states() + 5);

  CHECK_THROWS_AS(gadget_inlevel(d, {{0, 4}}), ArgumentError);  // start
  CHECK_THROWS_AS(gadget_inlevel(d, {{1, 0}}), ArgumentError);  // level < 1
  CHECK_THROWS_AS(gadget_inlevel(d, {{1, 2}, {1, 3}}), ArgumentError);
}

TEST_CASE("gadget_inlevel preserves right-languages") {
  std::mt19937 rng(52);
  for (int it = 0; it < 10; ++it) {
    Dfa d = testgen::random_minimal(rng, 5, 2);
    if (d.num_states() < 2) continue;
    Dfa n = gadget_inlevel(d, {{d.num_states() - 1, 4}});
    for (StateId q = 0; q < d.num_states(); ++q)
      for (SymbolId a = 0; a < d.num_symbols(); ++a)
        CHECK(n.next(q, a) == d.next(q, a));
    for (StateId q = 0; q < d.num_states(); ++q)
      CHECK(n.accepting(q) == d.accepting(q));
  }
}

TEST_CASE("instance alphabets reject colliding vertex names") {
  // A vertex literally named "a" would collide with the chain letters.
  Graph g = parse_graph("a b\nb c\na c\n");
  CHECK_THROWS_AS(build_hyper_instance(g), ArgumentError);
}
