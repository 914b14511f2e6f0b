#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dfamin/dfa.hpp"
#include "dfamin/kmin.hpp"

namespace dfamin {

// Undirected simple graph with a canonical (lexicographic) vertex order.
struct Graph {
  std::vector<std::string> vertices;
  std::vector<std::pair<int32_t, int32_t>> edges;  // index pairs, first < second

  const std::string& edge_low(size_t e) const { return vertices[edges[e].first]; }
  const std::string& edge_high(size_t e) const { return vertices[edges[e].second]; }
};

// Edge-list format: one edge per line, two whitespace-separated vertex
// tokens; '#' starts a comment.  Self-loops and duplicate edges are
// rejected.
Graph parse_graph(const std::string& text);
std::string serialize_graph(const Graph& g);

// Vertex colours in {1,2,3}, indexed like Graph::vertices.
struct Coloring {
  std::vector<int32_t> of;
};

// "vertex colour" lines; every graph vertex must be coloured.
Coloring parse_coloring(const Graph& g, const std::string& text);

// Returns a monochromatic edge index, or -1 when the colouring is proper.
int32_t monochromatic_edge(const Graph& g, const Coloring& c);

// Ring gadget: one fresh state per partition class, entered via a fresh
// letter t from every state of its class, cycled by a fresh letter x.
// Makes states of different classes hyper-inequivalent while preserving
// right-languages over the original alphabet and all left languages.
// The partition must be closed under the transition function; states not
// listed in any class count as singletons.
Dfa gadget_congruence(const Dfa& d, const std::vector<std::vector<StateId>>& partition);

// Chain gadget: a fresh d-letter chain from the start state; state s with
// requested level >= 2 gains one extra incoming transition on its own
// fresh letter, giving it in-level >= minlevel(s).  The start state may
// not be a target.
Dfa gadget_inlevel(const Dfa& d, const std::vector<std::pair<StateId, int64_t>>& minlevel);

struct HardnessInstance {
  Dfa dfa;
  std::string family;  // "hyper" or "kmin"
  int64_t s = 0;
  int64_t k = 0;
  int64_t l = 0;  // k - 2s, word-length budget of the colour branches
  BigInt errors_low;   // exact for hyper; lower bound for kmin
  BigInt errors_high;  // errors_low + 2^{s+1} |V| for kmin
};

// Graph encoding whose hyper-minimisation forces |E|*(|V|-2) errors
// exactly when the graph is 3-colourable; 14 + |V| states, total.
// Every vertex needs an incident edge.
HardnessInstance build_hyper_instance(const Graph& g);

// The 14-state collapse of the hyper instance under a proper colouring.
Dfa build_hyper_colored(const Graph& g, const Coloring& c);

// Graph encoding for error-bounded k-minimisation; requires
// s > log2(|V|) + 2 and k > 4s.
HardnessInstance build_kmin_instance(const Graph& g, int64_t s, int64_t k);

// The k-minimal collapse of the kmin instance under a proper colouring:
// vertices merge into their colour roots, the two equivalent sink states
// merge, and the orphaned junction state disappears.
Dfa build_kmin_colored(const Graph& g, const Coloring& c, int64_t s, int64_t k);

struct HardnessReport {
  int64_t instance_states = 0;
  int64_t colored_states = 0;
  BigInt errors;
  int64_t max_error_len = -1;
  BigInt expected_low;
  BigInt expected_high;
  bool pass = false;
  std::string details;
};

// Counts the realised errors between instance and collapse and checks them
// against the closed-form expectations (and, for kmin, that every error
// word is shorter than k).
HardnessReport verify_hardness(const HardnessInstance& inst, const Dfa& colored);

}  // namespace dfamin
