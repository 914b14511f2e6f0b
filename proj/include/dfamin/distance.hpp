#pragma once

#include <string>
#include <vector>

#include "dfamin/dfa.hpp"

namespace dfamin {

// Symmetric table of pairwise state distances; kInf when the right-languages
// differ on arbitrarily long words.
struct DistanceTable {
  int32_t n = 0;
  std::vector<int64_t> d;  // n * n

  int64_t at(StateId q, StateId p) const { return d[static_cast<size_t>(q) * n + p]; }
  int64_t& at(StateId q, StateId p) { return d[static_cast<size_t>(q) * n + p]; }
};

// Exact fixpoint of the distance recursion, by iterated coarsening.
DistanceTable distance_table(const Dfa& d);

// Weighted forest whose leaf-pair LCA levels encode pairwise distances;
// states in different trees are at infinite distance.
struct DistanceForest {
  struct Node {
    int32_t parent = -1;
    int64_t weight = 0;  // edge weight towards the parent
    int64_t level = 0;   // maximal weighted path to a leaf below
    StateId state = kNoState;  // leaves only; kNoState on inner nodes
  };
  std::vector<Node> nodes;
  std::vector<int32_t> leaf_of;  // state -> leaf node index
  int32_t bot_leaf = -1;  // synthetic empty-language leaf, if materialised

  int32_t add_node(int32_t parent, int64_t level, StateId state);
  void set_parent(int32_t v, int32_t parent);

  // Lowest-common-ancestor preprocessing (power-of-two ancestor lists).
  void build_lifting();
  int32_t lca(int32_t u, int32_t v) const;       // -1 across trees
  int64_t lca_level(int32_t u, int32_t v) const;  // kInf across trees

  std::string dump(const Dfa& d) const;
  void check(const Dfa& d) const;  // structural invariants

 private:
  std::vector<int32_t> depth_;
  std::vector<std::vector<int32_t>> up_;
};

// Level of the LCA of the two state leaves; kInf across trees.
int64_t forest_lca_level(const DistanceForest& f, StateId q, StateId p);

// Rewrite instrumentation for the forest construction.
struct BuildStats {
  int64_t max_entry_rewrites = 0;  // max times one delta entry was altered
};

// Distance forest for a minimal DFA, total or partial.
DistanceForest build_distance_forest(const Dfa& d, BuildStats* stats = nullptr);

// Distance tree for a DFA whose states all have finite right-languages.
// The empty-language leaf is always materialised; when the input has no
// empty-language state the synthetic leaf is reported via bot_leaf.
DistanceForest acyclic_distance_tree(const Dfa& d);

}  // namespace dfamin
