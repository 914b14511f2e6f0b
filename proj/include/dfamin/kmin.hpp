#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "dfamin/dfa.hpp"
#include "dfamin/distance.hpp"

namespace dfamin {

using BigInt = boost::multiprecision::cpp_int;

// States q, p of the trimmed DFA d are k-similar when
// d(q,p) + min(k, in_level(q), in_level(p)) <= k.
bool k_similar(const Dfa& d, StateId q, StateId p, int64_t k);

// Reference k-minimisation: compute the k-similarity relation once on the
// minimised input, then repeatedly merge a remaining similar pair, the
// smaller in-level state into the larger (ties: the empty-language state,
// then the lower id, survives).
Dfa k_minimise_naive(const Dfa& d, int64_t k, Mode mode = Mode::kPartial);

// Per-forest-vertex labels and the derived per-state merge potentials.
// label(v) is a leaf below v with maximal in-level; the submit depth of q is
// the level of the first ancestor of leaf q labelled differently (infinite
// when q labels its root); values(q) = in_level(q) + submit_depth(q).
struct ValuesTable {
  std::vector<StateId> label;         // per forest vertex
  std::vector<int64_t> submit_depth;  // per state; kInf at root labels
  std::vector<int64_t> values;        // per state; kInf-saturating sum
};

// Requires a trimmed DFA and a forest whose leaves biject with its states.
ValuesTable compute_values(const Dfa& d, const DistanceForest& f);

// Label of the first vertex on the path from leaf q to its root whose label
// has values > k; q itself when values(q) > k.
StateId k_ancestor(const ValuesTable& vt, const DistanceForest& f, StateId q,
                   int64_t k);

// size(k) for every k in [0, 2n], n the minimised state count; entry k is
// the state count of a k-minimal DFA for d.
std::vector<int64_t> sizes_for_all_k(const Dfa& d, Mode mode = Mode::kPartial);

// Fast k-minimisation: minimises, builds the distance forest, and merges
// every state with values <= k into its k-ancestor.
Dfa k_minimise(const Dfa& d, int64_t k, Mode mode = Mode::kPartial);

// All k-minimal sizes in one pass: phase k holds a k-minimal DFA.  Merges
// redirect transitions into the higher-rank slot, so each transition entry
// is rewritten O(log n) times overall.
class AllKSweep {
 public:
  explicit AllKSweep(const Dfa& d, Mode mode = Mode::kPartial);

  int64_t k() const { return k_; }
  int64_t max_k() const { return max_k_; }
  bool done() const { return k_ >= max_k_; }
  void advance();  // to phase k + 1

  int64_t state_count() const { return alive_count_; }
  Dfa materialise() const;  // the current phase's DFA

 private:
  void merge_into(StateId q, StateId target);

  Dfa base_;
  int64_t k_ = 0;
  int64_t max_k_ = 0;
  int64_t alive_count_ = 0;
  StateId start_slot_ = kNoState;
  std::vector<std::vector<StateId>> dying_at_;   // identities per phase
  std::vector<StateId> merge_target_;            // identity -> identity
  std::vector<StateId> slot_of_;                 // identity -> slot
  std::vector<StateId> ident_of_;                // slot -> identity
  std::vector<char> alive_;                      // per slot
  std::vector<int64_t> rank_;                    // per slot
  std::vector<StateId> next_;                    // slot transitions, n * m
  std::vector<char> accepting_;                  // per slot
  std::vector<std::vector<int64_t>> incoming_;   // slot -> delta cells, lazy
};

// k-minimisation at k = 2n: merges exactly the hyper-equivalent pairs.
Dfa hyper_minimise(const Dfa& d, Mode mode = Mode::kPartial);

// Symmetric-difference count between two languages, with the length of the
// longest differing word (-1 when the languages are equal within bounds).
struct SymdiffResult {
  BigInt count;
  int64_t max_error_len = -1;
};

// Counts the words of length <= max_len on which exactly one of the two
// DFAs accepts.  kAutoLen counts the full symmetric difference and reports
// an error when it is infinite.
constexpr int64_t kAutoLen = -1;
SymdiffResult count_symdiff(const Dfa& a, const Dfa& b, int64_t max_len = kAutoLen);

// Least k such that the two languages agree on all words of length >= k;
// kInf when the symmetric difference is infinite.
int64_t similarity_bound(const Dfa& a, const Dfa& b);

}  // namespace dfamin
