#pragma once

#include <set>
#include <vector>

#include "dfamin/dfa.hpp"

// Independent brute-force reference implementations.  These enumerate words
// outright and share nothing with the fast paths beyond the Dfa type.

namespace dfamin {

struct WordList {
  std::vector<std::vector<SymbolId>> words;  // sorted by (length, lex)
  int64_t max_len = 0;
};

constexpr int64_t kDefaultWordBudget = 1'000'000;

// L(d) intersected with words of length <= max_len.
WordList bf_language(const Dfa& d, int64_t max_len,
                     int64_t budget = kDefaultWordBudget);

// Exact distance between the right-languages of q and p, by word-by-word
// comparison; sound because a finite distance is below the state count.
int64_t bf_distance(const Dfa& d, StateId q, StateId p,
                    int64_t budget = kDefaultWordBudget);

// Maximal-by-inclusion set of pairwise k-dissimilar states, greedy in state
// order.  Uses brute-force distance and a longest-path in-level computation.
std::set<StateId> greedy_max_dissimilar(const Dfa& d, int64_t k,
                                        int64_t budget = kDefaultWordBudget);

// (L(a) symdiff L(b)) intersected with words of length <= max_len.
WordList bf_symdiff(const Dfa& a, const Dfa& b, int64_t max_len,
                    int64_t budget = kDefaultWordBudget);

// Longest-path in-level per state, by plain breadth-first enumeration over
// the reversed graph; independent of state_meta.
std::vector<int64_t> bf_in_levels(const Dfa& d);

}  // namespace dfamin
