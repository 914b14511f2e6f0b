#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dfamin {

using StateId = int32_t;
using SymbolId = int32_t;

// Sentinels shared across the library.  kNoState marks an undefined
// transition; kInf stands for an infinite level/distance/length.
constexpr StateId kNoState = -1;
constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ArgumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ColoringError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InfiniteDifferenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Deterministic finite automaton with a possibly partial transition
// function.  States are dense ids 0..n-1; names are kept only for I/O.
class Dfa {
 public:
  Dfa() = default;

  StateId num_states() const { return static_cast<StateId>(state_names_.size()); }
  SymbolId num_symbols() const { return static_cast<SymbolId>(symbols_.size()); }

  StateId add_state(const std::string& name);
  SymbolId add_symbol(const std::string& sym);

  const std::string& state_name(StateId q) const { return state_names_[q]; }
  const std::string& symbol_name(SymbolId a) const { return symbols_[a]; }
  const std::vector<std::string>& symbols() const { return symbols_; }

  StateId state_id(const std::string& name) const;    // kNoState if unknown
  SymbolId symbol_id(const std::string& sym) const;   // -1 if unknown

  StateId start() const { return start_; }
  void set_start(StateId q) { start_ = q; }

  bool accepting(StateId q) const { return accepting_[q]; }
  void set_accepting(StateId q, bool v) { accepting_[q] = v; }

  StateId next(StateId q, SymbolId a) const { return delta_[index(q, a)]; }
  void set_next(StateId q, SymbolId a, StateId dst) { delta_[index(q, a)] = dst; }

  // |M|: the number of defined transitions.
  int64_t size() const;
  bool total() const;

  StateId run(StateId q, const std::vector<SymbolId>& word) const;
  bool accepts_from(StateId q, const std::vector<SymbolId>& word) const;
  bool accepts(const std::vector<SymbolId>& word) const;

  void check_invariants() const;

 private:
  size_t index(StateId q, SymbolId a) const {
    return static_cast<size_t>(q) * symbols_.size() + a;
  }

  std::vector<std::string> state_names_;
  std::vector<std::string> symbols_;
  std::map<std::string, StateId> state_index_;
  std::map<std::string, SymbolId> symbol_index_;
  std::vector<StateId> delta_;  // n * m, row-major, kNoState = undefined
  std::vector<char> accepting_;
  StateId start_ = kNoState;
};

enum class Mode { kPartial, kTotal };

Dfa parse_dfa(const std::string& text);
std::string serialize_dfa(const Dfa& d);
std::string to_dot(const Dfa& d);

// Removes unreachable states; with drop_dead also removes states whose
// right-language is empty (and all transitions into them).
Dfa trim(const Dfa& d, bool drop_dead);

// Unique minimal DFA for L(d) under the chosen convention.  Partial mode
// keeps no dead state; total mode completes the transition function.
// Output states are numbered by breadth-first search from the start state
// in symbol order.
Dfa minimise(const Dfa& d, Mode mode);

bool equivalent(const Dfa& a, const Dfa& b);

// Redirects every transition ending in q to p and deletes q.
Dfa merge_state(const Dfa& d, StateId q, StateId p);

struct StateMeta {
  std::vector<int64_t> in_level;    // kInf on cycle-fed states
  std::vector<char> is_kernel;      // in_level == kInf
  std::vector<int64_t> m;           // longest accepted word length; -1 when
                                    // the right-language is empty, kInf when
                                    // it is infinite
  std::vector<std::vector<SymbolId>> signature;  // letters whose successor
                                                 // has an infinite language
};

// Requires a trimmed DFA (every state reachable).
StateMeta state_meta(const Dfa& d);

// Internal helper shared by minimise/equivalent: Myhill-Nerode classes of
// the states of d, with undefined transitions treated as a dead sink.
// Returns class ids (0-based); equal id iff equal right-language.
std::vector<int32_t> equivalence_classes(const Dfa& d);

}  // namespace dfamin
