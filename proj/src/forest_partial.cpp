#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "dfamin/distance.hpp"
#include "dfamin/forest_internal.hpp"

// Partial-case forest construction.  States with an infinite right-language
// are grouped phase by phase on [signature id | successors by signature
// letters | tail summary].  The tail summary stands for all letters outside
// the signature: it is the ancestor, in the auxiliary tree built over the
// finite-right-language part, that two states share exactly when their
// non-signature successors are all within the phase's distance budget.

namespace dfamin {
namespace internal {

namespace {

// Column layout of the key rows fed to run_phases.
constexpr int32_t kSigCol = 0;
constexpr int32_t kExcluded = -2;  // letter outside the signature

}  // namespace

DistanceForest build_forest_partial(const Dfa& d, BuildStats* stats) {
  const int32_t n = d.num_states();
  const int32_t m = d.num_symbols();
  StateMeta meta = state_meta(d);

  std::vector<char> in_sig(static_cast<size_t>(n) * std::max(m, 1), 0);
  for (StateId q = 0; q < n; ++q)
    for (SymbolId a : meta.signature[q]) in_sig[static_cast<size_t>(q) * m + a] = 1;

  // Auxiliary machine: the finite-right-language part of the input, plus one
  // tail state per distinct non-signature successor row.  A tail state is a
  // stand-in whose right-language is the union of the letter-prefixed
  // languages of those successors.
  Dfa aux;
  for (SymbolId a = 0; a < m; ++a) aux.add_symbol(d.symbol_name(a));
  std::vector<StateId> fin_map(n, kNoState);
  for (StateId q = 0; q < n; ++q)
    if (meta.m[q] < kInf) fin_map[q] = aux.add_state(d.state_name(q));
  for (StateId q = 0; q < n; ++q) {
    if (fin_map[q] == kNoState) continue;
    aux.set_accepting(fin_map[q], d.accepting(q));
    for (SymbolId a = 0; a < m; ++a) {
      StateId t = d.next(q, a);
      if (t != kNoState) aux.set_next(fin_map[q], a, fin_map[t]);
    }
  }

  // Tail states are deduplicated by language.  Within the minimal finite
  // part a successor row determines the language once states with the empty
  // right-language are folded into "undefined", so the row itself is a
  // usable key.  Non-accepting input states are seeded so a tail state never
  // duplicates an existing one.
  auto norm_row = [&](StateId q, bool tail) {
    std::vector<StateId> row(m, kNoState);
    for (SymbolId a = 0; a < m; ++a) {
      if (tail && in_sig[static_cast<size_t>(q) * m + a]) continue;
      StateId t = d.next(q, a);
      if (t == kNoState || meta.m[t] == -1) continue;
      row[a] = fin_map[t];
    }
    return row;
  };
  std::map<std::vector<StateId>, StateId> by_row;
  for (StateId q = 0; q < n; ++q)
    if (fin_map[q] != kNoState && !d.accepting(q)) by_row[norm_row(q, false)] = fin_map[q];
  std::vector<StateId> tail_of(n, kNoState);
  int32_t fresh = 0;
  for (StateId q = 0; q < n; ++q) {
    if (meta.m[q] != kInf) continue;
    std::vector<StateId> row = norm_row(q, true);
    auto it = by_row.find(row);
    if (it != by_row.end()) {
      tail_of[q] = it->second;
      continue;
    }
    std::string name = "_t" + std::to_string(fresh++);
    while (aux.state_id(name) != kNoState) name += "_";
    StateId s = aux.add_state(name);
    for (SymbolId a = 0; a < m; ++a)
      if (row[a] != kNoState) aux.set_next(s, a, row[a]);
    by_row[row] = s;
    tail_of[q] = s;
  }
  if (aux.num_states() > 0) aux.set_start(0);

  DistanceForest tail_tree = acyclic_distance_tree(aux);
  int64_t max_level = 0;
  for (const auto& nd : tail_tree.nodes) max_level = std::max(max_level, nd.level);

  // Signature group ids.
  std::map<std::vector<SymbolId>, int32_t> sig_ids;
  std::vector<int32_t> group(n, -1);
  for (StateId q = 0; q < n; ++q) {
    if (meta.m[q] != kInf) continue;
    auto [it, ignored] = sig_ids.emplace(meta.signature[q], static_cast<int32_t>(sig_ids.size()));
    group[q] = it->second;
  }

  // Key rows.  Finite-language states take part as permanent singletons
  // (pairs involving them are resolved by the tail tree alone).
  const int32_t width = m + 2;
  const int32_t tail_col = m + 1;
  std::vector<int32_t> cur(static_cast<size_t>(n) * width, kExcluded);
  std::vector<int32_t> ptr(n, -1);
  for (StateId q = 0; q < n; ++q) {
    int32_t* row = &cur[static_cast<size_t>(q) * width];
    if (meta.m[q] < kInf) {
      row[kSigCol] = -3 - q;
      continue;
    }
    row[kSigCol] = group[q];
    for (SymbolId a = 0; a < m; ++a)
      if (in_sig[static_cast<size_t>(q) * m + a]) row[1 + a] = d.next(q, a);
    ptr[q] = tail_tree.leaf_of[tail_of[q]];
    row[tail_col] = ptr[q];
  }
  std::vector<char> merge_col(width, 0);
  for (SymbolId a = 0; a < m; ++a) merge_col[1 + a] = 1;

  // Pointer advances are scheduled by the level at which the next ancestor
  // becomes reachable, so each phase touches only the states that move.
  std::vector<std::vector<int32_t>> due(max_level + 2);
  int64_t pending = 0;
  auto schedule = [&](StateId q) {
    int32_t p = tail_tree.nodes[ptr[q]].parent;
    if (p == -1) return;
    due[tail_tree.nodes[p].level].push_back(q);
    ++pending;
  };
  for (StateId q = 0; q < n; ++q)
    if (ptr[q] != -1) schedule(q);

  auto on_phase = [&](int64_t phase, std::vector<int32_t>& touched) {
    if (phase <= max_level) {
      for (StateId q : due[phase]) {
        --pending;
        int32_t v = ptr[q];
        while (true) {
          int32_t p = tail_tree.nodes[v].parent;
          if (p == -1 || tail_tree.nodes[p].level > phase) break;
          v = p;
        }
        ptr[q] = v;
        cur[static_cast<size_t>(q) * width + tail_col] = v;
        touched.push_back(q);
        schedule(q);
      }
      due[phase].clear();
    }
    return pending > 0;
  };

  const int64_t max_phase = 2 * static_cast<int64_t>(n) + max_level + 4;
  DistanceForest f = run_phases(n, width, cur, merge_col, on_phase, max_phase, stats);

  // Final forest: the merge trees over the infinite part, plus the tail tree
  // restricted to the input's finite-language states (drop the other leaves,
  // contract chains; levels carry over unchanged).
  DistanceForest out;
  out.leaf_of.resize(n);
  for (StateId q = 0; q < n; ++q) out.leaf_of[q] = out.add_node(-1, 0, q);

  std::vector<int32_t> fmap(f.nodes.size(), -1);
  for (StateId q = 0; q < n; ++q) fmap[f.leaf_of[q]] = out.leaf_of[q];
  for (size_t v = 0; v < f.nodes.size(); ++v)
    if (f.nodes[v].state == kNoState)
      fmap[v] = out.add_node(-1, f.nodes[v].level, kNoState);
  for (size_t v = 0; v < f.nodes.size(); ++v)
    if (f.nodes[v].parent != -1) out.set_parent(fmap[v], fmap[f.nodes[v].parent]);

  const int32_t tn = static_cast<int32_t>(tail_tree.nodes.size());
  std::vector<int64_t> cnt(tn, 0);  // input leaves per subtree
  std::vector<int32_t> branching(tn, 0);
  for (StateId q = 0; q < n; ++q)
    if (fin_map[q] != kNoState) cnt[tail_tree.leaf_of[fin_map[q]]] = 1;
  std::vector<int32_t> by_level(tn);
  for (int32_t v = 0; v < tn; ++v) by_level[v] = v;
  std::sort(by_level.begin(), by_level.end(), [&](int32_t a, int32_t b) {
    return tail_tree.nodes[a].level < tail_tree.nodes[b].level;
  });
  for (int32_t v : by_level) {
    int32_t p = tail_tree.nodes[v].parent;
    if (p == -1 || cnt[v] == 0) continue;
    cnt[p] += cnt[v];
    ++branching[p];
  }
  std::vector<int32_t> tmap(tn, -1);
  for (StateId q = 0; q < n; ++q)
    if (fin_map[q] != kNoState) tmap[tail_tree.leaf_of[fin_map[q]]] = out.leaf_of[q];
  for (int32_t v : by_level)
    if (tail_tree.nodes[v].state == kNoState && branching[v] >= 2)
      tmap[v] = out.add_node(-1, tail_tree.nodes[v].level, kNoState);
  // Nearest kept ancestor, parents before children.
  std::vector<int32_t> up(tn, -1);
  for (auto it = by_level.rbegin(); it != by_level.rend(); ++it) {
    int32_t p = tail_tree.nodes[*it].parent;
    if (p == -1) continue;
    up[*it] = tmap[p] != -1 ? p : up[p];
  }
  for (int32_t v = 0; v < tn; ++v)
    if (tmap[v] != -1 && up[v] != -1) out.set_parent(tmap[v], tmap[up[v]]);

  out.build_lifting();
  return out;
}

}  // namespace internal

DistanceForest build_distance_forest(const Dfa& d, BuildStats* stats) {
  const int32_t n = d.num_states();
  if (n == 0) throw ArgumentError("distance forest: empty automaton");
  {
    std::vector<int32_t> cls = equivalence_classes(d);
    std::set<int32_t> distinct(cls.begin(), cls.end());
    if (static_cast<int32_t>(distinct.size()) != n)
      throw PreconditionError("distance forest: input has equivalent states");
  }
  if (d.total()) return internal::build_forest_total(d, stats);
  return internal::build_forest_partial(d, stats);
}

}  // namespace dfamin
