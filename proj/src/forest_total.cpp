#include <algorithm>
#include <map>
#include <set>

#include "dfamin/distance.hpp"
#include "dfamin/forest_internal.hpp"

namespace dfamin {
namespace internal {

// Dictionary used at every trie node; kept as a single abstraction point so
// the backend can be swapped locally.  Operations are O(log n).
using LinearDict = std::map<int32_t, int32_t>;

namespace {

// Trie of fixed depth over key rows.  Leaves hold the set of items whose
// current row spells the leaf's path.
class SuccessorTrie {
 public:
  explicit SuccessorTrie(int32_t depth) : depth_(depth) {
    pool_.emplace_back();
    root_ = 0;
  }

  void insert(const int32_t* key, int32_t item) {
    int32_t v = root_;
    for (int32_t i = 0; i < depth_; ++i) {
      auto it = pool_[v].child.find(key[i]);
      if (it == pool_[v].child.end()) {
        int32_t nv = static_cast<int32_t>(pool_.size());
        pool_.emplace_back();
        pool_[v].child[key[i]] = nv;
        v = nv;
      } else {
        v = it->second;
      }
    }
    pool_[v].members.insert(item);
    if (pool_[v].members.size() == 2) dirty_.insert(v);
  }

  void remove(const int32_t* key, int32_t item) {
    int32_t v = root_;
    std::vector<std::pair<int32_t, int32_t>> path;  // (node, key element)
    for (int32_t i = 0; i < depth_; ++i) {
      path.emplace_back(v, key[i]);
      v = pool_[v].child.at(key[i]);
    }
    pool_[v].members.erase(item);
    if (pool_[v].members.size() < 2) dirty_.erase(v);
    if (pool_[v].members.empty()) {
      int32_t child = v;
      for (auto it = path.rbegin(); it != path.rend(); ++it) {
        auto [node, elem] = *it;
        if (!pool_[child].child.empty() || !pool_[child].members.empty()) break;
        pool_[node].child.erase(elem);
        child = node;
      }
    }
  }

  const std::set<int32_t>& members(int32_t leaf) const { return pool_[leaf].members; }
  const std::set<int32_t>& dirty() const { return dirty_; }

 private:
  struct TNode {
    LinearDict child;
    std::set<int32_t> members;
  };
  std::vector<TNode> pool_;
  int32_t root_;
  int32_t depth_;
  std::set<int32_t> dirty_;  // leaves with at least two members
};

}  // namespace

DistanceForest run_phases(
    int32_t n, int32_t width, std::vector<int32_t>& cur,
    const std::vector<char>& merge_col,
    const std::function<bool(int64_t, std::vector<int32_t>&)>& on_phase,
    int64_t max_phase, BuildStats* stats) {
  DistanceForest f;
  f.leaf_of.resize(n);
  std::vector<int32_t> node_of(n);
  for (int32_t q = 0; q < n; ++q) {
    node_of[q] = f.add_node(-1, 0, q);
    f.leaf_of[q] = node_of[q];
  }

  std::vector<int64_t> counter(n, 1);
  std::vector<char> active(n, 1);
  std::vector<std::vector<int64_t>> occ(n);  // cell indices, lazily filtered
  for (int64_t e = 0; e < static_cast<int64_t>(cur.size()); ++e)
    if (merge_col[e % width] && cur[e] >= 0) occ[cur[e]].push_back(e);
  std::vector<int64_t> rewrites(cur.size(), 0);

  SuccessorTrie trie(width);
  // Snapshot of each active item's row as inserted, for removal.
  std::vector<int32_t> key(cur);
  for (int32_t q = 0; q < n; ++q) trie.insert(&key[static_cast<size_t>(q) * width], q);

  auto reposition = [&](int32_t s) {
    if (!active[s]) return;
    const int32_t* old_key = &key[static_cast<size_t>(s) * width];
    const int32_t* new_key = &cur[static_cast<size_t>(s) * width];
    if (std::equal(old_key, old_key + width, new_key)) return;
    trie.remove(old_key, s);
    std::copy(new_key, new_key + width, &key[static_cast<size_t>(s) * width]);
    trie.insert(new_key, s);
  };

  std::vector<int32_t> hook_touched;
  std::set<int32_t> touched;
  for (int64_t phase = 1;; ++phase) {
    if (phase > max_phase)
      throw PreconditionError("distance forest: phase overrun (input not minimal?)");
    hook_touched.clear();
    bool more_pending = on_phase(phase, hook_touched);
    for (int32_t s : hook_touched) reposition(s);
    if (trie.dirty().empty() && !more_pending) break;
    if (trie.dirty().empty()) continue;

    // Snapshot the groups before any rewrite of this phase.
    std::vector<std::vector<int32_t>> groups;
    for (int32_t leaf : trie.dirty())
      groups.emplace_back(trie.members(leaf).begin(), trie.members(leaf).end());

    touched.clear();
    for (const auto& group : groups) {
      int32_t winner = group[0];
      for (int32_t q : group)
        if (counter[q] > counter[winner]) winner = q;
      int64_t total = 0;
      for (int32_t q : group) total += counter[q];

      int32_t nn = f.add_node(-1, phase, kNoState);
      for (int32_t q : group) f.set_parent(node_of[q], nn);
      node_of[winner] = nn;
      counter[winner] = total;

      for (int32_t q : group) {
        if (q == winner) continue;
        active[q] = 0;
        trie.remove(&key[static_cast<size_t>(q) * width], q);
        for (int64_t e : occ[q]) {
          if (cur[e] != q) continue;  // stale occurrence
          cur[e] = winner;
          ++rewrites[e];
          occ[winner].push_back(e);
          int32_t s = static_cast<int32_t>(e / width);
          if (active[s]) touched.insert(s);
        }
        occ[q].clear();
        occ[q].shrink_to_fit();
      }
    }
    // Reposition items whose row changed; their new collisions belong to
    // the next phase.
    for (int32_t s : touched) reposition(s);
  }

  if (stats) {
    for (int64_t r : rewrites)
      stats->max_entry_rewrites = std::max(stats->max_entry_rewrites, r);
  }
  f.build_lifting();
  return f;
}

DistanceForest build_forest_total(const Dfa& d, BuildStats* stats) {
  const int32_t n = d.num_states();
  const int32_t m = d.num_symbols();
  std::vector<int32_t> cur(static_cast<size_t>(n) * m);
  for (int32_t q = 0; q < n; ++q)
    for (int32_t a = 0; a < m; ++a) cur[static_cast<size_t>(q) * m + a] = d.next(q, a);
  std::vector<char> merge_col(m, 1);
  return run_phases(
      n, m, cur, merge_col,
      [](int64_t, std::vector<int32_t>&) { return false; }, n + 1, stats);
}

}  // namespace internal
}  // namespace dfamin
