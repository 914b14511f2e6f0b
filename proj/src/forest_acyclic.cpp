#include <algorithm>
#include <map>
#include <set>

#include "dfamin/distance.hpp"
#include "dfamin/forest_internal.hpp"

namespace dfamin {

namespace {

int32_t ceil_log2(int64_t x) {
  int32_t k = 0;
  while ((int64_t{1} << k) < x) ++k;
  return k;
}

// Growing tree arena with per-node power-of-two ancestor lists; vertices
// removed by compression are addressed as (explicit node, level) pairs.
struct Arena {
  struct N {
    int64_t level;
    int32_t parent = -1;
    StateId state = kNoState;
    bool dead = false;
    int32_t depth = -1;
    std::vector<int32_t> anc;  // 2^i-th ancestors
  };
  std::vector<N> nodes;
  std::vector<int32_t> pending;  // created, ancestor lists not yet built

  int32_t make(int64_t level, StateId state) {
    int32_t id = static_cast<int32_t>(nodes.size());
    nodes.push_back({level, -1, state});
    pending.push_back(id);
    return id;
  }

  void set_parent(int32_t v, int32_t p) { nodes[v].parent = p; }

  void finalize_pending() {
    std::sort(pending.begin(), pending.end(), [&](int32_t a, int32_t b) {
      return nodes[a].level > nodes[b].level;
    });
    for (int32_t v : pending) {
      N& nd = nodes[v];
      if (nd.dead) continue;
      nd.depth = nd.parent == -1 ? 0 : nodes[nd.parent].depth + 1;
      nd.anc.clear();
      int32_t up = nd.parent;
      for (int32_t i = 0; up != -1; ++i) {
        nd.anc.push_back(up);
        up = static_cast<size_t>(i) < nodes[up].anc.size() ? nodes[up].anc[i] : -1;
      }
    }
    pending.clear();
  }

  // Deepest node with level <= cap on the path from v to the root
  // (including v itself); requires level(v) <= cap.
  int32_t anc_at(int32_t v, int64_t cap) const {
    while (true) {
      const auto& anc = nodes[v].anc;
      int32_t next = -1;
      for (int32_t i = static_cast<int32_t>(anc.size()) - 1; i >= 0; --i)
        if (nodes[anc[i]].level <= cap) {
          next = anc[i];
          break;
        }
      if (next == -1) return v;
      v = next;
    }
  }

  int32_t lca(int32_t u, int32_t v) const {
    if (nodes[u].depth < nodes[v].depth) std::swap(u, v);
    int32_t diff = nodes[u].depth - nodes[v].depth;
    for (int32_t i = 0; diff; ++i, diff >>= 1)
      if (diff & 1) u = nodes[u].anc[i];
    if (u == v) return u;
    for (int32_t i = static_cast<int32_t>(nodes[u].anc.size()) - 1; i >= 0; --i) {
      if (static_cast<size_t>(i) >= nodes[u].anc.size() ||
          static_cast<size_t>(i) >= nodes[v].anc.size())
        continue;
      if (nodes[u].anc[i] != nodes[v].anc[i]) {
        u = nodes[u].anc[i];
        v = nodes[v].anc[i];
      }
    }
    return nodes[u].anc[0];
  }
};

struct VRef {
  int32_t node;
  int64_t level;
  auto operator<=>(const VRef&) const = default;
};

struct Item {
  std::vector<VRef> coords;
  int32_t sub;        // arena node gathering everything below this item
  int64_t sub_level;
};

class TreeBuilder {
 public:
  explicit TreeBuilder(const Dfa& d) : d_(d) {}

  // Distances between coordinate vertices: level of the LCA.
  int64_t cd(const VRef& x, const VRef& y) const {
    if (x == y) return 0;
    return arena_.nodes[arena_.lca(x.node, y.node)].level;
  }

  int64_t item_dist(const Item& a, const Item& b) const {
    int64_t best = 0;
    for (size_t i = 0; i < a.coords.size(); ++i)
      best = std::max(best, cd(a.coords[i], b.coords[i]));
    return best + 1;
  }

  VRef lift(const VRef& x, int64_t cap) const {
    return {arena_.anc_at(x.node, cap), cap};
  }

  Item join(const std::vector<Item>& items, int64_t level) {
    int32_t nn = arena_.make(level, kNoState);
    for (const Item& it : items) arena_.set_parent(it.sub, nn);
    return {{}, nn, level};
  }

  // Tree over items whose pairwise distances lie in (base, base + 2^k].
  Item solve(std::vector<Item> items, int64_t base, int32_t k) {
    if (items.size() == 1) return items[0];
    if (k == 0) return join(items, base + 1);
    if (items.size() == 2) {
      int64_t dist = item_dist(items[0], items[1]);
      return join(items, dist);
    }
    const int64_t j = base + (int64_t{1} << (k - 1));
    std::map<std::vector<VRef>, std::vector<Item>> groups;
    for (Item& it : items) {
      std::vector<VRef> key;
      key.reserve(it.coords.size());
      for (const VRef& c : it.coords) key.push_back(lift(c, j - 1));
      groups[std::move(key)].push_back(std::move(it));
    }
    if (groups.size() == 1)
      return solve(std::move(groups.begin()->second), base, k - 1);
    std::vector<Item> upper;
    for (auto& [key, block] : groups) {
      if (block.size() == 1) {
        upper.push_back(std::move(block[0]));
      } else {
        Item merged = solve(std::move(block), base, k - 1);
        upper.push_back({key, merged.sub, merged.sub_level});
      }
    }
    return solve(std::move(upper), j, k - 1);
  }

  DistanceForest build() {
    const int32_t n = d_.num_states();
    const int32_t m = d_.num_symbols();

    // Longest accepted word per state; value iteration, overrun = cycle.
    std::vector<int64_t> mm(n, -1);
    for (int32_t round = 0; round <= 3 * n + 3; ++round) {
      for (int32_t q = 0; q < n; ++q) {
        int64_t best = d_.accepting(q) ? 0 : -1;
        for (int32_t a = 0; a < m; ++a) {
          StateId t = d_.next(q, a);
          if (t != kNoState && mm[t] >= 0)
            best = std::max(best, std::min<int64_t>(mm[t] + 1, 3 * n + 4));
        }
        mm[q] = std::max(mm[q], best);
      }
    }
    for (int32_t q = 0; q < n; ++q)
      if (mm[q] > n)
        throw PreconditionError("acyclic distance tree: state '" +
                                d_.state_name(q) +
                                "' has an infinite right-language");
    {
      std::vector<int32_t> cls = equivalence_classes(d_);
      std::set<int32_t> distinct(cls.begin(), cls.end());
      if (static_cast<int32_t>(distinct.size()) != n)
        throw PreconditionError(
            "acyclic distance tree: input has equivalent states");
    }

    // Bottom leaf: a state with the empty right-language if there is one,
    // otherwise a synthetic leaf.  Other leaves are created stratum by
    // stratum so their ancestor lists are built after they are attached.
    std::vector<int32_t> leaf(n, -1);
    int32_t bot = -1;
    bool synthetic_bot = false;
    for (int32_t q = 0; q < n; ++q)
      if (mm[q] == -1) bot = leaf[q] = arena_.make(0, q);
    if (bot == -1) {
      bot = arena_.make(0, kNoState);
      synthetic_bot = true;
    }

    int64_t maxm = -1;
    for (int32_t q = 0; q < n; ++q) maxm = std::max(maxm, mm[q]);

    // Uncompressed spine from the bottom leaf up to level maxm + 1.
    std::vector<int32_t> spine(std::max<int64_t>(maxm + 2, 1));
    spine[0] = bot;
    for (int64_t l = 1; l <= maxm + 1; ++l) {
      spine[l] = arena_.make(l, kNoState);
      arena_.set_parent(spine[l - 1], spine[l]);
    }
    arena_.finalize_pending();

    for (int64_t t = 0; t <= maxm; ++t) {
      std::vector<Item> items;
      for (int32_t q = 0; q < n; ++q) {
        if (mm[q] != t) continue;
        leaf[q] = arena_.make(0, q);
        Item it;
        it.sub = leaf[q];
        it.sub_level = 0;
        for (int32_t a = 0; a < m; ++a) {
          StateId s = d_.next(q, a);
          it.coords.push_back({s == kNoState ? bot : leaf[s], 0});
        }
        items.push_back(std::move(it));
      }
      if (items.empty()) continue;
      Item res = solve(std::move(items), 0, ceil_log2(t + 1));
      if (res.sub_level == t + 1) {
        // The fragment top coincides with the spine vertex; absorb it.
        for (int32_t v : arena_.pending)
          if (arena_.nodes[v].parent == res.sub)
            arena_.set_parent(v, spine[t + 1]);
        arena_.nodes[res.sub].dead = true;
      } else {
        arena_.set_parent(res.sub, spine[t + 1]);
      }
      arena_.finalize_pending();
    }

    // Emit the forest, skipping absorbed nodes.
    DistanceForest f;
    f.leaf_of.assign(n, -1);
    std::vector<int32_t> remap(arena_.nodes.size(), -1);
    for (size_t v = 0; v < arena_.nodes.size(); ++v) {
      if (arena_.nodes[v].dead) continue;
      remap[v] = f.add_node(-1, arena_.nodes[v].level, arena_.nodes[v].state);
    }
    for (size_t v = 0; v < arena_.nodes.size(); ++v) {
      if (arena_.nodes[v].dead) continue;
      int32_t p = arena_.nodes[v].parent;
      if (p != -1) f.set_parent(remap[v], remap[p]);
    }
    for (int32_t q = 0; q < n; ++q) f.leaf_of[q] = remap[leaf[q]];
    if (synthetic_bot) f.bot_leaf = remap[bot];
    f.build_lifting();
    return f;
  }

 private:
  const Dfa& d_;
  Arena arena_;
};

}  // namespace

DistanceForest acyclic_distance_tree(const Dfa& d) {
  return TreeBuilder(d).build();
}

}  // namespace dfamin
