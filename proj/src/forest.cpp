#include "dfamin/distance.hpp"

#include <algorithm>
#include <sstream>

namespace dfamin {

int32_t DistanceForest::add_node(int32_t parent, int64_t level, StateId state) {
  Node nd;
  nd.parent = parent;
  nd.level = level;
  nd.state = state;
  if (parent != -1) nd.weight = nodes[parent].level - level;
  nodes.push_back(nd);
  return static_cast<int32_t>(nodes.size()) - 1;
}

void DistanceForest::set_parent(int32_t v, int32_t parent) {
  nodes[v].parent = parent;
  nodes[v].weight = parent == -1 ? 0 : nodes[parent].level - nodes[v].level;
}

void DistanceForest::build_lifting() {
  const int32_t N = static_cast<int32_t>(nodes.size());
  depth_.assign(N, -1);
  std::vector<int32_t> order;
  order.reserve(N);
  for (int32_t v = 0; v < N; ++v) {
    if (depth_[v] != -1) continue;
    int32_t u = v;
    std::vector<int32_t> path;
    while (u != -1 && depth_[u] == -1) {
      path.push_back(u);
      u = nodes[u].parent;
    }
    int32_t base = u == -1 ? -1 : depth_[u];
    for (auto it = path.rbegin(); it != path.rend(); ++it) depth_[*it] = ++base;
  }
  int32_t levels = 1;
  int32_t maxd = N == 0 ? 0 : *std::max_element(depth_.begin(), depth_.end());
  while ((1 << levels) <= maxd + 1) ++levels;
  up_.assign(levels, std::vector<int32_t>(N, -1));
  for (int32_t v = 0; v < N; ++v) up_[0][v] = nodes[v].parent;
  for (int32_t j = 1; j < levels; ++j)
    for (int32_t v = 0; v < N; ++v) {
      int32_t mid = up_[j - 1][v];
      up_[j][v] = mid == -1 ? -1 : up_[j - 1][mid];
    }
}

int32_t DistanceForest::lca(int32_t u, int32_t v) const {
  if (u == v) return u;
  int32_t du = depth_[u], dv = depth_[v];
  if (du < dv) {
    std::swap(u, v);
    std::swap(du, dv);
  }
  int32_t diff = du - dv;
  for (size_t j = 0; j < up_.size(); ++j)
    if (diff & (1 << j)) u = up_[j][u];
  if (u == v) return u;
  for (int32_t j = static_cast<int32_t>(up_.size()) - 1; j >= 0; --j)
    if (up_[j][u] != up_[j][v]) {
      u = up_[j][u];
      v = up_[j][v];
    }
  return up_[0][u];  // -1 when u, v lie in different trees
}

int64_t DistanceForest::lca_level(int32_t u, int32_t v) const {
  int32_t w = lca(u, v);
  return w == -1 ? kInf : nodes[w].level;
}

int64_t forest_lca_level(const DistanceForest& f, StateId q, StateId p) {
  if (q < 0 || p < 0 || q >= static_cast<StateId>(f.leaf_of.size()) ||
      p >= static_cast<StateId>(f.leaf_of.size()))
    throw ArgumentError("forest_lca_level: unknown state");
  return f.lca_level(f.leaf_of[q], f.leaf_of[p]);
}

std::string DistanceForest::dump(const Dfa& d) const {
  std::ostringstream out;
  for (size_t v = 0; v < nodes.size(); ++v) {
    out << v << ' ' << nodes[v].parent << ' ' << nodes[v].weight << ' '
        << nodes[v].level;
    if (nodes[v].state != kNoState) out << ' ' << d.state_name(nodes[v].state);
    out << '\n';
  }
  return out.str();
}

void DistanceForest::check(const Dfa& d) const {
  if (static_cast<StateId>(leaf_of.size()) != d.num_states())
    throw ArgumentError("forest: leaf map size mismatch");
  std::vector<char> used(nodes.size(), 0);
  for (StateId q = 0; q < d.num_states(); ++q) {
    int32_t v = leaf_of[q];
    if (v < 0 || v >= static_cast<int32_t>(nodes.size()) || nodes[v].state != q)
      throw ArgumentError("forest: bad leaf for state " + d.state_name(q));
    if (used[v]) throw ArgumentError("forest: duplicate leaf");
    used[v] = 1;
    if (nodes[v].level != 0) throw ArgumentError("forest: leaf with level != 0");
  }
  std::vector<int32_t> child_count(nodes.size(), 0);
  for (size_t v = 0; v < nodes.size(); ++v) {
    int32_t p = nodes[v].parent;
    if (p == -1) continue;
    ++child_count[p];
    if (nodes[p].level <= nodes[v].level)
      throw ArgumentError("forest: level not increasing towards the root");
    if (nodes[v].weight != nodes[p].level - nodes[v].level)
      throw ArgumentError("forest: edge weight mismatch");
  }
  for (size_t v = 0; v < nodes.size(); ++v) {
    bool is_leaf = nodes[v].state != kNoState || static_cast<int32_t>(v) == bot_leaf;
    if (is_leaf && child_count[v] != 0)
      throw ArgumentError("forest: leaf with children");
    if (!is_leaf && child_count[v] == 0)
      throw ArgumentError("forest: inner node without children");
  }
}

}  // namespace dfamin
