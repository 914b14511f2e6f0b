#include "dfamin/dfa.hpp"

#include <algorithm>

namespace dfamin {

namespace {

// Iterative Tarjan; returns component id per state, components numbered in
// reverse topological order (successors get smaller ids).
std::vector<int32_t> scc(const Dfa& d, int32_t* ncomp) {
  const int32_t n = d.num_states();
  const int32_t m = d.num_symbols();
  std::vector<int32_t> idx(n, -1), low(n, 0), comp(n, -1), stk;
  std::vector<char> on(n, 0);
  int32_t counter = 0, comps = 0;

  struct Frame {
    int32_t q;
    int32_t a;
  };
  std::vector<Frame> frames;
  for (int32_t root = 0; root < n; ++root) {
    if (idx[root] != -1) continue;
    frames.push_back({root, 0});
    idx[root] = low[root] = counter++;
    stk.push_back(root);
    on[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.a < m) {
        StateId t = d.next(f.q, f.a++);
        if (t == kNoState) continue;
        if (idx[t] == -1) {
          idx[t] = low[t] = counter++;
          stk.push_back(t);
          on[t] = 1;
          frames.push_back({t, 0});
        } else if (on[t]) {
          low[f.q] = std::min(low[f.q], idx[t]);
        }
      } else {
        int32_t q = f.q;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().q] = std::min(low[frames.back().q], low[q]);
        if (low[q] == idx[q]) {
          while (true) {
            int32_t w = stk.back();
            stk.pop_back();
            on[w] = 0;
            comp[w] = comps;
            if (w == q) break;
          }
          ++comps;
        }
      }
    }
  }
  *ncomp = comps;
  return comp;
}

}  // namespace

StateMeta state_meta(const Dfa& d) {
  const int32_t n = d.num_states();
  const int32_t m = d.num_symbols();

  // Precondition: every state reachable.
  {
    std::vector<char> reach(n, 0);
    std::vector<int32_t> stack = {d.start()};
    reach[d.start()] = 1;
    while (!stack.empty()) {
      int32_t q = stack.back();
      stack.pop_back();
      for (int32_t a = 0; a < m; ++a) {
        StateId t = d.next(q, a);
        if (t != kNoState && !reach[t]) {
          reach[t] = 1;
          stack.push_back(t);
        }
      }
    }
    for (int32_t q = 0; q < n; ++q)
      if (!reach[q])
        throw PreconditionError("state_meta requires a trimmed DFA; state '" +
                                d.state_name(q) + "' is unreachable");
  }

  int32_t ncomp;
  std::vector<int32_t> comp = scc(d, &ncomp);
  std::vector<char> cyclic(ncomp, 0);
  std::vector<int32_t> comp_size(ncomp, 0);
  for (int32_t q = 0; q < n; ++q) ++comp_size[comp[q]];
  for (int32_t q = 0; q < n; ++q)
    for (int32_t a = 0; a < m; ++a) {
      StateId t = d.next(q, a);
      if (t != kNoState && (t == q || (comp[t] == comp[q] && comp_size[comp[q]] > 1)))
        cyclic[comp[q]] = 1;
    }

  // States in topological order (predecessors first): Tarjan numbers
  // components in reverse topological order.
  std::vector<int32_t> topo(n);
  {
    std::vector<int32_t> pos(ncomp + 1, 0);
    for (int32_t q = 0; q < n; ++q) ++pos[ncomp - 1 - comp[q]];
    for (int32_t c = 1; c <= ncomp; ++c) pos[c] += pos[c - 1];
    for (int32_t q = n - 1; q >= 0; --q) topo[--pos[ncomp - 1 - comp[q]]] = q;
  }

  StateMeta meta;
  meta.in_level.assign(n, -1);
  meta.is_kernel.assign(n, 0);
  meta.m.assign(n, -1);
  meta.signature.assign(n, {});

  // in-level: forward longest path; infinite once any cycle feeds a state.
  std::vector<char> cycle_fed(n, 0);
  for (int32_t q : topo)
    if (cyclic[comp[q]]) cycle_fed[q] = 1;
  for (int32_t q : topo) {
    if (!cycle_fed[q]) continue;
    for (int32_t a = 0; a < m; ++a) {
      StateId t = d.next(q, a);
      if (t != kNoState) cycle_fed[t] = 1;
    }
  }
  meta.in_level[d.start()] = 0;
  for (int32_t q : topo) {
    if (cycle_fed[q]) continue;
    for (int32_t a = 0; a < m; ++a) {
      StateId t = d.next(q, a);
      if (t != kNoState && !cycle_fed[t])
        meta.in_level[t] = std::max(meta.in_level[t], meta.in_level[q] + 1);
    }
  }
  for (int32_t q = 0; q < n; ++q)
    if (cycle_fed[q]) {
      meta.in_level[q] = kInf;
      meta.is_kernel[q] = 1;
    }

  // m: backward longest accepted word; infinite when a productive cycle is
  // reachable.
  std::vector<char> live(n, 0);
  {
    std::vector<std::vector<int32_t>> preds(n);
    std::vector<int32_t> stack;
    for (int32_t q = 0; q < n; ++q)
      for (int32_t a = 0; a < m; ++a) {
        StateId t = d.next(q, a);
        if (t != kNoState) preds[t].push_back(q);
      }
    for (int32_t q = 0; q < n; ++q)
      if (d.accepting(q)) {
        live[q] = 1;
        stack.push_back(q);
      }
    while (!stack.empty()) {
      int32_t q = stack.back();
      stack.pop_back();
      for (int32_t p : preds[q])
        if (!live[p]) {
          live[p] = 1;
          stack.push_back(p);
        }
    }
  }
  // A state has an infinite right-language iff it reaches a cycle whose
  // component is live (can still reach an accepting state).
  std::vector<char> inf_lang(n, 0);
  for (int32_t i = n - 1; i >= 0; --i) {  // reverse topo: successors first
    int32_t q = topo[i];
    if (cyclic[comp[q]] && live[q]) inf_lang[q] = 1;
    for (int32_t a = 0; a < m; ++a) {
      StateId t = d.next(q, a);
      if (t != kNoState && inf_lang[t]) inf_lang[q] = 1;
    }
  }
  for (int32_t i = n - 1; i >= 0; --i) {
    int32_t q = topo[i];
    if (inf_lang[q]) {
      meta.m[q] = kInf;
      continue;
    }
    int64_t best = d.accepting(q) ? 0 : -1;
    for (int32_t a = 0; a < m; ++a) {
      StateId t = d.next(q, a);
      if (t != kNoState && meta.m[t] >= 0) best = std::max(best, meta.m[t] + 1);
    }
    meta.m[q] = best;
  }

  for (int32_t q = 0; q < n; ++q)
    for (int32_t a = 0; a < m; ++a) {
      StateId t = d.next(q, a);
      if (t != kNoState && meta.m[t] == kInf) meta.signature[q].push_back(a);
    }

  return meta;
}

}  // namespace dfamin
