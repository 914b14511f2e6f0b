#include "dfamin/kmin.hpp"

#include <algorithm>
#include <numeric>

namespace dfamin {

namespace {

int64_t sat_add(int64_t a, int64_t b) {
  if (a >= kInf || b >= kInf) return kInf;
  return a + b;
}

// Merge orientation and labelling share one preference order: larger
// in-level first, then the empty-language state, then the lower id.
struct StatePref {
  const std::vector<int64_t>* in_level;
  const std::vector<int64_t>* m;

  bool better(StateId a, StateId b) const {
    if ((*in_level)[a] != (*in_level)[b]) return (*in_level)[a] > (*in_level)[b];
    bool bot_a = (*m)[a] == -1, bot_b = (*m)[b] == -1;
    if (bot_a != bot_b) return bot_a;
    return a < b;
  }
};

}  // namespace

bool k_similar(const Dfa& d, StateId q, StateId p, int64_t k) {
  if (q < 0 || p < 0 || q >= d.num_states() || p >= d.num_states())
    throw ArgumentError("k_similar: unknown state");
  StateMeta meta = state_meta(d);
  DistanceTable dt = distance_table(d);
  int64_t lvl = std::min({k, meta.in_level[q], meta.in_level[p]});
  return sat_add(dt.at(q, p), lvl) <= k;
}

Dfa k_minimise_naive(const Dfa& d, int64_t k, Mode mode) {
  Dfa n = minimise(d, mode);
  const StateId ns = n.num_states();
  StateMeta meta = state_meta(n);
  DistanceTable dt = distance_table(n);
  StatePref pref{&meta.in_level, &meta.m};

  auto similar = [&](StateId q, StateId p) {
    int64_t lvl = std::min({k, meta.in_level[q], meta.in_level[p]});
    return sat_add(dt.at(q, p), lvl) <= k;
  };

  std::vector<StateId> into(ns);
  std::iota(into.begin(), into.end(), 0);
  auto find = [&](StateId q) {
    while (into[q] != q) {
      into[q] = into[into[q]];
      q = into[q];
    }
    return q;
  };

  // The relation is fixed up front; one sweep suffices because a state,
  // once merged away, stays gone.
  for (StateId q = 0; q < ns; ++q)
    for (StateId p = q + 1; p < ns; ++p) {
      if (find(q) != q || find(p) != p) continue;
      if (!similar(q, p)) continue;
      StateId keep = pref.better(q, p) ? q : p;
      StateId del = keep == q ? p : q;
      into[del] = keep;
    }

  Dfa out;
  for (SymbolId a = 0; a < n.num_symbols(); ++a) out.add_symbol(n.symbol_name(a));
  std::vector<StateId> remap(ns, kNoState);
  for (StateId q = 0; q < ns; ++q)
    if (find(q) == q) remap[q] = out.add_state(n.state_name(q));
  for (StateId q = 0; q < ns; ++q) {
    if (remap[q] == kNoState) continue;
    out.set_accepting(remap[q], n.accepting(q));
    for (SymbolId a = 0; a < n.num_symbols(); ++a) {
      StateId t = n.next(q, a);
      if (t != kNoState) out.set_next(remap[q], a, remap[find(t)]);
    }
  }
  out.set_start(remap[find(n.start())]);
  return out;
}

ValuesTable compute_values(const Dfa& d, const DistanceForest& f) {
  const StateId n = d.num_states();
  if (static_cast<StateId>(f.leaf_of.size()) != n)
    throw ArgumentError("compute_values: forest does not match the automaton");
  StateMeta meta = state_meta(d);
  StatePref pref{&meta.in_level, &meta.m};

  const int32_t N = static_cast<int32_t>(f.nodes.size());
  std::vector<int32_t> by_level(N);
  std::iota(by_level.begin(), by_level.end(), 0);
  std::sort(by_level.begin(), by_level.end(), [&](int32_t a, int32_t b) {
    return f.nodes[a].level < f.nodes[b].level;
  });

  ValuesTable vt;
  vt.label.assign(N, kNoState);
  vt.submit_depth.assign(n, kInf);
  vt.values.assign(n, kInf);

  // Children come before parents in level order; push labels upwards.
  for (int32_t v : by_level) {
    if (f.nodes[v].state != kNoState) vt.label[v] = f.nodes[v].state;
    int32_t p = f.nodes[v].parent;
    if (p == -1 || vt.label[v] == kNoState) continue;
    if (vt.label[p] == kNoState || pref.better(vt.label[v], vt.label[p]))
      vt.label[p] = vt.label[v];
  }
  // A state's label chain is a path up from its leaf; the submit node is
  // the parent of the chain's top.
  for (int32_t v = 0; v < N; ++v) {
    int32_t p = f.nodes[v].parent;
    if (vt.label[v] == kNoState) continue;
    if (p != -1 && vt.label[p] == vt.label[v]) continue;
    StateId q = vt.label[v];
    if (p != -1) vt.submit_depth[q] = f.nodes[p].level;
  }
  for (StateId q = 0; q < n; ++q)
    vt.values[q] = sat_add(meta.in_level[q], vt.submit_depth[q]);
  return vt;
}

StateId k_ancestor(const ValuesTable& vt, const DistanceForest& f, StateId q,
                   int64_t k) {
  int32_t v = f.leaf_of[q];
  while (v != -1 && vt.values[vt.label[v]] <= k) v = f.nodes[v].parent;
  if (v == -1)
    throw ArgumentError("k_ancestor: no ancestor above the threshold");
  return vt.label[v];
}

namespace {

// Per-state merge targets: values(q) > k keeps q; otherwise the label of
// the first ancestor of leaf q whose label has values > k.
std::vector<StateId> merge_targets(const DistanceForest& f, const ValuesTable& vt,
                                   int64_t k) {
  const int32_t N = static_cast<int32_t>(f.nodes.size());
  std::vector<int32_t> by_level(N);
  std::iota(by_level.begin(), by_level.end(), 0);
  std::sort(by_level.begin(), by_level.end(), [&](int32_t a, int32_t b) {
    return f.nodes[a].level > f.nodes[b].level;
  });
  std::vector<StateId> anc(N, kNoState);
  for (int32_t v : by_level) {
    int32_t p = f.nodes[v].parent;
    if (vt.label[v] != kNoState && vt.values[vt.label[v]] > k)
      anc[v] = vt.label[v];
    else if (p != -1)
      anc[v] = anc[p];
  }
  std::vector<StateId> target(f.leaf_of.size());
  for (size_t q = 0; q < f.leaf_of.size(); ++q) target[q] = anc[f.leaf_of[q]];
  return target;
}

Dfa apply_targets(const Dfa& n, const std::vector<StateId>& target) {
  Dfa out;
  for (SymbolId a = 0; a < n.num_symbols(); ++a) out.add_symbol(n.symbol_name(a));
  std::vector<StateId> remap(n.num_states(), kNoState);
  for (StateId q = 0; q < n.num_states(); ++q)
    if (target[q] == q) remap[q] = out.add_state(n.state_name(q));
  for (StateId q = 0; q < n.num_states(); ++q) {
    if (remap[q] == kNoState) continue;
    out.set_accepting(remap[q], n.accepting(q));
    for (SymbolId a = 0; a < n.num_symbols(); ++a) {
      StateId t = n.next(q, a);
      if (t != kNoState) out.set_next(remap[q], a, remap[target[t]]);
    }
  }
  out.set_start(remap[target[n.start()]]);
  return out;
}

}  // namespace

Dfa k_minimise(const Dfa& d, int64_t k, Mode mode) {
  Dfa n = minimise(d, mode);
  DistanceForest f = build_distance_forest(n);
  ValuesTable vt = compute_values(n, f);
  return apply_targets(n, merge_targets(f, vt, k));
}

std::vector<int64_t> sizes_for_all_k(const Dfa& d, Mode mode) {
  Dfa n = minimise(d, mode);
  const int64_t ns = n.num_states();
  DistanceForest f = build_distance_forest(n);
  ValuesTable vt = compute_values(n, f);
  std::vector<int64_t> cnt(2 * ns + 2, 0);  // last bucket: values > 2n
  for (StateId q = 0; q < ns; ++q)
    ++cnt[std::min<int64_t>(vt.values[q], 2 * ns + 1)];
  std::vector<int64_t> sizes(2 * ns + 1);
  int64_t below = 0;
  for (int64_t k = 0; k <= 2 * ns; ++k) {
    below += cnt[k];
    sizes[k] = ns - below;
  }
  return sizes;
}

Dfa hyper_minimise(const Dfa& d, Mode mode) {
  Dfa n = minimise(d, mode);
  return k_minimise(n, 2 * static_cast<int64_t>(n.num_states()), mode);
}

AllKSweep::AllKSweep(const Dfa& d, Mode mode) : base_(minimise(d, mode)) {
  const StateId n = base_.num_states();
  const SymbolId m = base_.num_symbols();
  DistanceForest f = build_distance_forest(base_);
  ValuesTable vt = compute_values(base_, f);
  max_k_ = 2 * static_cast<int64_t>(n);
  alive_count_ = n;
  start_slot_ = base_.start();

  // A state dies at phase values(q), merging into its submit state, whose
  // values are strictly larger (labels up a path have increasing values).
  dying_at_.assign(max_k_ + 1, {});
  merge_target_.assign(n, kNoState);
  for (StateId q = 0; q < n; ++q) {
    if (vt.values[q] >= kInf) continue;
    merge_target_[q] = k_ancestor(vt, f, q, vt.values[q]);
    dying_at_[vt.values[q]].push_back(q);
  }

  slot_of_.resize(n);
  ident_of_.resize(n);
  std::iota(slot_of_.begin(), slot_of_.end(), 0);
  std::iota(ident_of_.begin(), ident_of_.end(), 0);
  alive_.assign(n, 1);
  rank_.assign(n, 1);
  next_.assign(static_cast<size_t>(n) * m, kNoState);
  accepting_.assign(n, 0);
  incoming_.assign(n, {});
  for (StateId q = 0; q < n; ++q) {
    accepting_[q] = base_.accepting(q);
    for (SymbolId a = 0; a < m; ++a) {
      StateId t = base_.next(q, a);
      next_[static_cast<size_t>(q) * m + a] = t;
      if (t != kNoState) incoming_[t].push_back(static_cast<size_t>(q) * m + a);
    }
  }
  for (StateId q : dying_at_[0]) merge_into(q, merge_target_[q]);
}

void AllKSweep::merge_into(StateId q, StateId t) {
  const SymbolId m = base_.num_symbols();
  StateId qs = slot_of_[q], ts = slot_of_[t];
  auto redirect = [&](StateId src, StateId dst) {
    for (int64_t e : incoming_[src]) {
      if (next_[e] != src) continue;  // stale entry
      next_[e] = dst;
      incoming_[dst].push_back(e);
    }
    incoming_[src].clear();
    incoming_[src].shrink_to_fit();
  };
  if (rank_[qs] > rank_[ts]) {
    // Keep t's role in q's slot: cheaper, as fewer transitions point at t.
    redirect(ts, qs);
    for (SymbolId a = 0; a < m; ++a) {
      StateId dst = next_[static_cast<size_t>(ts) * m + a];
      next_[static_cast<size_t>(qs) * m + a] = dst;
      next_[static_cast<size_t>(ts) * m + a] = kNoState;
      if (dst != kNoState) incoming_[dst].push_back(static_cast<size_t>(qs) * m + a);
    }
    accepting_[qs] = accepting_[ts];
    rank_[qs] += rank_[ts];
    alive_[ts] = 0;
    slot_of_[t] = qs;
    ident_of_[qs] = t;
    if (start_slot_ == ts) start_slot_ = qs;
  } else {
    redirect(qs, ts);
    for (SymbolId a = 0; a < m; ++a) next_[static_cast<size_t>(qs) * m + a] = kNoState;
    rank_[ts] += rank_[qs];
    alive_[qs] = 0;
    if (start_slot_ == qs) start_slot_ = ts;
  }
  --alive_count_;
}

void AllKSweep::advance() {
  if (done()) throw ArgumentError("all-k sweep: already at the last phase");
  ++k_;
  for (StateId q : dying_at_[k_]) merge_into(q, merge_target_[q]);
}

Dfa AllKSweep::materialise() const {
  const SymbolId m = base_.num_symbols();
  Dfa out;
  for (SymbolId a = 0; a < m; ++a) out.add_symbol(base_.symbol_name(a));
  std::vector<StateId> remap(base_.num_states(), kNoState);
  for (StateId s = 0; s < base_.num_states(); ++s)
    if (alive_[s]) remap[s] = out.add_state(base_.state_name(ident_of_[s]));
  for (StateId s = 0; s < base_.num_states(); ++s) {
    if (!alive_[s]) continue;
    out.set_accepting(remap[s], accepting_[s]);
    for (SymbolId a = 0; a < m; ++a) {
      StateId t = next_[static_cast<size_t>(s) * m + a];
      if (t != kNoState) out.set_next(remap[s], a, remap[t]);
    }
  }
  out.set_start(remap[start_slot_]);
  return out;
}

}  // namespace dfamin
