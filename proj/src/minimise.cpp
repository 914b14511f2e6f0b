#include "dfamin/dfa.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace dfamin {

namespace {

// Hopcroft's partition refinement over a totalised copy of d (virtual sink
// at index n when the transition function is partial).  Returns one block
// id per state, including the sink at the back when present.
std::vector<int32_t> refine(const Dfa& d, bool* sink_added, int32_t* sink_block) {
  const int32_t n = d.num_states();
  const int32_t m = d.num_symbols();
  const bool need_sink = !d.total();
  const int32_t N = n + (need_sink ? 1 : 0);
  *sink_added = need_sink;

  auto succ = [&](int32_t q, int32_t a) -> int32_t {
    if (q == n) return n;
    StateId t = d.next(q, a);
    return t == kNoState ? n : t;
  };

  // Inverse transitions, grouped by symbol then target.
  std::vector<std::vector<int32_t>> inv(static_cast<size_t>(m) * N);
  for (int32_t q = 0; q < N; ++q)
    for (int32_t a = 0; a < m; ++a)
      inv[static_cast<size_t>(a) * N + succ(q, a)].push_back(q);

  std::vector<int32_t> elems(N), loc(N), blk(N);
  std::vector<int32_t> first, past, marked_cnt;
  std::iota(elems.begin(), elems.end(), 0);

  // Sort accepting states to the front so the two initial blocks are
  // contiguous ranges.
  std::stable_partition(elems.begin(), elems.end(),
                        [&](int32_t q) { return q < n && d.accepting(q); });
  int32_t acc = 0;
  while (acc < N && elems[acc] < n && d.accepting(elems[acc])) ++acc;
  int32_t nblocks = 0;
  if (acc > 0) {
    first.push_back(0);
    past.push_back(acc);
    ++nblocks;
  }
  if (acc < N) {
    first.push_back(acc);
    past.push_back(N);
    ++nblocks;
  }
  marked_cnt.assign(nblocks, 0);
  for (int32_t b = 0; b < nblocks; ++b)
    for (int32_t i = first[b]; i < past[b]; ++i) {
      blk[elems[i]] = b;
      loc[elems[i]] = i;
    }

  std::deque<std::pair<int32_t, int32_t>> work;
  std::vector<char> in_work;
  in_work.assign(static_cast<size_t>(2 * N + 2) * m, 0);
  auto push = [&](int32_t b, int32_t a) {
    if (!in_work[static_cast<size_t>(b) * m + a]) {
      in_work[static_cast<size_t>(b) * m + a] = 1;
      work.emplace_back(b, a);
    }
  };
  for (int32_t b = 0; b < nblocks; ++b)
    for (int32_t a = 0; a < m; ++a) push(b, a);

  std::vector<int32_t> touched;
  while (!work.empty()) {
    auto [b, a] = work.front();
    work.pop_front();
    in_work[static_cast<size_t>(b) * m + a] = 0;

    touched.clear();
    // Marking reorders elems in place, so walk a snapshot of the splitter.
    std::vector<int32_t> splitter(elems.begin() + first[b], elems.begin() + past[b]);
    for (int32_t e : splitter) {
      for (int32_t s : inv[static_cast<size_t>(a) * N + e]) {
        int32_t db = blk[s];
        if (loc[s] < first[db] + marked_cnt[db]) continue;  // already marked
        if (marked_cnt[db] == 0) touched.push_back(db);
        int32_t dst = first[db] + marked_cnt[db];
        std::swap(elems[loc[s]], elems[dst]);
        loc[elems[loc[s]]] = loc[s];
        loc[elems[dst]] = dst;
        ++marked_cnt[db];
      }
    }
    for (int32_t db : touched) {
      int32_t mc = marked_cnt[db];
      marked_cnt[db] = 0;
      if (mc == past[db] - first[db]) continue;  // whole block marked
      // New block: the marked front segment.
      int32_t nb = nblocks++;
      first.push_back(first[db]);
      past.push_back(first[db] + mc);
      marked_cnt.push_back(0);
      first[db] += mc;
      for (int32_t i = first[nb]; i < past[nb]; ++i) blk[elems[i]] = nb;
      if (static_cast<size_t>(2 * nblocks) * m > in_work.size())
        in_work.resize(static_cast<size_t>(4 * nblocks) * m, 0);
      bool nb_smaller = (past[nb] - first[nb]) <= (past[db] - first[db]);
      for (int32_t c = 0; c < m; ++c) {
        if (in_work[static_cast<size_t>(db) * m + c]) {
          push(nb, c);
        } else {
          push(nb_smaller ? nb : db, c);
        }
      }
    }
  }

  std::vector<int32_t> out(blk.begin(), blk.begin() + N);
  *sink_block = need_sink ? blk[n] : -1;
  return out;
}

}  // namespace

std::vector<int32_t> equivalence_classes(const Dfa& d) {
  bool sink_added;
  int32_t sink_block;
  std::vector<int32_t> blk = refine(d, &sink_added, &sink_block);
  blk.resize(d.num_states());
  return blk;
}

Dfa minimise(const Dfa& d, Mode mode) {
  Dfa t = trim(d, mode == Mode::kPartial);
  const int32_t n = t.num_states();
  const int32_t m = t.num_symbols();
  bool sink_added;
  int32_t sink_block;
  std::vector<int32_t> blk = refine(t, &sink_added, &sink_block);

  // The block whose right-language is empty, if any.
  int32_t dead_block = sink_block;
  if (!sink_added) {
    // A total machine may still contain dead states; find their block by
    // reachability to an accepting state.
    std::vector<char> live(n, 0);
    std::vector<std::vector<int32_t>> preds(n);
    std::vector<int32_t> stack;
    for (int32_t q = 0; q < n; ++q)
      for (int32_t a = 0; a < m; ++a) {
        StateId s = t.next(q, a);
        if (s != kNoState) preds[s].push_back(q);
      }
    for (int32_t q = 0; q < n; ++q)
      if (t.accepting(q)) {
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
    for (int32_t q = 0; q < n; ++q)
      if (!live[q]) {
        dead_block = blk[q];
        break;
      }
  }

  // Class-level transition function.  succ_blk(b, a) = kNoState stands for
  // the dead class.
  int32_t nblocks = 0;
  for (int32_t q = 0; q < n; ++q) nblocks = std::max(nblocks, blk[q] + 1);
  if (sink_added) nblocks = std::max(nblocks, sink_block + 1);
  std::vector<int32_t> rep(nblocks, -1);
  for (int32_t q = n - 1; q >= 0; --q) rep[blk[q]] = q;  // smallest member

  auto blk_succ = [&](int32_t b, int32_t a) -> int32_t {
    if (rep[b] == -1) return b;  // virtual sink block
    StateId s = t.next(rep[b], a);
    return s == kNoState ? (sink_added ? sink_block : dead_block) : blk[s];
  };

  bool keep_dead = mode == Mode::kTotal && (dead_block != -1);
  int32_t start_blk = blk[t.start()];

  // Canonical numbering: breadth-first from the start class in symbol order.
  std::vector<int32_t> order, newid(nblocks, -1);
  std::deque<int32_t> bfs;
  auto visit = [&](int32_t b) {
    if (newid[b] == -1) {
      newid[b] = static_cast<int32_t>(order.size());
      order.push_back(b);
      bfs.push_back(b);
    }
  };
  visit(start_blk);
  while (!bfs.empty()) {
    int32_t b = bfs.front();
    bfs.pop_front();
    for (int32_t a = 0; a < m; ++a) {
      int32_t s = blk_succ(b, a);
      if (s == dead_block && !keep_dead) continue;
      visit(s);
    }
  }

  Dfa out;
  for (int32_t a = 0; a < m; ++a) out.add_symbol(t.symbol_name(a));
  for (int32_t b : order) {
    if (rep[b] == -1) {
      std::string name = "_sink";
      while (t.state_id(name) != kNoState) name += "_";
      out.add_state(name);
    } else {
      out.add_state(t.state_name(rep[b]));
    }
  }
  out.set_start(newid[start_blk]);
  for (int32_t b : order) {
    if (rep[b] != -1) out.set_accepting(newid[b], t.accepting(rep[b]));
    for (int32_t a = 0; a < m; ++a) {
      int32_t s = blk_succ(b, a);
      if (s == dead_block && !keep_dead) continue;
      out.set_next(newid[b], a, newid[s]);
    }
  }
  return out;
}

bool equivalent(const Dfa& a, const Dfa& b) {
  // Union alphabet; a symbol missing on one side acts as an undefined
  // transition there.
  std::vector<std::string> syms;
  for (const auto& s : a.symbols()) syms.push_back(s);
  for (const auto& s : b.symbols())
    if (a.symbol_id(s) == -1) syms.push_back(s);
  std::sort(syms.begin(), syms.end());

  const int64_t na = a.num_states() + 1, nb = b.num_states() + 1;  // +1 dead
  auto enc = [&](int64_t u, int64_t v) { return u * nb + v; };
  std::vector<char> seen(static_cast<size_t>(na * nb), 0);
  std::deque<std::pair<int64_t, int64_t>> q;
  auto acc_a = [&](int64_t u) { return u < a.num_states() && a.accepting(static_cast<StateId>(u)); };
  auto acc_b = [&](int64_t v) { return v < b.num_states() && b.accepting(static_cast<StateId>(v)); };
  q.emplace_back(a.start(), b.start());
  seen[enc(a.start(), b.start())] = 1;
  while (!q.empty()) {
    auto [u, v] = q.front();
    q.pop_front();
    if (acc_a(u) != acc_b(v)) return false;
    for (const auto& s : syms) {
      SymbolId sa = a.symbol_id(s), sb = b.symbol_id(s);
      int64_t nu = a.num_states(), nv = b.num_states();
      if (u < a.num_states() && sa != -1 && a.next(static_cast<StateId>(u), sa) != kNoState)
        nu = a.next(static_cast<StateId>(u), sa);
      if (v < b.num_states() && sb != -1 && b.next(static_cast<StateId>(v), sb) != kNoState)
        nv = b.next(static_cast<StateId>(v), sb);
      if (!seen[enc(nu, nv)]) {
        seen[enc(nu, nv)] = 1;
        q.emplace_back(nu, nv);
      }
    }
  }
  return true;
}

}  // namespace dfamin
