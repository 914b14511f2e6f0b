#include "dfamin/oracle.hpp"

#include <algorithm>
#include <functional>

namespace dfamin {

namespace {

int64_t pow_clamped(int64_t base, int64_t exp, int64_t clamp) {
  int64_t r = 1;
  for (int64_t i = 0; i < exp; ++i) {
    if (r > clamp / std::max<int64_t>(base, 1)) return clamp + 1;
    r *= base;
  }
  return r;
}

void check_budget(int64_t alphabet, int64_t max_len, int64_t budget) {
  int64_t total = 0;
  for (int64_t l = 0; l <= max_len; ++l) {
    total += pow_clamped(alphabet, l, budget);
    if (total > budget)
      throw ResourceError("word enumeration budget exceeded (" +
                          std::to_string(budget) + " words)");
  }
}

}  // namespace

WordList bf_language(const Dfa& d, int64_t max_len, int64_t budget) {
  check_budget(d.num_symbols(), max_len, budget);
  WordList out;
  out.max_len = max_len;
  std::vector<std::pair<std::vector<SymbolId>, StateId>> frontier;
  frontier.emplace_back(std::vector<SymbolId>{}, d.start());
  for (int64_t len = 0; len <= max_len; ++len) {
    for (const auto& [w, q] : frontier)
      if (d.accepting(q)) out.words.push_back(w);
    if (len == max_len) break;
    std::vector<std::pair<std::vector<SymbolId>, StateId>> next;
    for (const auto& [w, q] : frontier)
      for (SymbolId a = 0; a < d.num_symbols(); ++a) {
        StateId t = d.next(q, a);
        if (t == kNoState) continue;
        auto w2 = w;
        w2.push_back(a);
        next.emplace_back(std::move(w2), t);
      }
    frontier = std::move(next);
  }
  return out;
}

int64_t bf_distance(const Dfa& d, StateId q, StateId p, int64_t budget) {
  (void)budget;  // per-length pair sets replace raw word enumeration
  const int64_t n = d.num_states();
  const int64_t N = n + 1;  // implicit dead state at index n

  // For each word length, which state pairs are reached from (q, p)?
  // The languages disagree at that length iff some reached pair has
  // exactly one accepting side.  Any disagreement of length >= n can be
  // cycle-trimmed below N^2 + n, so that horizon is exhaustive.
  const int64_t horizon = N * N + n;
  auto enc = [&](StateId u, StateId v) {
    return (u == kNoState ? n : u) * N + (v == kNoState ? n : v);
  };
  auto acc = [&](StateId u) { return u != kNoState && d.accepting(u); };
  std::vector<char> cur(N * N, 0), nxt(N * N, 0);
  cur[enc(q, p)] = 1;
  int64_t last = -1;
  for (int64_t len = 0; len <= horizon; ++len) {
    bool any = false;
    for (StateId u = 0; u <= n; ++u)
      for (StateId v = 0; v <= n; ++v) {
        if (!cur[u * N + v]) continue;
        any = true;
        if (acc(u == n ? kNoState : u) != acc(v == n ? kNoState : v)) last = len;
      }
    if (!any || len == horizon) break;
    std::fill(nxt.begin(), nxt.end(), 0);
    for (StateId u = 0; u <= n; ++u)
      for (StateId v = 0; v <= n; ++v) {
        if (!cur[u * N + v] || (u == n && v == n)) continue;
        for (SymbolId a = 0; a < d.num_symbols(); ++a)
          nxt[enc(u == n ? kNoState : d.next(u, a),
                  v == n ? kNoState : d.next(v, a))] = 1;
      }
    cur.swap(nxt);
  }
  if (last == -1) return 0;
  // A finite distance is at most n once the dead state is counted, so a
  // disagreement at length n or later means the distance is infinite.
  if (last >= n) return kInf;
  return last + 1;
}

std::vector<int64_t> bf_in_levels(const Dfa& d) {
  const int64_t n = d.num_states();
  // Longest-walk value iteration; a value that grows to n or more can only
  // come from a pumped cycle, so it stands for infinity.
  std::vector<int64_t> lvl(n, -1);
  lvl[d.start()] = 0;
  for (int64_t round = 0; round < 3 * n + 3; ++round) {
    for (StateId q = 0; q < n; ++q) {
      if (lvl[q] < 0) continue;
      for (SymbolId a = 0; a < d.num_symbols(); ++a) {
        StateId t = d.next(q, a);
        if (t != kNoState)
          lvl[t] = std::max(lvl[t], std::min(lvl[q] + 1, 3 * n + 3));
      }
    }
  }
  for (int64_t& v : lvl)
    if (v >= n) v = kInf;
  return lvl;
}

std::set<StateId> greedy_max_dissimilar(const Dfa& d, int64_t k, int64_t budget) {
  std::vector<int64_t> lvl = bf_in_levels(d);
  const StateId n = d.num_states();
  std::vector<std::vector<int64_t>> dist(n, std::vector<int64_t>(n, 0));
  for (StateId q = 0; q < n; ++q)
    for (StateId p = q + 1; p < n; ++p)
      dist[q][p] = dist[p][q] = bf_distance(d, q, p, budget);

  auto similar = [&](StateId q, StateId p) {
    if (dist[q][p] >= kInf) return false;
    int64_t w = std::min({k, lvl[q], lvl[p]});
    return dist[q][p] + w <= k;
  };
  std::set<StateId> chosen;
  for (StateId q = 0; q < n; ++q) {
    bool ok = true;
    for (StateId p : chosen)
      if (similar(q, p)) {
        ok = false;
        break;
      }
    if (ok) chosen.insert(q);
  }
  return chosen;
}

WordList bf_symdiff(const Dfa& a, const Dfa& b, int64_t max_len, int64_t budget) {
  // Union alphabet, sorted so the output order is canonical.
  std::vector<std::string> syms(a.symbols());
  for (const auto& s : b.symbols())
    if (a.symbol_id(s) == -1) syms.push_back(s);
  std::sort(syms.begin(), syms.end());
  check_budget(static_cast<int64_t>(syms.size()), max_len, budget);

  WordList out;
  out.max_len = max_len;
  // Walk words over the union alphabet; emit those accepted by exactly one
  // automaton.  Symbols are reported using union-alphabet indices matching
  // the sorted 'syms'.
  std::function<void(StateId, StateId, std::vector<SymbolId>&)> walk =
      [&](StateId u, StateId v, std::vector<SymbolId>& w) {
        bool au = u != kNoState && a.accepting(u);
        bool bv = v != kNoState && b.accepting(v);
        if (au != bv) out.words.push_back(w);
        if (static_cast<int64_t>(w.size()) == max_len) return;
        if (u == kNoState && v == kNoState) return;
        for (size_t i = 0; i < syms.size(); ++i) {
          SymbolId sa = a.symbol_id(syms[i]);
          SymbolId sb = b.symbol_id(syms[i]);
          StateId nu = (u == kNoState || sa == -1) ? kNoState : a.next(u, sa);
          StateId nv = (v == kNoState || sb == -1) ? kNoState : b.next(v, sb);
          w.push_back(static_cast<SymbolId>(i));
          walk(nu, nv, w);
          w.pop_back();
        }
      };
  std::vector<SymbolId> w;
  walk(a.start(), b.start(), w);
  std::stable_sort(out.words.begin(), out.words.end(),
                   [](const auto& x, const auto& y) {
                     if (x.size() != y.size()) return x.size() < y.size();
                     return x < y;
                   });
  return out;
}

}  // namespace dfamin
