#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>

#include "dfamin/kmin.hpp"

// Symmetric-difference analysis on the product automaton.  Both inputs are
// run in lockstep over the union alphabet; a missing transition (or a
// letter foreign to one automaton) sends that side to an implicit dead
// state.  A product state is discrepant when exactly one side accepts.

namespace dfamin {

namespace {

struct Product {
  int32_t symbols = 0;
  int32_t start = 0;
  std::vector<int32_t> next;  // states x symbols; -1 = both sides dead
  std::vector<char> disc;
  int32_t size() const { return static_cast<int32_t>(disc.size()); }
};

Product build_product(const Dfa& a, const Dfa& b) {
  std::set<std::string> letters(a.symbols().begin(), a.symbols().end());
  letters.insert(b.symbols().begin(), b.symbols().end());
  std::vector<std::pair<SymbolId, SymbolId>> sym;
  for (const std::string& s : letters) sym.emplace_back(a.symbol_id(s), b.symbol_id(s));
  const int32_t m = static_cast<int32_t>(sym.size());

  Product p;
  p.symbols = m;
  std::map<std::pair<StateId, StateId>, int32_t> index;
  std::vector<std::pair<StateId, StateId>> states;
  auto intern = [&](StateId qa, StateId qb) {
    auto [it, fresh] = index.emplace(std::make_pair(qa, qb), static_cast<int32_t>(states.size()));
    if (fresh) states.emplace_back(qa, qb);
    return it->second;
  };
  p.start = intern(a.start(), b.start());
  for (int32_t v = 0; v < static_cast<int32_t>(states.size()); ++v) {
    auto [qa, qb] = states[v];
    p.disc.push_back((qa != kNoState && a.accepting(qa)) !=
                     (qb != kNoState && b.accepting(qb)));
    for (int32_t i = 0; i < m; ++i) {
      StateId na = qa != kNoState && sym[i].first != -1 ? a.next(qa, sym[i].first) : kNoState;
      StateId nb = qb != kNoState && sym[i].second != -1 ? b.next(qb, sym[i].second) : kNoState;
      p.next.push_back(na == kNoState && nb == kNoState ? -1 : intern(na, nb));
    }
  }
  return p;
}

// Nodes from which a discrepancy is reachable.
std::vector<char> reaches_disc(const Product& p) {
  std::vector<std::vector<int32_t>> rev(p.size());
  for (int32_t v = 0; v < p.size(); ++v)
    for (int32_t i = 0; i < p.symbols; ++i) {
      int32_t w = p.next[static_cast<size_t>(v) * p.symbols + i];
      if (w != -1) rev[w].push_back(v);
    }
  std::vector<char> mark(p.size(), 0);
  std::queue<int32_t> bfs;
  for (int32_t v = 0; v < p.size(); ++v)
    if (p.disc[v]) {
      mark[v] = 1;
      bfs.push(v);
    }
  while (!bfs.empty()) {
    int32_t v = bfs.front();
    bfs.pop();
    for (int32_t w : rev[v])
      if (!mark[w]) {
        mark[w] = 1;
        bfs.push(w);
      }
  }
  return mark;
}

// Topological order of the error-relevant subgraph; empty optional stands
// for a cycle, i.e. unboundedly long error words.
std::optional<std::vector<int32_t>> topo_relevant(const Product& p,
                                                  const std::vector<char>& rel) {
  std::vector<int32_t> indeg(p.size(), 0);
  for (int32_t v = 0; v < p.size(); ++v) {
    if (!rel[v]) continue;
    for (int32_t i = 0; i < p.symbols; ++i) {
      int32_t w = p.next[static_cast<size_t>(v) * p.symbols + i];
      if (w != -1 && rel[w]) ++indeg[w];
    }
  }
  std::vector<int32_t> order;
  std::queue<int32_t> ready;
  int32_t total = 0;
  for (int32_t v = 0; v < p.size(); ++v)
    if (rel[v]) {
      ++total;
      if (indeg[v] == 0) ready.push(v);
    }
  while (!ready.empty()) {
    int32_t v = ready.front();
    ready.pop();
    order.push_back(v);
    for (int32_t i = 0; i < p.symbols; ++i) {
      int32_t w = p.next[static_cast<size_t>(v) * p.symbols + i];
      if (w != -1 && rel[w] && --indeg[w] == 0) ready.push(w);
    }
  }
  if (static_cast<int32_t>(order.size()) != total) return std::nullopt;
  return order;
}

}  // namespace

SymdiffResult count_symdiff(const Dfa& a, const Dfa& b, int64_t max_len) {
  Product p = build_product(a, b);
  int64_t bound = max_len;
  if (max_len == kAutoLen) {
    std::vector<char> rel = reaches_disc(p);
    if (!topo_relevant(p, rel))
      throw InfiniteDifferenceError("count_symdiff: symmetric difference is infinite");
    // Finite case: an error path never revisits a product state.
    bound = p.size() - 1;
  }

  SymdiffResult res;
  res.count = 0;
  std::vector<BigInt> cnt(p.size()), nxt(p.size());
  cnt[p.start] = 1;
  for (int64_t len = 0; len <= bound; ++len) {
    for (int32_t v = 0; v < p.size(); ++v)
      if (p.disc[v] && cnt[v] != 0) {
        res.count += cnt[v];
        res.max_error_len = len;
      }
    if (len == bound) break;
    std::fill(nxt.begin(), nxt.end(), BigInt(0));
    for (int32_t v = 0; v < p.size(); ++v) {
      if (cnt[v] == 0) continue;
      for (int32_t i = 0; i < p.symbols; ++i) {
        int32_t w = p.next[static_cast<size_t>(v) * p.symbols + i];
        if (w != -1) nxt[w] += cnt[v];
      }
    }
    cnt.swap(nxt);
  }
  return res;
}

int64_t similarity_bound(const Dfa& a, const Dfa& b) {
  Product p = build_product(a, b);
  std::vector<char> rel = reaches_disc(p);
  if (!rel[p.start]) return 0;
  auto order = topo_relevant(p, rel);
  if (!order) return kInf;
  std::vector<int64_t> longest(p.size(), -1);
  longest[p.start] = 0;
  int64_t best = -1;
  for (int32_t v : *order) {
    if (longest[v] < 0) continue;
    if (p.disc[v]) best = std::max(best, longest[v]);
    for (int32_t i = 0; i < p.symbols; ++i) {
      int32_t w = p.next[static_cast<size_t>(v) * p.symbols + i];
      if (w != -1 && rel[w]) longest[w] = std::max(longest[w], longest[v] + 1);
    }
  }
  return best + 1;
}

}  // namespace dfamin
