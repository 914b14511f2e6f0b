#include "dfamin/distance.hpp"

#include <algorithm>

namespace dfamin {

DistanceTable distance_table(const Dfa& d) {
  // Work on a totalised copy so undefined transitions act as the empty
  // language.
  Dfa t = d;
  if (!t.total()) {
    std::string name = "_dead";
    while (t.state_id(name) != kNoState) name += "_";
    StateId sink = t.add_state(name);
    for (StateId q = 0; q <= sink; ++q)
      for (SymbolId a = 0; a < t.num_symbols(); ++a)
        if (t.next(q, a) == kNoState) t.set_next(q, a, sink);
  }

  const int32_t n = t.num_states();
  const int32_t m = t.num_symbols();
  std::vector<int32_t> cls = equivalence_classes(t);
  int32_t C = *std::max_element(cls.begin(), cls.end()) + 1;
  std::vector<int32_t> rep(C, -1);
  for (int32_t q = n - 1; q >= 0; --q) rep[cls[q]] = q;

  constexpr int64_t kUnset = -1;
  std::vector<int64_t> D(static_cast<size_t>(C) * C, kUnset);
  for (int32_t c = 0; c < C; ++c) D[static_cast<size_t>(c) * C + c] = 0;

  auto get = [&](int32_t c1, int32_t c2) { return D[static_cast<size_t>(c1) * C + c2]; };
  auto set = [&](int32_t c1, int32_t c2, int64_t v) {
    D[static_cast<size_t>(c1) * C + c2] = v;
    D[static_cast<size_t>(c2) * C + c1] = v;
  };

  // Round l marks exactly the pairs at distance l; a finite distance is
  // below the number of classes.
  std::vector<std::pair<int32_t, int32_t>> found;
  for (int64_t l = 1; l <= C; ++l) {
    found.clear();
    for (int32_t c1 = 0; c1 < C; ++c1)
      for (int32_t c2 = c1 + 1; c2 < C; ++c2) {
        if (get(c1, c2) != kUnset) continue;
        bool ok = true;
        for (int32_t a = 0; a < m && ok; ++a) {
          int32_t s1 = cls[t.next(rep[c1], a)];
          int32_t s2 = cls[t.next(rep[c2], a)];
          int64_t ds = get(s1, s2);
          ok = ds != kUnset && ds <= l - 1;
        }
        if (ok) found.emplace_back(c1, c2);
      }
    if (found.empty()) break;
    for (auto [c1, c2] : found) set(c1, c2, l);
  }

  DistanceTable out;
  out.n = d.num_states();
  out.d.assign(static_cast<size_t>(out.n) * out.n, kInf);
  for (StateId q = 0; q < out.n; ++q)
    for (StateId p = 0; p < out.n; ++p) {
      int64_t v = get(cls[q], cls[p]);
      out.at(q, p) = v == kUnset ? kInf : v;
    }
  return out;
}

}  // namespace dfamin
