#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "dfamin/hardness.hpp"

// Graph-to-DFA reductions.  Both families branch from a junction into one
// path per vertex; an edge letter then compares the two endpoint paths.  A
// proper 3-colouring lets the per-vertex paths collapse into three colour
// paths at a predictable error count, so minimising the instance within
// budget answers 3-colourability.

namespace dfamin {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

std::string strip_comment(const std::string& line) {
  size_t h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

std::string edge_letter(const Graph& g, size_t e) {
  return g.edge_low(e) + "-" + g.edge_high(e);
}

// Fresh symbol name: base, or base with underscores appended.
std::string fresh_symbol(const Dfa& d, std::string base) {
  while (d.symbol_id(base) != -1) base += "_";
  return base;
}

std::string fresh_state(const Dfa& d, std::string base) {
  while (d.state_id(base) != kNoState) base += "_";
  return base;
}

// The common alphabet {a, b} + vertex letters + edge letters, with a
// collision check (a vertex named "a" would alias the chain letter).
struct Letters {
  SymbolId a, b;
  std::vector<SymbolId> vert;
  std::vector<SymbolId> edge;
};

Letters add_letters(Dfa& d, const Graph& g) {
  std::set<std::string> seen = {"a", "b"};
  Letters L;
  L.a = d.add_symbol("a");
  L.b = d.add_symbol("b");
  for (const std::string& v : g.vertices) {
    if (!seen.insert(v).second)
      throw ArgumentError("graph letter '" + v + "' collides with another letter");
    L.vert.push_back(d.add_symbol(v));
  }
  for (size_t e = 0; e < g.edges.size(); ++e) {
    std::string name = edge_letter(g, e);
    if (!seen.insert(name).second)
      throw ArgumentError("graph letter '" + name + "' collides with another letter");
    L.edge.push_back(d.add_symbol(name));
  }
  return L;
}

void fill_with(Dfa& d, StateId sink) {
  for (StateId q = 0; q < d.num_states(); ++q)
    for (SymbolId a = 0; a < d.num_symbols(); ++a)
      if (d.next(q, a) == kNoState) d.set_next(q, a, sink);
}

void check_coloring(const Graph& g, const Coloring& c) {
  if (c.of.size() != g.vertices.size())
    throw ColoringError("colouring does not cover every vertex");
  for (int32_t col : c.of)
    if (col < 1 || col > 3) throw ColoringError("colour out of range 1..3");
  int32_t e = monochromatic_edge(g, c);
  if (e != -1)
    throw ColoringError("edge " + g.edge_low(e) + " " + g.edge_high(e) +
                        " is monochromatic");
}

}  // namespace

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<std::pair<std::string, std::string>> raw;
  std::set<std::string> verts;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> toks = tokens_of(strip_comment(line));
    if (toks.empty()) continue;
    if (toks.size() != 2)
      throw ParseError("graph line " + std::to_string(lineno) +
                       ": expected two vertex tokens");
    if (toks[0] == toks[1])
      throw ParseError("graph line " + std::to_string(lineno) + ": self-loop at '" +
                       toks[0] + "'");
    verts.insert(toks[0]);
    verts.insert(toks[1]);
    raw.emplace_back(toks[0], toks[1]);
  }

  Graph g;
  g.vertices.assign(verts.begin(), verts.end());
  std::map<std::string, int32_t> index;
  for (size_t i = 0; i < g.vertices.size(); ++i)
    index[g.vertices[i]] = static_cast<int32_t>(i);
  std::set<std::pair<int32_t, int32_t>> seen;
  for (const auto& [u, v] : raw) {
    int32_t i = index[u], j = index[v];
    if (i > j) std::swap(i, j);
    if (!seen.insert({i, j}).second)
      throw ParseError("duplicate edge " + g.vertices[i] + " " + g.vertices[j]);
  }
  g.edges.assign(seen.begin(), seen.end());
  return g;
}

std::string serialize_graph(const Graph& g) {
  std::string out;
  for (size_t e = 0; e < g.edges.size(); ++e)
    out += g.edge_low(e) + " " + g.edge_high(e) + "\n";
  return out;
}

Coloring parse_coloring(const Graph& g, const std::string& text) {
  std::map<std::string, int32_t> index;
  for (size_t i = 0; i < g.vertices.size(); ++i)
    index[g.vertices[i]] = static_cast<int32_t>(i);

  Coloring c;
  c.of.assign(g.vertices.size(), 0);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> toks = tokens_of(strip_comment(line));
    if (toks.empty()) continue;
    if (toks.size() != 2)
      throw ParseError("colouring line " + std::to_string(lineno) +
                       ": expected vertex and colour");
    auto it = index.find(toks[0]);
    if (it == index.end())
      throw ParseError("colouring line " + std::to_string(lineno) +
                       ": unknown vertex '" + toks[0] + "'");
    int32_t col = 0;
    try {
      size_t pos = 0;
      col = std::stoi(toks[1], &pos);
      if (pos != toks[1].size()) col = 0;
    } catch (const std::exception&) {
      col = 0;
    }
    if (col < 1 || col > 3)
      throw ParseError("colouring line " + std::to_string(lineno) +
                       ": colour must be 1, 2 or 3");
    if (c.of[it->second] != 0)
      throw ParseError("colouring line " + std::to_string(lineno) +
                       ": vertex '" + toks[0] + "' coloured twice");
    c.of[it->second] = col;
  }
  for (size_t i = 0; i < c.of.size(); ++i)
    if (c.of[i] == 0)
      throw ParseError("vertex '" + g.vertices[i] + "' has no colour");
  return c;
}

int32_t monochromatic_edge(const Graph& g, const Coloring& c) {
  for (size_t e = 0; e < g.edges.size(); ++e)
    if (c.of[g.edges[e].first] == c.of[g.edges[e].second])
      return static_cast<int32_t>(e);
  return -1;
}

Dfa gadget_congruence(const Dfa& d, const std::vector<std::vector<StateId>>& partition) {
  const StateId n = d.num_states();
  const SymbolId m = d.num_symbols();

  std::vector<int32_t> cls(n, -1);
  int32_t num_classes = 0;
  for (const auto& c : partition) {
    if (c.empty()) throw ArgumentError("congruence gadget: empty class");
    for (StateId q : c) {
      if (q < 0 || q >= n) throw ArgumentError("congruence gadget: state out of range");
      if (cls[q] != -1)
        throw ArgumentError("congruence gadget: state '" + d.state_name(q) +
                            "' listed twice");
      cls[q] = num_classes;
    }
    ++num_classes;
  }
  for (StateId q = 0; q < n; ++q)
    if (cls[q] == -1) cls[q] = num_classes++;

  // The partition must be closed under the transitions; an undefined
  // successor only matches another undefined successor.
  auto succ_class = [&](StateId q, SymbolId a) {
    StateId t = d.next(q, a);
    return t == kNoState ? -2 : cls[t];
  };
  for (const auto& c : partition) {
    for (SymbolId a = 0; a < m; ++a) {
      int32_t want = succ_class(c[0], a);
      for (size_t i = 1; i < c.size(); ++i)
        if (succ_class(c[i], a) != want)
          throw ArgumentError("congruence gadget: class of '" + d.state_name(c[0]) +
                              "' not closed at state '" + d.state_name(c[i]) +
                              "' on letter '" + d.symbol_name(a) + "'");
    }
  }

  Dfa out = d;
  SymbolId t = out.add_symbol(fresh_symbol(out, "t"));
  SymbolId x = out.add_symbol(fresh_symbol(out, "x"));
  std::vector<StateId> ring(num_classes);
  for (int32_t i = 0; i < num_classes; ++i)
    ring[i] = out.add_state(fresh_state(out, "g" + std::to_string(i + 1)));
  for (int32_t i = 0; i < num_classes; ++i)
    out.set_next(ring[i], x, ring[(i + 1) % num_classes]);
  out.set_accepting(ring[num_classes - 1], true);
  for (StateId q = 0; q < n; ++q) out.set_next(q, t, ring[cls[q]]);
  return out;
}

Dfa gadget_inlevel(const Dfa& d, const std::vector<std::pair<StateId, int64_t>>& minlevel) {
  if (d.start() == kNoState) throw ArgumentError("in-level gadget: no start state");
  int64_t top = 0;
  std::set<StateId> seen;
  for (const auto& [q, lvl] : minlevel) {
    if (q < 0 || q >= d.num_states())
      throw ArgumentError("in-level gadget: state out of range");
    if (q == d.start())
      throw ArgumentError("in-level gadget: the start state may not be a target");
    if (lvl < 1) throw ArgumentError("in-level gadget: level must be positive");
    if (!seen.insert(q).second)
      throw ArgumentError("in-level gadget: state '" + d.state_name(q) +
                          "' listed twice");
    top = std::max(top, lvl);
  }
  if (top == 0) return d;

  Dfa out = d;
  SymbolId dl = out.add_symbol(fresh_symbol(out, "d"));
  std::vector<StateId> chain(top);
  for (int64_t i = 0; i < top; ++i)
    chain[i] = out.add_state(fresh_state(out, "d" + std::to_string(i + 1)));
  out.set_next(d.start(), dl, chain[0]);
  for (int64_t i = 0; i + 1 < top; ++i) out.set_next(chain[i], dl, chain[i + 1]);
  for (const auto& [q, lvl] : minlevel) {
    if (lvl < 2) continue;  // level 1 needs no extra entry
    SymbolId e = out.add_symbol(fresh_symbol(out, "d_" + d.state_name(q)));
    out.set_next(chain[lvl - 2], e, q);
  }
  return out;
}

HardnessInstance build_hyper_instance(const Graph& g) {
  const int32_t nv = static_cast<int32_t>(g.vertices.size());
  if (nv == 0) throw ArgumentError("hyper instance: empty graph");
  std::vector<int32_t> degree(nv, 0);
  for (const auto& [i, j] : g.edges) ++degree[i], ++degree[j];
  for (int32_t v = 0; v < nv; ++v)
    if (degree[v] == 0)
      throw ArgumentError("hyper instance: vertex '" + g.vertices[v] +
                          "' has no incident edge");

  Dfa d;
  Letters L = add_letters(d, g);
  StateId top = d.add_state("top");
  StateId bot = d.add_state("bot");
  StateId inf = d.add_state("inf");
  StateId smiley = d.add_state("smiley");
  StateId frown = d.add_state("frown");
  std::vector<StateId> V(nv);
  for (int32_t v = 0; v < nv; ++v) V[v] = d.add_state("v_" + g.vertices[v]);
  StateId sm[4], bs[4], fr[4];
  for (int j = 1; j <= 3; ++j) {
    sm[j] = d.add_state("smiley_" + std::to_string(j));
    bs[j] = d.add_state("bsmiley_" + std::to_string(j));
    fr[j] = d.add_state("frown_" + std::to_string(j));
  }
  d.set_start(top);
  d.set_accepting(inf, true);
  d.set_accepting(smiley, true);

  for (int32_t v = 0; v < nv; ++v) d.set_next(top, L.vert[v], V[v]);
  d.set_next(inf, L.a, sm[1]);
  d.set_next(inf, L.b, fr[1]);
  for (size_t e = 0; e < g.edges.size(); ++e) {
    auto [i, j] = g.edges[e];
    for (int32_t v = 0; v < nv; ++v)
      d.set_next(V[v], L.edge[e], v == i ? sm[1] : v == j ? fr[1] : bs[1]);
  }
  d.set_next(bs[1], L.a, bs[2]);
  d.set_next(bs[2], L.a, bs[3]);
  d.set_next(bs[3], L.a, smiley);
  d.set_next(bs[3], L.b, frown);
  d.set_next(sm[1], L.a, sm[2]);
  d.set_next(sm[2], L.a, sm[3]);
  d.set_next(sm[3], L.a, smiley);
  d.set_next(sm[3], L.b, smiley);
  d.set_next(smiley, L.b, inf);
  d.set_next(fr[1], L.a, fr[2]);
  d.set_next(fr[2], L.a, fr[3]);
  d.set_next(fr[3], L.a, frown);
  d.set_next(fr[3], L.b, frown);
  d.set_next(frown, L.b, inf);
  fill_with(d, bot);

  HardnessInstance inst;
  inst.dfa = std::move(d);
  inst.family = "hyper";
  inst.errors_low = BigInt(g.edges.size()) * std::max(nv - 2, 0);
  inst.errors_high = inst.errors_low;
  return inst;
}

Dfa build_hyper_colored(const Graph& g, const Coloring& c) {
  check_coloring(g, c);
  const int32_t nv = static_cast<int32_t>(g.vertices.size());

  Dfa d;
  Letters L = add_letters(d, g);
  StateId top = d.add_state("top");
  StateId bot = d.add_state("bot");
  StateId inf = d.add_state("inf");
  StateId smiley = d.add_state("smiley");
  StateId frown = d.add_state("frown");
  StateId col[4];
  for (int i = 1; i <= 3; ++i) col[i] = d.add_state("c" + std::to_string(i));
  StateId sm[4], fr[4];
  for (int j = 1; j <= 3; ++j) {
    sm[j] = d.add_state("smiley_" + std::to_string(j));
    fr[j] = d.add_state("frown_" + std::to_string(j));
  }
  d.set_start(top);
  d.set_accepting(inf, true);
  d.set_accepting(smiley, true);

  for (int32_t v = 0; v < nv; ++v) d.set_next(top, L.vert[v], col[c.of[v]]);
  d.set_next(inf, L.a, sm[1]);
  d.set_next(inf, L.b, fr[1]);
  for (size_t e = 0; e < g.edges.size(); ++e) {
    int32_t high = c.of[g.edges[e].second];
    for (int i = 1; i <= 3; ++i)
      d.set_next(col[i], L.edge[e], i == high ? fr[1] : sm[1]);
  }
  d.set_next(sm[1], L.a, sm[2]);
  d.set_next(sm[2], L.a, sm[3]);
  d.set_next(sm[3], L.a, smiley);
  d.set_next(sm[3], L.b, smiley);
  d.set_next(smiley, L.b, inf);
  d.set_next(fr[1], L.a, fr[2]);
  d.set_next(fr[2], L.a, fr[3]);
  d.set_next(fr[3], L.a, frown);
  d.set_next(fr[3], L.b, frown);
  d.set_next(frown, L.b, inf);
  fill_with(d, bot);
  return d;
}

namespace {

// Shared by the plain and coloured kmin builds.
struct KminCore {
  Dfa d;
  Letters L;
  std::vector<StateId> chain;    // 0..s, start at index 0
  std::vector<StateId> smiley;   // smiley_0..smiley_s
  std::vector<StateId> V;        // per vertex
  std::vector<StateId> one;      // 1_0..1_l
  std::vector<StateId> two;      // 2_0..2_l
  StateId three_0, bsmiley, frown, bot;
};

KminCore build_kmin_core(const Graph& g, int64_t s, int64_t k) {
  const int32_t nv = static_cast<int32_t>(g.vertices.size());
  if (nv == 0) throw ArgumentError("kmin instance: empty graph");
  // s > log2(|V|) + 2, i.e. 2^(s-2) > |V|: keeps the vertex branches short
  // enough that the chain prefixes dominate the error count.
  if (s < 3 || (s - 2 < 62 && nv >= (int64_t{1} << (s - 2))))
    throw ArgumentError("kmin instance: requires s > log2(|V|) + 2");
  if (k <= 4 * s) throw ArgumentError("kmin instance: requires k > 4s");
  const int64_t l = k - 2 * s;

  KminCore c;
  c.L = add_letters(c.d, g);
  Dfa& d = c.d;
  for (int64_t i = 0; i <= s; ++i) c.chain.push_back(d.add_state(std::to_string(i)));
  for (int64_t i = 0; i <= s; ++i)
    c.smiley.push_back(d.add_state("smiley_" + std::to_string(i)));
  for (int32_t v = 0; v < nv; ++v) c.V.push_back(d.add_state("v_" + g.vertices[v]));
  for (int64_t j = 0; j <= l; ++j) c.one.push_back(d.add_state("1_" + std::to_string(j)));
  for (int64_t j = 0; j <= l; ++j) c.two.push_back(d.add_state("2_" + std::to_string(j)));
  c.three_0 = d.add_state("3_0");
  c.bsmiley = d.add_state("bsmiley");
  c.frown = d.add_state("frown");
  c.bot = d.add_state("bot");
  d.set_start(c.chain[0]);
  d.set_accepting(c.smiley[s], true);
  d.set_accepting(c.one[l], true);

  for (int64_t i = 1; i <= s; ++i) {
    d.set_next(c.chain[i - 1], c.L.a, c.chain[i]);
    d.set_next(c.chain[i - 1], c.L.b, c.chain[i]);
    d.set_next(c.smiley[i - 1], c.L.a, c.smiley[i]);
    d.set_next(c.smiley[i - 1], c.L.b, c.smiley[i]);
  }
  d.set_next(c.bsmiley, c.L.a, c.smiley[1]);
  for (int32_t v = 0; v < nv; ++v) {
    d.set_next(c.chain[s], c.L.vert[v], c.V[v]);
    d.set_next(c.V[v], c.L.a, c.one[1]);
  }
  for (size_t e = 0; e < g.edges.size(); ++e) {
    auto [i, j] = g.edges[e];
    for (int32_t v = 0; v < nv; ++v)
      d.set_next(c.V[v], c.L.edge[e],
                 v == i ? c.smiley[0] : v == j ? c.frown : c.bsmiley);
    d.set_next(c.one[0], c.L.edge[e], c.bsmiley);
    d.set_next(c.two[0], c.L.edge[e], c.bsmiley);
    d.set_next(c.three_0, c.L.edge[e], c.bsmiley);
  }
  // The colour roots mimic the vertices: chain entry on a, then b all the
  // way, so a root's branch language equals a vertex's.
  d.set_next(c.one[0], c.L.a, c.one[1]);
  d.set_next(c.two[0], c.L.a, c.two[1]);
  for (int64_t j = 2; j <= l; ++j) {
    d.set_next(c.one[j - 1], c.L.b, c.one[j]);
    d.set_next(c.two[j - 1], c.L.b, c.two[j]);
  }
  d.set_next(c.one[l], c.L.b, c.smiley[s]);
  d.set_next(c.two[l], c.L.b, c.smiley[s]);
  fill_with(d, c.bot);
  return c;
}

Dfa apply_kmin_gadgets(const KminCore& c, int64_t s, int64_t k, int64_t l) {
  // In-level floors: the colour roots stay mergeable into vertices at low k,
  // everything else near the accepting ends is pushed past k.
  std::vector<std::pair<StateId, int64_t>> floors = {
      {c.one[0], 3 * s - 1},   {c.two[0], 3 * s - 1}, {c.three_0, 3 * s - 1},
      {c.smiley[0], k + 1},    {c.frown, k + 1},      {c.one[1], k + 1},
      {c.two[1], k + 1},
  };
  Dfa d = gadget_inlevel(c.d, floors);

  // Two mergeable pools: the sink-side states, and the vertices with the
  // colour roots.  Everything else becomes its own class.
  std::vector<StateId> pool_a = {c.bot, c.bsmiley, c.frown};
  for (StateId q : c.smiley) pool_a.push_back(q);
  for (int64_t j = 1; j <= l; ++j) {
    pool_a.push_back(c.one[j]);
    pool_a.push_back(c.two[j]);
  }
  std::vector<StateId> pool_b = c.V;
  pool_b.push_back(c.one[0]);
  pool_b.push_back(c.two[0]);
  pool_b.push_back(c.three_0);
  return gadget_congruence(d, {pool_a, pool_b});
}

}  // namespace

HardnessInstance build_kmin_instance(const Graph& g, int64_t s, int64_t k) {
  KminCore c = build_kmin_core(g, s, k);
  const int64_t l = k - 2 * s;

  HardnessInstance inst;
  inst.dfa = apply_kmin_gadgets(c, s, k, l);
  inst.family = "kmin";
  inst.s = s;
  inst.k = k;
  inst.l = l;
  const BigInt nv = static_cast<int64_t>(g.vertices.size());
  const BigInt ne = static_cast<int64_t>(g.edges.size());
  inst.errors_low = (BigInt(1) << (2 * s - 1)) * ne * (nv - 2) +
                    3 * (BigInt(1) << (s - 1)) * ne;
  inst.errors_high = inst.errors_low + (BigInt(1) << (s + 1)) * nv;
  return inst;
}

Dfa build_kmin_colored(const Graph& g, const Coloring& c, int64_t s, int64_t k) {
  check_coloring(g, c);
  KminCore core = build_kmin_core(g, s, k);
  const int64_t l = k - 2 * s;

  // Redirect the junction into the colour roots and give each root the edge
  // behaviour of its colour class before the vertices disappear.
  Dfa& d = core.d;
  const StateId roots[4] = {kNoState, core.one[0], core.two[0], core.three_0};
  const int32_t nv = static_cast<int32_t>(g.vertices.size());
  for (int32_t v = 0; v < nv; ++v)
    d.set_next(core.chain[s], core.L.vert[v], roots[c.of[v]]);
  for (size_t e = 0; e < g.edges.size(); ++e) {
    int32_t high = c.of[g.edges[e].second];
    for (int32_t r = 1; r <= 3; ++r)
      d.set_next(roots[r], core.L.edge[e],
                 r == high ? core.frown : core.smiley[0]);
  }

  Dfa full = apply_kmin_gadgets(core, s, k, l);

  // Drop the vertex states and the junction's error absorber, and fold the
  // two empty-future sinks together; dangling transitions go with them.
  std::vector<char> dropped(full.num_states(), 0);
  for (StateId v : core.V) dropped[v] = 1;
  dropped[core.bsmiley] = 1;
  dropped[core.frown] = 1;

  Dfa out;
  for (SymbolId a = 0; a < full.num_symbols(); ++a) out.add_symbol(full.symbol_name(a));
  std::vector<StateId> remap(full.num_states(), kNoState);
  for (StateId q = 0; q < full.num_states(); ++q) {
    if (dropped[q]) continue;
    remap[q] = out.add_state(full.state_name(q));
    out.set_accepting(remap[q], full.accepting(q));
  }
  for (StateId q = 0; q < full.num_states(); ++q) {
    if (dropped[q]) continue;
    for (SymbolId a = 0; a < full.num_symbols(); ++a) {
      StateId t = full.next(q, a);
      if (t == kNoState) continue;
      if (t == core.frown) t = core.bot;  // the two sinks are equivalent
      if (dropped[t]) continue;
      out.set_next(remap[q], a, remap[t]);
    }
  }
  out.set_start(remap[full.start()]);
  return out;
}

HardnessReport verify_hardness(const HardnessInstance& inst, const Dfa& colored) {
  HardnessReport r;
  r.instance_states = inst.dfa.num_states();
  r.colored_states = colored.num_states();
  r.expected_low = inst.errors_low;
  r.expected_high = inst.errors_high;
  try {
    SymdiffResult sd = count_symdiff(inst.dfa, colored);
    r.errors = sd.count;
    r.max_error_len = sd.max_error_len;
  } catch (const InfiniteDifferenceError&) {
    r.details = "infinite symmetric difference";
    return r;
  }
  if (r.errors < r.expected_low || r.errors > r.expected_high) {
    r.details = "error count outside the expected range";
    return r;
  }
  if (inst.family == "kmin" && r.max_error_len >= inst.k) {
    r.details = "an error word reaches length " + std::to_string(r.max_error_len);
    return r;
  }
  r.pass = true;
  return r;
}

}  // namespace dfamin
