#include "dfamin/dfa.hpp"

#include <algorithm>
#include <sstream>

namespace dfamin {

StateId Dfa::add_state(const std::string& name) {
  auto it = state_index_.find(name);
  if (it != state_index_.end()) return it->second;
  StateId id = num_states();
  state_names_.push_back(name);
  state_index_[name] = id;
  accepting_.push_back(0);
  delta_.resize(static_cast<size_t>(id + 1) * symbols_.size(), kNoState);
  return id;
}

SymbolId Dfa::add_symbol(const std::string& sym) {
  auto it = symbol_index_.find(sym);
  if (it != symbol_index_.end()) return it->second;
  SymbolId id = num_symbols();
  symbols_.push_back(sym);
  symbol_index_[sym] = id;
  // Re-layout the transition matrix for the wider row.
  std::vector<StateId> nd(state_names_.size() * symbols_.size(), kNoState);
  for (size_t q = 0; q < state_names_.size(); ++q)
    for (SymbolId a = 0; a < id; ++a)
      nd[q * symbols_.size() + a] = delta_[q * id + a];
  delta_ = std::move(nd);
  return id;
}

StateId Dfa::state_id(const std::string& name) const {
  auto it = state_index_.find(name);
  return it == state_index_.end() ? kNoState : it->second;
}

SymbolId Dfa::symbol_id(const std::string& sym) const {
  auto it = symbol_index_.find(sym);
  return it == symbol_index_.end() ? -1 : it->second;
}

int64_t Dfa::size() const {
  int64_t c = 0;
  for (StateId t : delta_)
    if (t != kNoState) ++c;
  return c;
}

bool Dfa::total() const {
  return size() == static_cast<int64_t>(num_states()) * num_symbols();
}

StateId Dfa::run(StateId q, const std::vector<SymbolId>& word) const {
  for (SymbolId a : word) {
    if (q == kNoState) return kNoState;
    q = next(q, a);
  }
  return q;
}

bool Dfa::accepts_from(StateId q, const std::vector<SymbolId>& word) const {
  StateId r = run(q, word);
  return r != kNoState && accepting(r);
}

bool Dfa::accepts(const std::vector<SymbolId>& word) const {
  return accepts_from(start_, word);
}

void Dfa::check_invariants() const {
  if (start_ < 0 || start_ >= num_states())
    throw ArgumentError("start state out of range");
  for (StateId q = 0; q < num_states(); ++q)
    for (SymbolId a = 0; a < num_symbols(); ++a) {
      StateId t = next(q, a);
      if (t != kNoState && (t < 0 || t >= num_states()))
        throw ArgumentError("transition endpoint out of range");
    }
}

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

[[noreturn]] void fail(int lineno, const std::string& msg) {
  throw ParseError("line " + std::to_string(lineno) + ": " + msg);
}

}  // namespace

Dfa parse_dfa(const std::string& text) {
  struct Trans {
    std::string src, sym, dst;
    int lineno;
  };
  std::vector<std::string> alphabet, states, accept;
  std::vector<Trans> trans;
  std::string start_name;
  bool saw_start = false, saw_accept = false;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto ts = tokens(line);
    if (ts.empty()) continue;
    const std::string& kw = ts[0];
    std::vector<std::string> rest(ts.begin() + 1, ts.end());
    if (kw == "alphabet:") {
      alphabet.insert(alphabet.end(), rest.begin(), rest.end());
    } else if (kw == "states:") {
      states.insert(states.end(), rest.begin(), rest.end());
    } else if (kw == "start:") {
      if (rest.size() != 1) fail(lineno, "start: expects exactly one state");
      if (saw_start) fail(lineno, "duplicate start: line");
      start_name = rest[0];
      saw_start = true;
    } else if (kw == "accept:") {
      accept.insert(accept.end(), rest.begin(), rest.end());
      saw_accept = true;
    } else if (kw == "trans:") {
      if (rest.size() != 3) fail(lineno, "trans: expects 'src sym dst'");
      trans.push_back({rest[0], rest[1], rest[2], lineno});
    } else {
      fail(lineno, "unknown keyword '" + kw + "'");
    }
  }
  if (!saw_start) throw ParseError("missing start: line");
  if (!saw_accept) throw ParseError("missing accept: line");

  Dfa d;
  for (const auto& a : alphabet) {
    if (d.symbol_id(a) != -1) throw ParseError("duplicate symbol '" + a + "'");
    d.add_symbol(a);
  }
  for (const auto& s : states) {
    if (d.state_id(s) != kNoState) throw ParseError("duplicate state '" + s + "'");
    d.add_state(s);
  }
  StateId start = d.state_id(start_name);
  if (start == kNoState) throw ParseError("unknown start state '" + start_name + "'");
  d.set_start(start);
  for (const auto& s : accept) {
    StateId q = d.state_id(s);
    if (q == kNoState) throw ParseError("unknown accepting state '" + s + "'");
    d.set_accepting(q, true);
  }
  for (const auto& t : trans) {
    StateId src = d.state_id(t.src);
    if (src == kNoState) fail(t.lineno, "unknown state '" + t.src + "'");
    StateId dst = d.state_id(t.dst);
    if (dst == kNoState) fail(t.lineno, "unknown state '" + t.dst + "'");
    SymbolId a = d.symbol_id(t.sym);
    if (a == -1) fail(t.lineno, "unknown symbol '" + t.sym + "'");
    if (d.next(src, a) != kNoState)
      fail(t.lineno, "duplicate transition from '" + t.src + "' on '" + t.sym + "'");
    d.set_next(src, a, dst);
  }
  return d;
}

std::string serialize_dfa(const Dfa& d) {
  std::ostringstream out;
  out << "alphabet:";
  for (SymbolId a = 0; a < d.num_symbols(); ++a) out << ' ' << d.symbol_name(a);
  out << "\nstates:";
  for (StateId q = 0; q < d.num_states(); ++q) out << ' ' << d.state_name(q);
  out << "\nstart: " << d.state_name(d.start());
  out << "\naccept:";
  for (StateId q = 0; q < d.num_states(); ++q)
    if (d.accepting(q)) out << ' ' << d.state_name(q);
  out << '\n';
  for (StateId q = 0; q < d.num_states(); ++q)
    for (SymbolId a = 0; a < d.num_symbols(); ++a)
      if (d.next(q, a) != kNoState)
        out << "trans: " << d.state_name(q) << ' ' << d.symbol_name(a) << ' '
            << d.state_name(d.next(q, a)) << '\n';
  return out.str();
}

std::string to_dot(const Dfa& d) {
  std::ostringstream out;
  out << "digraph dfa {\n  rankdir=LR;\n";
  out << "  __start [shape=point];\n";
  for (StateId q = 0; q < d.num_states(); ++q)
    out << "  \"" << d.state_name(q) << "\" [shape="
        << (d.accepting(q) ? "doublecircle" : "circle") << "];\n";
  out << "  __start -> \"" << d.state_name(d.start()) << "\";\n";
  for (StateId q = 0; q < d.num_states(); ++q)
    for (SymbolId a = 0; a < d.num_symbols(); ++a)
      if (d.next(q, a) != kNoState)
        out << "  \"" << d.state_name(q) << "\" -> \""
            << d.state_name(d.next(q, a)) << "\" [label=\"" << d.symbol_name(a)
            << "\"];\n";
  out << "}\n";
  return out.str();
}

Dfa trim(const Dfa& d, bool drop_dead) {
  StateId n = d.num_states();
  std::vector<char> reach(n, 0);
  std::vector<StateId> stack = {d.start()};
  reach[d.start()] = 1;
  while (!stack.empty()) {
    StateId q = stack.back();
    stack.pop_back();
    for (SymbolId a = 0; a < d.num_symbols(); ++a) {
      StateId t = d.next(q, a);
      if (t != kNoState && !reach[t]) {
        reach[t] = 1;
        stack.push_back(t);
      }
    }
  }

  std::vector<char> live(n, 1);
  if (drop_dead) {
    // Backward closure from accepting states.
    std::fill(live.begin(), live.end(), 0);
    std::vector<std::vector<StateId>> preds(n);
    for (StateId q = 0; q < n; ++q)
      for (SymbolId a = 0; a < d.num_symbols(); ++a) {
        StateId t = d.next(q, a);
        if (t != kNoState) preds[t].push_back(q);
      }
    for (StateId q = 0; q < n; ++q)
      if (d.accepting(q)) {
        live[q] = 1;
        stack.push_back(q);
      }
    while (!stack.empty()) {
      StateId q = stack.back();
      stack.pop_back();
      for (StateId p : preds[q])
        if (!live[p]) {
          live[p] = 1;
          stack.push_back(p);
        }
    }
  }

  std::vector<char> keep(n);
  for (StateId q = 0; q < n; ++q) keep[q] = reach[q] && live[q];
  // The start state stays even when dead, so the result remains a DFA.
  keep[d.start()] = 1;

  Dfa out;
  for (SymbolId a = 0; a < d.num_symbols(); ++a) out.add_symbol(d.symbol_name(a));
  std::vector<StateId> remap(n, kNoState);
  for (StateId q = 0; q < n; ++q)
    if (keep[q]) remap[q] = out.add_state(d.state_name(q));
  out.set_start(remap[d.start()]);
  for (StateId q = 0; q < n; ++q) {
    if (!keep[q]) continue;
    out.set_accepting(remap[q], d.accepting(q));
    for (SymbolId a = 0; a < d.num_symbols(); ++a) {
      StateId t = d.next(q, a);
      if (t != kNoState && keep[t] && (!drop_dead || live[t]))
        out.set_next(remap[q], a, remap[t]);
    }
  }
  return out;
}

Dfa merge_state(const Dfa& d, StateId q, StateId p) {
  if (q == p) throw ArgumentError("cannot merge a state into itself");
  if (q < 0 || q >= d.num_states() || p < 0 || p >= d.num_states())
    throw ArgumentError("merge_state: unknown state");
  Dfa out;
  for (SymbolId a = 0; a < d.num_symbols(); ++a) out.add_symbol(d.symbol_name(a));
  std::vector<StateId> remap(d.num_states(), kNoState);
  for (StateId s = 0; s < d.num_states(); ++s)
    if (s != q) remap[s] = out.add_state(d.state_name(s));
  remap[q] = remap[p];
  out.set_start(remap[d.start()]);
  for (StateId s = 0; s < d.num_states(); ++s) {
    if (s == q) continue;
    out.set_accepting(remap[s], d.accepting(s));
    for (SymbolId a = 0; a < d.num_symbols(); ++a) {
      StateId t = d.next(s, a);
      if (t != kNoState) out.set_next(remap[s], a, remap[t]);
    }
  }
  return out;
}

}  // namespace dfamin
