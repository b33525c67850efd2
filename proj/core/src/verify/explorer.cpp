#include "cspp/verify/explorer.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <sstream>
#include <string_view>
#include <unordered_map>

namespace cspp::verify {

namespace {

constexpr int skip = -1;
constexpr std::size_t slots = 4;  // pc + three registers per process

using Local = std::array<int, slots>;
using StateId = std::uint32_t;
constexpr StateId no_state = UINT32_MAX;

enum class OfferKind { none, send, recv, solo };

// What one process is prepared to do in a given local state.
struct Offer {
  OfferKind kind = OfferKind::none;
  int element = 0;                 // send: element written
  Value value = ut;                // send: value written
  std::vector<int> elements;       // recv: elements it will read from
};

// A channel element flattened to an integer.
struct Element {
  int channel;
  int index;  // -1 for a plain channel
};

class Semantics {
 public:
  explicit Semantics(const AbstractModel& m) : m_(m) {
    validate(m);
    for (std::size_t c = 0; c < m.channels.size(); ++c) {
      base_.push_back(static_cast<int>(elements_.size()));
      const int w = m.channels[c].width;
      for (int i = 0; i < w; ++i) elements_.push_back({static_cast<int>(c), w > 1 ? i : -1});
    }
  }

  std::size_t size() const { return m_.processes.size(); }

  Local initial(std::size_t p) const {
    const ProcessTerm& t = m_.processes[p];
    Local l{0, 0, 0, 0};
    if (t.term == Term::emit) l[1] = m_.alphabet >= 1 ? 1 : ut;
    if (t.term == Term::spread) l[1] = t.index;
    return l;
  }

  Offer offer(std::size_t p, const Local& l) const {
    const ProcessTerm& t = m_.processes[p];
    Offer o;
    if (l[0] == skip) return o;
    switch (t.term) {
      case Term::emit:
        return send(element(t.out, 0), l[1]);
      case Term::spread:
        if (l[0] == 0) return recv(element(t.in, 0));
        if (l[0] == 1) return send(element(t.out, l[1]), l[2]);
        return send(element(t.out, l[1]), ut);
      case Term::worker:
        if (l[0] == 0) return recv(element(t.in, t.index));
        return send(element(t.out, t.index), apply(l[2], t.apply));
      case Term::reduce:
        if (l[0] == 0) {
          o.kind = OfferKind::recv;
          for (int i = 0; i < width(t.in); ++i) o.elements.push_back(element(t.in, i));
          return o;
        }
        if (l[0] == 1 || l[0] == 3) return send(element(t.out, 0), l[2]);
        if (l[0] == 2) return recv(element(t.in, l[1]));
        return send(element(t.out, 0), ut);
      case Term::collect:
        if (l[0] == 0) return recv(element(t.in, 0));
        o.kind = OfferKind::solo;
        return o;
      case Term::combine:
        if (l[0] == 0) return recv(element(t.in, 0));
        return send(element(t.out, 0), l[0] == 1 ? combined : ut);
    }
    return o;
  }

  // Local state after this process's offer is taken. `element` / `v` describe
  // the communication for a recv.
  Local after(std::size_t p, Local l, int element, Value v) const {
    const ProcessTerm& t = m_.processes[p];
    switch (t.term) {
      case Term::emit:
        if (l[1] == ut) {
          l[0] = skip;
        } else {
          l[1] = l[1] < m_.alphabet ? l[1] + 1 : ut;
        }
        break;
      case Term::spread: {
        const int w = width(t.out);
        if (l[0] == 0) {
          l[0] = 1;
          l[2] = v;
        } else if (l[0] == 1) {
          if (l[2] == ut) {
            l[3] = l[1];
            l[0] = 2;
          } else {
            l[0] = 0;
          }
          l[1] = (l[1] + 1) % w;
          l[2] = 0;
        } else {
          l[1] = (l[1] + 1) % w;
        }
        // Spread_End: UT goes to every output except the one already sent.
        if (l[0] == 2 && l[1] == l[3]) l = Local{skip, 0, 0, 0};
        break;
      }
      case Term::worker:
        if (l[0] == 0) {
          if (v == ut && !t.forward_ut) return Local{skip, 0, 0, 0};
          l[0] = 1;
          l[2] = v;
        } else {
          l = l[2] == ut ? Local{skip, 0, 0, 0} : Local{0, 0, 0, 0};
        }
        break;
      case Term::reduce: {
        const int w = width(t.in);
        if (l[0] == 0) {
          const int x = index_of(element);
          if (v == ut) {
            l[3] = x;
            l[1] = (x + 1) % w;
            l[0] = 2;
          } else {
            l[0] = 1;
            l[2] = v;
          }
        } else if (l[0] == 1) {
          l = Local{0, 0, 0, 0};
        } else if (l[0] == 2) {
          if (v == ut) {
            l[1] = (l[1] + 1) % w;
          } else {
            l[0] = 3;
            l[2] = v;
          }
        } else if (l[0] == 3) {
          l[0] = 2;
          l[2] = 0;
        } else {
          return Local{skip, 0, 0, 0};
        }
        // Reduce_End(s, s) offers only the final UT.
        if (l[0] == 2 && l[1] == l[3]) l[0] = 4;
        break;
      }
      case Term::collect:
        if (l[0] == 0) {
          l[0] = v == ut ? 1 : 0;
        } else {
          l[0] = skip;
        }
        break;
      case Term::combine:
        if (l[0] == 0) {
          if (v == ut) l[0] = 1;
        } else if (l[0] == 1) {
          l[0] = 2;
        } else {
          l[0] = skip;
        }
        break;
    }
    return l;
  }

  std::string label(int element, Value v) const {
    const Element& e = elements_[static_cast<std::size_t>(element)];
    std::string s = m_.channels[static_cast<std::size_t>(e.channel)].name;
    if (e.index >= 0) s += "." + std::to_string(e.index);
    return s + "." + value_name(v);
  }

  const std::string& channel_of(int element) const {
    return m_.channels[static_cast<std::size_t>(elements_[static_cast<std::size_t>(element)].channel)]
        .name;
  }

  std::size_t element_count() const { return elements_.size(); }

 private:
  int width(const std::string& ch) const { return m_.channel(ch)->width; }

  int element(const std::string& ch, int index) const {
    for (std::size_t c = 0; c < m_.channels.size(); ++c) {
      if (m_.channels[c].name == ch) {
        return base_[c] + (m_.channels[c].width > 1 ? index : 0);
      }
    }
    return -1;
  }

  int index_of(int element) const {
    return std::max(0, elements_[static_cast<std::size_t>(element)].index);
  }

  static Offer send(int element, Value v) {
    Offer o;
    o.kind = OfferKind::send;
    o.element = element;
    o.value = v;
    return o;
  }

  static Offer recv(int element) {
    Offer o;
    o.kind = OfferKind::recv;
    o.elements.push_back(element);
    return o;
  }

  const AbstractModel& m_;
  std::vector<int> base_;
  std::vector<Element> elements_;
};

struct Edge {
  StateId to;
  std::uint32_t label;
};

// The explicit state graph. Labels are interned; each carries the channel it
// belongs to so hiding can be decided per query.
struct Graph {
  std::vector<std::vector<Edge>> edges;
  std::vector<StateId> parent;
  std::vector<std::uint32_t> parent_label;
  std::vector<bool> final;  // all processes SKIP
  std::vector<std::string> labels;
  std::vector<std::string> label_channel;
  bool truncated = false;

  std::size_t size() const { return edges.size(); }
  bool terminal(StateId s) const { return edges[s].empty(); }
  bool deadlocked(StateId s) const { return edges[s].empty() && !final[s]; }

  Trace trace_to(StateId s) const {
    Trace t;
    while (parent[s] != no_state) {
      t.push_back(labels[parent_label[s]]);
      s = parent[s];
    }
    std::reverse(t.begin(), t.end());
    return t;
  }
};

std::string key_of(const std::vector<Local>& state) {
  std::string k;
  k.reserve(state.size() * slots);
  for (const Local& l : state) {
    for (int v : l) k.push_back(static_cast<char>(v & 0xFF));
  }
  return k;
}

Graph build(const AbstractModel& m, std::size_t cap) {
  if (cap == 0) throw VerifyError("state cap must be positive");
  Semantics sem(m);
  Graph g;
  std::unordered_map<std::string, StateId> index;
  std::map<std::pair<std::string, std::string>, std::uint32_t> label_ids;
  std::vector<std::vector<Local>> pending;  // frontier payloads, indexed by state id
  std::deque<StateId> queue;

  auto intern = [&](const std::string& text, const std::string& channel) {
    auto [it, fresh] = label_ids.try_emplace({text, channel}, static_cast<std::uint32_t>(g.labels.size()));
    if (fresh) {
      g.labels.push_back(text);
      g.label_channel.push_back(channel);
    }
    return it->second;
  };

  auto add = [&](std::vector<Local> s, StateId from, std::uint32_t label) -> StateId {
    std::string k = key_of(s);
    if (auto it = index.find(k); it != index.end()) return it->second;
    if (g.size() >= cap) {
      g.truncated = true;
      return no_state;
    }
    const auto id = static_cast<StateId>(g.size());
    index.emplace(std::move(k), id);
    g.edges.emplace_back();
    g.parent.push_back(from);
    g.parent_label.push_back(label);
    g.final.push_back(std::all_of(s.begin(), s.end(), [](const Local& l) { return l[0] == skip; }));
    pending.push_back(std::move(s));
    queue.push_back(id);
    return id;
  };

  std::vector<Local> init;
  for (std::size_t p = 0; p < sem.size(); ++p) init.push_back(sem.initial(p));
  add(std::move(init), no_state, 0);

  std::vector<Offer> offers(sem.size());
  while (!queue.empty()) {
    const StateId s = queue.front();
    queue.pop_front();
    const std::vector<Local> state = std::move(pending[s]);
    for (std::size_t p = 0; p < sem.size(); ++p) offers[p] = sem.offer(p, state[p]);

    auto step = [&](std::vector<Local> next, std::uint32_t label) {
      const StateId to = add(std::move(next), s, label);
      if (to != no_state) g.edges[s].push_back({to, label});
    };

    for (std::size_t p = 0; p < sem.size(); ++p) {
      const Offer& o = offers[p];
      if (o.kind == OfferKind::solo) {
        std::vector<Local> next = state;
        next[p] = sem.after(p, state[p], -1, ut);
        step(std::move(next), intern(finished_event, "finished"));
      } else if (o.kind == OfferKind::send) {
        for (std::size_t q = 0; q < sem.size(); ++q) {
          const Offer& r = offers[q];
          if (q == p || r.kind != OfferKind::recv) continue;
          if (std::find(r.elements.begin(), r.elements.end(), o.element) == r.elements.end()) continue;
          std::vector<Local> next = state;
          next[p] = sem.after(p, state[p], o.element, o.value);
          next[q] = sem.after(q, state[q], o.element, o.value);
          step(std::move(next), intern(sem.label(o.element, o.value), sem.channel_of(o.element)));
        }
      }
    }
    if (g.truncated) break;
  }
  return g;
}

// Iterative three-colour DFS. With `hidden_only` set only edges on hidden
// channels are followed.
bool has_cycle(const Graph& g, const std::set<std::string>* hidden_only) {
  enum : std::uint8_t { white, grey, black };
  std::vector<std::uint8_t> colour(g.size(), white);
  auto followed = [&](const Edge& e) {
    return hidden_only == nullptr || hidden_only->count(g.label_channel[e.label]) > 0;
  };
  std::vector<std::pair<StateId, std::size_t>> stack;
  for (StateId root = 0; root < g.size(); ++root) {
    if (colour[root] != white) continue;
    stack.push_back({root, 0});
    colour[root] = grey;
    while (!stack.empty()) {
      auto& [s, i] = stack.back();
      if (i == g.edges[s].size()) {
        colour[s] = black;
        stack.pop_back();
        continue;
      }
      const Edge& e = g.edges[s][i++];
      if (!followed(e)) continue;
      if (colour[e.to] == grey) return true;
      if (colour[e.to] == white) {
        colour[e.to] = grey;
        stack.push_back({e.to, 0});
      }
    }
  }
  return false;
}

using Subset = std::vector<StateId>;

// Determinised view of a graph under hiding.
class Normal {
 public:
  Normal(const Graph& g, const std::set<std::string>& hide) : g_(g), hide_(hide) {}

  bool hidden(std::uint32_t label) const { return hide_.count(g_.label_channel[label]) > 0; }

  Subset closure(Subset seed) const {
    std::vector<bool> seen(g_.size(), false);
    std::vector<StateId> work;
    for (StateId s : seed) {
      if (!seen[s]) {
        seen[s] = true;
        work.push_back(s);
      }
    }
    Subset out;
    while (!work.empty()) {
      const StateId s = work.back();
      work.pop_back();
      out.push_back(s);
      for (const Edge& e : g_.edges[s]) {
        if (hidden(e.label) && !seen[e.to]) {
          seen[e.to] = true;
          work.push_back(e.to);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Visible successors grouped by label text.
  std::map<std::string, Subset> moves(const Subset& s) const {
    std::map<std::string, Subset> raw;
    for (StateId x : s) {
      for (const Edge& e : g_.edges[x]) {
        if (!hidden(e.label)) raw[g_.labels[e.label]].push_back(e.to);
      }
    }
    for (auto& [label, targets] : raw) targets = closure(std::move(targets));
    return raw;
  }

  bool can_stop(const Subset& s) const {
    return std::any_of(s.begin(), s.end(), [&](StateId x) { return g_.deadlocked(x); });
  }
  bool can_tick(const Subset& s) const {
    return std::any_of(s.begin(), s.end(), [&](StateId x) { return g_.final[x]; });
  }

 private:
  const Graph& g_;
  const std::set<std::string>& hide_;
};

Graph finite_graph(const AbstractModel& m, std::size_t cap, const char* role) {
  Graph g = build(m, cap);
  if (g.truncated) {
    throw VerifyError(std::string(role) + " model '" + m.name + "' exceeds the state cap");
  }
  if (has_cycle(g, nullptr)) {
    throw VerifyError(std::string(role) + " model '" + m.name + "' has infinite behaviour");
  }
  return g;
}

constexpr std::size_t trace_cap = 1'000'000;

void collect_traces(const Normal& n, const Subset& s, Trace& prefix, std::set<Trace>& out) {
  if (n.can_stop(s)) out.insert(prefix);
  if (n.can_tick(s)) {
    prefix.push_back(tick_event);
    out.insert(prefix);
    prefix.pop_back();
  }
  if (out.size() > trace_cap) throw VerifyError("trace set too large to enumerate");
  for (const auto& [label, next] : n.moves(s)) {
    prefix.push_back(label);
    collect_traces(n, next, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

ExplorationResult explore(const AbstractModel& m, std::size_t state_cap) {
  const Graph g = build(m, state_cap);
  ExplorationResult r;
  r.states = g.size();
  for (const auto& e : g.edges) r.transitions += e.size();
  r.truncated = g.truncated;
  for (StateId s = 0; s < g.size(); ++s) {
    if (!g.deadlocked(s)) continue;
    // A truncated search leaves unexpanded states without edges.
    if (g.truncated) continue;
    ++r.deadlock_count;
    if (r.deadlocks.size() < max_counterexamples) r.deadlocks.push_back(g.trace_to(s));
  }
  r.divergent = has_cycle(g, &m.hidden);
  r.terminated = !r.truncated && r.deadlock_count == 0 && !has_cycle(g, nullptr);
  return r;
}

std::set<Trace> trace_set(const AbstractModel& m, const std::set<std::string>& hide,
                          std::size_t state_cap) {
  const Graph g = finite_graph(m, state_cap, "");
  const Normal n(g, hide);
  std::set<Trace> out;
  Trace prefix;
  collect_traces(n, n.closure({0}), prefix, out);
  return out;
}

RefinementResult check_refinement(const AbstractModel& spec, const AbstractModel& impl,
                                  const std::set<std::string>& hide, std::size_t state_cap) {
  const Graph gs = finite_graph(spec, state_cap, "spec");
  const Graph gi = finite_graph(impl, state_cap, "impl");
  const Normal ns(gs, hide);

  // Normalised spec states, created on demand.
  std::map<Subset, std::uint32_t> subset_ids;
  std::vector<Subset> subsets;
  auto subset_id = [&](Subset s) {
    auto [it, fresh] = subset_ids.try_emplace(s, static_cast<std::uint32_t>(subsets.size()));
    if (fresh) subsets.push_back(std::move(s));
    return it->second;
  };

  // Product of impl states with normalised spec states.
  struct Node {
    StateId impl;
    std::uint32_t spec;
    std::size_t parent;
    std::string label;  // visible label on the edge from parent, empty if hidden
  };
  std::vector<Node> nodes;
  std::map<std::pair<StateId, std::uint32_t>, std::size_t> seen;
  std::deque<std::size_t> queue;
  constexpr std::size_t root = SIZE_MAX;

  auto trace_of = [&](std::size_t i, const std::string& last) {
    Trace t;
    if (!last.empty()) t.push_back(last);
    for (; i != root; i = nodes[i].parent) {
      if (!nodes[i].label.empty()) t.push_back(nodes[i].label);
    }
    std::reverse(t.begin(), t.end());
    return t;
  };

  auto visit = [&](StateId s, std::uint32_t spec_id, std::size_t parent, std::string label) {
    if (seen.try_emplace({s, spec_id}, nodes.size()).second) {
      nodes.push_back({s, spec_id, parent, std::move(label)});
      queue.push_back(nodes.size() - 1);
    }
  };

  visit(0, subset_id(ns.closure({0})), root, "");
  std::map<std::uint32_t, std::map<std::string, Subset>> spec_moves;
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    const StateId s = nodes[i].impl;
    const std::uint32_t sp = nodes[i].spec;
    if (gi.terminal(s)) {
      const bool ok = gi.final[s] ? ns.can_tick(subsets[sp]) : ns.can_stop(subsets[sp]);
      if (!ok) return {false, trace_of(i, gi.final[s] ? tick_event : std::string())};
    }
    auto moves_it = spec_moves.find(sp);
    if (moves_it == spec_moves.end()) moves_it = spec_moves.emplace(sp, ns.moves(subsets[sp])).first;
    for (const Edge& e : gi.edges[s]) {
      if (hide.count(gi.label_channel[e.label]) > 0) {
        visit(e.to, sp, i, "");
        continue;
      }
      const std::string& label = gi.labels[e.label];
      auto next = moves_it->second.find(label);
      if (next == moves_it->second.end()) return {false, trace_of(i, label)};
      visit(e.to, subset_id(next->second), i, label);
    }
  }
  return {true, std::nullopt};
}

bool trace_equivalent(const AbstractModel& a, const AbstractModel& b,
                      const std::set<std::string>& hide, std::size_t state_cap) {
  return check_refinement(a, b, hide, state_cap).holds &&
         check_refinement(b, a, hide, state_cap).holds;
}

std::string summary(const AbstractModel& m, const ExplorationResult& r) {
  std::ostringstream os;
  os << "model " << m.name << ": " << r.states << " states, " << r.transitions << " transitions\n";
  os << "  deadlock free: " << (r.deadlock_free() ? "yes" : "no");
  if (r.deadlock_count > 0) os << " (" << r.deadlock_count << " deadlocked states)";
  os << "\n  divergence free: " << (r.divergent ? "no" : "yes") << "\n";
  os << "  terminates: " << (r.terminated ? "yes" : "no") << "\n";
  if (r.truncated) os << "  truncated: state cap reached, results are partial\n";
  for (const Trace& t : r.deadlocks) {
    os << "  deadlock after <";
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? ", " : "") << t[i];
    os << ">\n";
  }
  return os.str();
}

}  // namespace cspp::verify
