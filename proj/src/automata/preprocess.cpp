#include <algorithm>
#include <map>

#include "nncomp/automata.hpp"

namespace nncomp::automata {

namespace {

// Topological order of the live graph without self-loops, ties broken by
// state name. Empty if there is a cycle.
std::vector<int> topo_order(const Dfa& d) {
  const int n = d.num_states();
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  for (const auto& e : d.edges)
    if (e.from != e.to && d.is_live(e.from) && d.is_live(e.to)) ++indeg[static_cast<std::size_t>(e.to)];
  auto by_name = [&](int a, int b) { return d.name(a) > d.name(b); };
  std::vector<int> ready;
  for (int q = 0; q < n; ++q)
    if (d.is_live(q) && indeg[static_cast<std::size_t>(q)] == 0) ready.push_back(q);
  std::vector<int> order;
  while (!ready.empty()) {
    std::sort(ready.begin(), ready.end(), by_name);
    const int q = ready.back();
    ready.pop_back();
    order.push_back(q);
    for (const auto& e : d.edges) {
      if (e.from != q || e.to == q || !d.is_live(e.to)) continue;
      if (--indeg[static_cast<std::size_t>(e.to)] == 0) ready.push_back(e.to);
    }
  }
  if (static_cast<int>(order.size()) != d.live_state_count()) return {};
  return order;
}

void index_edges(PreprocessedDfa& p) {
  const auto n = static_cast<std::size_t>(p.num_states());
  p.in_edges.assign(n, {});
  p.out_edges.assign(n, {});
  p.self_loop.assign(n, std::nullopt);
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    const auto& e = p.edges[i];
    if (e.from == e.to) {
      p.self_loop[static_cast<std::size_t>(e.from)] = static_cast<int>(i);
    } else {
      p.out_edges[static_cast<std::size_t>(e.from)].push_back(static_cast<int>(i));
      p.in_edges[static_cast<std::size_t>(e.to)].push_back(static_cast<int>(i));
    }
  }
}

PreprocessedDfa simple_path_view(const Dfa& d) {
  PreprocessedDfa p;
  p.source = d;
  p.simple_path_mode = true;
  std::vector<int> renum(static_cast<std::size_t>(d.num_states()), -1);
  for (int q = 0; q < d.num_states(); ++q) {
    if (!d.is_live(q)) continue;
    renum[static_cast<std::size_t>(q)] = p.num_states();
    p.names.push_back(d.name(q));
    p.origin.push_back(q);
  }
  p.initial = renum[static_cast<std::size_t>(d.initial)];
  for (const auto& e : d.edges)
    if (d.is_live(e.from) && d.is_live(e.to))
      p.edges.push_back({renum[static_cast<std::size_t>(e.from)], renum[static_cast<std::size_t>(e.to)], e.guard});
  index_edges(p);
  return p;
}

}  // namespace

PreprocessedDfa preprocess_unique_paths(const Dfa& d) {
  const auto order = topo_order(d);
  if (order.empty()) return simple_path_view(d);

  PreprocessedDfa p;
  p.source = d;
  // replicas[q] lists the replica ids of source state q.
  std::vector<std::vector<int>> replicas(static_cast<std::size_t>(d.num_states()));
  struct Pending {
    int parent;
    const Edge* edge;
  };
  for (int q : order) {
    std::vector<Pending> incoming;
    if (q != d.initial) {
      std::vector<const Edge*> in;
      for (const auto& e : d.edges)
        if (e.to == q && e.from != q && d.is_live(e.from)) in.push_back(&e);
      std::sort(in.begin(), in.end(), [&](const Edge* a, const Edge* b) { return d.name(a->from) < d.name(b->from); });
      for (const Edge* e : in)
        for (int parent : replicas[static_cast<std::size_t>(e->from)]) incoming.push_back({parent, e});
    }
    const bool keep_alone = q == d.initial || (incoming.empty() && q == d.final_state);
    if (!keep_alone && incoming.empty()) continue;
    const std::size_t copies = keep_alone ? 1 : incoming.size();
    if (p.names.size() + copies > kMaxReplicas) return simple_path_view(d);
    for (std::size_t i = 0; i < copies; ++i) {
      const int r = p.num_states();
      p.names.push_back(copies > 1 ? d.name(q) + "." + std::to_string(i + 1) : d.name(q));
      p.origin.push_back(q);
      replicas[static_cast<std::size_t>(q)].push_back(r);
      if (q == d.initial) p.initial = r;
      if (!keep_alone) p.edges.push_back({incoming[i].parent, r, incoming[i].edge->guard});
      if (const Edge* loop = d.self_loop(q)) p.edges.push_back({r, r, loop->guard});
    }
  }
  std::stable_sort(p.edges.begin(), p.edges.end(), [](const Edge& a, const Edge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  index_edges(p);
  return p;
}

}  // namespace nncomp::automata
