#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "cblocks/gf2.hpp"

namespace cblocks {

// Raised on malformed user input (bad graph, bad JSON, out-of-range level...).
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EdgeSpec {
  std::string id;
  std::string u, v;
};

// A connected multigraph (loops and parallel edges allowed) in which every
// vertex is either trivalent or the univalent tip of a boundary leg.
// Immutable after construction; all operations below are pure.
class Graph {
 public:
  struct Edge {
    std::string id;
    int u, v;  // vertex indices; u == v encodes a loop
  };

  static Graph make(std::vector<std::string> vertices, std::vector<EdgeSpec> edges,
                    std::vector<std::string> legs = {}) {
    Graph g;
    if (vertices.empty()) throw input_error("graph has no vertices");
    if (vertices.size() > 64) throw input_error("at most 64 vertices supported");
    if (edges.size() > 64) throw input_error("at most 64 edges supported");
    g.vertex_ids_ = std::move(vertices);
    for (std::size_t i = 0; i < g.vertex_ids_.size(); ++i) {
      if (!g.vertex_lookup_.emplace(g.vertex_ids_[i], static_cast<int>(i)).second)
        throw input_error("duplicate vertex id: " + g.vertex_ids_[i]);
    }
    for (const auto& es : edges) {
      Edge e;
      e.id = es.id;
      e.u = g.vertex_index(es.u);
      e.v = g.vertex_index(es.v);
      if (!g.edge_lookup_.emplace(e.id, static_cast<int>(g.edges_.size())).second)
        throw input_error("duplicate edge id: " + e.id);
      g.edges_.push_back(std::move(e));
    }
    g.is_leg_.assign(g.edges_.size(), 0);
    for (const auto& id : legs) {
      int e = g.edge_index(id);
      if (g.is_leg_[e]) throw input_error("duplicate leg: " + id);
      g.is_leg_[e] = 1;
      g.legs_.push_back(e);
    }
    g.finish();
    return g;
  }

  int vertex_count() const { return static_cast<int>(vertex_ids_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<int>& legs() const { return legs_; }
  bool is_leg(int e) const { return is_leg_[e] != 0; }
  bool is_loop(int e) const { return edges_[e].u == edges_[e].v; }
  bool is_univalent(int v) const { return is_univalent_[v] != 0; }
  bool closed() const { return legs_.empty(); }
  int genus() const { return edge_count() - vertex_count() + 1; }

  int vertex_index(const std::string& id) const {
    auto it = vertex_lookup_.find(id);
    if (it == vertex_lookup_.end()) throw input_error("unknown vertex id: " + id);
    return it->second;
  }
  int edge_index(const std::string& id) const {
    auto it = edge_lookup_.find(id);
    if (it == edge_lookup_.end()) throw input_error("unknown edge id: " + id);
    return it->second;
  }
  bool has_edge(const std::string& id) const { return edge_lookup_.count(id) != 0; }

  // Incident edge indices in input order; a loop appears twice.
  const std::vector<int>& incident(int v) const { return incident_[v]; }

  // Even-degree test: loops contribute 0 mod 2.
  bool even_subgraph(Bits support) const {
    for (int v = 0; v < vertex_count(); ++v) {
      int deg = 0;
      for (int e : incident_[v])
        if (test_bit(support, e) && !is_loop(e)) ++deg;
      if (deg & 1) return false;
    }
    return true;
  }

  // Vertices touched by the support edges, as a bit mask.
  Bits vertices_of(Bits support) const {
    Bits m = 0;
    for (int e = 0; e < edge_count(); ++e)
      if (test_bit(support, e)) m |= with_bit(with_bit(0, edges_[e].u), edges_[e].v);
    return m;
  }

  Bits edge_set(const std::vector<std::string>& ids) const {
    Bits s = 0;
    for (const auto& id : ids) s = with_bit(s, edge_index(id));
    return s;
  }
  std::vector<std::string> edge_ids(Bits s) const {
    std::vector<std::string> out;
    for (int e = 0; e < edge_count(); ++e)
      if (test_bit(s, e)) out.push_back(edges_[e].id);
    return out;
  }

 private:
  void finish() {
    incident_.assign(vertex_ids_.size(), {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      incident_[edges_[e].u].push_back(static_cast<int>(e));
      if (edges_[e].v != edges_[e].u) incident_[edges_[e].v].push_back(static_cast<int>(e));
      else incident_[edges_[e].u].push_back(static_cast<int>(e));
    }
    is_univalent_.assign(vertex_ids_.size(), 0);
    for (std::size_t v = 0; v < vertex_ids_.size(); ++v) {
      int deg = static_cast<int>(incident_[v].size());
      if (deg == 1) {
        int e = incident_[v][0];
        if (!is_leg_[e])
          throw input_error("univalent vertex " + vertex_ids_[v] + " is not on a leg");
        is_univalent_[v] = 1;
      } else if (deg != 3) {
        throw input_error("vertex " + vertex_ids_[v] + " has degree " + std::to_string(deg) +
                          " (must be 3, or 1 on a leg)");
      }
    }
    for (int e : legs_) {
      int a = edges_[e].u, b = edges_[e].v;
      if (a == b) throw input_error("leg " + edges_[e].id + " is a loop");
      int univ = (is_univalent_[a] ? 1 : 0) + (is_univalent_[b] ? 1 : 0);
      if (univ != 1)
        throw input_error("leg " + edges_[e].id + " must join a trivalent vertex to a univalent one");
    }
    // connectivity
    std::vector<char> seen(vertex_ids_.size(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e : incident_[v]) {
        int w = edges_[e].u == v ? edges_[e].v : edges_[e].u;
        if (!seen[w]) { seen[w] = 1; q.push(w); }
      }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      throw input_error("graph is not connected");
  }

  std::vector<std::string> vertex_ids_;
  std::vector<Edge> edges_;
  std::vector<int> legs_;
  std::vector<char> is_leg_;
  std::vector<char> is_univalent_;
  std::vector<std::vector<int>> incident_;
  std::map<std::string, int> vertex_lookup_;
  std::map<std::string, int> edge_lookup_;
};

// Edges of the graph in BFS order from the first vertex. Every edge appears
// exactly once; used as the canonical deterministic traversal order.
inline std::vector<int> bfs_edge_order(const Graph& g) {
  std::vector<int> order;
  std::vector<char> vseen(g.vertex_count(), 0), eseen(g.edge_count(), 0);
  std::queue<int> q;
  q.push(0);
  vseen[0] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int e : g.incident(v)) {
      if (!eseen[e]) {
        eseen[e] = 1;
        order.push_back(e);
      }
      int w = g.edge(e).u == v ? g.edge(e).v : g.edge(e).u;
      if (!vseen[w]) { vseen[w] = 1; q.push(w); }
    }
  }
  return order;
}

// Fundamental cycles of a BFS spanning tree, one per non-tree edge, in input
// edge order. Deterministic given the input ordering.
inline std::vector<Bits> cycle_basis(const Graph& g) {
  if (!g.closed()) throw input_error("cycle_basis requires a closed trivalent graph");
  std::vector<int> parent_edge(g.vertex_count(), -1);
  std::vector<char> vseen(g.vertex_count(), 0), in_tree(g.edge_count(), 0);
  std::queue<int> q;
  q.push(0);
  vseen[0] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int e : g.incident(v)) {
      int w = g.edge(e).u == v ? g.edge(e).v : g.edge(e).u;
      if (!vseen[w]) {
        vseen[w] = 1;
        in_tree[e] = 1;
        parent_edge[w] = e;
        q.push(w);
      }
    }
  }
  auto path_to_root = [&](int v) {
    Bits p = 0;
    while (parent_edge[v] != -1) {
      int e = parent_edge[v];
      p ^= with_bit(0, e);
      v = g.edge(e).u == v ? g.edge(e).v : g.edge(e).u;
    }
    return p;
  };
  std::vector<Bits> basis;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (in_tree[e]) continue;
    Bits c = with_bit(0, e);
    c ^= path_to_root(g.edge(e).u);
    c ^= path_to_root(g.edge(e).v);  // loops: both paths cancel
    basis.push_back(c);
  }
  return basis;
}

struct ExIn {
  Bits external = 0;
  Bits internal = 0;
};

// External edges: off the cycle, exactly one endpoint on it. Internal edges:
// off the cycle, all endpoints on it (so a loop at a cycle vertex is internal).
inline ExIn external_internal_edges(const Graph& g, Bits cycle) {
  if (!g.even_subgraph(cycle)) throw input_error("cycle support is not an even subgraph");
  Bits on = g.vertices_of(cycle);
  ExIn r;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (test_bit(cycle, e)) continue;
    bool a = test_bit(on, g.edge(e).u), b = test_bit(on, g.edge(e).v);
    if (a && b) r.internal = with_bit(r.internal, e);
    else if (a || b) r.external = with_bit(r.external, e);
  }
  return r;
}

// Rotation system: for each vertex, a cyclic order of its incident edge-ends.
// A dart is 2*edge + end, end 0 at edge.u and end 1 at edge.v.
struct RotationSystem {
  std::vector<std::vector<int>> darts;  // per vertex, in cyclic order
};

inline int dart_vertex(const Graph& g, int d) {
  const auto& e = g.edge(d >> 1);
  return (d & 1) ? e.v : e.u;
}

inline void validate_rotation(const Graph& g, const RotationSystem& rot) {
  if (static_cast<int>(rot.darts.size()) != g.vertex_count())
    throw input_error("rotation system must cover every vertex");
  std::vector<char> seen(2 * g.edge_count(), 0);
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (int d : rot.darts[v]) {
      if (d < 0 || d >= 2 * g.edge_count()) throw input_error("rotation: dart out of range");
      if (dart_vertex(g, d) != v)
        throw input_error("rotation: dart listed at the wrong vertex");
      if (seen[d]) throw input_error("rotation: dart listed twice");
      seen[d] = 1;
    }
  }
  for (int d = 0; d < 2 * g.edge_count(); ++d)
    if (!seen[d]) throw input_error("rotation: missing edge end");
}

// Face boundaries of the embedding described by the rotation system, traced
// with next = alpha(sigma(dart)) starting from the lowest unused dart. Each
// face is returned as an edge set (edges walked twice cancel mod 2). Throws
// unless the Euler check V - E + F = 2 certifies a sphere embedding.
inline std::vector<Bits> faces(const Graph& g, const RotationSystem& rot) {
  if (!g.closed()) throw input_error("faces requires a closed trivalent graph");
  validate_rotation(g, rot);
  int nd = 2 * g.edge_count();
  std::vector<int> sigma(nd, -1);
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& cyc = rot.darts[v];
    for (std::size_t i = 0; i < cyc.size(); ++i) sigma[cyc[i]] = cyc[(i + 1) % cyc.size()];
  }
  // global dart order: vertex input order, then rotation position
  std::vector<int> start_order;
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int d : rot.darts[v]) start_order.push_back(d);
  std::vector<char> used(nd, 0);
  std::vector<Bits> out;
  for (int d0 : start_order) {
    if (used[d0]) continue;
    Bits support = 0;
    int d = d0;
    do {
      used[d] = 1;
      support ^= with_bit(0, d >> 1);
      d = sigma[d] ^ 1;  // alpha(sigma(d))
    } while (d != d0);
    out.push_back(support);
  }
  int euler = g.vertex_count() - g.edge_count() + static_cast<int>(out.size());
  if (euler != 2)
    throw input_error("rotation system is not planar (Euler check " + std::to_string(euler) +
                      " != 2)");
  return out;
}

// The g bounded-face cycles: all faces except the last-traced one, which is
// designated as the outer face.
inline std::vector<Bits> bounded_faces(const Graph& g, const RotationSystem& rot) {
  auto f = faces(g, rot);
  f.pop_back();
  return f;
}

struct CutResult {
  bool separating = false;
  Graph first;                  // holds leg_a; also leg_b when non-separating
  std::optional<Graph> second;  // holds leg_b when separating
  std::string leg_a, leg_b;
};

// Replaces an edge by two boundary legs. A separating edge yields the two
// components together with the partition; a non-separating one keeps the graph
// connected with genus g-1 and two extra legs.
inline CutResult cut_edge(const Graph& g, const std::string& edge_id) {
  int ce = g.edge_index(edge_id);
  if (g.is_leg(ce)) throw input_error("cannot cut a boundary leg");
  CutResult res;
  res.leg_a = edge_id + "a";
  res.leg_b = edge_id + "b";

  // component labels after removing ce
  std::vector<int> comp(g.vertex_count(), -1);
  int ncomp = 0;
  for (int s = 0; s < g.vertex_count(); ++s) {
    if (comp[s] != -1) continue;
    std::queue<int> q;
    q.push(s);
    comp[s] = ncomp;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e : g.incident(v)) {
        if (e == ce) continue;
        int w = g.edge(e).u == v ? g.edge(e).v : g.edge(e).u;
        if (comp[w] == -1) { comp[w] = ncomp; q.push(w); }
      }
    }
    ++ncomp;
  }
  res.separating = ncomp == 2;

  auto build_piece = [&](int which) {
    std::vector<std::string> verts;
    std::vector<EdgeSpec> edges;
    std::vector<std::string> legs;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (ncomp == 1 || comp[v] == which) verts.push_back(g.vertex_ids()[v]);
    for (int e = 0; e < g.edge_count(); ++e) {
      if (e == ce) continue;
      if (ncomp == 2 && comp[g.edge(e).u] != which) continue;
      edges.push_back({g.edge(e).id, g.vertex_ids()[g.edge(e).u], g.vertex_ids()[g.edge(e).v]});
      if (g.is_leg(e)) legs.push_back(g.edge(e).id);
    }
    auto add_leg = [&](const std::string& leg, int attach_vertex) {
      std::string tip = leg + ".v";
      verts.push_back(tip);
      edges.push_back({leg, g.vertex_ids()[attach_vertex], tip});
      legs.push_back(leg);
    };
    int au = g.edge(ce).u, av = g.edge(ce).v;
    if (ncomp == 1) {
      add_leg(res.leg_a, au);
      add_leg(res.leg_b, av);
    } else {
      if (comp[au] == which) add_leg(res.leg_a, au);
      if (comp[av] == which) add_leg(res.leg_b, av);
    }
    return Graph::make(std::move(verts), std::move(edges), std::move(legs));
  };

  if (!res.separating) {
    res.first = build_piece(0);
  } else {
    int first_comp = comp[g.edge(ce).u];  // leg_a lands in res.first
    res.first = build_piece(first_comp);
    res.second = build_piece(1 - first_comp);
  }
  return res;
}

// Re-glues two legs of the same graph into a single edge (inverse of a
// non-separating cut).
inline Graph glue_within(const Graph& g, const std::string& leg_a, const std::string& leg_b,
                         const std::string& new_id) {
  int ea = g.edge_index(leg_a), eb = g.edge_index(leg_b);
  if (!g.is_leg(ea) || !g.is_leg(eb) || ea == eb) throw input_error("glue needs two distinct legs");
  auto attach = [&](int e) {
    return g.is_univalent(g.edge(e).u) ? g.edge(e).v : g.edge(e).u;
  };
  auto tip = [&](int e) { return g.is_univalent(g.edge(e).u) ? g.edge(e).u : g.edge(e).v; };
  std::vector<std::string> verts;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (v != tip(ea) && v != tip(eb)) verts.push_back(g.vertex_ids()[v]);
  std::vector<EdgeSpec> edges;
  std::vector<std::string> legs;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (e == ea || e == eb) continue;
    edges.push_back({g.edge(e).id, g.vertex_ids()[g.edge(e).u], g.vertex_ids()[g.edge(e).v]});
    if (g.is_leg(e)) legs.push_back(g.edge(e).id);
  }
  edges.push_back({new_id, g.vertex_ids()[attach(ea)], g.vertex_ids()[attach(eb)]});
  return Graph::make(std::move(verts), std::move(edges), std::move(legs));
}

// Glues a leg of g1 to a leg of g2 (inverse of a separating cut). Vertex and
// edge ids of the two pieces must be disjoint.
inline Graph glue_across(const Graph& g1, const std::string& leg_a, const Graph& g2,
                         const std::string& leg_b, const std::string& new_id) {
  int ea = g1.edge_index(leg_a), eb = g2.edge_index(leg_b);
  if (!g1.is_leg(ea) || !g2.is_leg(eb)) throw input_error("glue needs legs");
  auto attach = [](const Graph& g, int e) {
    return g.is_univalent(g.edge(e).u) ? g.edge(e).v : g.edge(e).u;
  };
  auto tip = [](const Graph& g, int e) {
    return g.is_univalent(g.edge(e).u) ? g.edge(e).u : g.edge(e).v;
  };
  std::vector<std::string> verts;
  std::vector<EdgeSpec> edges;
  std::vector<std::string> legs;
  for (const Graph* gp : {&g1, &g2}) {
    int skip_tip = gp == &g1 ? tip(g1, ea) : tip(g2, eb);
    int skip_edge = gp == &g1 ? ea : eb;
    for (int v = 0; v < gp->vertex_count(); ++v)
      if (v != skip_tip) verts.push_back(gp->vertex_ids()[v]);
    for (int e = 0; e < gp->edge_count(); ++e) {
      if (e == skip_edge) continue;
      edges.push_back(
          {gp->edge(e).id, gp->vertex_ids()[gp->edge(e).u], gp->vertex_ids()[gp->edge(e).v]});
      if (gp->is_leg(e)) legs.push_back(gp->edge(e).id);
    }
  }
  edges.push_back({new_id, g1.vertex_ids()[attach(g1, ea)], g2.vertex_ids()[attach(g2, eb)]});
  return Graph::make(std::move(verts), std::move(edges), std::move(legs));
}

}  // namespace cblocks
