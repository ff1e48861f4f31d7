#pragma once

#include "symcrit/int_matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace symcrit {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Edge {
  std::string id;
  std::size_t tail;
  std::size_t head;

  bool is_loop() const noexcept { return tail == head; }
  friend bool operator==(const Edge &, const Edge &) = default;
};

/// Multigraph with loops and parallel edges. Vertex and edge order is the
/// insertion order and fixes every matrix layout downstream.
class Multigraph {
public:
  std::size_t add_vertex(const std::string &id) {
    if (vertex_index_.count(id)) throw std::invalid_argument("duplicate vertex id '" + id + "'");
    vertex_index_.emplace(id, vertices_.size());
    vertices_.push_back(id);
    return vertices_.size() - 1;
  }

  std::size_t add_edge(const std::string &id, std::size_t tail, std::size_t head) {
    if (edge_index_.count(id)) throw std::invalid_argument("duplicate edge id '" + id + "'");
    if (tail >= vertices_.size() || head >= vertices_.size())
      throw std::out_of_range("edge '" + id + "' references a missing vertex");
    edge_index_.emplace(id, edges_.size());
    edges_.push_back({id, tail, head});
    return edges_.size() - 1;
  }

  std::size_t add_edge(const std::string &id, const std::string &tail, const std::string &head) {
    return add_edge(id, vertex(tail), vertex(head));
  }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<std::string> &vertices() const noexcept { return vertices_; }
  const std::vector<Edge> &edges() const noexcept { return edges_; }
  const std::string &vertex_id(std::size_t v) const { return vertices_.at(v); }
  const Edge &edge(std::size_t e) const { return edges_.at(e); }

  /// Index of a vertex id; throws std::out_of_range for unknown ids.
  std::size_t vertex(const std::string &id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) throw std::out_of_range("unknown vertex '" + id + "'");
    return it->second;
  }
  std::optional<std::size_t> find_vertex(const std::string &id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t edge_index(const std::string &id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) throw std::out_of_range("unknown edge '" + id + "'");
    return it->second;
  }
  std::optional<std::size_t> find_edge(const std::string &id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }

  void set_orientation(std::size_t e, std::size_t tail, std::size_t head) {
    edges_.at(e).tail = tail;
    edges_.at(e).head = head;
  }

  friend bool operator==(const Multigraph &a, const Multigraph &b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::map<std::string, std::size_t> vertex_index_;
  std::map<std::string, std::size_t> edge_index_;
};

/// Union-find over vertex indices.
class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  /// false if already joined
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

private:
  std::vector<std::size_t> parent_;
};

inline std::size_t component_count(const Multigraph &g) {
  DisjointSets ds(g.vertex_count());
  std::size_t c = g.vertex_count();
  for (const auto &e : g.edges())
    if (ds.unite(e.tail, e.head)) --c;
  return c;
}

inline bool is_connected(const Multigraph &g) { return component_count(g) == 1; }

/// |V| x |E| signed incidence matrix: +1 at the head, -1 at the tail, loops zero.
inline IntMatrix boundary_matrix(const Multigraph &g) {
  IntMatrix d(g.vertex_count(), g.edge_count());
  for (std::size_t j = 0; j < g.edge_count(); ++j) {
    const auto &e = g.edge(j);
    if (e.is_loop()) continue;
    d(e.head, j) += 1;
    d(e.tail, j) -= 1;
  }
  return d;
}

/// Sparse integer combination of the edges of a fixed ambient graph.
class EdgeVector {
public:
  explicit EdgeVector(std::size_t edge_count) : edge_count_(edge_count) {}

  static EdgeVector from_dense(const IntVector &v) {
    EdgeVector out(v.size());
    for (std::size_t e = 0; e < v.size(); ++e)
      if (!v[e].is_zero()) out.coeffs_[e] = v[e];
    return out;
  }

  std::size_t edge_count() const noexcept { return edge_count_; }
  const std::map<std::size_t, BigInt> &coefficients() const noexcept { return coeffs_; }

  BigInt operator[](std::size_t e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? BigInt(0) : it->second;
  }

  void add(std::size_t e, const BigInt &c) {
    if (e >= edge_count_) throw std::out_of_range("EdgeVector: edge index out of range");
    BigInt &slot = coeffs_[e];
    slot += c;
    if (slot.is_zero()) coeffs_.erase(e);
  }

  IntVector dense() const {
    IntVector v(edge_count_);
    for (const auto &[e, c] : coeffs_) v[e] = c;
    return v;
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }

  EdgeVector &operator+=(const EdgeVector &o) {
    require_same(o);
    for (const auto &[e, c] : o.coeffs_) add(e, c);
    return *this;
  }
  EdgeVector &operator-=(const EdgeVector &o) {
    require_same(o);
    for (const auto &[e, c] : o.coeffs_) add(e, -c);
    return *this;
  }
  friend EdgeVector operator+(EdgeVector a, const EdgeVector &b) { return a += b; }
  friend EdgeVector operator-(EdgeVector a, const EdgeVector &b) { return a -= b; }
  friend EdgeVector operator-(EdgeVector a) {
    for (auto &[e, c] : a.coeffs_) c = -c;
    return a;
  }
  friend bool operator==(const EdgeVector &, const EdgeVector &) = default;

private:
  void require_same(const EdgeVector &o) const {
    if (o.edge_count_ != edge_count_) throw std::invalid_argument("EdgeVector: different ambient graphs");
  }
  std::size_t edge_count_;
  std::map<std::size_t, BigInt> coeffs_;
};

/// b_G(S): the coboundary of the indicator of S. An edge gets +1 for each
/// endpoint in S that is its head and -1 for each that is its tail.
inline EdgeVector bond_vector(const Multigraph &g, const std::vector<std::size_t> &vertex_set) {
  std::vector<bool> in_set(g.vertex_count(), false);
  for (auto v : vertex_set) {
    if (v >= g.vertex_count()) throw std::out_of_range("bond_vector: unknown vertex");
    in_set[v] = true;
  }
  EdgeVector b(g.edge_count());
  for (std::size_t j = 0; j < g.edge_count(); ++j) {
    const auto &e = g.edge(j);
    if (e.is_loop()) continue;
    int c = (in_set[e.head] ? 1 : 0) - (in_set[e.tail] ? 1 : 0);
    if (c) b.add(j, c);
  }
  return b;
}

inline EdgeVector bond_vector(const Multigraph &g, const std::vector<std::string> &vertex_ids) {
  std::vector<std::size_t> idx;
  idx.reserve(vertex_ids.size());
  for (const auto &id : vertex_ids) idx.push_back(g.vertex(id));
  return bond_vector(g, idx);
}

inline EdgeVector bond_vector(const Multigraph &g, std::size_t v) {
  return bond_vector(g, std::vector<std::size_t>{v});
}

/// Disjoint union; vertices and edges of `a` come first.
inline Multigraph disjoint_union(const Multigraph &a, const Multigraph &b,
                                 const std::string &a_prefix = "+:", const std::string &b_prefix = "-:") {
  Multigraph u;
  for (const auto &v : a.vertices()) u.add_vertex(a_prefix + v);
  for (const auto &v : b.vertices()) u.add_vertex(b_prefix + v);
  for (const auto &e : a.edges()) u.add_edge(a_prefix + e.id, e.tail, e.head);
  const std::size_t shift = a.vertex_count();
  for (const auto &e : b.edges()) u.add_edge(b_prefix + e.id, e.tail + shift, e.head + shift);
  return u;
}

// ---------------------------------------------------------------------------
// Graphs with a reflective symmetry

enum class Side { Left, Fixed, Right };

inline const char *to_string(Side s) {
  switch (s) {
  case Side::Left: return "L";
  case Side::Fixed: return "F";
  case Side::Right: return "R";
  }
  return "?";
}

inline Side mirror(Side s) {
  return s == Side::Left ? Side::Right : s == Side::Right ? Side::Left : Side::Fixed;
}

/// A multigraph with an involution phi acting on vertices and edges, and the
/// Left / Fixed / Right partitions of both.
struct SymmetricGraph {
  Multigraph graph;
  std::vector<std::size_t> vertex_phi;
  std::vector<std::size_t> edge_phi;
  std::vector<Side> vertex_side;
  std::vector<Side> edge_side;

  std::vector<std::size_t> vertices_on(Side s) const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < vertex_side.size(); ++v)
      if (vertex_side[v] == s) out.push_back(v);
    return out;
  }
  std::vector<std::size_t> edges_on(Side s) const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < edge_side.size(); ++e)
      if (edge_side[e] == s) out.push_back(e);
    return out;
  }
};

enum class ViolationKind {
  MalformedMaps,
  VertexInvolution,
  EdgeInvolution,
  VertexSide,
  EdgeSide,
  EndpointIncompatible,
  FixedEdgeNotPointwise,
  EdgeCrossesAxis,
  OrientationNotEquivariant,
};

inline const char *describe(ViolationKind k) {
  switch (k) {
  case ViolationKind::MalformedMaps: return "involution maps have the wrong size or range";
  case ViolationKind::VertexInvolution: return "vertex map is not an involution";
  case ViolationKind::EdgeInvolution: return "edge map is not an involution";
  case ViolationKind::VertexSide: return "vertex side inconsistent with involution";
  case ViolationKind::EdgeSide: return "edge side inconsistent with involution";
  case ViolationKind::EndpointIncompatible: return "involution incompatible with endpoints";
  case ViolationKind::FixedEdgeNotPointwise: return "fixed edge not fixed point-wise";
  case ViolationKind::EdgeCrossesAxis: return "edge crosses the axis";
  case ViolationKind::OrientationNotEquivariant: return "orientation not equivariant";
  }
  return "unknown violation";
}

struct Violation {
  ViolationKind kind;
  std::string element;  // offending vertex or edge id

  std::string message() const { return std::string(describe(kind)) + ": " + element; }
};

/// Every violated invariant; empty iff `g` is a valid graph with reflective
/// symmetry and an equivariant orientation.
inline std::vector<Violation> validate(const SymmetricGraph &g) {
  std::vector<Violation> out;
  const auto &G = g.graph;
  const std::size_t nv = G.vertex_count(), ne = G.edge_count();
  if (g.vertex_phi.size() != nv || g.edge_phi.size() != ne || g.vertex_side.size() != nv ||
      g.edge_side.size() != ne) {
    out.push_back({ViolationKind::MalformedMaps, "<graph>"});
    return out;
  }
  for (std::size_t v = 0; v < nv; ++v)
    if (g.vertex_phi[v] >= nv) {
      out.push_back({ViolationKind::MalformedMaps, G.vertex_id(v)});
      return out;
    }
  for (std::size_t e = 0; e < ne; ++e)
    if (g.edge_phi[e] >= ne) {
      out.push_back({ViolationKind::MalformedMaps, G.edge(e).id});
      return out;
    }

  for (std::size_t v = 0; v < nv; ++v) {
    const std::size_t w = g.vertex_phi[v];
    if (g.vertex_phi[w] != v) out.push_back({ViolationKind::VertexInvolution, G.vertex_id(v)});
    const bool fixed = w == v;
    if (fixed != (g.vertex_side[v] == Side::Fixed) ||
        (!fixed && g.vertex_side[w] != mirror(g.vertex_side[v])))
      out.push_back({ViolationKind::VertexSide, G.vertex_id(v)});
  }

  for (std::size_t e = 0; e < ne; ++e) {
    const std::size_t f = g.edge_phi[e];
    const auto &E = G.edge(e);
    const auto &F = G.edge(f);
    const std::string &id = E.id;
    if (g.edge_phi[f] != e) out.push_back({ViolationKind::EdgeInvolution, id});
    const bool fixed = f == e;
    if (fixed != (g.edge_side[e] == Side::Fixed) ||
        (!fixed && g.edge_side[f] != mirror(g.edge_side[e])))
      out.push_back({ViolationKind::EdgeSide, id});

    const std::size_t pt = g.vertex_phi[E.tail], ph = g.vertex_phi[E.head];
    const bool same = F.tail == pt && F.head == ph;
    const bool swapped = F.tail == ph && F.head == pt;
    if (!same && !swapped) {
      out.push_back({ViolationKind::EndpointIncompatible, id});
      continue;
    }
    if (fixed) {
      if (g.vertex_side[E.tail] != Side::Fixed || g.vertex_side[E.head] != Side::Fixed)
        out.push_back({ViolationKind::FixedEdgeNotPointwise, id});
      continue;
    }
    const Side s = g.edge_side[e];
    if (s != Side::Fixed) {
      const Side other = mirror(s);
      if (g.vertex_side[E.tail] == other || g.vertex_side[E.head] == other)
        out.push_back({ViolationKind::EdgeCrossesAxis, id});
    }
    if (!same) out.push_back({ViolationKind::OrientationNotEquivariant, id});
  }
  return out;
}

inline bool is_valid(const SymmetricGraph &g) { return validate(g).empty(); }

class InvalidGraph : public std::invalid_argument {
public:
  explicit InvalidGraph(std::vector<Violation> violations)
      : std::invalid_argument(summarize(violations)), violations_(std::move(violations)) {}
  const std::vector<Violation> &violations() const noexcept { return violations_; }

private:
  static std::string summarize(const std::vector<Violation> &v) {
    std::string s = "invalid symmetric graph";
    for (const auto &x : v) s += "; " + x.message();
    return s;
  }
  std::vector<Violation> violations_;
};

inline void require_valid(const SymmetricGraph &g) {
  auto v = validate(g);
  if (!v.empty()) throw InvalidGraph(std::move(v));
}

/// Reorients every Right edge to mirror its Left partner so that phi is an
/// involution of directed graphs. Left and Fixed edges are left alone.
inline SymmetricGraph canonical_orientation(SymmetricGraph g) {
  auto violations = validate(g);
  std::erase_if(violations,
                [](const Violation &v) { return v.kind == ViolationKind::OrientationNotEquivariant; });
  if (!violations.empty()) throw InvalidGraph(std::move(violations));
  for (std::size_t e = 0; e < g.graph.edge_count(); ++e) {
    if (g.edge_side[e] != Side::Right) continue;
    const auto &partner = g.graph.edge(g.edge_phi[e]);
    g.graph.set_orientation(e, g.vertex_phi[partner.tail], g.vertex_phi[partner.head]);
  }
  return g;
}

// ---------------------------------------------------------------------------
// G+ and G-

/// Where an edge of G+ comes from: a Left edge of G, or one half of a
/// subdivided Fixed edge.
struct PlusEdgeOrigin {
  std::size_t edge;  // index in G
  int half;          // 0 for a Left edge, 1 or 2 for the halves of a Fixed edge
};

struct Decomposition {
  Multigraph plus;
  Multigraph minus;
  std::vector<PlusEdgeOrigin> plus_edge_origin;
  std::vector<std::size_t> minus_edge_origin;     // Right edge of G
  std::vector<std::size_t> plus_vertex_origin;    // vertex of G, npos for subdivision vertices
  std::vector<std::size_t> minus_vertex_origin;   // vertex of G, npos for the contracted vertex
  std::vector<std::size_t> subdivision_vertices;  // in plus, one per Fixed edge (in edge order)
  std::vector<std::size_t> subdivision_of;        // Fixed edge of G -> subdivision vertex, npos otherwise
  std::size_t contracted_vertex = npos;           // in minus
  std::vector<std::size_t> half_pairing;          // plus edge -> other half, npos for Left edges
  std::vector<std::size_t> plus_edge_of;          // Left edge of G -> plus edge, npos otherwise
  std::vector<std::size_t> minus_edge_of;         // Right edge of G -> minus edge, npos otherwise
};

namespace detail {
inline std::string fresh_id(const std::string &base, auto &&taken) {
  std::string id = base;
  while (taken(id)) id += '\'';
  return id;
}
}  // namespace detail

/// G+ subdivides each Fixed edge of E_L and E^phi; G- contracts V^phi in E_R
/// to a single vertex (created even when V^phi is empty).
inline Decomposition decompose(const SymmetricGraph &g) {
  require_valid(g);
  const auto &G = g.graph;
  Decomposition d;
  d.plus_vertex_origin.clear();
  std::vector<std::size_t> plus_vertex_of(G.vertex_count(), npos);
  std::vector<std::size_t> minus_vertex_of(G.vertex_count(), npos);

  for (std::size_t v = 0; v < G.vertex_count(); ++v)
    if (g.vertex_side[v] != Side::Right) {
      plus_vertex_of[v] = d.plus.add_vertex(G.vertex_id(v));
      d.plus_vertex_origin.push_back(v);
    }
  d.subdivision_of.assign(G.edge_count(), npos);
  for (std::size_t e = 0; e < G.edge_count(); ++e) {
    if (g.edge_side[e] != Side::Fixed) continue;
    const auto id = detail::fresh_id("~" + G.edge(e).id,
                                     [&](const std::string &s) { return d.plus.find_vertex(s).has_value(); });
    d.subdivision_of[e] = d.plus.add_vertex(id);
    d.subdivision_vertices.push_back(d.subdivision_of[e]);
    d.plus_vertex_origin.push_back(npos);
  }

  d.plus_edge_of.assign(G.edge_count(), npos);
  d.minus_edge_of.assign(G.edge_count(), npos);
  auto plus_edge_taken = [&](const std::string &s) {
    return d.plus.find_edge(s).has_value() || G.find_edge(s).has_value();
  };
  for (std::size_t e = 0; e < G.edge_count(); ++e) {
    const auto &E = G.edge(e);
    if (g.edge_side[e] == Side::Left) {
      d.plus_edge_of[e] = d.plus.add_edge(E.id, plus_vertex_of[E.tail], plus_vertex_of[E.head]);
      d.plus_edge_origin.push_back({e, 0});
      d.half_pairing.push_back(npos);
    } else if (g.edge_side[e] == Side::Fixed) {
      const std::size_t s = d.subdivision_of[e];
      const auto first = d.plus.add_edge(detail::fresh_id(E.id + ".1", plus_edge_taken), plus_vertex_of[E.tail], s);
      const auto second = d.plus.add_edge(detail::fresh_id(E.id + ".2", plus_edge_taken), s, plus_vertex_of[E.head]);
      d.plus_edge_origin.push_back({e, 1});
      d.plus_edge_origin.push_back({e, 2});
      d.half_pairing.push_back(second);
      d.half_pairing.push_back(first);
    }
  }

  for (std::size_t v = 0; v < G.vertex_count(); ++v)
    if (g.vertex_side[v] == Side::Right) {
      minus_vertex_of[v] = d.minus.add_vertex(G.vertex_id(v));
      d.minus_vertex_origin.push_back(v);
    }
  d.contracted_vertex = d.minus.add_vertex(
      detail::fresh_id("~axis", [&](const std::string &s) { return d.minus.find_vertex(s).has_value(); }));
  d.minus_vertex_origin.push_back(npos);
  for (std::size_t v = 0; v < G.vertex_count(); ++v)
    if (g.vertex_side[v] == Side::Fixed) minus_vertex_of[v] = d.contracted_vertex;

  for (std::size_t e = 0; e < G.edge_count(); ++e) {
    if (g.edge_side[e] != Side::Right) continue;
    const auto &E = G.edge(e);
    d.minus_edge_of[e] = d.minus.add_edge(E.id, minus_vertex_of[E.tail], minus_vertex_of[E.head]);
    d.minus_edge_origin.push_back(e);
  }
  return d;
}

/// Connected components of the fixed subgraph (V^phi, E^phi).
struct FixedComponents {
  std::size_t count = 0;
  std::vector<std::size_t> component_of;  // vertex of G -> component, npos off the axis
  bool acyclic = true;                    // (V^phi, E^phi) is a forest
};

inline FixedComponents fixed_subgraph_components(const SymmetricGraph &g) {
  const auto &G = g.graph;
  DisjointSets ds(G.vertex_count());
  FixedComponents out;
  for (std::size_t e = 0; e < G.edge_count(); ++e)
    if (g.edge_side[e] == Side::Fixed && !ds.unite(G.edge(e).tail, G.edge(e).head)) out.acyclic = false;
  out.component_of.assign(G.vertex_count(), npos);
  std::map<std::size_t, std::size_t> label;
  for (std::size_t v = 0; v < G.vertex_count(); ++v) {
    if (g.vertex_side[v] != Side::Fixed) continue;
    auto [it, inserted] = label.emplace(ds.find(v), label.size());
    out.component_of[v] = it->second;
  }
  out.count = label.size();
  return out;
}

}  // namespace symcrit
