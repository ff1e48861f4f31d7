#pragma once

// Line-oriented text format for symmetric graphs:
//
//   v <id> L|F|R          vertex and its side
//   phi <left> <right>    vertex involution pair (fixed vertices omitted)
//   e <id> <tail> <head>  edge; endpoint order is the orientation
//   epair <id> <id>       edge involution pair (optional when inferable)
//   efix <id>             fixed edge (optional when inferable)
//
// '#' starts a comment.

#include "symcrit/graph.hpp"

#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace symcrit {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string &what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

namespace detail {

struct RawFile {
  struct Vertex {
    std::string id;
    std::optional<Side> side;
    std::size_t line;
  };
  struct EdgeLine {
    std::string id, tail, head;
    std::size_t line;
  };
  std::vector<Vertex> vertices;
  std::vector<EdgeLine> edges;
  std::vector<std::pair<std::string, std::string>> phi;
  std::vector<std::size_t> phi_lines;
  std::vector<std::pair<std::string, std::string>> epairs;
  std::vector<std::size_t> epair_lines;
  std::vector<std::string> efix;
  std::vector<std::size_t> efix_lines;
};

inline std::vector<std::string> tokens(const std::string &line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream in(body);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline RawFile read_raw(std::istream &in, bool side_optional) {
  RawFile raw;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    const auto t = tokens(line);
    if (t.empty()) continue;
    const std::string &kw = t[0];
    auto arity = [&](std::size_t k) {
      if (t.size() != k + 1)
        throw ParseError(n, "'" + kw + "' expects " + std::to_string(k) + " argument" + (k == 1 ? "" : "s"));
    };
    if (kw == "v") {
      if (side_optional && t.size() == 2) {
        raw.vertices.push_back({t[1], std::nullopt, n});
        continue;
      }
      arity(2);
      Side s;
      if (t[2] == "L") s = Side::Left;
      else if (t[2] == "F") s = Side::Fixed;
      else if (t[2] == "R") s = Side::Right;
      else throw ParseError(n, "vertex side must be L, F or R, got '" + t[2] + "'");
      raw.vertices.push_back({t[1], s, n});
    } else if (kw == "phi") {
      arity(2);
      raw.phi.emplace_back(t[1], t[2]);
      raw.phi_lines.push_back(n);
    } else if (kw == "e") {
      arity(3);
      raw.edges.push_back({t[1], t[2], t[3], n});
    } else if (kw == "epair") {
      arity(2);
      raw.epairs.emplace_back(t[1], t[2]);
      raw.epair_lines.push_back(n);
    } else if (kw == "efix") {
      arity(1);
      raw.efix.push_back(t[1]);
      raw.efix_lines.push_back(n);
    } else {
      throw ParseError(n, "unknown record '" + kw + "'");
    }
  }
  return raw;
}

inline Multigraph build_multigraph(const RawFile &raw) {
  Multigraph g;
  for (const auto &v : raw.vertices) {
    if (g.find_vertex(v.id)) throw ParseError(v.line, "duplicate vertex id '" + v.id + "'");
    g.add_vertex(v.id);
  }
  for (const auto &e : raw.edges) {
    if (g.find_edge(e.id)) throw ParseError(e.line, "duplicate edge id '" + e.id + "'");
    const auto t = g.find_vertex(e.tail);
    const auto h = g.find_vertex(e.head);
    if (!t) throw ParseError(e.line, "unknown vertex '" + e.tail + "'");
    if (!h) throw ParseError(e.line, "unknown vertex '" + e.head + "'");
    g.add_edge(e.id, *t, *h);
  }
  return g;
}

}  // namespace detail

/// The vertices and edges of a file, ignoring any symmetry records. Sides
/// may be omitted.
inline Multigraph parse_plain_graph(std::istream &in) {
  return detail::build_multigraph(detail::read_raw(in, true));
}

/// Parses, infers the edge involution where it is unambiguous, applies the
/// canonical orientation and validates. Throws ParseError for malformed
/// files and InvalidGraph for violated invariants.
inline SymmetricGraph parse_symmetric_graph(std::istream &in) {
  const auto raw = detail::read_raw(in, false);
  SymmetricGraph g;
  g.graph = detail::build_multigraph(raw);
  const auto &G = g.graph;
  const std::size_t nv = G.vertex_count(), ne = G.edge_count();

  g.vertex_side.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) g.vertex_side[v] = *raw.vertices[v].side;
  g.vertex_phi.assign(nv, npos);
  for (std::size_t i = 0; i < raw.phi.size(); ++i) {
    const std::size_t n = raw.phi_lines[i];
    const auto a = G.find_vertex(raw.phi[i].first);
    const auto b = G.find_vertex(raw.phi[i].second);
    if (!a || !b) throw ParseError(n, "phi references an unknown vertex");
    if (g.vertex_phi[*a] != npos || g.vertex_phi[*b] != npos)
      throw ParseError(n, "vertex paired more than once");
    g.vertex_phi[*a] = *b;
    g.vertex_phi[*b] = *a;
  }
  for (std::size_t v = 0; v < nv; ++v)
    if (g.vertex_phi[v] == npos) g.vertex_phi[v] = v;

  std::vector<std::size_t> edge_phi(ne, npos);
  for (std::size_t i = 0; i < raw.epairs.size(); ++i) {
    const std::size_t n = raw.epair_lines[i];
    const auto a = G.find_edge(raw.epairs[i].first);
    const auto b = G.find_edge(raw.epairs[i].second);
    if (!a || !b) throw ParseError(n, "epair references an unknown edge");
    if (edge_phi[*a] != npos || edge_phi[*b] != npos) throw ParseError(n, "edge paired more than once");
    edge_phi[*a] = *b;
    edge_phi[*b] = *a;
  }
  for (std::size_t i = 0; i < raw.efix.size(); ++i) {
    const auto a = G.find_edge(raw.efix[i]);
    if (!a) throw ParseError(raw.efix_lines[i], "efix references an unknown edge");
    if (edge_phi[*a] != npos) throw ParseError(raw.efix_lines[i], "edge paired more than once");
    edge_phi[*a] = *a;
  }

  // Inference: the image of e must join phi(tail) and phi(head). Among the
  // still-unpaired edges there must be exactly one such candidate.
  auto joins = [&](std::size_t f, std::size_t x, std::size_t y) {
    const auto &F = G.edge(f);
    return (F.tail == x && F.head == y) || (F.tail == y && F.head == x);
  };
  std::vector<std::vector<std::size_t>> candidates(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    if (edge_phi[e] != npos) continue;
    const std::size_t x = g.vertex_phi[G.edge(e).tail], y = g.vertex_phi[G.edge(e).head];
    for (std::size_t f = 0; f < ne; ++f)
      if (edge_phi[f] == npos && joins(f, x, y)) candidates[e].push_back(f);
  }
  for (std::size_t e = 0; e < ne; ++e)
    if (candidates[e].size() > 1)
      throw ParseError(raw.edges[e].line, "parallel edges require explicit epair (edge '" + G.edge(e).id + "')");
  for (std::size_t e = 0; e < ne; ++e) {
    if (edge_phi[e] != npos) continue;
    if (candidates[e].empty()) {
      edge_phi[e] = e;  // left for validation to report
      continue;
    }
    const std::size_t f = candidates[e].front();
    if (edge_phi[f] != npos) throw ParseError(raw.edges[e].line, "inconsistent edge involution at '" + G.edge(e).id + "'");
    edge_phi[e] = f;
    edge_phi[f] = e;
  }
  g.edge_phi = edge_phi;

  // edge sides follow the endpoints; a pair between fixed vertices puts its
  // first-listed edge on the left
  g.edge_side.assign(ne, Side::Fixed);
  for (std::size_t e = 0; e < ne; ++e) {
    if (edge_phi[e] == e) continue;
    const auto &E = G.edge(e);
    const Side a = g.vertex_side[E.tail], b = g.vertex_side[E.head];
    if (a == Side::Left || b == Side::Left) g.edge_side[e] = Side::Left;
    else if (a == Side::Right || b == Side::Right) g.edge_side[e] = Side::Right;
    else g.edge_side[e] = e < edge_phi[e] ? Side::Left : Side::Right;
  }
  return canonical_orientation(std::move(g));
}

inline SymmetricGraph parse_symmetric_graph_string(const std::string &text) {
  std::istringstream in(text);
  return parse_symmetric_graph(in);
}

/// Writes explicit epair / efix records so that no inference is needed on
/// re-reading.
inline std::string serialize(const SymmetricGraph &g) {
  std::ostringstream out;
  const auto &G = g.graph;
  for (std::size_t v = 0; v < G.vertex_count(); ++v)
    out << "v " << G.vertex_id(v) << ' ' << to_string(g.vertex_side[v]) << '\n';
  for (std::size_t v = 0; v < G.vertex_count(); ++v)
    if (g.vertex_side[v] == Side::Left) out << "phi " << G.vertex_id(v) << ' ' << G.vertex_id(g.vertex_phi[v]) << '\n';
  for (const auto &e : G.edges()) out << "e " << e.id << ' ' << G.vertex_id(e.tail) << ' ' << G.vertex_id(e.head) << '\n';
  for (std::size_t e = 0; e < G.edge_count(); ++e) {
    if (g.edge_side[e] == Side::Left) out << "epair " << G.edge(e).id << ' ' << G.edge(g.edge_phi[e]).id << '\n';
    if (g.edge_side[e] == Side::Fixed) out << "efix " << G.edge(e).id << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// random symmetric graphs

struct RandomGraphParams {
  std::size_t left_vertices = 3;
  std::size_t fixed_vertices = 2;
  std::size_t left_edges = 4;
  std::size_t fixed_edges = 1;
  bool allow_loops = true;
};

class InfeasibleParameters : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {
/// Uniform draw in [0, n) by rejection; unlike std::uniform_int_distribution
/// the sequence is the same on every standard library.
inline std::size_t draw(std::mt19937_64 &rng, std::size_t n) {
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return static_cast<std::size_t>(x % bound);
  }
}
}  // namespace detail

/// Samples the left half plus the axis (left edges inside V_L ∪ V^phi, fixed
/// edges forming a forest on V^phi) and mirrors it. Deterministic in the seed.
inline SymmetricGraph random_symmetric_graph(std::uint64_t seed, const RandomGraphParams &p) {
  const std::size_t nl = p.left_vertices, nf = p.fixed_vertices;
  if (p.fixed_edges > 0 && p.fixed_edges + 1 > nf)
    throw InfeasibleParameters("fixed edges must form a forest on the fixed vertices: " + std::to_string(p.fixed_edges) +
                               " fixed edges need at least " + std::to_string(p.fixed_edges + 1) + " fixed vertices");
  if (p.left_edges > 0 && nl + nf == 0) throw InfeasibleParameters("left edges need left or fixed vertices");
  if (p.left_edges > 0 && !p.allow_loops && nl + nf < 2)
    throw InfeasibleParameters("loop-free left edges need at least two vertices");

  std::mt19937_64 rng(seed);
  SymmetricGraph g;
  auto &G = g.graph;
  for (std::size_t i = 0; i < nl; ++i) G.add_vertex("l" + std::to_string(i));
  for (std::size_t i = 0; i < nf; ++i) G.add_vertex("f" + std::to_string(i));
  for (std::size_t i = 0; i < nl; ++i) G.add_vertex("r" + std::to_string(i));
  const std::size_t nv = 2 * nl + nf;
  g.vertex_phi.resize(nv);
  g.vertex_side.resize(nv);
  for (std::size_t i = 0; i < nl; ++i) {
    g.vertex_phi[i] = nl + nf + i;
    g.vertex_phi[nl + nf + i] = i;
    g.vertex_side[i] = Side::Left;
    g.vertex_side[nl + nf + i] = Side::Right;
  }
  for (std::size_t i = 0; i < nf; ++i) {
    g.vertex_phi[nl + i] = nl + i;
    g.vertex_side[nl + i] = Side::Fixed;
  }

  std::vector<std::pair<std::size_t, std::size_t>> left;
  for (std::size_t i = 0; i < p.left_edges; ++i) {
    std::size_t t, h;
    do {
      t = detail::draw(rng, nl + nf);
      h = detail::draw(rng, nl + nf);
    } while (!p.allow_loops && t == h);
    left.emplace_back(t, h);
  }
  std::vector<std::pair<std::size_t, std::size_t>> fixed;
  DisjointSets ds(nf);
  for (std::size_t i = 0; i < p.fixed_edges; ++i) {
    std::vector<std::pair<std::size_t, std::size_t>> options;
    for (std::size_t a = 0; a < nf; ++a)
      for (std::size_t b = a + 1; b < nf; ++b)
        if (ds.find(a) != ds.find(b)) options.emplace_back(a, b);
    auto [a, b] = options[detail::draw(rng, options.size())];
    if (detail::draw(rng, 2)) std::swap(a, b);
    ds.unite(a, b);
    fixed.emplace_back(nl + a, nl + b);
  }

  for (std::size_t i = 0; i < left.size(); ++i) G.add_edge("a" + std::to_string(i), left[i].first, left[i].second);
  for (std::size_t i = 0; i < left.size(); ++i)
    G.add_edge("b" + std::to_string(i), g.vertex_phi[left[i].first], g.vertex_phi[left[i].second]);
  for (std::size_t i = 0; i < fixed.size(); ++i) G.add_edge("c" + std::to_string(i), fixed[i].first, fixed[i].second);
  const std::size_t ml = left.size();
  g.edge_phi.resize(G.edge_count());
  g.edge_side.resize(G.edge_count());
  for (std::size_t i = 0; i < ml; ++i) {
    g.edge_phi[i] = ml + i;
    g.edge_phi[ml + i] = i;
    g.edge_side[i] = Side::Left;
    g.edge_side[ml + i] = Side::Right;
  }
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    g.edge_phi[2 * ml + i] = 2 * ml + i;
    g.edge_side[2 * ml + i] = Side::Fixed;
  }
  require_valid(g);
  return g;
}

}  // namespace symcrit
