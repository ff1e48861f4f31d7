#include "fixtures.hpp"

#include "symcrit/critical.hpp"
#include "symcrit/graph.hpp"
#include "symcrit/graph_file.hpp"
#include "symcrit/oracle.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

using namespace symcrit;

namespace {

std::set<ViolationKind> kinds(const std::vector<Violation> &v) {
  std::set<ViolationKind> out;
  for (const auto &x : v) out.insert(x.kind);
  return out;
}

Multigraph random_multigraph(std::mt19937_64 &rng, std::size_t n, std::size_t m) {
  Multigraph g;
  for (std::size_t v = 0; v < n; ++v) g.add_vertex("v" + std::to_string(v));
  for (std::size_t e = 0; e < m; ++e) g.add_edge("e" + std::to_string(e), rng() % n, rng() % n);
  return g;
}

RandomGraphParams random_params(std::mt19937_64 &rng) {
  RandomGraphParams p;
  p.left_vertices = rng() % 4;
  p.fixed_vertices = rng() % 4;
  p.fixed_edges = p.fixed_vertices ? rng() % p.fixed_vertices : 0;
  p.left_edges = (p.left_vertices + p.fixed_vertices) ? rng() % 5 : 0;
  p.allow_loops = rng() % 2;
  if (!p.allow_loops && p.left_vertices + p.fixed_vertices < 2) p.left_edges = 0;
  return p;
}

}  // namespace

TEST_CASE("multigraph bookkeeping", "[graph]") {
  Multigraph g;
  g.add_vertex("u");
  g.add_vertex("v");
  g.add_edge("x", "u", "v");
  g.add_edge("loop", "u", "u");
  CHECK(g.vertex("v") == 1);
  CHECK(g.edge_index("loop") == 1);
  CHECK(g.edge(1).is_loop());
  CHECK_FALSE(g.find_vertex("w"));
  CHECK_THROWS_AS(g.add_vertex("u"), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge("x", "u", "v"), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge("y", "u", "w"), std::out_of_range);
  CHECK(component_count(g) == 1);
  g.add_vertex("w");
  CHECK(component_count(g) == 2);
  CHECK_FALSE(is_connected(g));
}

TEST_CASE("boundary matrix", "[graph]") {
  Multigraph g;
  g.add_vertex("u");
  g.add_vertex("v");
  g.add_edge("x", "u", "v");
  g.add_edge("loop", "u", "u");
  CHECK(boundary_matrix(g) == IntMatrix{{-1, 0}, {1, 0}});

  const auto d = boundary_matrix(fixtures::running_example().graph);
  CHECK(d.rows() == 4);
  CHECK(d.cols() == 5);
  CHECK(smith_normal_form(d).rank == 3);
}

TEST_CASE("boundary columns sum to zero and bonds span rank |V| - c", "[graph][property]") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_multigraph(rng, 1 + rng() % 6, rng() % 9);
    const auto d = boundary_matrix(g);
    for (std::size_t j = 0; j < d.cols(); ++j) {
      BigInt s = 0;
      for (std::size_t i = 0; i < d.rows(); ++i) s += d(i, j);
      CHECK(s.is_zero());
    }
    std::vector<IntVector> bonds;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) bonds.push_back(bond_vector(g, v).dense());
    const auto b = IntMatrix::from_columns(g.edge_count(), bonds);
    CHECK(smith_normal_form(b).rank == g.vertex_count() - component_count(g));
  }
}

TEST_CASE("bond vectors", "[graph]") {
  const auto g = fixtures::running_example().graph;
  const auto ba = bond_vector(g, std::vector<std::string>{"a"});
  EdgeVector expected(5);
  expected.add(g.edge_index("ab"), -1);
  expected.add(g.edge_index("ac"), -1);
  CHECK(ba == expected);
  CHECK(bond_vector(g, std::vector<std::string>{"a", "b", "c", "d"}).is_zero());
  // b(S) is additive in S
  CHECK(bond_vector(g, std::vector<std::string>{"a", "b"}) ==
        bond_vector(g, std::vector<std::string>{"a"}) + bond_vector(g, std::vector<std::string>{"b"}));
  CHECK_THROWS_AS(bond_vector(g, std::vector<std::size_t>{7}), std::out_of_range);
}

TEST_CASE("validation of the running example", "[graph][validate]") {
  const auto g = fixtures::running_example();
  CHECK(validate(g).empty());
  for (std::size_t e = 0; e < g.graph.edge_count(); ++e) CHECK(g.edge_phi[g.edge_phi[e]] == e);

  auto bad = g;
  const auto cb = g.graph.edge_index("cb"), ab = g.graph.edge_index("ab");
  bad.edge_phi[cb] = ab;
  CHECK(kinds(validate(bad)).count(ViolationKind::EndpointIncompatible));
  const auto messages = validate(bad);
  CHECK(std::any_of(messages.begin(), messages.end(), [](const Violation &v) {
    return v.message().starts_with("involution incompatible with endpoints");
  }));
}

TEST_CASE("validation rejects non-reflective structure", "[graph][validate]") {
  // a fixed edge whose head is a left vertex
  SymmetricGraph g;
  g.graph.add_vertex("f");
  g.graph.add_vertex("l");
  g.graph.add_vertex("r");
  g.graph.add_edge("x", "r", "l");
  g.vertex_phi = {0, 2, 1};
  g.vertex_side = {Side::Fixed, Side::Left, Side::Right};
  g.edge_phi = {0};
  g.edge_side = {Side::Fixed};
  const auto v = validate(g);
  REQUIRE(v.size() == 1);
  CHECK(v[0].message() == "fixed edge not fixed point-wise: x");

  // an edge joining the two halves
  SymmetricGraph c;
  c.graph.add_vertex("l");
  c.graph.add_vertex("r");
  c.graph.add_edge("x", "l", "r");
  c.graph.add_edge("y", "r", "l");
  c.vertex_phi = {1, 0};
  c.vertex_side = {Side::Left, Side::Right};
  c.edge_phi = {1, 0};
  c.edge_side = {Side::Left, Side::Right};
  CHECK(kinds(validate(c)).count(ViolationKind::EdgeCrossesAxis));

  SymmetricGraph malformed;
  malformed.graph.add_vertex("a");
  CHECK(kinds(validate(malformed)) == std::set{ViolationKind::MalformedMaps});
  CHECK_THROWS_AS(require_valid(malformed), InvalidGraph);
}

TEST_CASE("self-paired edges must respect the vertex involution", "[graph][validate]") {
  // the edge is self-paired but its endpoint l is not fixed
  SymmetricGraph g;
  g.graph.add_vertex("f");
  g.graph.add_vertex("l");
  g.graph.add_vertex("r");
  g.graph.add_edge("x", "f", "l");
  g.graph.add_edge("y", "f", "r");
  g.vertex_phi = {0, 2, 1};
  g.vertex_side = {Side::Fixed, Side::Left, Side::Right};
  g.edge_phi = {0, 1};
  g.edge_side = {Side::Fixed, Side::Fixed};
  // phi(x) = x must join phi(f) = f and phi(l) = r; it does not
  CHECK(kinds(validate(g)).count(ViolationKind::EndpointIncompatible));

  // a self-paired loop labelled as a left edge
  SymmetricGraph h;
  h.graph.add_vertex("f");
  h.graph.add_edge("x", "f", "f");
  h.vertex_phi = {0};
  h.vertex_side = {Side::Fixed};
  h.edge_phi = {0};
  h.edge_side = {Side::Left};
  CHECK(kinds(validate(h)).count(ViolationKind::EdgeSide));
}

TEST_CASE("canonical orientation", "[graph][orientation]") {
  // db stored as (b, d); phi(ab) = (d, b) forces (d, b)
  auto text = std::string(fixtures::running_example_text);
  text.replace(text.find("e db d b"), 8, "e db b d");
  const auto g = parse_symmetric_graph_string(text);
  const auto &db = g.graph.edge(g.graph.edge_index("db"));
  CHECK(g.graph.vertex_id(db.tail) == "d");
  CHECK(g.graph.vertex_id(db.head) == "b");
  CHECK(validate(g).empty());

  // already equivariant: unchanged, and idempotent
  const auto r = fixtures::running_example();
  CHECK(canonical_orientation(r).graph == r.graph);

  // hexagon: the file writes every right edge against the mirror
  std::istringstream in(fixtures::cycle_text(3));
  const auto raw = detail::read_raw(in, false);
  const auto c6 = fixtures::cycle(3);
  CHECK(validate(c6).empty());
  std::size_t flipped = 0;
  for (std::size_t e = 0; e < c6.graph.edge_count(); ++e) {
    const auto &E = c6.graph.edge(e);
    const bool changed = c6.graph.vertex_id(E.tail) != raw.edges[e].tail;
    if (c6.edge_side[e] == Side::Right) {
      CHECK(changed);
      ++flipped;
    } else {
      CHECK_FALSE(changed);
    }
  }
  CHECK(flipped == 3);
  CHECK(canonical_orientation(c6).graph == c6.graph);
}

TEST_CASE("decomposition of the running example", "[graph][decompose]") {
  const auto d = decompose(fixtures::running_example());
  // G+ is a 4-cycle on a, b, c and the subdivision vertex
  CHECK(d.plus.vertex_count() == 4);
  CHECK(d.plus.edge_count() == 4);
  CHECK(d.plus.find_vertex("~cb"));
  CHECK(component_count(d.plus) == 1);
  for (std::size_t v = 0; v < d.plus.vertex_count(); ++v) {
    int degree = 0;
    for (const auto &e : d.plus.edges()) degree += (e.tail == v) + (e.head == v);
    CHECK(degree == 2);
  }
  CHECK(d.plus.find_edge("cb.1"));
  CHECK(d.plus.find_edge("cb.2"));
  // G- is two parallel edges between the contracted vertex and d
  CHECK(d.minus.vertex_count() == 2);
  CHECK(d.minus.edge_count() == 2);
  CHECK(d.minus.vertex_id(d.contracted_vertex) == "~axis");
  for (const auto &e : d.minus.edges()) {
    CHECK_FALSE(e.is_loop());
    CHECK(std::set{e.tail, e.head} == std::set<std::size_t>{d.minus.vertex("d"), d.contracted_vertex});
  }
}

TEST_CASE("decomposition of cycles and a single fixed edge", "[graph][decompose]") {
  for (int n = 2; n <= 6; ++n) {
    const auto d = decompose(fixtures::cycle(n));
    CHECK(d.plus.vertex_count() == static_cast<std::size_t>(n + 1));
    CHECK(d.plus.edge_count() == static_cast<std::size_t>(n));
    CHECK(is_connected(d.plus));  // a path
    CHECK(d.minus.vertex_count() == static_cast<std::size_t>(n));
    CHECK(d.minus.edge_count() == static_cast<std::size_t>(n));
    for (const auto &e : d.minus.edges()) CHECK_FALSE(e.is_loop());
  }
  const auto d = decompose(fixtures::single_fixed_edge());
  CHECK(d.plus.vertex_count() == 3);
  CHECK(d.plus.edge_count() == 2);
  CHECK(d.minus.vertex_count() == 1);
  CHECK(d.minus.edge_count() == 0);

  // no fixed vertex: the contracted vertex still exists
  const auto e = decompose(fixtures::no_axis());
  CHECK(e.minus.vertex_count() == 3);
  CHECK(e.contracted_vertex == 2);
}

TEST_CASE("decomposition provenance is a bijection", "[graph][decompose][property]") {
  std::mt19937_64 rng(22);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto g = random_symmetric_graph(seed, random_params(rng));
    const auto d = decompose(g);
    const auto &G = g.graph;
    // halves pair up and point back at one fixed edge
    std::vector<int> hits(G.edge_count(), 0);
    for (std::size_t j = 0; j < d.plus.edge_count(); ++j) {
      const auto o = d.plus_edge_origin[j];
      ++hits[o.edge];
      if (o.half == 0) {
        CHECK(g.edge_side[o.edge] == Side::Left);
        CHECK(d.plus_edge_of[o.edge] == j);
      } else {
        CHECK(g.edge_side[o.edge] == Side::Fixed);
        CHECK(d.plus_edge_origin[d.half_pairing[j]].edge == o.edge);
        CHECK(d.half_pairing[d.half_pairing[j]] == j);
      }
    }
    for (std::size_t j = 0; j < d.minus.edge_count(); ++j) {
      ++hits[d.minus_edge_origin[j]];
      CHECK(g.edge_side[d.minus_edge_origin[j]] == Side::Right);
      CHECK(d.minus_edge_of[d.minus_edge_origin[j]] == j);
    }
    for (std::size_t e = 0; e < G.edge_count(); ++e) CHECK(hits[e] == (g.edge_side[e] == Side::Fixed ? 2 : 1));
    CHECK(d.plus.vertex_count() == g.vertices_on(Side::Left).size() + g.vertices_on(Side::Fixed).size() +
                                       g.edges_on(Side::Fixed).size());
    CHECK(d.minus.vertex_count() == g.vertices_on(Side::Right).size() + 1);
  }
}

TEST_CASE("fixed subgraph components", "[graph]") {
  CHECK(fixed_subgraph_components(fixtures::running_example()).count == 1);
  CHECK(fixed_subgraph_components(fixtures::cycle(4)).count == 2);
  CHECK(fixed_subgraph_components(fixtures::no_axis()).count == 0);
  CHECK(fixed_subgraph_components(fixtures::three_axis_components()).count == 3);
  CHECK(fixed_subgraph_components(fixtures::single_fixed_edge()).acyclic);
  CHECK_FALSE(fixed_subgraph_components(fixtures::fixed_triangle()).acyclic);
}

TEST_CASE("graph file parsing", "[file]") {
  const auto g = fixtures::running_example();
  CHECK(g.graph.vertex_count() == 4);
  CHECK(g.graph.edge_count() == 5);
  CHECK(g.edges_on(Side::Fixed).size() == 1);

  CHECK_THROWS_WITH(parse_symmetric_graph_string("v a L\nv a F\n"), Catch::Matchers::ContainsSubstring("line 2"));
  CHECK_THROWS_AS(parse_symmetric_graph_string("v a L\nv a F\n"), ParseError);
  CHECK_THROWS_WITH(parse_symmetric_graph_string("v a L\nv b F\nv c R\nphi a c\ne x a b\ne y a b\ne x2 c b\ne y2 c b\n"),
                    Catch::Matchers::ContainsSubstring("parallel edges require explicit epair"));
  // explicit pairing resolves the ambiguity
  const auto p = parse_symmetric_graph_string(
      "v a L\nv b F\nv c R\nphi a c\ne x a b\ne y a b\ne x2 c b\ne y2 c b\nepair x x2\nepair y y2\n");
  CHECK(p.edge_phi[p.graph.edge_index("x")] == p.graph.edge_index("x2"));
  CHECK_THROWS_AS(parse_symmetric_graph_string("v a Q\n"), ParseError);
  CHECK_THROWS_AS(parse_symmetric_graph_string("v a L\nbogus\n"), ParseError);
  CHECK_THROWS_AS(parse_symmetric_graph_string("v a L\ne x a\n"), ParseError);
  CHECK_THROWS_AS(parse_symmetric_graph_string("v a L\nv b R\nphi a b\ne x a b\ne y b a\nepair x y\n"), InvalidGraph);
  // comments and blank lines
  CHECK_NOTHROW(parse_symmetric_graph_string("# header\n\nv a F   # fixed\n"));
}

TEST_CASE("serialize round-trips", "[file][property]") {
  const auto g = fixtures::running_example();
  const auto again = parse_symmetric_graph_string(serialize(g));
  CHECK(again.graph == g.graph);
  CHECK(again.edge_phi == g.edge_phi);
  CHECK(again.vertex_phi == g.vertex_phi);
  CHECK(again.edge_side == g.edge_side);
  CHECK(serialize(again) == serialize(g));

  std::mt19937_64 rng(23);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = random_symmetric_graph(seed, random_params(rng));
    const auto s = parse_symmetric_graph_string(serialize(r));
    CHECK(s.graph == r.graph);
    CHECK(s.edge_phi == r.edge_phi);
    CHECK(s.vertex_side == r.vertex_side);
  }
}

TEST_CASE("plain graph files", "[file]") {
  std::istringstream in("v a\nv b\nv c\ne ab a b\ne bc b c\ne ca c a\n");
  const auto g = parse_plain_graph(in);
  CHECK(g.edge_count() == 3);
  CHECK(forest_count(g) == 3);
}

TEST_CASE("random generator is deterministic and valid", "[random][property]") {
  RandomGraphParams p;
  p.left_vertices = 3;
  p.fixed_vertices = 2;
  p.left_edges = 5;
  p.fixed_edges = 1;
  CHECK(serialize(random_symmetric_graph(1, p)) == serialize(random_symmetric_graph(1, p)));

  std::mt19937_64 rng(24);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto params = random_params(rng);
    const auto g = random_symmetric_graph(seed, params);
    CHECK(validate(g).empty());
    CHECK(g.edges_on(Side::Fixed).size() == params.fixed_edges);
    CHECK(g.edges_on(Side::Left).size() == params.left_edges);
  }
}

TEST_CASE("infeasible generator parameters", "[random]") {
  RandomGraphParams p;
  p.fixed_vertices = 0;
  p.fixed_edges = 1;
  CHECK_THROWS_AS(random_symmetric_graph(1, p), InfeasibleParameters);
  p.fixed_vertices = 2;
  p.fixed_edges = 2;
  CHECK_THROWS_AS(random_symmetric_graph(1, p), InfeasibleParameters);
  p = {};
  p.left_vertices = 0;
  p.fixed_vertices = 1;
  p.fixed_edges = 0;
  p.allow_loops = false;
  CHECK_THROWS_AS(random_symmetric_graph(1, p), InfeasibleParameters);
}

TEST_CASE("forest enumeration", "[oracle]") {
  CHECK(oracle::count_maximal_forests(fixtures::running_example().graph) == 8);
  CHECK(oracle::count_maximal_forests(fixtures::cycle(4).graph) == 8);
  Multigraph two_triangles;
  for (auto v : {"a", "b", "c", "x", "y", "z"}) two_triangles.add_vertex(v);
  for (auto [id, t, h] : {std::tuple{"1", "a", "b"}, {"2", "b", "c"}, {"3", "c", "a"}, {"4", "x", "y"},
                          {"5", "y", "z"}, {"6", "z", "x"}})
    two_triangles.add_edge(id, t, h);
  CHECK(oracle::count_maximal_forests(two_triangles) == 9);
  Multigraph lonely;
  lonely.add_vertex("v");
  CHECK(oracle::count_maximal_forests(lonely) == 1);
  Multigraph big;
  big.add_vertex("v");
  for (int i = 0; i < 21; ++i) big.add_edge("l" + std::to_string(i), 0, 0);
  CHECK_THROWS_AS(oracle::count_maximal_forests(big), std::length_error);
}

TEST_CASE("forest count equals |K| on random multigraphs", "[oracle][property]") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 150; ++trial) {
    const auto g = random_multigraph(rng, 1 + rng() % 6, rng() % 11);
    CHECK(forest_count(g) == oracle::count_maximal_forests(g));
  }
}

TEST_CASE("enumerated bicycles are even cuts and fill Z ∩ B mod 2", "[oracle][property]") {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 150; ++trial) {
    const auto g = random_multigraph(rng, 1 + rng() % 6, rng() % 11);
    const auto space = p_bicycle_space(g, 2);
    const auto found = oracle::bicycles(g);
    REQUIRE(found.size() == (std::size_t{1} << space.dim()));
    std::set<ModpVector> algebraic;
    for (const auto &v : enumerate(space)) algebraic.insert(v);
    for (const auto h : found) {
      ModpVector v(g.edge_count());
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = (h >> j) & 1U;
      CHECK(algebraic.count(v));
      CHECK(oracle::is_even(g, h));
      CHECK(oracle::is_cut(g, h));
    }
  }
}

TEST_CASE("cut and even-subgraph oracles", "[oracle]") {
  const auto g = fixtures::running_example().graph;
  auto set_of = [&](std::initializer_list<const char *> ids) {
    oracle::EdgeSet s = 0;
    for (auto id : ids) s |= oracle::EdgeSet{1} << g.edge_index(id);
    return s;
  };
  const auto four_cycle = set_of({"ab", "ac", "db", "dc"});
  CHECK(oracle::is_bicycle(g, four_cycle));
  CHECK(oracle::bicycles(g).size() == 2);
  CHECK(oracle::is_cut(g, set_of({"ab", "ac"})));
  CHECK_FALSE(oracle::is_even(g, set_of({"ab", "ac"})));
  CHECK(oracle::is_even(g, set_of({"ab", "cb", "ac"})));
  CHECK_FALSE(oracle::is_cut(g, set_of({"ab", "cb", "ac"})));
  CHECK(oracle::log2_exact(8) == 3);
  CHECK_THROWS_AS(oracle::log2_exact(6), std::logic_error);
}
