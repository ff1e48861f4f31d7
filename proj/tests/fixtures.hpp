#pragma once

// Graphs shared by the test executables and the acceptance binary.

#include "symcrit/graph.hpp"
#include "symcrit/graph_file.hpp"

#include <string>

namespace symcrit::fixtures {

// a <-> d, b and c fixed; ab <-> db, ac <-> dc, cb fixed
inline const char *running_example_text = R"(v a L
v b F
v c F
v d R
phi a d
e ab a b
e ac a c
e db d b
e dc d c
e cb c b
)";

inline SymmetricGraph running_example() { return parse_symmetric_graph_string(running_example_text); }

/// The 2n-cycle p0 - l1 - ... - l(n-1) - pn - r(n-1) - ... - r1 - p0 with
/// the reflection through p0 and pn. Right edges are written against the
/// mirror orientation on purpose.
inline std::string cycle_text(int n) {
  std::string s = "v p0 F\nv p" + std::to_string(n) + " F\n";
  for (int i = 1; i < n; ++i) s += "v l" + std::to_string(i) + " L\nv r" + std::to_string(i) + " R\n";
  for (int i = 1; i < n; ++i) s += "phi l" + std::to_string(i) + " r" + std::to_string(i) + "\n";
  auto left = [&](int i) { return i == 0 ? std::string("p0") : i == n ? "p" + std::to_string(n) : "l" + std::to_string(i); };
  auto right = [&](int i) { return i == 0 ? std::string("p0") : i == n ? "p" + std::to_string(n) : "r" + std::to_string(i); };
  for (int i = 0; i < n; ++i) {
    s += "e a" + std::to_string(i) + " " + left(i) + " " + left(i + 1) + "\n";
    s += "e b" + std::to_string(i) + " " + right(i + 1) + " " + right(i) + "\n";
  }
  return s;
}

inline SymmetricGraph cycle(int n) { return parse_symmetric_graph_string(cycle_text(n)); }

/// A single fixed edge between two fixed vertices.
inline SymmetricGraph single_fixed_edge() { return parse_symmetric_graph_string("v u F\nv w F\ne uw u w\n"); }

/// Triangle on fixed vertices with phi = identity: G^phi has a cycle.
inline SymmetricGraph fixed_triangle() {
  return parse_symmetric_graph_string("v a F\nv b F\nv c F\ne x a b\ne y b c\ne z c a\n");
}

/// Two disjoint mirrored edges and no fixed vertex.
inline SymmetricGraph no_axis() {
  return parse_symmetric_graph_string("v a L\nv b L\nv c R\nv d R\nphi a c\nphi b d\ne x a b\ne y c d\n");
}

/// Three fixed vertices joined pairwise through mirrored left / right
/// vertices; G^phi has three components.
inline SymmetricGraph three_axis_components() {
  return parse_symmetric_graph_string(R"(v f0 F
v f1 F
v f2 F
v l0 L
v l1 L
v r0 R
v r1 R
phi l0 r0
phi l1 r1
e a0 f0 l0
e a1 l0 f1
e a2 f1 l1
e a3 l1 f2
e b0 f0 r0
e b1 r0 f1
e b2 f1 r1
e b3 r1 f2
)");
}

}  // namespace symcrit::fixtures
