#pragma once

// Brute-force ground truth: everything here enumerates edge subsets directly
// and shares no code with the lattice / SNF pipeline.

#include "symcrit/graph.hpp"

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace symcrit::oracle {

inline constexpr std::size_t max_edges = 20;

using EdgeSet = std::uint32_t;  // bit j <=> edge j

inline void require_small(const Multigraph &g, std::size_t limit = max_edges) {
  if (g.edge_count() > limit || g.edge_count() > max_edges)
    throw std::length_error("oracle: " + std::to_string(g.edge_count()) + " edges exceeds the enumeration limit of " +
                            std::to_string(std::min(limit, max_edges)));
}

inline bool is_forest(const Multigraph &g, EdgeSet s) {
  DisjointSets ds(g.vertex_count());
  for (std::size_t j = 0; j < g.edge_count(); ++j)
    if ((s >> j) & 1U)
      if (!ds.unite(g.edge(j).tail, g.edge(j).head)) return false;
  return true;
}

/// Number of maximal spanning forests: acyclic edge sets of size |V| - c.
inline std::uint64_t count_maximal_forests(const Multigraph &g, std::size_t limit = max_edges) {
  require_small(g, limit);
  const std::size_t m = g.edge_count();
  const std::size_t r = g.vertex_count() - component_count(g);
  if (r == 0) return 1;
  if (r > m) return 0;
  std::uint64_t count = 0;
  // Gosper's hack over all r-subsets
  const std::uint64_t end = std::uint64_t{1} << m;
  for (std::uint64_t s = (std::uint64_t{1} << r) - 1; s < end;) {
    if (is_forest(g, static_cast<EdgeSet>(s))) ++count;
    const std::uint64_t c = s & (~s + 1);
    const std::uint64_t n = s + c;
    s = (((n ^ s) >> 2) / c) | n;
  }
  return count;
}

/// Every vertex meets H an even number of times (a loop counts twice).
inline bool is_even(const Multigraph &g, EdgeSet h) {
  std::vector<unsigned char> parity(g.vertex_count(), 0);
  for (std::size_t j = 0; j < g.edge_count(); ++j)
    if ((h >> j) & 1U) {
      parity[g.edge(j).tail] ^= 1;
      parity[g.edge(j).head] ^= 1;
    }
  for (auto x : parity)
    if (x) return false;
  return true;
}

/// H is exactly the set of edges crossing some 2-colouring of V.
inline bool is_cut(const Multigraph &g, EdgeSet h) {
  // union-find with parity to the root
  std::vector<std::size_t> parent(g.vertex_count());
  std::vector<unsigned char> rel(g.vertex_count(), 0);
  for (std::size_t v = 0; v < parent.size(); ++v) parent[v] = v;
  auto find = [&](std::size_t v, unsigned char &par) {
    par = 0;
    while (parent[v] != v) {
      par ^= rel[v];
      v = parent[v];
    }
    return v;
  };
  for (std::size_t j = 0; j < g.edge_count(); ++j) {
    const unsigned char want = (h >> j) & 1U;
    unsigned char pu = 0, pv = 0;
    const auto ru = find(g.edge(j).tail, pu);
    const auto rv = find(g.edge(j).head, pv);
    if (ru == rv) {
      if ((pu ^ pv) != want) return false;
    } else {
      parent[ru] = rv;
      rel[ru] = pu ^ pv ^ want;
    }
  }
  return true;
}

inline bool is_bicycle(const Multigraph &g, EdgeSet h) { return is_even(g, h) && is_cut(g, h); }

/// All bicycles (even subgraphs that are also cuts), in increasing bit order.
inline std::vector<EdgeSet> bicycles(const Multigraph &g, std::size_t limit = max_edges) {
  require_small(g, limit);
  std::vector<EdgeSet> out;
  const std::uint64_t end = std::uint64_t{1} << g.edge_count();
  for (std::uint64_t h = 0; h < end; ++h)
    if (is_bicycle(g, static_cast<EdgeSet>(h))) out.push_back(static_cast<EdgeSet>(h));
  return out;
}

/// log2 of a count that must be a power of two.
inline std::size_t log2_exact(std::uint64_t n) {
  if (n == 0 || !std::has_single_bit(n)) throw std::logic_error("oracle: count is not a power of two");
  return static_cast<std::size_t>(std::countr_zero(n));
}

/// Number of edge sets fixed by an edge permutation of order <= 2 that
/// satisfy `pred`, found by enumerating unions of its orbits.
template <class Pred>
std::uint64_t count_fixed(const Multigraph &g, const std::vector<std::size_t> &edge_perm, Pred pred,
                          std::size_t limit = max_edges) {
  require_small(g, limit);
  if (edge_perm.size() != g.edge_count()) throw std::invalid_argument("oracle: permutation size mismatch");
  std::vector<EdgeSet> orbits;
  for (std::size_t j = 0; j < edge_perm.size(); ++j) {
    const std::size_t k = edge_perm[j];
    if (k >= edge_perm.size() || edge_perm[k] != j) throw std::invalid_argument("oracle: not an involution");
    if (k >= j) orbits.push_back((EdgeSet{1} << j) | (EdgeSet{1} << k));
  }
  std::uint64_t count = 0;
  const std::uint64_t end = std::uint64_t{1} << orbits.size();
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    EdgeSet h = 0;
    for (std::size_t i = 0; i < orbits.size(); ++i)
      if ((mask >> i) & 1U) h |= orbits[i];
    if (pred(g, h)) ++count;
  }
  return count;
}

inline std::uint64_t count_fixed_bicycles(const Multigraph &g, const std::vector<std::size_t> &edge_perm,
                                          std::size_t limit = max_edges) {
  return count_fixed(g, edge_perm, is_bicycle, limit);
}

inline std::uint64_t count_fixed_cuts(const Multigraph &g, const std::vector<std::size_t> &edge_perm,
                                      std::size_t limit = max_edges) {
  return count_fixed(g, edge_perm, is_cut, limit);
}

inline std::uint64_t count_fixed_even(const Multigraph &g, const std::vector<std::size_t> &edge_perm,
                                      std::size_t limit = max_edges) {
  return count_fixed(g, edge_perm, is_even, limit);
}

/// Number of edge sets fixed by the permutation (2^#orbits), for
/// cross-checking fixed-space dimensions.
inline std::size_t orbit_count(const std::vector<std::size_t> &edge_perm) {
  std::size_t n = 0;
  for (std::size_t j = 0; j < edge_perm.size(); ++j)
    if (edge_perm[j] >= j) ++n;
  return n;
}

}  // namespace symcrit::oracle
