#pragma once

#include "symcrit/abelian_group.hpp"
#include "symcrit/graph.hpp"
#include "symcrit/int_matrix.hpp"
#include "symcrit/modp.hpp"
#include "symcrit/smith.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace symcrit {

/// (d, d^t) with d : C1 -> C0. The standard bases are orthonormal, so the
/// adjoint is the transpose; anything else is rejected.
struct AdjointPair {
  IntMatrix d;
  IntMatrix dt;

  explicit AdjointPair(IntMatrix boundary) : d(std::move(boundary)), dt(d.transpose()) {}
  AdjointPair(IntMatrix boundary, IntMatrix coboundary) : d(std::move(boundary)), dt(std::move(coboundary)) {
    if (!(dt == d.transpose())) throw std::invalid_argument("AdjointPair: dt is not the transpose of d");
  }

  static AdjointPair of(const Multigraph &g) { return AdjointPair(boundary_matrix(g)); }

  std::size_t c1_rank() const noexcept { return d.cols(); }
  std::size_t c0_rank() const noexcept { return d.rows(); }
};

/// Columns form a lattice basis of Z = ker d.
inline IntMatrix cycle_lattice(const AdjointPair &pair) { return integer_kernel(pair.d); }

/// Columns generate B = im d^t.
inline IntMatrix bond_lattice(const AdjointPair &pair) { return pair.dt; }

/// K = C1 / (Z + B).
inline FpAbelianGroup critical_group(const AdjointPair &pair) {
  return quotient_group(pair.c1_rank(), hconcat(cycle_lattice(pair), bond_lattice(pair)));
}

inline FpAbelianGroup critical_group(const Multigraph &g) { return critical_group(AdjointPair::of(g)); }

/// K read off coker(d d^t) with the free part dropped. The splitting
/// K + coker(d) = coker(d d^t) needs coker(d) torsion-free, which always
/// holds for graphs; other pairs throw std::domain_error.
inline FpAbelianGroup critical_group_via_laplacian(const AdjointPair &pair) {
  const auto coker_d = quotient_group(pair.c0_rank(), pair.d);
  if (!coker_d.invariant_factors().empty())
    throw std::domain_error("critical_group_via_laplacian: coker(d) has torsion " + coker_d.to_string());
  const auto laplacian = quotient_group(pair.c0_rank(), pair.d * pair.dt);
  if (laplacian.free_rank() != coker_d.free_rank())
    throw std::logic_error("critical_group_via_laplacian: free ranks disagree");
  const auto &factors = laplacian.invariant_factors();
  IntMatrix diag(factors.size(), factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) diag(i, i) = factors[i];
  return quotient_group(factors.size(), diag);
}

/// Number of maximal spanning forests, as |K(G)|.
inline BigInt forest_count(const Multigraph &g) { return *critical_group(g).order(); }

/// Z ∩ B reduced mod p.
inline ModpSubspace p_bicycle_space(const AdjointPair &pair, unsigned p) {
  const auto m = ModpMatrix::reduce(pair.d, p);
  return intersect(kernel(m), row_space(m));
}

inline ModpSubspace p_bicycle_space(const Multigraph &g, unsigned p) {
  return p_bicycle_space(AdjointPair::of(g), p);
}

/// Number of invariant factors divisible by p, i.e. dim K/pK.
inline std::size_t p_rank(const FpAbelianGroup &g, const BigInt &p) {
  std::size_t n = g.free_rank();
  for (const auto &d : g.invariant_factors())
    if ((d % p).is_zero()) ++n;
  return n;
}

/// (f1, f0) between two pairs. f0 is given on a basis W of a sublattice of
/// C0 that contains im d (W = identity for a full morphism), so f0 acts on
/// W-coordinates.
struct PairMorphism {
  AdjointPair source;
  AdjointPair target;
  IntMatrix f1;         // C1' x C1
  IntMatrix f0;         // C0' x k
  IntMatrix f0_domain;  // C0 x k, columns W
};

struct IntertwiningReport {
  bool first = false;           // f0 d = d' f1
  bool second_mod_b = false;    // f1 d^t = d'^t f0 mod B'
  bool second_strict = false;   // ... on the nose
  bool ok() const noexcept { return first && second_mod_b; }
};

namespace detail {

inline void check_morphism_shapes(const PairMorphism &m) {
  const auto &s = m.source;
  const auto &t = m.target;
  if (m.f1.rows() != t.c1_rank() || m.f1.cols() != s.c1_rank())
    throw std::invalid_argument("PairMorphism: f1 has the wrong shape");
  if (m.f0_domain.rows() != s.c0_rank() || m.f0.cols() != m.f0_domain.cols() || m.f0.rows() != t.c0_rank())
    throw std::invalid_argument("PairMorphism: f0 has the wrong shape");
}

/// Coordinates C with W C = A; throws when a column is outside the lattice.
inline IntMatrix coordinates_in(const IntMatrix &w, const IntMatrix &a) {
  const auto snf = smith_normal_form(w);
  IntMatrix c(w.cols(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    auto x = solve_integer(snf, a.column(j));
    if (!x) throw std::invalid_argument("vector outside the domain of f0");
    for (std::size_t i = 0; i < x->size(); ++i) c(i, j) = (*x)[i];
  }
  return c;
}

}  // namespace detail

inline IntertwiningReport check_intertwining(const PairMorphism &m) {
  detail::check_morphism_shapes(m);
  IntertwiningReport r;
  const IntMatrix d_coords = detail::coordinates_in(m.f0_domain, m.source.d);
  r.first = m.f0 * d_coords == m.target.d * m.f1;
  const IntMatrix lhs = m.f1 * (m.source.dt * m.f0_domain);
  const IntMatrix rhs = m.target.dt * m.f0;
  r.second_strict = lhs == rhs;
  r.second_mod_b = r.second_strict || lattice_contains(m.target.dt, lhs - rhs);
  return r;
}

inline PairMorphism make_morphism(AdjointPair source, AdjointPair target, IntMatrix f1, IntMatrix f0) {
  IntMatrix w = IntMatrix::identity(source.c0_rank());
  PairMorphism m{std::move(source), std::move(target), std::move(f1), std::move(f0), std::move(w)};
  if (!check_intertwining(m).ok()) throw std::invalid_argument("PairMorphism: intertwining violated");
  return m;
}

/// f1 Z ⊆ Z' (checked as d' f1 Z = 0).
inline bool preserves_cycles(const IntMatrix &f1, const AdjointPair &source, const AdjointPair &target) {
  return (target.d * (f1 * cycle_lattice(source))).is_zero();
}

/// f1 B ⊆ B' (exact lattice membership).
inline bool preserves_bonds(const IntMatrix &f1, const AdjointPair &source, const AdjointPair &target) {
  return lattice_contains(bond_lattice(target), f1 * bond_lattice(source));
}

/// Completes f1 to a morphism out of (d : C1 -> im d) by f0(d x) := d' f1(x),
/// with im d given by the basis W = (d V)[:, :r] from a Smith decomposition
/// and x ranging over the matching columns of V.
inline PairMorphism complete_morphism(const IntMatrix &f1, const AdjointPair &source, const AdjointPair &target) {
  if (f1.rows() != target.c1_rank() || f1.cols() != source.c1_rank())
    throw std::invalid_argument("complete_morphism: f1 has the wrong shape");
  if (!preserves_cycles(f1, source, target)) throw std::invalid_argument("cycle lattice not preserved");
  if (!preserves_bonds(f1, source, target)) throw std::invalid_argument("bond lattice not preserved");
  const auto snf = smith_normal_form(source.d);
  const IntMatrix x = snf.V.column_block(0, snf.rank);
  IntMatrix w = source.d * x;
  IntMatrix f0 = target.d * (f1 * x);
  PairMorphism m{source, target, f1, std::move(f0), std::move(w)};
  if (!check_intertwining(m).ok()) throw std::logic_error("complete_morphism: intertwining failed");
  return m;
}

struct InducedMap {
  GroupHom hom;            // f1 on K -> K'
  bool orders_agree = false;  // f1* and f0* give equal element orders on the generators
};

/// f1* : K -> K'. The f0 side is compared through the embedding
/// d' : K' -> coker(d' d'^t): for every generator e, [f1 e] in K' and
/// [f0 d e] in coker(d' d'^t) must have the same order.
inline InducedMap induced_pair_morphism_map(const PairMorphism &m) {
  if (!check_intertwining(m).ok()) throw std::invalid_argument("PairMorphism: intertwining violated");
  InducedMap out{GroupHom{critical_group(m.source), critical_group(m.target), m.f1}, true};
  if (!hom_well_defined(out.hom)) throw std::logic_error("induced map not well defined");
  const auto lap_target = quotient_group(m.target.c0_rank(), m.target.d * m.target.dt);
  const IntMatrix f0d = m.f0 * detail::coordinates_in(m.f0_domain, m.source.d);
  for (std::size_t j = 0; j < m.source.c1_rank(); ++j) {
    const auto a = out.hom.target.element_order(m.f1.column(j));
    const auto b = lap_target.element_order(f0d.column(j));
    if (a != b) out.orders_agree = false;
  }
  return out;
}

struct DualityReport {
  FpAbelianGroup ker_h, coker_h, ker_ht, coker_ht;
  bool ker_matches = false;    // ker(h) ≅ coker(ht)
  bool coker_matches = false;  // coker(h) ≅ ker(ht)
  bool passed() const noexcept { return ker_matches && coker_matches; }
};

/// Isomorphism types only; the natural maps are not built.
inline DualityReport duality_order_check(const GroupHom &h, const GroupHom &ht) {
  DualityReport r{hom_kernel(h), hom_cokernel(h), hom_kernel(ht), hom_cokernel(ht)};
  r.ker_matches = r.ker_h.isomorphic_to(r.coker_ht);
  r.coker_matches = r.coker_h.isomorphic_to(r.ker_ht);
  return r;
}

struct BicycleSquareReport {
  bool maps_into_target = false;  // f1 (Z ∩ B) ⊆ Z' ∩ B' mod p
  std::size_t kernel_dim = 0;     // dim ker(f1 on Z ∩ B mod p)
  std::size_t expected_kernel_dim = 0;  // p-rank of ker(f*)
  bool passed() const noexcept { return maps_into_target && kernel_dim == expected_kernel_dim; }
};

/// Order-level check of the bicycle square for a map f1 with f1 Z ⊆ Z' and
/// f1 B ⊆ B'. Covariantly f1 acts on Z ∩ B mod p as f* does on the p-torsion
/// K[p], so its kernel has dimension equal to the p-rank of ker(f*).
inline BicycleSquareReport bicycle_square_check(const IntMatrix &f1, const AdjointPair &source,
                                                const AdjointPair &target, unsigned p) {
  BicycleSquareReport r;
  const auto bic = p_bicycle_space(source, p);
  const auto bic_t = p_bicycle_space(target, p);
  const auto f1p = ModpMatrix::reduce(f1, p);
  r.maps_into_target = bic_t.contains(image(f1p, bic));
  r.kernel_dim = restricted_kernel(f1p, bic).dim();
  const GroupHom h{critical_group(source), critical_group(target), f1};
  r.expected_kernel_dim = p_rank(hom_kernel(h), p);
  return r;
}

}  // namespace symcrit
