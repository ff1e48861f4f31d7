#pragma once

#include "symcrit/int_matrix.hpp"
#include "symcrit/smith.hpp"

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace symcrit {

/// Finitely presented abelian group Z^n / L, where L is generated by the
/// columns of a relation matrix. The invariant-factor normal form is read off
/// a Smith decomposition of the relations, which is kept as a witness.
class FpAbelianGroup {
public:
  FpAbelianGroup(std::size_t ambient_rank, IntMatrix relations)
      : ambient_rank_(ambient_rank), relations_(std::move(relations)) {
    if (relations_.rows() != ambient_rank_)
      throw std::invalid_argument("FpAbelianGroup: relation matrix has " +
                                  std::to_string(relations_.rows()) + " rows, expected " +
                                  std::to_string(ambient_rank_));
    witness_ = smith_normal_form(relations_);
    for (std::size_t i = 0; i < witness_.rank; ++i)
      if (witness_.S(i, i) > 1) invariant_factors_.push_back(witness_.S(i, i));
    free_rank_ = ambient_rank_ - witness_.rank;
  }

  std::size_t ambient_rank() const noexcept { return ambient_rank_; }
  const IntMatrix &relations() const noexcept { return relations_; }
  const SmithDecomposition &witness() const noexcept { return witness_; }
  /// Invariant factors d1 | d2 | ... with every di > 1.
  const std::vector<BigInt> &invariant_factors() const noexcept { return invariant_factors_; }
  std::size_t free_rank() const noexcept { return free_rank_; }

  bool is_finite() const noexcept { return free_rank_ == 0; }
  bool is_trivial() const noexcept { return free_rank_ == 0 && invariant_factors_.empty(); }

  /// Group order, or nullopt when the group is infinite.
  std::optional<BigInt> order() const {
    if (!is_finite()) return std::nullopt;
    BigInt o = 1;
    for (const auto &d : invariant_factors_) o *= d;
    return o;
  }

  /// Coordinates of an ambient vector in the basis diagonalising the relations.
  IntVector coordinates(const IntVector &x) const {
    if (x.size() != ambient_rank_)
      throw std::invalid_argument("FpAbelianGroup: vector has wrong length");
    return witness_.U * x;
  }

  /// True iff x lies in the relation lattice (x represents zero).
  bool is_relation(const IntVector &x) const {
    const auto c = coordinates(x);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i < witness_.rank) {
        if (!(c[i] % witness_.S(i, i)).is_zero()) return false;
      } else if (!c[i].is_zero()) {
        return false;
      }
    }
    return true;
  }

  /// Order of the class of x; nullopt when it has infinite order.
  std::optional<BigInt> element_order(const IntVector &x) const {
    const auto c = coordinates(x);
    BigInt ord = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i >= witness_.rank) {
        if (!c[i].is_zero()) return std::nullopt;
        continue;
      }
      const BigInt &d = witness_.S(i, i);
      BigInt g = boost::multiprecision::gcd(d, abs(c[i]));
      BigInt o = d / g;
      ord = boost::multiprecision::lcm(ord, o);
    }
    return ord;
  }

  /// Same invariant factors and free rank.
  bool isomorphic_to(const FpAbelianGroup &other) const {
    return free_rank_ == other.free_rank_ && invariant_factors_ == other.invariant_factors_;
  }

  /// "0", "Z/8", "Z/2 + Z/4", "Z^2 + Z/3".
  std::string to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank_ > 0) {
      os << 'Z';
      if (free_rank_ > 1) os << '^' << free_rank_;
      first = false;
    }
    for (const auto &d : invariant_factors_) {
      os << (first ? "" : " + ") << "Z/" << d;
      first = false;
    }
    return os.str();
  }

private:
  std::size_t ambient_rank_ = 0;
  IntMatrix relations_;
  SmithDecomposition witness_;
  std::vector<BigInt> invariant_factors_;
  std::size_t free_rank_ = 0;
};

/// Z^n modulo the column lattice of `generators`.
inline FpAbelianGroup quotient_group(std::size_t ambient_rank, const IntMatrix &generators) {
  if (generators.rows() != ambient_rank)
    throw std::invalid_argument("quotient_group: generators must have " +
                                std::to_string(ambient_rank) + " rows");
  return FpAbelianGroup(ambient_rank, generators);
}

/// Homomorphism given by an integer matrix on ambient generators.
struct GroupHom {
  FpAbelianGroup source;
  FpAbelianGroup target;
  IntMatrix matrix;  // target.ambient_rank() x source.ambient_rank()
};

inline void check_hom_shape(const GroupHom &h) {
  if (h.matrix.rows() != h.target.ambient_rank() || h.matrix.cols() != h.source.ambient_rank())
    throw std::invalid_argument("GroupHom: matrix is " + std::to_string(h.matrix.rows()) + "x" +
                                std::to_string(h.matrix.cols()) + ", expected " +
                                std::to_string(h.target.ambient_rank()) + "x" +
                                std::to_string(h.source.ambient_rank()));
}

/// The matrix sends every source relation into the target relation lattice.
inline bool hom_well_defined(const GroupHom &h) {
  check_hom_shape(h);
  const IntMatrix image = h.matrix * h.source.relations();
  for (std::size_t j = 0; j < image.cols(); ++j)
    if (!h.target.is_relation(image.column(j))) return false;
  return true;
}

namespace detail {
inline void require_well_defined(const GroupHom &h) {
  if (!hom_well_defined(h))
    throw std::invalid_argument("homomorphism is not well defined on the quotients");
}
}  // namespace detail

/// ker(h) presented as L / (source relations), where L is the preimage of the
/// target relation lattice. L comes from the integer kernel of [M | R_target].
inline FpAbelianGroup hom_kernel(const GroupHom &h) {
  detail::require_well_defined(h);
  const std::size_t n = h.source.ambient_rank();
  const IntMatrix stacked = hconcat(h.matrix, h.target.relations());
  const IntMatrix preimage = integer_kernel(stacked).row_block(0, n);

  // basis of L is (P V)[:, :r]; a vector y of L has coordinates c with
  // (U y)_i = d_i c_i
  const auto snf = smith_normal_form(preimage);
  const std::size_t r = snf.rank;
  const IntMatrix &rel = h.source.relations();
  IntMatrix coords(r, rel.cols());
  for (std::size_t j = 0; j < rel.cols(); ++j) {
    const IntVector u = snf.U * rel.column(j);
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (i < r) {
        if (!(u[i] % snf.S(i, i)).is_zero())
          throw std::logic_error("hom_kernel: source relation outside preimage lattice");
        coords(i, j) = u[i] / snf.S(i, i);
      } else if (!u[i].is_zero()) {
        throw std::logic_error("hom_kernel: source relation outside preimage lattice");
      }
    }
  }
  return quotient_group(r, coords);
}

/// coker(h) = target ambient / (target relations + image).
inline FpAbelianGroup hom_cokernel(const GroupHom &h) {
  detail::require_well_defined(h);
  return quotient_group(h.target.ambient_rank(), hconcat(h.target.relations(), h.matrix));
}

/// True iff k * x = 0 for every element (finite, all invariant factors divide k).
inline bool is_annihilated_by(const FpAbelianGroup &g, const BigInt &k) {
  if (k < 1) throw std::invalid_argument("is_annihilated_by: k must be positive");
  if (!g.is_finite()) return false;
  for (const auto &d : g.invariant_factors())
    if (!(k % d).is_zero()) return false;
  return true;
}

/// Base-2 logarithm of the order when it is a power of two.
inline std::optional<std::size_t> log2_order(const FpAbelianGroup &g) {
  auto o = g.order();
  if (!o) return std::nullopt;
  std::size_t e = 0;
  BigInt x = *o;
  while (x > 1) {
    if (!(x % 2).is_zero()) return std::nullopt;
    x /= 2;
    ++e;
  }
  return e;
}

}  // namespace symcrit
