#pragma once

#include "symcrit/int_matrix.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace symcrit {

/// U * A * V = S with U, V unimodular and S diagonal, d1 | d2 | ... | dr, the
/// r nonzero entries first.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
  std::size_t rank = 0;

  std::vector<BigInt> diagonal() const {
    std::vector<BigInt> d;
    const std::size_t n = std::min(S.rows(), S.cols());
    d.reserve(n);
    for (std::size_t i = 0; i < n; ++i) d.push_back(S(i, i));
    return d;
  }
};

namespace detail {

inline std::optional<std::pair<std::size_t, std::size_t>>
smallest_entry(const IntMatrix &s, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  BigInt best_abs;
  for (std::size_t i = t; i < s.rows(); ++i)
    for (std::size_t j = t; j < s.cols(); ++j) {
      const BigInt &x = s(i, j);
      if (x.is_zero()) continue;
      BigInt a = abs(x);
      // strict comparison keeps the first (row-major) entry on ties
      if (!best || a < best_abs) {
        best = {i, j};
        best_abs = std::move(a);
        if (best_abs == 1) return best;
      }
    }
  return best;
}

}  // namespace detail

/// Smith normal form with unimodular change-of-basis witnesses.
///
/// Pivot rule: the nonzero entry of least absolute value in the active
/// submatrix, ties broken by row then column. The result is a deterministic
/// function of the input.
inline SmithDecomposition smith_normal_form(const IntMatrix &a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithDecomposition out{IntMatrix::identity(m), a, IntMatrix::identity(n), 0};
  IntMatrix &S = out.S;
  IntMatrix &U = out.U;
  IntMatrix &V = out.V;

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    bool finished = false;
    for (;;) {
      auto pivot = detail::smallest_entry(S, t);
      if (!pivot) {
        finished = true;
        break;
      }
      S.swap_rows(t, pivot->first);
      U.swap_rows(t, pivot->first);
      S.swap_cols(t, pivot->second);
      V.swap_cols(t, pivot->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t).is_zero()) continue;
        BigInt q = S(i, t) / S(t, t);
        S.add_row_multiple(i, t, -q);
        U.add_row_multiple(i, t, -q);
        if (!S(i, t).is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j).is_zero()) continue;
        BigInt q = S(t, j) / S(t, t);
        S.add_col_multiple(j, t, -q);
        V.add_col_multiple(j, t, -q);
        if (!S(t, j).is_zero()) clean = false;
      }
      if (!clean) continue;

      // the pivot must divide the whole remaining block
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!S(i, j).is_zero() && !(S(i, j) % S(t, t)).is_zero()) {
            S.add_row_multiple(t, i, 1);
            U.add_row_multiple(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (finished) break;
    if (S(t, t) < 0) {
      S.negate_row(t);
      U.negate_row(t);
    }
  }
  out.rank = t;
  return out;
}

/// Checks U*A*V == S, |det U| = |det V| = 1, the divisibility chain and that
/// the nonzero diagonal entries come first.
inline bool verify_smith(const IntMatrix &a, const SmithDecomposition &d) {
  if (d.U.rows() != a.rows() || d.U.cols() != a.rows()) return false;
  if (d.V.rows() != a.cols() || d.V.cols() != a.cols()) return false;
  if (!(d.U * a * d.V == d.S)) return false;
  for (std::size_t i = 0; i < d.S.rows(); ++i)
    for (std::size_t j = 0; j < d.S.cols(); ++j)
      if (i != j && !d.S(i, j).is_zero()) return false;
  if (abs(determinant(d.U)) != 1 || abs(determinant(d.V)) != 1) return false;
  const auto diag = d.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] < 0) return false;
    if ((i < d.rank) == diag[i].is_zero()) return false;
    if (i + 1 < diag.size()) {
      if (diag[i].is_zero()) {
        if (!diag[i + 1].is_zero()) return false;
      } else if (!(diag[i + 1] % diag[i]).is_zero()) {
        return false;
      }
    }
  }
  return true;
}

/// Columns generating the integer kernel {x : A x = 0} (a lattice basis).
inline IntMatrix integer_kernel(const IntMatrix &a) {
  const auto d = smith_normal_form(a);
  return d.V.column_block(d.rank, a.cols() - d.rank);
}

/// A basis (as columns) of the lattice generated by the columns of A.
inline IntMatrix column_lattice_basis(const IntMatrix &a) {
  const auto d = smith_normal_form(a);
  return (a * d.V).column_block(0, d.rank);
}

/// An integer x with A x = b, or nullopt when b is outside the column lattice.
inline std::optional<IntVector> solve_integer(const SmithDecomposition &d, const IntVector &b) {
  if (b.size() != d.U.cols()) throw std::invalid_argument("solve_integer: length mismatch");
  const IntVector c = d.U * b;
  IntVector y(d.V.rows());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < d.rank) {
      if (!(c[i] % d.S(i, i)).is_zero()) return std::nullopt;
      y[i] = c[i] / d.S(i, i);
    } else if (!c[i].is_zero()) {
      return std::nullopt;
    }
  }
  return d.V * y;
}

inline std::optional<IntVector> solve_integer(const IntMatrix &a, const IntVector &b) {
  return solve_integer(smith_normal_form(a), b);
}

/// Every column of `vectors` lies in the column lattice of `a`.
inline bool lattice_contains(const IntMatrix &a, const IntMatrix &vectors) {
  if (vectors.rows() != a.rows()) throw std::invalid_argument("lattice_contains: row mismatch");
  const auto d = smith_normal_form(a);
  for (std::size_t j = 0; j < vectors.cols(); ++j)
    if (!solve_integer(d, vectors.column(j))) return false;
  return true;
}

}  // namespace symcrit
