#pragma once

#include "symcrit/int_matrix.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace symcrit {

using ModpVector = std::vector<std::uint8_t>;

inline bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace detail {
inline unsigned checked_modulus(unsigned p) {
  if (p > 255 || !is_prime(p))
    throw std::invalid_argument("modulus " + std::to_string(p) + " is not a prime below 256");
  return p;
}
inline std::uint8_t inverse_mod(unsigned a, unsigned p) {
  // a^(p-2) mod p
  unsigned result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1u) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint8_t>(result);
}
}  // namespace detail

/// Dense matrix over Z/p, p prime and below 256, one byte per entry.
class ModpMatrix {
public:
  ModpMatrix(unsigned p, std::size_t rows, std::size_t cols)
      : p_(detail::checked_modulus(p)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  /// Entry-wise reduction of an integer matrix.
  static ModpMatrix reduce(const IntMatrix &m, unsigned p) {
    ModpMatrix r(p, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        BigInt x = m(i, j) % p;
        if (x < 0) x += p;
        r(i, j) = static_cast<std::uint8_t>(x.convert_to<unsigned>());
      }
    return r;
  }

  static ModpMatrix identity(unsigned p, std::size_t n) {
    ModpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static ModpMatrix from_rows(unsigned p, std::size_t cols, const std::vector<ModpVector> &rows) {
    ModpMatrix m(p, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("ModpMatrix::from_rows: length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<std::uint8_t>(rows[i][j] % m.p_);
    }
    return m;
  }

  unsigned modulus() const noexcept { return p_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::uint8_t &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::uint8_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  ModpVector row(std::size_t i) const {
    return ModpVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                      data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<ModpVector> row_list() const {
    std::vector<ModpVector> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  ModpMatrix transpose() const {
    ModpMatrix t(p_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  ModpVector apply(const ModpVector &x) const {
    if (x.size() != cols_) throw std::invalid_argument("ModpMatrix::apply: length mismatch");
    ModpVector y(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      unsigned acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) acc = (acc + unsigned((*this)(i, j)) * x[j]) % p_;
      y[i] = static_cast<std::uint8_t>(acc);
    }
    return y;
  }

  friend ModpMatrix operator*(const ModpMatrix &a, const ModpMatrix &b) {
    if (a.p_ != b.p_ || a.cols_ != b.rows_)
      throw std::invalid_argument("ModpMatrix: product shape or modulus mismatch");
    ModpMatrix c(a.p_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) {
        unsigned acc = 0;
        for (std::size_t k = 0; k < a.cols_; ++k) acc = (acc + unsigned(a(i, k)) * b(k, j)) % a.p_;
        c(i, j) = static_cast<std::uint8_t>(acc);
      }
    return c;
  }

  friend ModpMatrix operator-(const ModpMatrix &a, const ModpMatrix &b) {
    if (a.p_ != b.p_ || a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("ModpMatrix: difference shape or modulus mismatch");
    ModpMatrix c(a.p_, a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      c.data_[k] = static_cast<std::uint8_t>((a.data_[k] + a.p_ - b.data_[k]) % a.p_);
    return c;
  }

  friend bool operator==(const ModpMatrix &, const ModpMatrix &) = default;

private:
  unsigned p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint8_t> data_;
};

/// Reduced row-echelon form and its pivot columns.
struct Echelon {
  ModpMatrix reduced;  // nonzero rows only
  std::vector<std::size_t> pivots;
};

namespace detail {

// p = 2: rows packed into 64-bit words, elimination by XOR.
inline Echelon rref_gf2(const ModpMatrix &m) {
  const std::size_t words = (m.cols() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows(m.rows(), std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j)) rows[i][j / 64] |= std::uint64_t{1} << (j % 64);

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < rows.size(); ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t piv = r;
    while (piv < rows.size() && !(rows[piv][w] & bit)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && (rows[i][w] & bit))
        for (std::size_t k = w; k < words; ++k) rows[i][k] ^= rows[r][k];
    pivots.push_back(c);
    ++r;
  }
  ModpMatrix out(2, r, m.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(i, j) = static_cast<std::uint8_t>((rows[i][j / 64] >> (j % 64)) & 1u);
  return {std::move(out), std::move(pivots)};
}

// general p: byte entries, same elimination with a normalised pivot.
inline Echelon rref_bytes(ModpMatrix m) {
  const unsigned p = m.modulus();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(piv, j));
    const unsigned inv = inverse_mod(m(r, c), p);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = static_cast<std::uint8_t>(m(r, j) * inv % p);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const unsigned f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        m(i, j) = static_cast<std::uint8_t>((m(i, j) + (p - f) * m(r, j)) % p);
    }
    pivots.push_back(c);
    ++r;
  }
  ModpMatrix out(p, r, m.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return {std::move(out), std::move(pivots)};
}

}  // namespace detail

inline Echelon row_echelon(const ModpMatrix &m) {
  return m.modulus() == 2 ? detail::rref_gf2(m) : detail::rref_bytes(m);
}

inline std::size_t rank(const ModpMatrix &m) { return row_echelon(m).pivots.size(); }

/// Subspace of (Z/p)^n stored as the reduced row-echelon basis, so equal
/// subspaces have equal representations.
class ModpSubspace {
public:
  /// Span of the given row vectors.
  static ModpSubspace span(unsigned p, std::size_t ambient_dim, const std::vector<ModpVector> &vectors) {
    return ModpSubspace(row_echelon(ModpMatrix::from_rows(p, ambient_dim, vectors)));
  }
  static ModpSubspace zero(unsigned p, std::size_t ambient_dim) { return span(p, ambient_dim, {}); }
  static ModpSubspace full(unsigned p, std::size_t ambient_dim) {
    return ModpSubspace(row_echelon(ModpMatrix::identity(p, ambient_dim)));
  }

  unsigned modulus() const noexcept { return basis_.modulus(); }
  std::size_t ambient_dim() const noexcept { return basis_.cols(); }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const ModpMatrix &basis() const noexcept { return basis_; }
  const std::vector<std::size_t> &pivots() const noexcept { return pivots_; }
  std::vector<ModpVector> basis_vectors() const { return basis_.row_list(); }

  bool contains(const ModpVector &x) const {
    if (x.size() != ambient_dim()) throw std::invalid_argument("ModpSubspace::contains: length mismatch");
    const unsigned p = modulus();
    ModpVector r = x;
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      const unsigned c = r[pivots_[i]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < r.size(); ++j)
        r[j] = static_cast<std::uint8_t>((r[j] + (p - c) * basis_(i, j)) % p);
    }
    return std::all_of(r.begin(), r.end(), [](std::uint8_t v) { return v == 0; });
  }

  bool contains(const ModpSubspace &other) const {
    for (const auto &v : other.basis_vectors())
      if (!contains(v)) return false;
    return true;
  }

  friend bool operator==(const ModpSubspace &, const ModpSubspace &) = default;

private:
  explicit ModpSubspace(Echelon e) : basis_(std::move(e.reduced)), pivots_(std::move(e.pivots)) {}

  ModpMatrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Null space {x : M x = 0}.
inline ModpSubspace kernel(const ModpMatrix &m) {
  const unsigned p = m.modulus();
  const Echelon e = row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<ModpVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    ModpVector x(m.cols(), 0);
    x[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
      x[e.pivots[i]] = static_cast<std::uint8_t>((p - e.reduced(i, f)) % p);
    basis.push_back(std::move(x));
  }
  return ModpSubspace::span(p, m.cols(), basis);
}

/// Span of the rows of M (the image of the transpose).
inline ModpSubspace row_space(const ModpMatrix &m) {
  return ModpSubspace::span(m.modulus(), m.cols(), m.row_list());
}

namespace detail {
inline void require_compatible(const ModpSubspace &a, const ModpSubspace &b) {
  if (a.modulus() != b.modulus() || a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("subspaces live in different ambient spaces");
}
}  // namespace detail

inline ModpSubspace sum(const ModpSubspace &a, const ModpSubspace &b) {
  detail::require_compatible(a, b);
  auto rows = a.basis_vectors();
  for (auto &v : b.basis_vectors()) rows.push_back(std::move(v));
  return ModpSubspace::span(a.modulus(), a.ambient_dim(), rows);
}

/// A ∩ B from the kernel of [A^t | -B^t]: x = sum c_i a_i with sum c_i a_i = sum d_j b_j.
inline ModpSubspace intersect(const ModpSubspace &a, const ModpSubspace &b) {
  detail::require_compatible(a, b);
  const unsigned p = a.modulus();
  const std::size_t n = a.ambient_dim();
  ModpMatrix stacked(p, n, a.dim() + b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < n; ++k) stacked(k, i) = a.basis()(i, k);
  for (std::size_t j = 0; j < b.dim(); ++j)
    for (std::size_t k = 0; k < n; ++k)
      stacked(k, a.dim() + j) = static_cast<std::uint8_t>((p - b.basis()(j, k)) % p);
  std::vector<ModpVector> vectors;
  for (const auto &c : kernel(stacked).basis_vectors()) {
    ModpVector x(n, 0);
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (!c[i]) continue;
      for (std::size_t k = 0; k < n; ++k)
        x[k] = static_cast<std::uint8_t>((x[k] + unsigned(c[i]) * a.basis()(i, k)) % p);
    }
    vectors.push_back(std::move(x));
  }
  return ModpSubspace::span(p, n, vectors);
}

inline bool is_involution(const ModpMatrix &inv) {
  return inv.rows() == inv.cols() && inv * inv == ModpMatrix::identity(inv.modulus(), inv.rows());
}

/// {x in space : inv x = x}.
inline ModpSubspace fixed_subspace(const ModpMatrix &inv, const ModpSubspace &space) {
  if (inv.modulus() != space.modulus() || inv.cols() != space.ambient_dim())
    throw std::invalid_argument("fixed_subspace: involution does not act on the ambient space");
  if (!is_involution(inv)) throw std::invalid_argument("fixed_subspace: matrix is not an involution");
  const auto eigen_one = kernel(inv - ModpMatrix::identity(inv.modulus(), inv.rows()));
  return intersect(eigen_one, space);
}

/// {M x : x in space}.
inline ModpSubspace image(const ModpMatrix &map, const ModpSubspace &space) {
  std::vector<ModpVector> out;
  for (const auto &v : space.basis_vectors()) out.push_back(map.apply(v));
  return ModpSubspace::span(map.modulus(), map.rows(), out);
}

/// {x in space : M x = 0}.
inline ModpSubspace restricted_kernel(const ModpMatrix &map, const ModpSubspace &space) {
  const unsigned p = space.modulus();
  const auto basis = space.basis_vectors();
  // column i of `images` is M b_i
  ModpMatrix images(p, map.rows(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto y = map.apply(basis[i]);
    for (std::size_t k = 0; k < y.size(); ++k) images(k, i) = y[k];
  }
  std::vector<ModpVector> out;
  for (const auto &c : kernel(images).basis_vectors()) {
    ModpVector x(space.ambient_dim(), 0);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t k = 0; k < x.size(); ++k)
        x[k] = static_cast<std::uint8_t>((x[k] + unsigned(c[i]) * basis[i][k]) % p);
    out.push_back(std::move(x));
  }
  return ModpSubspace::span(p, space.ambient_dim(), out);
}

class EnumerationLimitExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Every element of a subspace exactly once, as coefficient combinations of
/// the echelon basis in lexicographic order.
class SubspaceElements {
public:
  static constexpr std::uint64_t default_limit = std::uint64_t{1} << 20;

  explicit SubspaceElements(const ModpSubspace &space, std::uint64_t limit = default_limit)
      : space_(&space) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < space.dim(); ++i) {
      if (count > limit / space.modulus())
        throw EnumerationLimitExceeded("subspace of dimension " + std::to_string(space.dim()) +
                                       " exceeds the enumeration limit");
      count *= space.modulus();
    }
    if (count > limit)
      throw EnumerationLimitExceeded("subspace exceeds the enumeration limit");
    count_ = count;
  }

  std::uint64_t size() const noexcept { return count_; }

  class iterator {
  public:
    using iterator_category = std::input_iterator_tag;
    using value_type = ModpVector;
    using difference_type = std::ptrdiff_t;
    using pointer = const ModpVector *;
    using reference = const ModpVector &;

    iterator() = default;
    iterator(const ModpSubspace *space, std::uint64_t index) : space_(space), index_(index) {
      if (space_) {
        coeffs_.assign(space_->dim(), 0);
        current_.assign(space_->ambient_dim(), 0);
      }
    }
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator &operator++() {
      ++index_;
      // odometer increment; add the basis row whose digit changed
      const unsigned p = space_->modulus();
      for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        add_row(i, 1);
        if (++coeffs_[i] < p) break;
        coeffs_[i] = 0;  // wrapped: p additions of row i cancel
      }
      return *this;
    }
    iterator operator++(int) {
      auto t = *this;
      ++*this;
      return t;
    }
    friend bool operator==(const iterator &a, const iterator &b) { return a.index_ == b.index_; }

  private:
    void add_row(std::size_t i, unsigned times) {
      const unsigned p = space_->modulus();
      for (std::size_t k = 0; k < current_.size(); ++k)
        current_[k] = static_cast<std::uint8_t>((current_[k] + times * space_->basis()(i, k)) % p);
    }
    const ModpSubspace *space_ = nullptr;
    std::uint64_t index_ = 0;
    std::vector<unsigned> coeffs_;
    ModpVector current_;
  };

  iterator begin() const { return iterator(space_, 0); }
  iterator end() const { return iterator(nullptr, count_); }

private:
  const ModpSubspace *space_;
  std::uint64_t count_ = 1;
};

/// All p^dim elements of `space`; throws EnumerationLimitExceeded above `limit`.
inline SubspaceElements enumerate(const ModpSubspace &space,
                                  std::uint64_t limit = SubspaceElements::default_limit) {
  return SubspaceElements(space, limit);
}

}  // namespace symcrit
