#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace hlink {

/// Arithmetic in GF(p) for a prime 2 <= p <= kernels::kMaxPrime.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t prime() const noexcept { return p_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p_);
  }
  std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  std::uint32_t inv(std::uint32_t a) const noexcept { return inverse_[a]; }
  /// Reduce a signed integer into [0, p).
  std::uint32_t from_int(long long v) const noexcept {
    long long r = v % static_cast<long long>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }

 private:
  std::uint32_t p_;
  std::vector<std::uint32_t> inverse_;
};

bool is_prime(std::uint32_t n) noexcept;

struct Entry {
  std::uint32_t row;
  std::uint32_t value;
  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sorted by row, no zero values, no duplicate rows.
using SparseColumn = std::vector<Entry>;

/// a + scale * b over the field.
SparseColumn axpy(const PrimeField& field, const SparseColumn& a,
                  std::uint32_t scale, const SparseColumn& b);

/// Sparse column-major matrix over GF(p).
class FieldMatrix {
 public:
  FieldMatrix(std::size_t rows, std::size_t cols, std::uint32_t prime);

  static FieldMatrix identity(std::size_t n, std::uint32_t prime);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }
  std::uint32_t prime() const noexcept { return field_.prime(); }
  const PrimeField& field() const noexcept { return field_; }

  const SparseColumn& column(std::size_t j) const { return columns_[j]; }
  /// Entries may be unsorted, repeated or unreduced; they are normalized.
  void set_column(std::size_t j, std::vector<std::pair<std::uint32_t, long long>> entries);
  void set_column(std::size_t j, SparseColumn column);
  std::size_t append_column(SparseColumn column);

  std::uint32_t at(std::size_t i, std::size_t j) const;
  bool is_zero() const noexcept;
  std::size_t nonzeros() const noexcept;

  FieldMatrix operator*(const FieldMatrix& rhs) const;

 private:
  std::size_t rows_;
  PrimeField field_;
  std::vector<SparseColumn> columns_;
};

/// Incremental column reduction keyed on the lowest (largest-row) entry.
/// Optionally tracks, for every stored pivot, the combination of input
/// columns that produced it.
class ColumnReducer {
 public:
  explicit ColumnReducer(const PrimeField& field, bool track = false)
      : field_(field), track_(track) {}

  /// Reduce `column` against the stored pivots. If it survives it becomes a
  /// new pivot and true is returned. When tracking, `combination` is the
  /// input-space vector of `column` and on a false return holds a vector
  /// whose image is zero.
  bool insert(SparseColumn column, SparseColumn* combination = nullptr);

  /// Reduce without inserting. Returns the residual.
  SparseColumn reduce(SparseColumn column) const;

  std::size_t rank() const noexcept { return pivots_.size(); }
  bool has_pivot(std::uint32_t row) const { return index_.count(row) != 0; }
  /// Rows of the stored pivots, in insertion order.
  std::vector<std::uint32_t> pivot_rows() const;

 private:
  struct Pivot {
    SparseColumn column;  // normalized: lowest entry is 1
    SparseColumn combination;
  };

  PrimeField field_;
  bool track_;
  std::vector<Pivot> pivots_;
  std::unordered_map<std::uint32_t, std::size_t> index_;
};

/// Exact rank. Small matrices go through the dense SIMD path, large sparse
/// ones through column reduction.
std::size_t rank(const FieldMatrix& m);
std::size_t rank_sparse(const FieldMatrix& m);
std::size_t rank_dense(const FieldMatrix& m);

/// Basis of the null space (as column-index combinations).
std::vector<SparseColumn> kernel_basis(const FieldMatrix& m);

}  // namespace hlink
