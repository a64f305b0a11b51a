#include "hlink/field_matrix.hpp"

#include <algorithm>
#include <sstream>

#include "hlink/error.hpp"
#include "hlink/kernels.hpp"

namespace hlink {

bool is_prime(std::uint32_t n) noexcept {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p) || p > kernels::kMaxPrime) {
    std::ostringstream os;
    os << "field characteristic " << p << " is not a prime in [2, "
       << kernels::kMaxPrime << "]";
    throw ValidationError(os.str());
  }
  inverse_.assign(p, 0);
  inverse_[1] = 1;
  for (std::uint32_t a = 2; a < p; ++a) {
    // inv(a) = -(p / a) * inv(p mod a)
    inverse_[a] = mul(p - p / a, inverse_[p % a]);
  }
}

SparseColumn axpy(const PrimeField& field, const SparseColumn& a,
                  std::uint32_t scale, const SparseColumn& b) {
  SparseColumn out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].row < b[j].row)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].row < a[i].row) {
      std::uint32_t v = field.mul(scale, b[j].value);
      if (v != 0) out.push_back({b[j].row, v});
      ++j;
    } else {
      std::uint32_t v = field.add(a[i].value, field.mul(scale, b[j].value));
      if (v != 0) out.push_back({a[i].row, v});
      ++i;
      ++j;
    }
  }
  return out;
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, std::uint32_t prime)
    : rows_(rows), field_(prime), columns_(cols) {}

FieldMatrix FieldMatrix::identity(std::size_t n, std::uint32_t prime) {
  FieldMatrix m(n, n, prime);
  for (std::size_t j = 0; j < n; ++j) {
    m.columns_[j] = {{static_cast<std::uint32_t>(j), 1}};
  }
  return m;
}

void FieldMatrix::set_column(
    std::size_t j, std::vector<std::pair<std::uint32_t, long long>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseColumn col;
  for (std::size_t i = 0; i < entries.size();) {
    long long sum = 0;
    std::uint32_t row = entries[i].first;
    for (; i < entries.size() && entries[i].first == row; ++i) {
      sum += entries[i].second;
    }
    std::uint32_t v = field_.from_int(sum);
    if (v != 0) col.push_back({row, v});
  }
  set_column(j, std::move(col));
}

void FieldMatrix::set_column(std::size_t j, SparseColumn column) {
  if (!column.empty() && column.back().row >= rows_) {
    throw ValidationError("matrix column has a row index out of range");
  }
  columns_.at(j) = std::move(column);
}

std::size_t FieldMatrix::append_column(SparseColumn column) {
  columns_.emplace_back();
  set_column(columns_.size() - 1, std::move(column));
  return columns_.size() - 1;
}

std::uint32_t FieldMatrix::at(std::size_t i, std::size_t j) const {
  const auto& col = columns_.at(j);
  auto it = std::lower_bound(col.begin(), col.end(), i,
                             [](const Entry& e, std::size_t r) { return e.row < r; });
  return (it != col.end() && it->row == i) ? it->value : 0;
}

bool FieldMatrix::is_zero() const noexcept {
  return std::all_of(columns_.begin(), columns_.end(),
                     [](const SparseColumn& c) { return c.empty(); });
}

std::size_t FieldMatrix::nonzeros() const noexcept {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& rhs) const {
  if (cols() != rhs.rows() || prime() != rhs.prime()) {
    throw ValidationError("matrix product: incompatible shapes or fields");
  }
  FieldMatrix out(rows_, rhs.cols(), prime());
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    SparseColumn acc;
    for (const Entry& e : rhs.column(j)) {
      acc = axpy(field_, acc, e.value, columns_[e.row]);
    }
    out.columns_[j] = std::move(acc);
  }
  return out;
}

bool ColumnReducer::insert(SparseColumn column, SparseColumn* combination) {
  SparseColumn comb;
  if (track_ && combination) comb = std::move(*combination);
  while (!column.empty()) {
    auto it = index_.find(column.back().row);
    if (it == index_.end()) break;
    const Pivot& piv = pivots_[it->second];
    std::uint32_t scale = field_.neg(column.back().value);
    column = axpy(field_, column, scale, piv.column);
    if (track_) comb = axpy(field_, comb, scale, piv.combination);
  }
  if (column.empty()) {
    if (track_ && combination) *combination = std::move(comb);
    return false;
  }
  std::uint32_t norm = field_.inv(column.back().value);
  if (norm != 1) {
    for (Entry& e : column) e.value = field_.mul(e.value, norm);
    for (Entry& e : comb) e.value = field_.mul(e.value, norm);
  }
  index_.emplace(column.back().row, pivots_.size());
  pivots_.push_back({std::move(column), std::move(comb)});
  return true;
}

SparseColumn ColumnReducer::reduce(SparseColumn column) const {
  while (!column.empty()) {
    auto it = index_.find(column.back().row);
    if (it == index_.end()) break;
    column = axpy(field_, column, field_.neg(column.back().value),
                  pivots_[it->second].column);
  }
  return column;
}

std::vector<std::uint32_t> ColumnReducer::pivot_rows() const {
  std::vector<std::uint32_t> out;
  out.reserve(pivots_.size());
  for (const Pivot& p : pivots_) out.push_back(p.column.back().row);
  return out;
}

std::size_t rank_sparse(const FieldMatrix& m) {
  ColumnReducer reducer(m.field());
  for (std::size_t j = 0; j < m.cols(); ++j) reducer.insert(m.column(j));
  return reducer.rank();
}

namespace {

std::size_t rank_dense_gf2(const FieldMatrix& m) {
  const auto& k = kernels::active();
  const std::size_t words = (m.rows() + 63) / 64;
  std::vector<std::uint64_t> pivots;  // pivot columns, packed
  std::vector<std::ptrdiff_t> pivot_of_row(m.rows(), -1);
  std::vector<std::uint64_t> col(words);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::fill(col.begin(), col.end(), 0);
    for (const Entry& e : m.column(j)) col[e.row / 64] |= std::uint64_t{1} << (e.row % 64);
    std::size_t w = words;
    while (w > 0) {
      if (col[w - 1] == 0) {
        --w;
        continue;
      }
      std::size_t row = (w - 1) * 64 + (63 - static_cast<std::size_t>(__builtin_clzll(col[w - 1])));
      std::ptrdiff_t p = pivot_of_row[row];
      if (p < 0) {
        pivot_of_row[row] = static_cast<std::ptrdiff_t>(pivots.size() / words);
        pivots.insert(pivots.end(), col.begin(), col.end());
        break;
      }
      k.xor_words(col.data(), pivots.data() + static_cast<std::size_t>(p) * words, w);
    }
  }
  return pivots.size() / (words == 0 ? 1 : words);
}

std::size_t rank_dense_gfp(const FieldMatrix& m) {
  const auto& k = kernels::active();
  const PrimeField& f = m.field();
  const std::size_t n = m.rows();
  std::vector<std::uint32_t> pivots;  // normalized pivot columns
  std::vector<std::ptrdiff_t> pivot_of_row(n, -1);
  std::vector<std::uint32_t> col(n);
  std::size_t count = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::fill(col.begin(), col.end(), 0);
    for (const Entry& e : m.column(j)) col[e.row] = e.value;
    std::size_t top = n;
    while (top > 0) {
      if (col[top - 1] == 0) {
        --top;
        continue;
      }
      std::size_t row = top - 1;
      std::ptrdiff_t p = pivot_of_row[row];
      if (p < 0) {
        std::uint32_t norm = f.inv(col[row]);
        for (std::size_t i = 0; i < top; ++i) col[i] = f.mul(col[i], norm);
        pivot_of_row[row] = static_cast<std::ptrdiff_t>(count++);
        pivots.insert(pivots.end(), col.begin(), col.end());
        break;
      }
      k.axpy_mod(col.data(), pivots.data() + static_cast<std::size_t>(p) * n,
                 f.neg(col[row]), f.prime(), top);
    }
  }
  return count;
}

}  // namespace

std::size_t rank_dense(const FieldMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return m.prime() == 2 ? rank_dense_gf2(m) : rank_dense_gfp(m);
}

std::size_t rank(const FieldMatrix& m) {
  constexpr std::size_t kDenseLimit = std::size_t{1} << 20;
  if (m.rows() * m.cols() <= kDenseLimit) return rank_dense(m);
  return rank_sparse(m);
}

std::vector<SparseColumn> kernel_basis(const FieldMatrix& m) {
  ColumnReducer reducer(m.field(), true);
  std::vector<SparseColumn> out;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    SparseColumn comb{{static_cast<std::uint32_t>(j), 1}};
    if (!reducer.insert(m.column(j), &comb)) out.push_back(std::move(comb));
  }
  return out;
}

}  // namespace hlink
