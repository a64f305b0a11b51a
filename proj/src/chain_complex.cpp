#include "hlink/chain_complex.hpp"

#include <algorithm>
#include <sstream>

#include "hlink/error.hpp"

namespace hlink {

RelativeChainComplex::Key RelativeChainComplex::make_key(std::span<const VertexId> s) noexcept {
  Key k;
  k.fill(~VertexId{0});
  std::copy(s.begin(), s.end(), k.begin());
  return k;
}

std::size_t RelativeChainComplex::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (VertexId v : k) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

void RelativeChainComplex::add(std::span<const VertexId> s) {
  const std::size_t q = s.size() - 1;
  auto [it, inserted] = index_[q].emplace(make_key(s), static_cast<std::uint32_t>(flat_[q].size() / (q + 1)));
  if (inserted) flat_[q].insert(flat_[q].end(), s.begin(), s.end());
}

RelativeChainComplex::RelativeChainComplex(const GridComplex& grid, const VertexSet& big,
                                           const VertexSet& small, std::size_t budget)
    : grid_(&grid), augmented_(small.empty()) {
  const int d = grid.dimension();
  flat_.resize(static_cast<std::size_t>(d) + 1);
  index_.resize(static_cast<std::size_t>(d) + 1);

  VertexSet outside = big;
  outside.subtract(small);
  const std::size_t n_big = big.count();
  const std::size_t n_out = outside.count();

  std::size_t seen = 0;
  auto guard = [&] {
    if (++seen > budget) {
      std::ostringstream os;
      os << "relative chain complex exceeds the simplex budget: more than " << budget
         << " simplices on " << n_big << " vertices";
      throw ResourceError(os.str());
    }
  };

  if (n_out * (std::size_t{1} << d) < n_big) {
    // Few vertices outside `small`: grow stars around them and keep each
    // simplex once, at its smallest outside vertex.
    outside.for_each([&](std::size_t vv) {
      const auto v = static_cast<VertexId>(vv);
      for (int q = 0; q <= d; ++q) {
        grid.for_each_simplex_containing(v, q, [&](std::span<const VertexId> s) {
          for (VertexId u : s) {
            if (!big.test(u)) return;
          }
          for (VertexId u : s) {
            if (outside.test(u)) {
              if (u != v) return;
              break;
            }
          }
          guard();
          add(s);
        });
      }
    });
  } else {
    big.for_each([&](std::size_t base) {
      for (int q = 0; q <= d; ++q) {
        grid.for_each_simplex_from(static_cast<VertexId>(base), q,
                                   [&](std::span<const VertexId> s) {
                                     bool touches = false;
                                     for (VertexId u : s) {
                                       if (!big.test(u)) return;
                                       touches = touches || !small.test(u);
                                     }
                                     if (!touches) return;
                                     guard();
                                     add(s);
                                   });
      }
    });
  }

  // Sort each degree lexicographically so indices are deterministic.
  for (std::size_t q = 0; q < flat_.size(); ++q) {
    const std::size_t stride = q + 1;
    const std::size_t n = flat_[q].size() / stride;
    std::vector<std::uint32_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
    const auto& f = flat_[q];
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return std::lexicographical_compare(f.begin() + a * stride, f.begin() + (a + 1) * stride,
                                          f.begin() + b * stride, f.begin() + (b + 1) * stride);
    });
    std::vector<VertexId> sorted;
    sorted.reserve(f.size());
    for (auto i : order) sorted.insert(sorted.end(), f.begin() + i * stride, f.begin() + (i + 1) * stride);
    flat_[q] = std::move(sorted);
    index_[q].clear();
    for (std::size_t i = 0; i < n; ++i) {
      index_[q].emplace(make_key({flat_[q].data() + i * stride, stride}), static_cast<std::uint32_t>(i));
    }
  }
}

std::size_t RelativeChainComplex::count(int q) const noexcept {
  if (q == -1) return augmented_ ? 1 : 0;
  if (q < -1 || q > top_degree()) return 0;
  return flat_[q].size() / static_cast<std::size_t>(q + 1);
}

std::size_t RelativeChainComplex::total() const noexcept {
  std::size_t n = 0;
  for (int q = -1; q <= top_degree(); ++q) n += count(q);
  return n;
}

std::span<const VertexId> RelativeChainComplex::simplex(int q, std::size_t i) const {
  if (q < 0) return {};
  const auto stride = static_cast<std::size_t>(q + 1);
  return {flat_[q].data() + i * stride, stride};
}

std::optional<std::uint32_t> RelativeChainComplex::find(std::span<const VertexId> s) const {
  if (s.empty()) {
    if (augmented_) return 0;
    return std::nullopt;
  }
  const std::size_t q = s.size() - 1;
  if (q >= index_.size()) return std::nullopt;
  auto it = index_[q].find(make_key(s));
  if (it == index_[q].end()) return std::nullopt;
  return it->second;
}

SparseColumn RelativeChainComplex::boundary(int q, std::size_t i, const PrimeField& field) const {
  SparseColumn col;
  if (q <= -1) return col;
  if (q == 0) {
    if (augmented_) col.push_back({0, 1});
    return col;
  }
  auto s = simplex(q, i);
  VertexId face[kMaxGridDimension + 1];
  for (std::size_t drop = 0; drop < s.size(); ++drop) {
    std::size_t n = 0;
    for (std::size_t j = 0; j < s.size(); ++j)
      if (j != drop) face[n++] = s[j];
    auto idx = find({face, n});
    if (!idx) continue;
    col.push_back({*idx, drop % 2 == 0 ? 1u : field.neg(1)});
  }
  std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
  return col;
}

FieldMatrix RelativeChainComplex::boundary_matrix(int q, const PrimeField& field) const {
  FieldMatrix m(count(q - 1), count(q), field.prime());
  for (std::size_t j = 0; j < count(q); ++j) m.set_column(j, boundary(q, j, field));
  return m;
}

}  // namespace hlink
