#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "hlink/field_matrix.hpp"
#include "hlink/grid.hpp"

namespace hlink {

/// Relative chain complex C(big) / C(small) of two full subcomplexes of a
/// grid. The basis in degree q is the q-simplices of `big` with at least one
/// vertex outside `small`. When `small` is empty the complex is augmented by
/// the empty simplex in degree -1, which yields reduced homology.
class RelativeChainComplex {
 public:
  RelativeChainComplex(const GridComplex& grid, const VertexSet& big,
                       const VertexSet& small, std::size_t budget);

  int top_degree() const noexcept { return grid_->dimension(); }
  bool augmented() const noexcept { return augmented_; }
  /// Basis size in degree q (q >= -1).
  std::size_t count(int q) const noexcept;
  std::size_t total() const noexcept;
  std::span<const VertexId> simplex(int q, std::size_t i) const;
  std::optional<std::uint32_t> find(std::span<const VertexId> simplex) const;

  /// Column of the boundary d_q for basis element i of degree q. Faces that
  /// lie in `small` vanish.
  SparseColumn boundary(int q, std::size_t i, const PrimeField& field) const;
  FieldMatrix boundary_matrix(int q, const PrimeField& field) const;

 private:
  using Key = std::array<VertexId, kMaxGridDimension + 1>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };
  static Key make_key(std::span<const VertexId> s) noexcept;
  void add(std::span<const VertexId> s);

  const GridComplex* grid_;
  bool augmented_;
  std::vector<std::vector<VertexId>> flat_;  // degree q >= 0 at index q
  std::vector<std::unordered_map<Key, std::uint32_t, KeyHash>> index_;
};

}  // namespace hlink
