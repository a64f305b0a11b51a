#pragma once

#include <cstddef>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "hlink/field_matrix.hpp"
#include "hlink/grid.hpp"

namespace hlink {

inline constexpr std::size_t kDefaultSimplexBudget = 20'000'000;
/// Largest vertex count of a simplex in an explicit complex.
inline constexpr std::size_t kMaxSimplexSize = 8;

/// Explicit finite simplicial complex. Vertices are 0..n-1 and may carry a
/// label (for example the grid vertex they came from). Simplices are sorted
/// vertex tuples, stored per degree in lexicographic order.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Builds the closure of `facets`. Labels default to the vertex index.
  static SimplicialComplex from_simplices(std::size_t vertex_count,
                                          const std::vector<Simplex>& facets,
                                          std::vector<std::uint32_t> labels = {});

  /// Builds from per-degree simplex lists that are already closed under
  /// faces (levels[q] holds the q-simplices, each sorted).
  static SimplicialComplex from_levels(std::size_t vertex_count,
                                       std::vector<std::vector<Simplex>> levels,
                                       std::vector<std::uint32_t> labels = {});

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  /// -1 for the empty complex.
  int dimension() const noexcept { return static_cast<int>(by_dim_.size()) - 1; }
  std::size_t simplex_count(int q) const noexcept;
  std::size_t total_simplices() const noexcept;
  std::span<const VertexId> simplex(int q, std::size_t i) const;
  std::optional<std::size_t> index_of(std::span<const VertexId> simplex) const;
  std::uint32_t label(VertexId v) const { return labels_[v]; }
  const std::vector<std::uint32_t>& labels() const noexcept { return labels_; }

  /// Every face of every simplex is present.
  bool is_closed() const;

 private:
  using Key = std::array<VertexId, kMaxSimplexSize>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };
  static Key make_key(std::span<const VertexId> s) noexcept;
  struct Level {
    std::vector<VertexId> flat;  // stride q + 1
    std::unordered_map<Key, std::uint32_t, KeyHash> lookup;
  };

  std::vector<std::uint32_t> labels_;
  std::vector<Level> by_dim_;
};

/// Explicit Freudenthal triangulation of the domain. Vertex labels are grid
/// vertex ids. Throws ResourceError if the simplex count exceeds `budget`.
SimplicialComplex build_grid_complex(const GridDomain& domain,
                                     std::size_t budget = kDefaultSimplexBudget);

/// Materialize a full subcomplex of a grid (labels are grid vertex ids).
SimplicialComplex materialize(const FullSubcomplex& sub,
                              std::size_t budget = kDefaultSimplexBudget);

/// Simplicial boundary d_q : C_q -> C_{q-1} with alternating signs mod p.
/// Degree 0 maps to the zero space (no augmentation).
FieldMatrix boundary_matrix(const SimplicialComplex& c, int q, std::uint32_t prime);
FieldMatrix boundary_matrix(const FullSubcomplex& c, int q, std::uint32_t prime);

/// Reduced Betti numbers over GF(p), degrees -1 .. dimension.
struct ReducedBetti {
  std::vector<std::size_t> dims;  // dims[q + 1]
  std::size_t at(int q) const {
    return (q + 1 >= 0 && static_cast<std::size_t>(q + 1) < dims.size()) ? dims[q + 1] : 0;
  }
};
ReducedBetti reduced_betti(const SimplicialComplex& c, std::uint32_t prime);

}  // namespace hlink
