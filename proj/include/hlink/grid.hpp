#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace hlink {

using VertexId = std::uint32_t;
using Simplex = std::vector<VertexId>;

/// The box [-extent, extent]^dimension sampled every `resolution`.
struct GridDomain {
  int dimension = 2;
  double extent = 4.0;
  double resolution = 0.5;

  /// Throws ValidationError unless 1 <= dimension <= kMaxGridDimension,
  /// extent and resolution are positive and extent / resolution is integral.
  void validate() const;
  /// Grid steps per axis, 2 * extent / resolution.
  int steps() const;

  friend bool operator==(const GridDomain&, const GridDomain&) = default;
};

/// Neighbourhoods are encoded as 64-bit masks over the 2 (2^d - 1) offsets.
inline constexpr int kMaxGridDimension = 5;

/// Fixed-size vertex subset of a grid, stored as packed words.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t size, bool value = false);

  std::size_t size() const noexcept { return size_; }
  bool test(std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }
  bool is_subset_of(const VertexSet& other) const;
  bool intersects(const VertexSet& other) const;
  /// First common element, or size() if disjoint.
  std::size_t first_common(const VertexSet& other) const;
  /// First element not in `other`, or size() if contained.
  std::size_t first_outside(const VertexSet& other) const;

  VertexSet complement() const;
  VertexSet& operator|=(const VertexSet& other);
  VertexSet& operator&=(const VertexSet& other);
  VertexSet& subtract(const VertexSet& other);

  /// Calls fn(i) for every member in increasing order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        fn(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits)));
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  void check_size(const VertexSet& other) const;
  void trim() noexcept;

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Freudenthal (Kuhn) triangulation of a grid box, kept implicit: simplices
/// are enumerated from lattice arithmetic on demand. A q-simplex is a chain
/// v < v + 1_{T1} < ... < v + 1_{Tq} of vertices with nested coordinate sets
/// T1 < ... < Tq; vertex ids are lexicographic in the coordinates, so every
/// simplex is a sorted vertex tuple.
class GridComplex {
 public:
  explicit GridComplex(const GridDomain& domain);

  const GridDomain& domain() const noexcept { return domain_; }
  int dimension() const noexcept { return domain_.dimension; }
  int steps() const noexcept { return steps_; }
  std::size_t vertex_count() const noexcept { return vertex_count_; }

  /// Integer lattice position, 0 .. steps per axis.
  std::vector<int> lattice(VertexId v) const;
  VertexId vertex_at(std::span<const int> lattice) const;
  double coordinate(VertexId v, int axis) const;
  std::vector<double> coordinates(VertexId v) const;
  /// Vertex nearest to a point; throws if the point lies outside the box.
  VertexId nearest_vertex(std::span<const double> point) const;
  bool on_box_boundary(VertexId v) const;

  /// Closed-form simplex count per degree (no enumeration).
  std::vector<std::size_t> simplex_counts() const;

  // Neighbour offsets: vectors in {0,1}^d u {0,-1}^d minus zero.
  int offset_count() const noexcept { return static_cast<int>(offsets_.size()); }
  std::span<const int> offset(int o) const {
    return {offsets_[o].data(), offsets_[o].size()};
  }
  /// Index of the offset -o.
  int opposite(int o) const noexcept { return opposite_[o]; }
  /// Neighbour of v along offset o, or -1 if it leaves the box.
  std::int64_t neighbor(VertexId v, int o) const;
  /// Offsets o' such that (o' - o) is an offset or zero: the neighbours of
  /// v that are also adjacent or equal to v + o.
  std::uint64_t cover_mask(int o) const noexcept { return cover_[o]; }
  /// Mask of offsets whose target is inside the box.
  std::uint64_t inside_mask(VertexId v) const;

  /// Enumerates every q-simplex whose smallest vertex is `base`. The
  /// callback receives the sorted vertex tuple.
  void for_each_simplex_from(VertexId base, int q,
                             const std::function<void(std::span<const VertexId>)>& fn) const;
  /// Enumerates every q-simplex containing `v`.
  void for_each_simplex_containing(VertexId v, int q,
                                   const std::function<void(std::span<const VertexId>)>& fn) const;

 private:
  void enumerate_chains(VertexId base, int q, std::uint32_t allowed,
                        const std::function<void(std::span<const VertexId>)>& fn) const;

  GridDomain domain_;
  int steps_;
  std::size_t vertex_count_;
  std::vector<std::size_t> stride_;
  std::vector<std::vector<int>> offsets_;
  std::vector<std::int64_t> offset_delta_;
  std::vector<int> opposite_;
  std::vector<std::uint64_t> cover_;
};

/// Full subcomplex of a grid complex: every simplex whose vertices all lie
/// in `vertices`. The grid must outlive it.
class FullSubcomplex {
 public:
  FullSubcomplex(const GridComplex& parent, VertexSet vertices);

  const GridComplex& parent() const noexcept { return *parent_; }
  const VertexSet& vertices() const noexcept { return vertices_; }
  bool contains_vertex(VertexId v) const { return vertices_.test(v); }
  bool contains(std::span<const VertexId> simplex) const;
  std::size_t vertex_count() const noexcept { return vertices_.count(); }
  bool empty() const noexcept { return vertices_.empty(); }

  /// Sorted list of q-simplices (lexicographic).
  std::vector<Simplex> simplices(int q) const;
  std::size_t simplex_count(int q) const;
  /// Largest q with a q-simplex, -1 when empty.
  int top_dimension() const;

  bool same_parent(const FullSubcomplex& other) const noexcept {
    return parent_ == other.parent_;
  }

  friend bool operator==(const FullSubcomplex& a, const FullSubcomplex& b) {
    return a.parent_ == b.parent_ && a.vertices_ == b.vertices_;
  }

 private:
  const GridComplex* parent_;
  VertexSet vertices_;
};

using VertexPredicate = std::function<bool(std::span<const double>)>;

FullSubcomplex full_subcomplex(const GridComplex& x, const VertexPredicate& predicate);
FullSubcomplex whole_complex(const GridComplex& x);
FullSubcomplex empty_subcomplex(const GridComplex& x);
FullSubcomplex complement_subcomplex(const GridComplex& x, const FullSubcomplex& s);

}  // namespace hlink
