#pragma once

// Independent reference computations for tests: explicit simplex lists,
// dense Gaussian elimination, no collapses, no clearing.

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

namespace oracle {

using Simplex = std::vector<std::uint32_t>;
using Matrix = std::vector<std::vector<std::uint32_t>>;  // row-major

/// All simplices of the Freudenthal triangulation, by dimension, built from
/// cubes and axis permutations. Vertex ids: lexicographic, axis 0 major.
struct Triangulation {
  int dimension = 0;
  int steps = 0;
  double extent = 0, resolution = 0;
  std::vector<std::set<Simplex>> simplices;  // [q]
  std::size_t vertex_count() const;
  std::vector<double> coordinates(std::uint32_t v) const;
};
Triangulation triangulate(int dimension, double extent, double resolution);

std::size_t dense_rank(Matrix m, std::uint32_t p);
/// Basis of the null space of m (columns), as coefficient vectors.
std::vector<std::vector<std::uint32_t>> null_space(Matrix m, std::size_t cols, std::uint32_t p);

using VertexSet = std::vector<bool>;

/// Reduced Betti numbers (index q + 1) of the full subcomplex on `vertices`.
std::vector<std::size_t> reduced_betti(const Triangulation& t, const VertexSet& vertices, std::uint32_t p);

/// Reduced Betti numbers of an explicit (closed) simplex family.
std::vector<std::size_t> reduced_betti(const std::vector<std::set<Simplex>>& simplices, std::uint32_t p);

/// Rank of H~_q(sb, ss) -> H~_q(tb, ts) for full subcomplexes.
std::size_t induced_rank(const Triangulation& t, const VertexSet& sb, const VertexSet& ss,
                         const VertexSet& tb, const VertexSet& ts, int q, std::uint32_t p);

/// dim H~_{q-1}(lower link of v) for q = 0..d, by scanning every simplex.
std::vector<std::size_t> critical_groups(const Triangulation& t, const std::vector<double>& values,
                                         std::uint32_t v, std::uint32_t p);

}  // namespace oracle
