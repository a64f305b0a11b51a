#pragma once

#include <cstddef>

#include "hlink/grid.hpp"

namespace hlink {

/// Strong collapses on a pair of full subcomplexes (big, small), small a
/// subset of big. The Freudenthal triangulation is a flag complex, so a
/// vertex v whose closed neighbourhood in `big` lies inside the closed
/// neighbourhood of some neighbour w can be removed: v -> w is a simplicial
/// retraction contiguous to the identity. When v is in `small` the target w
/// must be too, so the retraction is a map of pairs and the inclusion of
/// the reduced pair is a homotopy equivalence of pairs. Vertices in `keep`
/// are never removed.
///
/// Returns the number of removed vertices.
std::size_t strong_collapse_pair(const GridComplex& grid, VertexSet& big,
                                 VertexSet& small, const VertexSet* keep = nullptr);

}  // namespace hlink
