#pragma once

#include <string>
#include <vector>

#include "hlink/grid.hpp"
#include "hlink/regions.hpp"

namespace hlink {

/// E = E_1 + E_2 (+ R e) on coordinate axes; indices are 0-based.
struct Decomposition {
  int dimension = 0;
  std::vector<int> coords_1;  // E_1, the first k axes
  std::vector<int> coords_2;  // E_2, the next m axes
  int e_axis = -1;            // distinguished unit direction, -1 if none

  int k() const noexcept { return static_cast<int>(coords_1.size()); }
  int m() const noexcept { return static_cast<int>(coords_2.size()); }
};

struct CatalogueScenario {
  std::string name;
  std::string statement;
  int k = 1;
  int m = 1;
  Decomposition decomposition;
  GridDomain domain;
  RegionSpec b, a, q, p;
  int expected_degree = 0;
  std::size_t expected_rank = 1;
};

const std::vector<std::string>& catalogue_names();

/// Builds a named model scenario with inner radius 1, outer points at
/// sup-distance 2, shells one step thick and subspaces one vertex thick.
/// Unbounded sets are cut to the sup-ball of radius `clip` (default: the
/// box extent) and marked clipped. Throws ValidationError for unknown names
/// or k, m outside {1, 2}.
CatalogueScenario catalogue(const std::string& name, int k, int m, double resolution = 0.5,
                            double extent = 4.0, double clip = 0.0);

}  // namespace hlink
