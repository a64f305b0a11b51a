#include "hlink/collapse.hpp"

#include <deque>

#include "hlink/error.hpp"

namespace hlink {

std::size_t strong_collapse_pair(const GridComplex& grid, VertexSet& big,
                                 VertexSet& small, const VertexSet* keep) {
  if (!small.is_subset_of(big)) {
    throw ValidationError("strong collapse: small space is not contained in big space");
  }
  const int offsets = grid.offset_count();
  std::vector<std::uint64_t> nbr(grid.vertex_count(), 0);
  std::vector<std::int64_t> delta(offsets);
  {
    // lattice delta of each offset, read off an interior-agnostic formula
    const int d = grid.dimension();
    std::size_t axis = static_cast<std::size_t>(grid.steps()) + 1;
    std::vector<std::int64_t> stride(d, 1);
    for (int a = d - 2; a >= 0; --a) stride[a] = stride[a + 1] * static_cast<std::int64_t>(axis);
    for (int o = 0; o < offsets; ++o) {
      auto off = grid.offset(o);
      std::int64_t s = 0;
      for (int a = 0; a < d; ++a) s += off[a] * stride[a];
      delta[o] = s;
    }
  }

  big.for_each([&](std::size_t v) {
    std::uint64_t inside = grid.inside_mask(static_cast<VertexId>(v));
    std::uint64_t m = 0;
    while (inside) {
      int o = __builtin_ctzll(inside);
      inside &= inside - 1;
      if (big.test(static_cast<std::size_t>(static_cast<std::int64_t>(v) + delta[o]))) {
        m |= std::uint64_t{1} << o;
      }
    }
    nbr[v] = m;
  });

  VertexSet queued = big;
  std::deque<VertexId> work;
  big.for_each([&](std::size_t v) { work.push_back(static_cast<VertexId>(v)); });

  std::size_t removed = 0;
  while (!work.empty()) {
    VertexId v = work.front();
    work.pop_front();
    queued.reset(v);
    if (!big.test(v) || (keep && keep->test(v))) continue;
    const std::uint64_t m = nbr[v];
    const bool in_small = small.test(v);
    std::uint64_t candidates = m;
    bool dominated = false;
    while (candidates) {
      int o = __builtin_ctzll(candidates);
      candidates &= candidates - 1;
      if ((m & ~grid.cover_mask(o)) != 0) continue;
      if (in_small && !small.test(static_cast<std::size_t>(static_cast<std::int64_t>(v) + delta[o]))) {
        continue;
      }
      dominated = true;
      break;
    }
    if (!dominated) continue;

    big.reset(v);
    if (in_small) small.reset(v);
    ++removed;
    std::uint64_t rest = m;
    while (rest) {
      int o = __builtin_ctzll(rest);
      rest &= rest - 1;
      auto u = static_cast<VertexId>(static_cast<std::int64_t>(v) + delta[o]);
      nbr[u] &= ~(std::uint64_t{1} << grid.opposite(o));
      if (!queued.test(u)) {
        queued.set(u);
        work.push_back(u);
      }
    }
  }
  return removed;
}

}  // namespace hlink
