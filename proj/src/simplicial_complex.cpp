#include "hlink/simplicial_complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hlink/error.hpp"

namespace hlink {

SimplicialComplex::Key SimplicialComplex::make_key(std::span<const VertexId> s) noexcept {
  Key k;
  k.fill(~VertexId{0});
  std::copy(s.begin(), s.end(), k.begin());
  return k;
}

std::size_t SimplicialComplex::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (VertexId v : k) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

SimplicialComplex SimplicialComplex::from_simplices(std::size_t vertex_count,
                                                    const std::vector<Simplex>& facets,
                                                    std::vector<std::uint32_t> labels) {
  std::vector<std::set<Simplex>> levels(vertex_count > 0 ? 1 : 0);
  for (Simplex s : facets) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw ValidationError("simplex with a repeated vertex");
    }
    if (s.empty()) continue;
    if (s.size() > kMaxSimplexSize) throw ValidationError("simplex dimension too large");
    if (s.back() >= vertex_count) throw ValidationError("simplex vertex out of range");
    const std::size_t n = s.size();
    if (levels.size() < n) levels.resize(n);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      Simplex face;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) face.push_back(s[i]);
      levels[face.size() - 1].insert(std::move(face));
    }
  }
  for (std::size_t v = 0; v < vertex_count; ++v) levels[0].insert(Simplex{static_cast<VertexId>(v)});
  std::vector<std::vector<Simplex>> flat;
  for (auto& lvl : levels) flat.emplace_back(lvl.begin(), lvl.end());
  return from_levels(vertex_count, std::move(flat), std::move(labels));
}

SimplicialComplex SimplicialComplex::from_levels(std::size_t vertex_count,
                                                 std::vector<std::vector<Simplex>> levels,
                                                 std::vector<std::uint32_t> labels) {
  SimplicialComplex c;
  if (labels.empty()) {
    labels.resize(vertex_count);
    for (std::size_t i = 0; i < vertex_count; ++i) labels[i] = static_cast<std::uint32_t>(i);
  }
  if (labels.size() != vertex_count) throw ValidationError("label count mismatch");
  c.labels_ = std::move(labels);
  while (!levels.empty() && levels.back().empty()) levels.pop_back();
  c.by_dim_.resize(levels.size());
  for (std::size_t q = 0; q < levels.size(); ++q) {
    auto& src = levels[q];
    std::sort(src.begin(), src.end());
    src.erase(std::unique(src.begin(), src.end()), src.end());
    Level& lvl = c.by_dim_[q];
    lvl.flat.reserve(src.size() * (q + 1));
    lvl.lookup.reserve(src.size());
    std::uint32_t idx = 0;
    for (const Simplex& s : src) {
      if (s.size() != q + 1) throw ValidationError("simplex stored at the wrong degree");
      lvl.flat.insert(lvl.flat.end(), s.begin(), s.end());
      lvl.lookup.emplace(make_key(s), idx++);
    }
  }
  return c;
}

std::size_t SimplicialComplex::simplex_count(int q) const noexcept {
  if (q < 0 || q > dimension()) return 0;
  return by_dim_[q].flat.size() / static_cast<std::size_t>(q + 1);
}

std::size_t SimplicialComplex::total_simplices() const noexcept {
  std::size_t n = 0;
  for (int q = 0; q <= dimension(); ++q) n += simplex_count(q);
  return n;
}

std::span<const VertexId> SimplicialComplex::simplex(int q, std::size_t i) const {
  const auto stride = static_cast<std::size_t>(q + 1);
  return {by_dim_.at(q).flat.data() + i * stride, stride};
}

std::optional<std::size_t> SimplicialComplex::index_of(std::span<const VertexId> simplex) const {
  if (simplex.empty() || static_cast<int>(simplex.size()) - 1 > dimension()) return std::nullopt;
  const Level& lvl = by_dim_[simplex.size() - 1];
  auto it = lvl.lookup.find(make_key(simplex));
  if (it == lvl.lookup.end()) return std::nullopt;
  return it->second;
}

bool SimplicialComplex::is_closed() const {
  std::vector<VertexId> face;
  for (int q = 1; q <= dimension(); ++q) {
    for (std::size_t i = 0; i < simplex_count(q); ++i) {
      auto s = simplex(q, i);
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        face.clear();
        for (std::size_t j = 0; j < s.size(); ++j)
          if (j != drop) face.push_back(s[j]);
        if (!index_of(face)) return false;
      }
    }
  }
  return true;
}

namespace {

void check_budget(std::size_t count, std::size_t budget) {
  if (count > budget) {
    std::ostringstream os;
    os << "complex would have " << count << " simplices, over the budget of " << budget;
    throw ResourceError(os.str());
  }
}

}  // namespace

SimplicialComplex materialize(const FullSubcomplex& sub, std::size_t budget) {
  const GridComplex& grid = sub.parent();
  // Re-index the member vertices densely, keeping lexicographic order.
  std::vector<std::uint32_t> labels;
  std::unordered_map<VertexId, VertexId> local;
  sub.vertices().for_each([&](std::size_t v) {
    local.emplace(static_cast<VertexId>(v), static_cast<VertexId>(labels.size()));
    labels.push_back(static_cast<std::uint32_t>(v));
  });
  std::vector<std::vector<Simplex>> levels(static_cast<std::size_t>(grid.dimension()) + 1);
  std::size_t total = 0;
  for (VertexId lv = 0; lv < labels.size(); ++lv) {
    for (int q = 0; q <= grid.dimension(); ++q) {
      grid.for_each_simplex_from(labels[lv], q, [&](std::span<const VertexId> s) {
        if (!sub.contains(s)) return;
        ++total;
        Simplex t;
        for (VertexId v : s) t.push_back(local.at(v));
        levels[q].push_back(std::move(t));
      });
    }
    check_budget(total, budget);
  }
  const std::size_t n = labels.size();
  return SimplicialComplex::from_levels(n, std::move(levels), std::move(labels));
}

SimplicialComplex build_grid_complex(const GridDomain& domain, std::size_t budget) {
  GridComplex grid(domain);
  std::size_t total = 0;
  for (auto c : grid.simplex_counts()) total += c;
  check_budget(total, budget);
  return materialize(whole_complex(grid), budget);
}

FieldMatrix boundary_matrix(const SimplicialComplex& c, int q, std::uint32_t prime) {
  const std::size_t rows = q >= 1 ? c.simplex_count(q - 1) : 0;
  FieldMatrix m(rows, c.simplex_count(q), prime);
  if (q < 1) return m;
  std::vector<VertexId> face;
  for (std::size_t j = 0; j < c.simplex_count(q); ++j) {
    auto s = c.simplex(q, j);
    std::vector<std::pair<std::uint32_t, long long>> entries;
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      face.clear();
      for (std::size_t i = 0; i < s.size(); ++i)
        if (i != drop) face.push_back(s[i]);
      auto idx = c.index_of(face);
      if (!idx) throw InconsistencyError("complex is not closed under faces");
      entries.emplace_back(static_cast<std::uint32_t>(*idx), (drop % 2 == 0) ? 1 : -1);
    }
    m.set_column(j, std::move(entries));
  }
  return m;
}

FieldMatrix boundary_matrix(const FullSubcomplex& c, int q, std::uint32_t prime) {
  return boundary_matrix(materialize(c), q, prime);
}

ReducedBetti reduced_betti(const SimplicialComplex& c, std::uint32_t prime) {
  const int top = c.dimension();
  ReducedBetti out;
  out.dims.assign(static_cast<std::size_t>(top + 2), 0);
  if (top < 0) {
    out.dims[0] = 1;  // the empty complex
    return out;
  }
  // ranks[q] = rank of d_q, with d_0 the augmentation (rank 1 when nonempty)
  std::vector<std::size_t> ranks(static_cast<std::size_t>(top + 2), 0);
  ranks[0] = 1;
  for (int q = 1; q <= top; ++q) ranks[q] = rank(boundary_matrix(c, q, prime));
  for (int q = 0; q <= top; ++q) {
    out.dims[q + 1] = c.simplex_count(q) - ranks[q] - ranks[q + 1];
  }
  return out;
}

}  // namespace hlink
