#include "hlink/homology.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "hlink/chain_complex.hpp"
#include "hlink/collapse.hpp"
#include "hlink/error.hpp"

namespace hlink {

PairOfSpaces PairOfSpaces::make(FullSubcomplex big, FullSubcomplex small) {
  if (!big.same_parent(small)) throw ValidationError("pair spaces live in different complexes");
  if (!small.vertices().is_subset_of(big.vertices())) {
    throw ValidationError("pair is malformed: the small space is not contained in the big one");
  }
  return PairOfSpaces{std::move(big), std::move(small)};
}

PairOfSpaces PairOfSpaces::single(FullSubcomplex space) {
  FullSubcomplex none = empty_subcomplex(space.parent());
  return PairOfSpaces{std::move(space), std::move(none)};
}

namespace {

std::string describe_vertex(const GridComplex& grid, std::size_t v) {
  std::ostringstream os;
  os << "vertex " << v << " (";
  auto c = grid.coordinates(static_cast<VertexId>(v));
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i];
  os << ")";
  return os.str();
}

void check_inclusion(const PairOfSpaces& source, const PairOfSpaces& target) {
  if (!source.big.same_parent(target.big)) {
    throw ValidationError("source and target pairs live in different complexes");
  }
  const GridComplex& grid = source.big.parent();
  std::size_t bad = source.big.vertices().first_outside(target.big.vertices());
  if (bad != grid.vertex_count()) {
    throw PreconditionError(ErrorCode::inclusion_violated,
                            "inclusion fails: " + describe_vertex(grid, bad) +
                                " of the source space is not in the target space");
  }
  bad = source.small.vertices().first_outside(target.small.vertices());
  if (bad != grid.vertex_count()) {
    throw PreconditionError(ErrorCode::inclusion_violated,
                            "inclusion fails: " + describe_vertex(grid, bad) +
                                " of the source subspace is not in the target subspace");
  }
}

struct SourceData {
  std::vector<std::vector<SparseColumn>> cycles;  // index q + 1
  std::vector<std::size_t> boundary_rank;         // rank d_q, index q + 1
};

/// Kernel bases of every d_q (tracked reduction, no clearing).
SourceData reduce_source(const RelativeChainComplex& c, const PrimeField& field) {
  const int top = c.top_degree();
  SourceData out;
  out.cycles.resize(static_cast<std::size_t>(top) + 2);
  out.boundary_rank.assign(static_cast<std::size_t>(top) + 3, 0);
  for (int q = -1; q <= top; ++q) {
    ColumnReducer reducer(field, true);
    for (std::size_t j = 0; j < c.count(q); ++j) {
      SparseColumn comb{{static_cast<std::uint32_t>(j), 1}};
      if (!reducer.insert(c.boundary(q, j, field), &comb)) {
        out.cycles[q + 1].push_back(std::move(comb));
      }
    }
    out.boundary_rank[q + 1] = reducer.rank();
  }
  return out;
}

/// Ranks of the target boundaries, computed top-down with clearing, plus
/// the rank of the image of the mapped source cycles in each degree.
struct TargetResult {
  std::vector<std::size_t> boundary_rank;  // rank d_q, index q + 1
  std::vector<std::size_t> image_rank;     // index q + 1
};

template <class MapCycles>
TargetResult reduce_target(const RelativeChainComplex& c, const PrimeField& field,
                           MapCycles&& mapped_cycles) {
  const int top = c.top_degree();
  TargetResult out;
  out.boundary_rank.assign(static_cast<std::size_t>(top) + 3, 0);
  out.image_rank.assign(static_cast<std::size_t>(top) + 2, 0);
  std::unordered_set<std::uint32_t> cleared;  // (q+1)-simplices known to reduce to zero
  for (int q = top; q >= -1; --q) {
    // d_{q+1}: columns are (q+1)-simplices
    ColumnReducer reducer(field);
    for (std::size_t j = 0; j < c.count(q + 1); ++j) {
      if (cleared.count(static_cast<std::uint32_t>(j))) continue;
      reducer.insert(c.boundary(q + 1, j, field));
    }
    out.boundary_rank[q + 2] = reducer.rank();
    auto rows = reducer.pivot_rows();
    cleared = std::unordered_set<std::uint32_t>(rows.begin(), rows.end());
    std::size_t image = 0;
    for (SparseColumn& z : mapped_cycles(q)) {
      if (reducer.insert(std::move(z))) ++image;
    }
    out.image_rank[q + 1] = image;
  }
  return out;
}

DegreeTable dims_from_ranks(const RelativeChainComplex& c, const std::vector<std::size_t>& rank) {
  DegreeTable t;
  for (int q = -1; q <= c.top_degree(); ++q) {
    t.values.push_back(c.count(q) - rank[q + 1] - rank[q + 2]);
  }
  return t;
}

struct Reduced {
  VertexSet big, small;
};

Reduced maybe_reduce(const PairOfSpaces& pair, const EngineOptions& options,
                     const VertexSet* keep) {
  Reduced r{pair.big.vertices(), pair.small.vertices()};
  if (options.reduce) strong_collapse_pair(pair.big.parent(), r.big, r.small, keep);
  return r;
}

}  // namespace

DegreeTable reduced_homology_dims(const PairOfSpaces& pair, std::uint32_t prime,
                                  const EngineOptions& options) {
  PrimeField field(prime);
  const GridComplex& grid = pair.big.parent();
  Reduced r = maybe_reduce(pair, options, nullptr);
  RelativeChainComplex c(grid, r.big, r.small, options.simplex_budget);
  auto result = reduce_target(c, field, [](int) { return std::vector<SparseColumn>{}; });
  return dims_from_ranks(c, result.boundary_rank);
}

std::size_t reduced_homology_dim(const PairOfSpaces& pair, int q, std::uint32_t prime,
                                 const EngineOptions& options) {
  if (q < -1) throw ValidationError("homology degree must be at least -1");
  return reduced_homology_dims(pair, prime, options).at(q);
}

InducedMapRanks induced_map_ranks(const PairOfSpaces& source, const PairOfSpaces& target,
                                  std::uint32_t prime, const EngineOptions& options) {
  check_inclusion(source, target);
  PrimeField field(prime);
  const GridComplex& grid = source.big.parent();

  Reduced rs = maybe_reduce(source, options, nullptr);
  Reduced rt = maybe_reduce(target, options, &rs.big);
  RelativeChainComplex src(grid, rs.big, rs.small, options.simplex_budget);
  RelativeChainComplex tgt(grid, rt.big, rt.small, options.simplex_budget);

  SourceData sd = reduce_source(src, field);
  auto mapped = [&](int q) {
    std::vector<SparseColumn> out;
    for (const SparseColumn& z : sd.cycles[q + 1]) {
      SparseColumn image;
      for (const Entry& e : z) {
        auto idx = tgt.find(src.simplex(q, e.row));
        if (idx) image.push_back({*idx, e.value});
      }
      std::sort(image.begin(), image.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
      out.push_back(std::move(image));
    }
    return out;
  };
  TargetResult tr = reduce_target(tgt, field, mapped);

  InducedMapRanks out;
  out.target_dims = dims_from_ranks(tgt, tr.boundary_rank);
  for (int q = -1; q <= src.top_degree(); ++q) {
    out.source_dims.values.push_back(sd.cycles[q + 1].size() - sd.boundary_rank[q + 2]);
    out.ranks.values.push_back(tr.image_rank[q + 1]);
  }
  return out;
}

std::size_t induced_map_rank(const PairOfSpaces& source, const PairOfSpaces& target, int q,
                             std::uint32_t prime, const EngineOptions& options) {
  if (q < -1) throw ValidationError("homology degree must be at least -1");
  return induced_map_ranks(source, target, prime, options).ranks.at(q);
}

HomologyBasis homology_basis(const PairOfSpaces& pair, int q, std::uint32_t prime,
                             const EngineOptions& options) {
  if (q < -1) throw ValidationError("homology degree must be at least -1");
  PrimeField field(prime);
  const GridComplex& grid = pair.big.parent();
  Reduced r = maybe_reduce(pair, options, nullptr);
  RelativeChainComplex c(grid, r.big, r.small, options.simplex_budget);

  HomologyBasis basis;
  basis.degree = q;
  basis.prime = prime;
  if (q > c.top_degree()) return basis;

  ColumnReducer boundaries(field);
  for (std::size_t j = 0; j < c.count(q + 1); ++j) boundaries.insert(c.boundary(q + 1, j, field));
  ColumnReducer kernel(field, true);
  for (std::size_t j = 0; j < c.count(q); ++j) {
    SparseColumn comb{{static_cast<std::uint32_t>(j), 1}};
    if (kernel.insert(c.boundary(q, j, field), &comb)) continue;
    if (!boundaries.insert(comb)) continue;
    Chain chain;
    for (const Entry& e : comb) {
      auto s = c.simplex(q, e.row);
      chain.terms.emplace_back(Simplex(s.begin(), s.end()), e.value);
    }
    basis.representatives.push_back(std::move(chain));
  }
  return basis;
}

// ---------------------------------------------------------------- linking

std::optional<std::size_t> LinkingReport::rank(int q) const {
  if (!inclusion_ok || q < 0 || static_cast<std::size_t>(q) >= ranks.size()) return std::nullopt;
  return ranks[q];
}

bool LinkingReport::links() const {
  return inclusion_ok && std::any_of(ranks.begin(), ranks.end(), [](std::size_t r) { return r > 0; });
}

LinkingReport link_rank_within(const FullSubcomplex& ambient, const FullSubcomplex& b,
                               const FullSubcomplex& a, const FullSubcomplex& q,
                               const FullSubcomplex& p, std::uint32_t prime,
                               const EngineOptions& options, RegionNames names) {
  const GridComplex& grid = ambient.parent();
  for (const FullSubcomplex* s : {&b, &a, &q, &p}) {
    if (&s->parent() != &grid) throw ValidationError("regions live in different complexes");
  }
  PrimeField check_prime(prime);
  LinkingReport report;
  report.prime = prime;
  report.q_max = grid.dimension();
  report.names = names;
  if (!a.vertices().is_subset_of(b.vertices())) {
    throw ValidationError("pair (" + names.big + ", " + names.small + ") is malformed: " +
                          names.small + " is not contained in " + names.big);
  }

  VertexSet target_big = ambient.vertices();
  target_big.subtract(p.vertices());
  VertexSet target_small = ambient.vertices();
  target_small.subtract(q.vertices());
  target_small &= target_big;

  std::size_t bad = b.vertices().first_outside(target_big);
  if (bad != grid.vertex_count()) {
    report.inclusion_failure = names.big + " is not inside X\\" + names.target_small + ": " +
                               describe_vertex(grid, bad);
    return report;
  }
  bad = a.vertices().first_outside(target_small);
  if (bad != grid.vertex_count()) {
    report.inclusion_failure = names.small + " is not inside X\\" + names.target + ": " +
                               describe_vertex(grid, bad);
    return report;
  }
  report.inclusion_ok = true;

  PairOfSpaces source{b, a};
  PairOfSpaces target{FullSubcomplex(grid, std::move(target_big)),
                      FullSubcomplex(grid, std::move(target_small))};
  auto ranks = induced_map_ranks(source, target, prime, options);
  for (int d = 0; d <= report.q_max; ++d) {
    report.ranks.push_back(ranks.ranks.at(d));
    report.source_dims.push_back(ranks.source_dims.at(d));
    report.target_dims.push_back(ranks.target_dims.at(d));
  }
  return report;
}

LinkingReport link_rank(const GridComplex& x, const FullSubcomplex& b, const FullSubcomplex& a,
                        const FullSubcomplex& q, const FullSubcomplex& p, std::uint32_t prime,
                        const EngineOptions& options, RegionNames names) {
  return link_rank_within(whole_complex(x), b, a, q, p, prime, options, std::move(names));
}

namespace {

RuleCheck finish_rule(RuleCheck r) {
  r.holds = r.delta >= r.beta || r.mu >= r.beta - r.delta;
  return r;
}

}  // namespace

RuleCheck check_sum_rule(const GridComplex& x, const FullSubcomplex& a, const FullSubcomplex& b,
                         const FullSubcomplex& q, int degree, std::uint32_t prime,
                         const EngineOptions& options) {
  RuleCheck r;
  if (!a.vertices().is_subset_of(b.vertices())) {
    throw ValidationError("sum rule needs A contained in B");
  }
  if (a.vertices().intersects(q.vertices())) {
    r.applicable = false;
    r.reason = "A meets Q, so A does not sit in X\\Q";
    return r;
  }
  const FullSubcomplex none = empty_subcomplex(x);
  const FullSubcomplex all = whole_complex(x);
  const FullSubcomplex outside_q = complement_subcomplex(x, q);
  // A -> X\Q, A -> B (reduced), (B,A) -> (X, X\Q)
  r.beta = induced_map_rank(PairOfSpaces::single(a), PairOfSpaces::single(outside_q), degree, prime, options);
  r.delta = induced_map_rank(PairOfSpaces::single(a), PairOfSpaces::single(b), degree, prime, options);
  r.mu = induced_map_rank(PairOfSpaces{b, a}, PairOfSpaces{all, outside_q}, degree + 1, prime, options);
  return finish_rule(r);
}

RuleCheck check_composition_rule(const GridComplex& x, const FullSubcomplex& b,
                                 const FullSubcomplex& q, const FullSubcomplex& p, int degree,
                                 std::uint32_t prime, const EngineOptions& options) {
  RuleCheck r;
  if (!p.vertices().is_subset_of(q.vertices())) {
    r.applicable = false;
    r.reason = "P is not contained in Q";
    return r;
  }
  if (b.vertices().intersects(p.vertices())) {
    r.applicable = false;
    r.reason = "B meets P, so B does not sit in X\\P";
    return r;
  }
  const FullSubcomplex outside_p = complement_subcomplex(x, p);
  const FullSubcomplex outside_q = complement_subcomplex(x, q);
  r.beta = induced_map_rank(PairOfSpaces::single(b), PairOfSpaces::single(outside_p), degree, prime, options);
  r.delta = induced_map_rank(PairOfSpaces::single(outside_q), PairOfSpaces::single(outside_p), degree, prime,
                             options);
  r.mu = induced_map_rank(PairOfSpaces::single(b), PairOfSpaces{outside_p, outside_q}, degree, prime, options);
  return finish_rule(r);
}

LocalityResult locality_reports(const GridComplex& x, const FullSubcomplex& window,
                                const FullSubcomplex& b, const FullSubcomplex& a,
                                const FullSubcomplex& q, const FullSubcomplex& p,
                                std::uint32_t prime, const EngineOptions& options) {
  const char* labels[] = {"B", "A", "Q", "P"};
  const FullSubcomplex* regions[] = {&b, &a, &q, &p};
  for (int i = 0; i < 4; ++i) {
    std::size_t bad = regions[i]->vertices().first_outside(window.vertices());
    if (bad != x.vertex_count()) {
      throw PreconditionError(ErrorCode::region_escapes_window,
                              std::string("region ") + labels[i] + " leaves the window at " +
                                  describe_vertex(x, bad));
    }
  }
  LocalityResult out;
  // Simplicial excision needs every simplex of X\P to lie in the window or
  // in X\Q: no vertex of Q may neighbour a vertex outside the window.
  q.vertices().for_each([&](std::size_t v) {
    for (int o = 0; o < x.offset_count() && out.q_interior; ++o) {
      const std::int64_t n = x.neighbor(static_cast<VertexId>(v), o);
      if (n >= 0 && !window.contains_vertex(static_cast<VertexId>(n))) out.q_interior = false;
    }
  });
  out.ambient = link_rank(x, b, a, q, p, prime, options);
  out.windowed = link_rank_within(window, b, a, q, p, prime, options);
  out.equal = out.ambient.inclusion_ok == out.windowed.inclusion_ok &&
              out.ambient.ranks == out.windowed.ranks;
  return out;
}

bool locality_check(const GridComplex& x, const FullSubcomplex& window, const FullSubcomplex& b,
                    const FullSubcomplex& a, const FullSubcomplex& q, const FullSubcomplex& p,
                    std::uint32_t prime, const EngineOptions& options) {
  return locality_reports(x, window, b, a, q, p, prime, options).equal;
}

}  // namespace hlink
