#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hlink/grid.hpp"
#include "hlink/simplicial_complex.hpp"

namespace hlink {

/// A pair (big, small) of full subcomplexes with small inside big. An empty
/// small space stands for the single space `big`, whose homology is then
/// taken reduced.
struct PairOfSpaces {
  FullSubcomplex big;
  FullSubcomplex small;

  /// Throws ValidationError if the parents differ or small is not in big.
  static PairOfSpaces make(FullSubcomplex big, FullSubcomplex small);
  static PairOfSpaces single(FullSubcomplex space);
};

struct EngineOptions {
  /// Shrink both pairs by strong collapses before building chains.
  bool reduce = true;
  std::size_t simplex_budget = kDefaultSimplexBudget;
};

/// Per-degree data for degrees -1 .. top; index with `at(q)`.
struct DegreeTable {
  std::vector<std::size_t> values;
  std::size_t at(int q) const {
    auto i = static_cast<std::size_t>(q + 1);
    return (q >= -1 && i < values.size()) ? values[i] : 0;
  }
};

struct InducedMapRanks {
  DegreeTable source_dims;
  DegreeTable target_dims;
  DegreeTable ranks;
};

/// Dimensions of the reduced relative homology of `pair`, degrees -1..dim.
DegreeTable reduced_homology_dims(const PairOfSpaces& pair, std::uint32_t prime,
                                  const EngineOptions& options = {});

/// dim H~_q(pair) over GF(p). Throws ValidationError for q < -1.
std::size_t reduced_homology_dim(const PairOfSpaces& pair, int q, std::uint32_t prime,
                                 const EngineOptions& options = {});

/// Ranks, in every degree, of the map induced by the inclusion
/// source -> target. Throws PreconditionError (inclusion-violated) naming
/// the first vertex that breaks the inclusion.
InducedMapRanks induced_map_ranks(const PairOfSpaces& source, const PairOfSpaces& target,
                                  std::uint32_t prime, const EngineOptions& options = {});

std::size_t induced_map_rank(const PairOfSpaces& source, const PairOfSpaces& target, int q,
                             std::uint32_t prime, const EngineOptions& options = {});

/// A relative cycle, as (sorted grid vertex tuple, coefficient) terms.
struct Chain {
  std::vector<std::pair<Simplex, std::uint32_t>> terms;
};

struct HomologyBasis {
  int degree = 0;
  std::uint32_t prime = 2;
  std::vector<Chain> representatives;
  std::size_t dimension() const noexcept { return representatives.size(); }
};

/// Cycle representatives of a basis of H~_q(pair).
HomologyBasis homology_basis(const PairOfSpaces& pair, int q, std::uint32_t prime,
                             const EngineOptions& options = {});

struct RegionNames {
  std::string big = "B";
  std::string small = "A";
  std::string target = "Q";
  std::string target_small = "P";
};

/// Outcome of testing whether (B,A) links (Q,P) in X.
struct LinkingReport {
  std::uint32_t prime = 2;
  int q_max = 0;
  bool inclusion_ok = false;
  /// Why the inclusion (B,A) in (X\P, X\Q) fails; empty when it holds.
  std::string inclusion_failure;
  /// Degrees 0..q_max; empty when the inclusion fails.
  std::vector<std::size_t> ranks;
  std::vector<std::size_t> source_dims;
  std::vector<std::size_t> target_dims;
  RegionNames names;

  std::optional<std::size_t> rank(int q) const;
  bool links() const;
};

/// Ranks of H~_q(B,A) -> H~_q(X\P, X\Q) for q = 0..dim X. The complements are
/// full subcomplexes on the complementary vertices.
LinkingReport link_rank(const GridComplex& x, const FullSubcomplex& b, const FullSubcomplex& a,
                        const FullSubcomplex& q, const FullSubcomplex& p, std::uint32_t prime,
                        const EngineOptions& options = {}, RegionNames names = {});

/// Same computation with the ambient space replaced by the full subcomplex
/// `ambient` (complements are taken inside it).
LinkingReport link_rank_within(const FullSubcomplex& ambient, const FullSubcomplex& b,
                               const FullSubcomplex& a, const FullSubcomplex& q,
                               const FullSubcomplex& p, std::uint32_t prime,
                               const EngineOptions& options = {}, RegionNames names = {});

struct RuleCheck {
  bool applicable = true;  // the ranks involved are defined
  std::string reason;      // why not, when not applicable
  std::size_t beta = 0;
  std::size_t delta = 0;
  std::size_t mu = 0;
  bool holds = true;
};

/// beta = rank A -> X\Q, delta = rank A -> B in degree q, mu = rank of
/// (B,A) -> (X, X\Q) in degree q+1; holds iff delta >= beta or
/// mu >= beta - delta.
RuleCheck check_sum_rule(const GridComplex& x, const FullSubcomplex& a, const FullSubcomplex& b,
                         const FullSubcomplex& q, int degree, std::uint32_t prime,
                         const EngineOptions& options = {});

/// beta = rank B -> X\P, delta = rank X\Q -> X\P, mu = rank
/// B -> (X\P, X\Q), all in degree q.
RuleCheck check_composition_rule(const GridComplex& x, const FullSubcomplex& b,
                                 const FullSubcomplex& q, const FullSubcomplex& p, int degree,
                                 std::uint32_t prime, const EngineOptions& options = {});

struct LocalityResult {
  LinkingReport ambient;
  LinkingReport windowed;
  bool equal = false;
  /// Q keeps a one-cell margin from the window frontier, the discrete form
  /// of "Q closed inside an open window"; equality is then guaranteed.
  bool q_interior = true;
};

/// Compares link_rank in X with link_rank inside the window. Throws
/// PreconditionError (region-escapes-window) if a region leaves the window.
LocalityResult locality_reports(const GridComplex& x, const FullSubcomplex& window,
                                const FullSubcomplex& b, const FullSubcomplex& a,
                                const FullSubcomplex& q, const FullSubcomplex& p,
                                std::uint32_t prime, const EngineOptions& options = {});

bool locality_check(const GridComplex& x, const FullSubcomplex& window, const FullSubcomplex& b,
                    const FullSubcomplex& a, const FullSubcomplex& q, const FullSubcomplex& p,
                    std::uint32_t prime, const EngineOptions& options = {});

}  // namespace hlink
