#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hlink/homology.hpp"
#include "hlink/scalar_field.hpp"
#include "hlink/simplicial_complex.hpp"

namespace hlink {

/// Full subcomplex on vertices with (tie-broken) value <= c.
FullSubcomplex sublevel_complex(const ScalarField& f, double c);

/// c is regular iff it differs from every tie-broken vertex value: the
/// perturbed PL field has no other critical levels.
bool is_regular_value(const ScalarField& f, double c);
/// A vertex whose tie-broken value equals c, if any.
std::optional<VertexId> blocking_vertex(const ScalarField& f, double c);

/// Link of p restricted to neighbours below p; vertex labels are grid ids.
SimplicialComplex lower_link(const ScalarField& f, VertexId p);

struct CriticalVertex {
  VertexId vertex = 0;
  std::vector<double> coordinates;
  double raw_value = 0;
  double value = 0;
  /// dim C_q(f, p) = dim H~_{q-1}(lower link) for q = 0..d.
  std::vector<std::size_t> critical_group_dims;
  /// On the box boundary: reported but never used as a witness.
  bool boundary = false;

  bool is_critical() const;
  /// Lower link has the reduced homology of a point or of one sphere.
  bool is_pl_nondegenerate() const;
  std::size_t dim(int q) const;
};

CriticalVertex critical_groups(const ScalarField& f, VertexId p, std::uint32_t prime);

/// Brute-force enumeration of every critical vertex, in vertex order.
std::vector<CriticalVertex> critical_vertices(const ScalarField& f, std::uint32_t prime,
                                              bool include_boundary = false);

enum class MorseScope { interior, all };

/// mu_q for q = 0..d: sum of dim C_q over vertices with a < value < b.
/// Throws ValidationError (not-regular) naming a vertex sitting at a or b.
std::vector<std::size_t> morse_numbers(const ScalarField& f, double a, double b,
                                       std::uint32_t prime, MorseScope scope = MorseScope::interior);

/// dim H_q(f_b, f_a), ordinary relative homology, q = 0..d.
std::vector<std::size_t> sublevel_homology(const ScalarField& f, double a, double b,
                                           std::uint32_t prime);

struct WeakMorseResult {
  std::vector<std::size_t> mu;
  std::vector<std::size_t> homology;
  bool holds = true;
};

/// Compares mu_q over all vertices (box boundary included, since the
/// inequality concerns the whole triangulated box) with dim H_q(f_b, f_a).
WeakMorseResult weak_morse(const ScalarField& f, double a, double b, std::uint32_t prime);
bool weak_morse_check(const ScalarField& f, double a, double b, std::uint32_t prime);

enum class Verdict { certified, no_linking, hypotheses_not_met, inconsistency, error };
const char* to_string(Verdict v);

struct CriticalBandCertificate {
  int degree = 0;
  std::size_t rank = 0;
  /// Certified band of raw critical values.
  double lo = 0, hi = 0;
  /// Regular values a < b used for the sublevel pair.
  double a = 0, b = 0;
  std::vector<CriticalVertex> witnesses;
  /// Band vertices with C_q != 0 on the box boundary (not witnesses).
  std::vector<CriticalVertex> boundary_candidates;
  /// Witness count, set only when every witness is PL-nondegenerate.
  std::optional<std::size_t> multiplicity_claim;
};

struct Regions {
  FullSubcomplex b, a, q, p;
};

struct CertifyOutcome {
  Verdict verdict = Verdict::error;
  std::string message;
  LinkingReport linking;
  std::optional<CriticalBandCertificate> certificate;
};

/// Sublevel form of the linking principle for the band (a, b). Throws
/// PreconditionError (inclusion-violated) naming the failing inclusion of
/// (B,A) in (f_b, f_a) in (X\P, X\Q), ValidationError for a bad band.
CertifyOutcome certify_linking_principle(const Regions& r, const ScalarField& f, double a,
                                         double b, int q, std::uint32_t prime,
                                         const EngineOptions& options = {});

struct BandExtremes {
  std::optional<VertexId> sup_b, sup_a, inf_q, inf_p;  // empty set -> -inf / +inf
};
BandExtremes band_extremes(const Regions& r, const ScalarField& f);

/// Band form: hypotheses sup f(B) < inf f(P) and sup f(A) < inf f(Q);
/// band [inf f(Q), sup f(B)] widened by the field's minimal value gap.
CertifyOutcome certify_band(const Regions& r, const ScalarField& f, int q, std::uint32_t prime,
                            const EngineOptions& options = {});

struct MultiplicityOutcome {
  Verdict verdict = Verdict::error;
  std::string message;
  std::string scenario;
  int k = 1;
  CertifyOutcome lower;  // p_0
  CertifyOutcome upper;  // p_1
  std::vector<int> expected_degrees;
};

/// Geometry for the two multiplicity results on the grid, with k = dim E_1,
/// m = dim E_2 and unit radii. Regions are named as in the statements.
struct MultiplicityGeometry {
  Regions first;   // certificate for p_0
  Regions second;  // certificate for p_1
  int first_degree = 0;
  int second_degree = 0;
};
MultiplicityGeometry multiplicity_geometry(const std::string& scenario, const GridComplex& x, int k);

MultiplicityOutcome certify_multiplicity(const std::string& scenario, const ScalarField& f, int k,
                                         std::uint32_t prime, const EngineOptions& options = {});

}  // namespace hlink
