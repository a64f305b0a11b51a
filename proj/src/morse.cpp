#include "hlink/morse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hlink/catalogue.hpp"
#include "hlink/error.hpp"
#include "hlink/regions.hpp"

namespace hlink {

FullSubcomplex sublevel_complex(const ScalarField& f, double c) {
  const GridComplex& x = f.grid();
  VertexSet set(x.vertex_count());
  for (std::size_t v = 0; v < x.vertex_count(); ++v) {
    if (f.value(static_cast<VertexId>(v)) <= c) set.set(v);
  }
  return FullSubcomplex(x, std::move(set));
}

std::optional<VertexId> blocking_vertex(const ScalarField& f, double c) {
  const auto& order = f.order();
  auto it = std::lower_bound(order.begin(), order.end(), c,
                             [&](VertexId v, double value) { return f.value(v) < value; });
  if (it != order.end() && f.value(*it) == c) return *it;
  return std::nullopt;
}

bool is_regular_value(const ScalarField& f, double c) {
  return std::isfinite(c) && !blocking_vertex(f, c);
}

SimplicialComplex lower_link(const ScalarField& f, VertexId p) {
  const GridComplex& x = f.grid();
  if (p >= x.vertex_count()) {
    std::ostringstream os;
    os << "vertex " << p << " is not a vertex of the grid";
    throw ValidationError(os.str());
  }
  const int d = x.dimension();
  std::vector<std::vector<Simplex>> faces(static_cast<std::size_t>(d));
  for (int q = 1; q <= d; ++q) {
    x.for_each_simplex_containing(p, q, [&](std::span<const VertexId> s) {
      Simplex face;
      for (VertexId u : s) {
        if (u == p) continue;
        if (!f.below(u, p)) return;
        face.push_back(u);
      }
      faces[q - 1].push_back(std::move(face));
    });
  }
  // Relabel the lower neighbours densely, keeping their order.
  std::vector<VertexId> labels;
  for (const Simplex& s : faces[0]) labels.push_back(s[0]);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  auto local = [&](VertexId u) {
    return static_cast<VertexId>(std::lower_bound(labels.begin(), labels.end(), u) - labels.begin());
  };
  std::vector<std::vector<Simplex>> levels;
  for (auto& level : faces) {
    if (level.empty()) break;
    for (Simplex& s : level) {
      for (VertexId& u : s) u = local(u);
    }
    levels.push_back(std::move(level));
  }
  return SimplicialComplex::from_levels(labels.size(), std::move(levels),
                                        std::vector<std::uint32_t>(labels.begin(), labels.end()));
}

bool CriticalVertex::is_critical() const {
  return std::any_of(critical_group_dims.begin(), critical_group_dims.end(),
                     [](std::size_t n) { return n > 0; });
}

bool CriticalVertex::is_pl_nondegenerate() const {
  std::size_t total = 0;
  for (std::size_t n : critical_group_dims) total += n;
  return total <= 1;
}

std::size_t CriticalVertex::dim(int q) const {
  if (q < 0 || static_cast<std::size_t>(q) >= critical_group_dims.size()) return 0;
  return critical_group_dims[q];
}

CriticalVertex critical_groups(const ScalarField& f, VertexId p, std::uint32_t prime) {
  SimplicialComplex link = lower_link(f, p);
  ReducedBetti betti = reduced_betti(link, prime);
  const GridComplex& x = f.grid();
  CriticalVertex c;
  c.vertex = p;
  c.coordinates = x.coordinates(p);
  c.raw_value = f.raw(p);
  c.value = f.value(p);
  c.boundary = x.on_box_boundary(p);
  for (int q = 0; q <= x.dimension(); ++q) c.critical_group_dims.push_back(betti.at(q - 1));
  return c;
}

std::vector<CriticalVertex> critical_vertices(const ScalarField& f, std::uint32_t prime,
                                              bool include_boundary) {
  std::vector<CriticalVertex> out;
  const GridComplex& x = f.grid();
  for (std::size_t v = 0; v < x.vertex_count(); ++v) {
    const auto p = static_cast<VertexId>(v);
    if (!include_boundary && x.on_box_boundary(p)) continue;
    CriticalVertex c = critical_groups(f, p, prime);
    if (c.is_critical()) out.push_back(std::move(c));
  }
  return out;
}

namespace {

void check_band(const ScalarField& f, double a, double b) {
  if (!(a < b)) {
    std::ostringstream os;
    os << "band endpoints must satisfy a < b (got a=" << a << ", b=" << b << ")";
    throw ValidationError(os.str());
  }
  for (double c : {a, b}) {
    if (!std::isfinite(c)) throw ValidationError("band endpoints must be finite", ErrorCode::not_regular);
    if (auto v = blocking_vertex(f, c)) {
      std::ostringstream os;
      os << c << " is not a regular value: vertex " << *v << " (";
      auto xs = f.grid().coordinates(*v);
      for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i];
      os << ") takes that value";
      throw ValidationError(os.str(), ErrorCode::not_regular);
    }
  }
}

/// Vertices with a < value < b, in increasing value.
std::vector<VertexId> band_vertices(const ScalarField& f, double a, double b) {
  const auto& order = f.order();
  auto lo = std::upper_bound(order.begin(), order.end(), a,
                             [&](double value, VertexId v) { return value < f.value(v); });
  std::vector<VertexId> out;
  for (auto it = lo; it != order.end() && f.value(*it) < b; ++it) out.push_back(*it);
  return out;
}

std::string coords_text(const GridComplex& x, VertexId v) {
  std::ostringstream os;
  os << "(";
  auto c = x.coordinates(v);
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i];
  os << ")";
  return os.str();
}

}  // namespace

std::vector<std::size_t> morse_numbers(const ScalarField& f, double a, double b,
                                       std::uint32_t prime, MorseScope scope) {
  check_band(f, a, b);
  std::vector<std::size_t> mu(static_cast<std::size_t>(f.grid().dimension()) + 1, 0);
  for (VertexId v : band_vertices(f, a, b)) {
    if (scope == MorseScope::interior && f.grid().on_box_boundary(v)) continue;
    CriticalVertex c = critical_groups(f, v, prime);
    for (std::size_t q = 0; q < mu.size(); ++q) mu[q] += c.critical_group_dims[q];
  }
  return mu;
}

std::vector<std::size_t> sublevel_homology(const ScalarField& f, double a, double b,
                                           std::uint32_t prime) {
  check_band(f, a, b);
  FullSubcomplex fb = sublevel_complex(f, b);
  FullSubcomplex fa = sublevel_complex(f, a);
  DegreeTable reduced = reduced_homology_dims(PairOfSpaces{fb, fa}, prime);
  std::vector<std::size_t> out;
  for (int q = 0; q <= f.grid().dimension(); ++q) out.push_back(reduced.at(q));
  // Undo the augmentation: H_0(f_b) = H~_0(f_b) + 1 when f_a is empty.
  if (fa.empty() && !fb.empty()) out[0] += 1;
  return out;
}

WeakMorseResult weak_morse(const ScalarField& f, double a, double b, std::uint32_t prime) {
  WeakMorseResult r;
  r.mu = morse_numbers(f, a, b, prime, MorseScope::all);
  r.homology = sublevel_homology(f, a, b, prime);
  for (std::size_t q = 0; q < r.mu.size(); ++q) r.holds = r.holds && r.mu[q] >= r.homology[q];
  return r;
}

bool weak_morse_check(const ScalarField& f, double a, double b, std::uint32_t prime) {
  return weak_morse(f, a, b, prime).holds;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::no_linking: return "no-linking";
    case Verdict::hypotheses_not_met: return "hypotheses-not-met";
    case Verdict::inconsistency: return "inconsistency";
    case Verdict::error: return "error";
  }
  return "error";
}

CertifyOutcome certify_linking_principle(const Regions& r, const ScalarField& f, double a,
                                         double b, int q, std::uint32_t prime,
                                         const EngineOptions& options) {
  const GridComplex& x = f.grid();
  check_band(f, a, b);
  if (q < 0 || q > x.dimension()) throw ValidationError("certification degree out of range");

  FullSubcomplex fb = sublevel_complex(f, b);
  FullSubcomplex fa = sublevel_complex(f, a);
  struct Check {
    const VertexSet* inner;
    const VertexSet* outer;
    bool disjoint;
    const char* text;
  };
  const Check checks[] = {
      {&r.b.vertices(), &fb.vertices(), false, "B is not inside f_b"},
      {&r.a.vertices(), &fa.vertices(), false, "A is not inside f_a"},
      {&fb.vertices(), &r.p.vertices(), true, "f_b meets P"},
      {&fa.vertices(), &r.q.vertices(), true, "f_a meets Q"},
  };
  for (const Check& c : checks) {
    std::size_t bad = c.disjoint ? c.inner->first_common(*c.outer) : c.inner->first_outside(*c.outer);
    if (bad != x.vertex_count()) {
      const auto v = static_cast<VertexId>(bad);
      std::ostringstream os;
      os << "inclusion chain (B,A) < (f_b,f_a) < (X\\P,X\\Q) fails: " << c.text << " at vertex "
         << coords_text(x, v) << " with value " << f.raw(v);
      throw PreconditionError(ErrorCode::inclusion_violated, os.str());
    }
  }

  CertifyOutcome out;
  out.linking = link_rank(x, r.b, r.a, r.q, r.p, prime, options);
  const std::size_t beta = out.linking.rank(q).value_or(0);
  if (beta == 0) {
    out.verdict = Verdict::no_linking;
    std::ostringstream os;
    os << "(B,A) does not link (Q,P) in degree " << q;
    out.message = os.str();
    return out;
  }

  CriticalBandCertificate cert;
  cert.degree = q;
  cert.rank = beta;
  cert.a = a;
  cert.b = b;
  cert.lo = a;
  cert.hi = b;
  bool all_nondegenerate = true;
  for (VertexId v : band_vertices(f, a, b)) {
    CriticalVertex c = critical_groups(f, v, prime);
    if (c.dim(q) == 0) continue;
    all_nondegenerate = all_nondegenerate && c.is_pl_nondegenerate();
    (c.boundary ? cert.boundary_candidates : cert.witnesses).push_back(std::move(c));
  }
  if (all_nondegenerate && cert.boundary_candidates.empty()) cert.multiplicity_claim = cert.witnesses.size();

  if (cert.witnesses.empty()) {
    out.verdict = Verdict::inconsistency;
    out.message = cert.boundary_candidates.empty()
                      ? "linking holds but no vertex in the band has a nonzero critical group"
                      : "the only vertices with a nonzero critical group in the band lie on the box "
                        "boundary; enlarge the box";
  } else if (cert.multiplicity_claim && *cert.multiplicity_claim < beta) {
    out.verdict = Verdict::inconsistency;
    out.message = "fewer nondegenerate witnesses than the linking rank";
  } else {
    out.verdict = Verdict::certified;
  }
  out.certificate = std::move(cert);
  return out;
}

BandExtremes band_extremes(const Regions& r, const ScalarField& f) {
  BandExtremes e;
  auto extreme = [&](const FullSubcomplex& s, bool want_max) {
    std::optional<VertexId> best;
    s.vertices().for_each([&](std::size_t vv) {
      const auto v = static_cast<VertexId>(vv);
      if (!best || (want_max ? f.below(*best, v) : f.below(v, *best))) best = v;
    });
    return best;
  };
  e.sup_b = extreme(r.b, true);
  e.sup_a = extreme(r.a, true);
  e.inf_q = extreme(r.q, false);
  e.inf_p = extreme(r.p, false);
  return e;
}

CertifyOutcome certify_band(const Regions& r, const ScalarField& f, int q, std::uint32_t prime,
                            const EngineOptions& options) {
  const GridComplex& x = f.grid();
  constexpr double inf = std::numeric_limits<double>::infinity();
  BandExtremes e = band_extremes(r, f);
  auto val = [&](std::optional<VertexId> v, double empty) { return v ? f.value(*v) : empty; };
  auto raw = [&](std::optional<VertexId> v, double empty) { return v ? f.raw(*v) : empty; };
  const double sup_b = val(e.sup_b, -inf), sup_a = val(e.sup_a, -inf);
  const double inf_q = val(e.inf_q, inf), inf_p = val(e.inf_p, inf);

  CertifyOutcome out;
  std::ostringstream why;
  if (!(sup_b < inf_p)) {
    why << "sup f(B) = " << raw(e.sup_b, -inf) << " is not below inf f(P) = " << raw(e.inf_p, inf) << "; ";
  }
  if (!(sup_a < inf_q)) {
    why << "sup f(A) = " << raw(e.sup_a, -inf) << " is not below inf f(Q) = " << raw(e.inf_q, inf) << "; ";
  }
  if (!why.str().empty()) {
    out.verdict = Verdict::hypotheses_not_met;
    out.message = why.str().substr(0, why.str().size() - 2);
    return out;
  }

  out.linking = link_rank(x, r.b, r.a, r.q, r.p, prime, options);
  const std::size_t beta = out.linking.rank(q).value_or(0);
  if (beta == 0) {
    out.verdict = Verdict::no_linking;
    std::ostringstream os;
    os << "(B,A) does not link (Q,P) in degree " << q;
    out.message = os.str();
    return out;
  }
  if (inf_q > sup_b) {
    out.verdict = Verdict::inconsistency;
    std::ostringstream os;
    os << "linking holds but inf f(Q) = " << raw(e.inf_q, inf) << " exceeds sup f(B) = "
       << raw(e.sup_b, -inf) << "; the rasterized regions do not model the intended sets";
    out.message = os.str();
    return out;
  }

  // Regular values just outside [inf f(Q), sup f(B)].
  const auto& order = f.order();
  auto pos = [&](VertexId v) {
    return static_cast<std::size_t>(
        std::lower_bound(order.begin(), order.end(), f.value(v),
                         [&](VertexId u, double value) { return f.value(u) < value; }) -
        order.begin());
  };
  const std::size_t iq = pos(*e.inf_q), ib = pos(*e.sup_b);
  const double a = iq > 0 ? (f.value(order[iq - 1]) + inf_q) / 2 : inf_q - 1;
  const double b = ib + 1 < order.size() ? (sup_b + f.value(order[ib + 1])) / 2 : sup_b + 1;

  out = certify_linking_principle(r, f, a, b, q, prime, options);
  if (out.certificate) {
    const double gap = f.min_gap();
    out.certificate->lo = f.raw(*e.inf_q) - gap;
    out.certificate->hi = f.raw(*e.sup_b) + gap;
  }
  return out;
}

MultiplicityGeometry multiplicity_geometry(const std::string& scenario, const GridComplex& x, int k) {
  const int m = x.dimension() - k;
  std::string first, second;
  MultiplicityGeometry g{
      {empty_subcomplex(x), empty_subcomplex(x), empty_subcomplex(x), empty_subcomplex(x)},
      {empty_subcomplex(x), empty_subcomplex(x), empty_subcomplex(x), empty_subcomplex(x)}};
  if (scenario == "saddle_pair") {
    first = "cor_1_13";  // A links (B_2, S_2) in degree k
    second = "cor_1_10";  // (B, A) links S_2 in degree k + 1
  } else if (scenario == "perera_pair") {
    first = "cor_1_12";  // S_1 links (E_2 + [0,inf)e, E_2) in degree k - 1
    second = "cor_1_9";  // (B_1, S_1) links E_2 in degree k
  } else {
    throw ValidationError("unknown multiplicity scenario \"" + scenario +
                          "\"; known: saddle_pair perera_pair");
  }
  const GridDomain& dom = x.domain();
  auto build = [&](const std::string& name, Regions& regions, int& degree) {
    CatalogueScenario s = catalogue(name, k, m, dom.resolution, dom.extent);
    regions = Regions{rasterize(s.b, x, "B"), rasterize(s.a, x, "A"), rasterize(s.q, x, "Q"),
                      rasterize(s.p, x, "P")};
    degree = s.expected_degree;
  };
  build(first, g.first, g.first_degree);
  build(second, g.second, g.second_degree);
  return g;
}

MultiplicityOutcome certify_multiplicity(const std::string& scenario, const ScalarField& f, int k,
                                         std::uint32_t prime, const EngineOptions& options) {
  MultiplicityGeometry g = multiplicity_geometry(scenario, f.grid(), k);
  MultiplicityOutcome out;
  out.scenario = scenario;
  out.k = k;
  out.expected_degrees = {g.first_degree, g.second_degree};
  out.lower = certify_band(g.first, f, g.first_degree, prime, options);
  out.upper = certify_band(g.second, f, g.second_degree, prime, options);

  for (const CertifyOutcome* c : {&out.lower, &out.upper}) {
    if (c->verdict != Verdict::certified) {
      out.verdict = c->verdict;
      out.message = std::string(c == &out.lower ? "first" : "second") + " certificate: " + c->message;
      return out;
    }
  }
  double top_lower = -std::numeric_limits<double>::infinity();
  double bottom_upper = std::numeric_limits<double>::infinity();
  for (const auto& w : out.lower.certificate->witnesses) top_lower = std::max(top_lower, w.value);
  for (const auto& w : out.upper.certificate->witnesses) bottom_upper = std::min(bottom_upper, w.value);
  if (!(top_lower < bottom_upper)) {
    out.verdict = Verdict::inconsistency;
    out.message = "witness values of the two certificates are not separated";
    return out;
  }
  out.verdict = Verdict::certified;
  return out;
}

}  // namespace hlink
