// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hlink/catalogue.hpp"
#include "hlink/homology.hpp"
#include "hlink/morse.hpp"
#include "hlink/regions.hpp"
#include "hlink/runner.hpp"
#include "oracle.hpp"

using namespace hlink;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Log {
 public:
  void fail(const std::string& why) {
    if (failures_++ < 5) notes_ << (notes_.tellp() > 0 ? "; " : "") << why;
  }
  bool ok() const { return failures_ == 0; }
  std::string notes() const {
    std::string s = notes_.str();
    if (failures_ > 5) s += "; ... " + std::to_string(failures_ - 5) + " more";
    return s;
  }

 private:
  int failures_ = 0;
  std::ostringstream notes_;
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return "[" + s + "]";
}

struct Scenario {
  CatalogueScenario spec;
  GridComplex x;
  FullSubcomplex b, a, q, p;
  explicit Scenario(CatalogueScenario s)
      : spec(std::move(s)),
        x(spec.domain),
        b(rasterize(spec.b, x, "B")),
        a(rasterize(spec.a, x, "A")),
        q(rasterize(spec.q, x, "Q")),
        p(rasterize(spec.p, x, "P")) {}
};

std::string label(const CatalogueScenario& s) {
  return s.name + "(k=" + std::to_string(s.k) + ",m=" + std::to_string(s.m) + ")";
}

oracle::VertexSet to_oracle(const FullSubcomplex& s) {
  oracle::VertexSet out(s.parent().vertex_count(), false);
  s.vertices().for_each([&](std::size_t v) { out[v] = true; });
  return out;
}

// 1. Catalogue reproduction over GF(2) and GF(3), k, m in {1, 2}.
Outcome catalogue_reproduction() {
  Log log;
  int runs = 0;
  double slowest = 0;
  std::string slowest_name;
  for (const auto& name : catalogue_names()) {
    for (int k = 1; k <= 2; ++k) {
      for (int m = 1; m <= 2; ++m) {
        for (std::uint32_t prime : {2u, 3u}) {
          const auto start = std::chrono::steady_clock::now();
          Scenario s(catalogue(name, k, m, 0.5, 4.0));
          LinkingReport r = link_rank(s.x, s.b, s.a, s.q, s.p, prime);
          const double t = seconds_since(start);
          ++runs;
          if (t > slowest) {
            slowest = t;
            slowest_name = label(s.spec);
          }
          std::string where = label(s.spec) + " GF(" + std::to_string(prime) + ")";
          if (t >= 60) log.fail(where + " took " + std::to_string(t) + " s");
          if (!r.inclusion_ok) {
            log.fail(where + ": " + r.inclusion_failure);
            continue;
          }
          for (int d = 0; d <= r.q_max; ++d) {
            const std::size_t want = d == s.spec.expected_degree ? 1 : 0;
            if (r.rank(d) != want) {
              log.fail(where + " ranks " + join(r.ranks));
              break;
            }
          }
        }
      }
    }
  }
  std::ostringstream os;
  os << runs << " runs (11 scenarios x 4 (k,m) x 2 fields); slowest " << slowest_name << " "
     << slowest << " s";
  if (!log.ok()) os << "; " << log.notes();
  return {log.ok(), os.str()};
}

// 2. Betti numbers as linking ranks: X links X in X, against a dense oracle.
Outcome betti_consistency() {
  Log log;
  std::mt19937_64 rng(20260101);
  struct Case { int d; double n, h; };
  const Case cases[] = {{2, 2, 0.5}, {3, 1, 0.5}};
  std::size_t nontrivial = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Case c = cases[trial % 2];
    GridComplex x({c.d, c.n, c.h});
    oracle::Triangulation t = oracle::triangulate(c.d, c.n, c.h);
    std::bernoulli_distribution keep(0.45 + 0.02 * (trial % 10));
    VertexSet vs(x.vertex_count());
    for (std::size_t v = 0; v < vs.size(); ++v)
      if (keep(rng)) vs.set(v);
    FullSubcomplex s(x, vs);
    const std::uint32_t prime = trial % 3 == 0 ? 3 : 2;
    auto expected = oracle::reduced_betti(t, to_oracle(s), prime);
    auto none = empty_subcomplex(x);
    LinkingReport r = link_rank_within(s, s, none, s, none, prime);
    for (int q = 0; q <= c.d; ++q) {
      if (r.rank(q) != expected[q + 1]) {
        log.fail("trial " + std::to_string(trial) + " ranks " + join(r.ranks) + " oracle " + join(expected));
        break;
      }
      nontrivial += expected[q + 1];
    }
  }
  return {log.ok(), "20 random full subcomplexes (d = 2, 3), total Betti mass " + std::to_string(nontrivial) +
                        (log.ok() ? "" : "; " + log.notes())};
}

// 3. Locality: window of extent 4 inside an ambient box of extent 8.
Outcome locality() {
  Log log;
  int runs = 0, linked = 0;
  double slowest = 0;
  std::string unlinked;
  for (const auto& name : catalogue_names()) {
    // Unbounded sets are cut one step inside the window so Q keeps the
    // one-cell margin excision needs.
    const auto start = std::chrono::steady_clock::now();
    CatalogueScenario spec = catalogue(name, 1, 1, 0.5, 8.0, 3.5);
    Scenario s(spec);
    auto window = rasterize(RegionSpec::ball(std::vector<double>(spec.domain.dimension, 0.0), 4.0), s.x);
    LocalityResult r = locality_reports(s.x, window, s.b, s.a, s.q, s.p, 2);
    ++runs;
    if (!r.q_interior) log.fail(label(spec) + ": Q touches the window frontier");
    if (!r.equal) {
      log.fail(label(spec) + " ambient " + join(r.ambient.ranks) + " windowed " + join(r.windowed.ranks));
    }
    if (r.windowed.links()) {
      ++linked;
    } else {
      unlinked += " " + name;
    }
    slowest = std::max(slowest, seconds_since(start));
  }
  std::ostringstream os;
  os << runs << " scenarios (k = m = 1) equal in window and ambient, " << linked
     << " with nonzero rank; slowest " << slowest << " s";
  if (!unlinked.empty()) os << "; rank 0 in both (clipped inside the window):" << unlinked;
  if (!log.ok()) os << "; " << log.notes();
  return {log.ok(), os.str()};
}

// 4. Sum and composition rules on the catalogue and on random regions.
Outcome rank_rules() {
  Log log;
  int applied = 0, strict = 0;
  auto record = [&](const RuleCheck& r, const std::string& where) {
    if (!r.applicable) return;
    ++applied;
    if (r.beta > r.delta) ++strict;
    if (!r.holds) {
      log.fail(where + " beta=" + std::to_string(r.beta) + " delta=" + std::to_string(r.delta) +
               " mu=" + std::to_string(r.mu));
    }
  };
  for (const auto& name : catalogue_names()) {
    for (int k = 1; k <= 2; ++k) {
      for (int m = 1; m <= 2; ++m) {
        Scenario s(catalogue(name, k, m));
        for (int q = 0; q < s.x.dimension(); ++q) {
          record(check_sum_rule(s.x, s.a, s.b, s.q, q, 2), "sum " + label(s.spec));
          record(check_composition_rule(s.x, s.b, s.q, s.p, q, 2), "composition " + label(s.spec));
        }
      }
    }
  }
  const int catalogue_applied = applied;
  std::mt19937_64 rng(404);
  GridComplex x({2, 2, 0.5});
  auto random_set = [&](double density) {
    std::bernoulli_distribution keep(density);
    VertexSet vs(x.vertex_count());
    for (std::size_t v = 0; v < vs.size(); ++v)
      if (keep(rng)) vs.set(v);
    return vs;
  };
  for (int trial = 0; trial < 50; ++trial) {
    VertexSet b = random_set(0.5);
    VertexSet a = random_set(0.6);
    a &= b;
    VertexSet q = random_set(0.4);
    q.subtract(a);
    for (int deg = 0; deg <= 1; ++deg) {
      record(check_sum_rule(x, FullSubcomplex(x, a), FullSubcomplex(x, b), FullSubcomplex(x, q), deg, 2),
             "random sum " + std::to_string(trial));
    }
  }
  for (int trial = 0; trial < 50; ++trial) {
    VertexSet q = random_set(0.5);
    VertexSet p = random_set(0.5);
    p &= q;
    VertexSet b = random_set(0.5);
    b.subtract(p);
    for (int deg = 0; deg <= 1; ++deg) {
      record(check_composition_rule(x, FullSubcomplex(x, b), FullSubcomplex(x, q), FullSubcomplex(x, p), deg, 2),
             "random composition " + std::to_string(trial));
    }
  }
  std::ostringstream os;
  os << applied << " applicable checks (" << catalogue_applied << " on the catalogue, 50 random cases per rule), "
     << strict << " with beta > delta";
  if (!log.ok()) os << "; " << log.notes();
  return {log.ok(), os.str()};
}

// 5. Weak Morse inequalities on random quartic fields.
Outcome weak_morse_property() {
  Log log;
  std::mt19937_64 rng(55);
  GridComplex x({2, 2, 0.5});
  std::size_t bands = 0, nonzero = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Polynomial f;
    f.dimension = 2;
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int i = 0; i <= 4; ++i) {
      for (int j = 0; i + j <= 4; ++j) {
        const int c = coef(rng);
        if (c != 0) f.terms.push_back({static_cast<double>(c), {i, j}});
      }
    }
    ScalarField field(x, f);
    const auto& order = field.order();
    // Regular values: midpoints between consecutive tie-broken values.
    std::uniform_int_distribution<std::size_t> cut(0, order.size());
    auto level = [&](std::size_t i) {
      if (i == 0) return field.value(order.front()) - 1;
      if (i == order.size()) return field.value(order.back()) + 1;
      return (field.value(order[i - 1]) + field.value(order[i])) / 2;
    };
    for (int b = 0; b < 10; ++b) {
      std::size_t i = cut(rng), j = cut(rng);
      if (i == j) j = (j + 1) % (order.size() + 1);
      if (i > j) std::swap(i, j);
      WeakMorseResult r = weak_morse(field, level(i), level(j), 2);
      ++bands;
      for (std::size_t h : r.homology) nonzero += h != 0;
      if (!r.holds) log.fail("field " + std::to_string(trial) + " mu " + join(r.mu) + " H " + join(r.homology));
    }
  }
  return {log.ok(), std::to_string(bands) + " bands on 100 fields, " + std::to_string(nonzero) +
                        " nonzero relative Betti numbers, zero violations" + (log.ok() ? "" : "; " + log.notes())};
}

Polynomial poly(std::vector<std::pair<double, std::vector<int>>> terms) {
  Polynomial p;
  p.dimension = 2;
  for (auto& [c, e] : terms) p.terms.push_back({c, e});
  return p;
}

/// Witness list equals the brute-force set of interior band vertices with
/// C_q != 0, each re-checked against the oracle's lower-link homology.
bool brute_force_agrees(const ScalarField& f, const CriticalBandCertificate& c, const oracle::Triangulation& t,
                        Log& log, const std::string& where) {
  std::vector<VertexId> brute;
  for (const auto& cv : critical_vertices(f, 2)) {
    if (cv.value > c.a && cv.value < c.b && cv.dim(c.degree) > 0) brute.push_back(cv.vertex);
  }
  std::vector<VertexId> got;
  for (const auto& w : c.witnesses) {
    got.push_back(w.vertex);
    if (oracle::critical_groups(t, f.raw_values(), w.vertex, 2) != w.critical_group_dims) {
      log.fail(where + ": witness critical groups disagree with the oracle");
      return false;
    }
  }
  if (got != brute) {
    log.fail(where + ": witnesses differ from brute-force enumeration");
    return false;
  }
  return true;
}

// 6. Mountain pass.
Outcome mountain_pass() {
  Log log;
  GridDomain dom{2, 3, 0.5};
  GridComplex x(dom);
  oracle::Triangulation t = oracle::triangulate(2, 3, 0.5);
  ScalarField f(x, poly({{1, {4, 0}}, {-2, {2, 0}}, {1, {0, 0}}, {1, {0, 2}}}));
  // ([0,e], {0,e}) links S, moved so that 0 -> (-1,0) and e -> (1,0).
  Regions r{rasterize(RegionSpec::make_segment({-1, 0}, {1, 0}, 0.25), x),
            rasterize(RegionSpec::make_union({RegionSpec::ball({-1, 0}, 0), RegionSpec::ball({1, 0}, 0)}), x),
            rasterize(RegionSpec::sphere({-1, 0}, 1, 0.5), x), empty_subcomplex(x)};
  std::string detail;
  for (bool band : {false, true}) {
    const std::string where = band ? "band form" : "band (0.5, 1.5)";
    CertifyOutcome o = band ? certify_band(r, f, 1, 2) : certify_linking_principle(r, f, 0.5, 1.5, 1, 2);
    if (o.verdict != Verdict::certified || !o.certificate) {
      log.fail(where + ": verdict " + to_string(o.verdict) + " " + o.message);
      continue;
    }
    const auto& c = *o.certificate;
    bool near = std::any_of(c.witnesses.begin(), c.witnesses.end(), [&](const CriticalVertex& w) {
      return w.dim(1) > 0 && std::abs(w.raw_value - 1.0) <= f.min_gap();
    });
    if (!near) log.fail(where + ": no C_1 witness within one gap of 1");
    brute_force_agrees(f, c, t, log, where);
    if (band) {
      std::ostringstream os;
      os << c.witnesses.size() << " witness(es), first at (" << c.witnesses[0].coordinates[0] << ", "
         << c.witnesses[0].coordinates[1] << ") value " << c.witnesses[0].raw_value << ", band [" << c.lo << ", "
         << c.hi << "]";
      detail = os.str();
    }
  }
  return {log.ok(), detail + (log.ok() ? "" : "; " + log.notes())};
}

// 7. Saddle y^2 - x^2 with (B_1,S_1) against (B_2,S_2), radii 2.
Outcome saddle() {
  Log log;
  GridComplex x({2, 3, 0.5});
  oracle::Triangulation t = oracle::triangulate(2, 3, 0.5);
  ScalarField f(x, poly({{1, {0, 2}}, {-1, {2, 0}}}));
  auto axis = [](int c) { return RegionSpec::slab({c}, 0.25); };
  auto ball = RegionSpec::ball({0, 0}, 2);
  auto shell = RegionSpec::sphere({0, 0}, 2, 0.5);
  Regions r{rasterize(RegionSpec::make_intersection({axis(0), ball}), x),
            rasterize(RegionSpec::make_intersection({axis(0), shell}), x),
            rasterize(RegionSpec::make_intersection({axis(1), ball}), x),
            rasterize(RegionSpec::make_intersection({axis(1), shell}), x)};
  CertifyOutcome o = certify_band(r, f, 1, 2);
  if (o.verdict != Verdict::certified || !o.certificate) {
    return {false, std::string("verdict ") + to_string(o.verdict) + " " + o.message};
  }
  const auto& c = *o.certificate;
  double inf_q = 1e300, sup_b = -1e300;
  r.q.vertices().for_each([&](std::size_t v) { inf_q = std::min(inf_q, f.raw(static_cast<VertexId>(v))); });
  r.b.vertices().for_each([&](std::size_t v) { sup_b = std::max(sup_b, f.raw(static_cast<VertexId>(v))); });
  const double gap = f.min_gap();
  if (c.lo != inf_q - gap || c.hi != sup_b + gap) log.fail("band does not match [inf f(B_2), sup f(B_1)] +- gap");
  bool near = std::any_of(c.witnesses.begin(), c.witnesses.end(),
                          [&](const CriticalVertex& w) { return w.dim(1) > 0 && std::abs(w.raw_value) <= gap; });
  if (!near) log.fail("no C_1 witness within one gap of 0");
  brute_force_agrees(f, c, t, log, "saddle");
  std::ostringstream os;
  os << "band [" << c.lo << ", " << c.hi << "] = [" << inf_q << ", " << sup_b << "] +- " << gap << ", "
     << c.witnesses.size() << " witness(es) with C_1";
  return {log.ok(), os.str() + (log.ok() ? "" : "; " + log.notes())};
}

// 8. Multiplicity: two distinct witnesses in consecutive degrees.
Outcome multiplicity() {
  Log log;
  GridComplex x({2, 4, 0.5});
  oracle::Triangulation t = oracle::triangulate(2, 4, 0.5);
  struct Case {
    std::string scenario;
    Polynomial f;
    int low, high;
  };
  const Case cases[] = {
      {"saddle_pair", poly({{-1, {2, 0}}, {-1, {0, 4}}, {2, {0, 2}}, {-1, {0, 0}}}), 1, 2},
      {"perera_pair", poly({{1, {4, 0}}, {-2, {2, 0}}, {1, {0, 0}}, {1, {0, 2}}}), 0, 1},
  };
  std::ostringstream os;
  for (const Case& c : cases) {
    ScalarField f(x, c.f);
    MultiplicityOutcome o = certify_multiplicity(c.scenario, f, 1, 2);
    if (o.verdict != Verdict::certified) {
      log.fail(c.scenario + ": " + to_string(o.verdict) + " " + o.message);
      continue;
    }
    const auto& lo = *o.lower.certificate;
    const auto& hi = *o.upper.certificate;
    brute_force_agrees(f, lo, t, log, c.scenario + " p_0");
    brute_force_agrees(f, hi, t, log, c.scenario + " p_1");
    const CriticalVertex& p0 = lo.witnesses.front();
    const CriticalVertex& p1 = hi.witnesses.front();
    if (p0.vertex == p1.vertex) log.fail(c.scenario + ": p_0 = p_1");
    if (p0.dim(c.low) == 0 || p1.dim(c.high) == 0) log.fail(c.scenario + ": wrong critical-group degrees");
    if (!(p0.raw_value < p1.raw_value)) log.fail(c.scenario + ": f(p_0) >= f(p_1)");
    os << c.scenario << " p_0=(" << p0.coordinates[0] << "," << p0.coordinates[1] << ") C_" << c.low << " f="
       << p0.raw_value << ", p_1=(" << p1.coordinates[0] << "," << p1.coordinates[1] << ") C_" << c.high
       << " f=" << p1.raw_value << "; ";
  }
  return {log.ok(), os.str() + (log.ok() ? "" : log.notes())};
}

// 9. Determinism of the full scenario suite.
Outcome determinism() {
  const SuiteResult first = run_suite(HLINK_SCENARIO_DIR, {}, 4);
  const SuiteResult second = run_suite(HLINK_SCENARIO_DIR, {}, 1);
  bool same = first.table() == second.table() && first.reports.size() == second.reports.size();
  for (std::size_t i = 0; same && i < first.reports.size(); ++i) {
    same = report_text(first.reports[i]) == report_text(second.reports[i]);
  }
  const auto passed = std::count_if(first.rows.begin(), first.rows.end(), [](const SuiteRow& r) { return r.pass; });
  std::ostringstream os;
  os << first.rows.size() << " reports byte-identical across two runs (4 threads, 1 thread); " << passed << "/"
     << first.rows.size() << " scenarios pass";
  return {same && first.exit_code == 0, os.str()};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"catalogue reproduction", catalogue_reproduction},
      {"Betti consistency", betti_consistency},
      {"locality", locality},
      {"rank rules", rank_rules},
      {"weak Morse inequalities", weak_morse_property},
      {"mountain-pass certification", mountain_pass},
      {"saddle-point certification", saddle},
      {"multiplicity", multiplicity},
      {"determinism", determinism},
  };
  int failed = 0, n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %d. %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", n, name, seconds_since(start),
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%d criteria pass\n", n - failed, n);
  return failed == 0 ? 0 : 1;
}
