#include <doctest.h>

#include <random>

#include "hlink/error.hpp"
#include "hlink/morse.hpp"
#include "hlink/regions.hpp"
#include "oracle.hpp"

using namespace hlink;

namespace {

Polynomial poly(int d, std::vector<std::pair<double, std::vector<int>>> terms) {
  Polynomial p;
  p.dimension = d;
  for (auto& [c, e] : terms) p.terms.push_back({c, e});
  return p;
}

// (x^2 - 1)^2 + y^2: minima at (+-1, 0), mountain pass at the origin.
Polynomial mountain() { return poly(2, {{1, {4, 0}}, {-2, {2, 0}}, {1, {0, 0}}, {1, {0, 2}}}); }
Polynomial saddle() { return poly(2, {{1, {0, 2}}, {-1, {2, 0}}}); }  // y^2 - x^2

Regions mountain_regions(const GridComplex& x) {
  return {rasterize(RegionSpec::make_segment({-1, 0}, {1, 0}, 0.25), x),
          rasterize(RegionSpec::make_union({RegionSpec::ball({-1, 0}, 0), RegionSpec::ball({1, 0}, 0)}), x),
          rasterize(RegionSpec::sphere({-1, 0}, 1, 0.5), x), empty_subcomplex(x)};
}

// (B_1, S_1) against (B_2, S_2), radius 2, E_1 = x-axis, E_2 = y-axis.
Regions saddle_regions(const GridComplex& x) {
  auto axis = [](int c) { return RegionSpec::slab({c}, 0.25); };
  auto ball = RegionSpec::ball({0, 0}, 2);
  auto shell = RegionSpec::sphere({0, 0}, 2, 0.5);
  return {rasterize(RegionSpec::make_intersection({axis(0), ball}), x),
          rasterize(RegionSpec::make_intersection({axis(0), shell}), x),
          rasterize(RegionSpec::make_intersection({axis(1), ball}), x),
          rasterize(RegionSpec::make_intersection({axis(1), shell}), x)};
}

VertexId at(const GridComplex& x, std::vector<double> p) { return x.nearest_vertex(p); }

bool same_point(const CriticalVertex& c, std::vector<double> p) { return c.coordinates == p; }

std::vector<double> random_field(std::mt19937_64& rng, std::size_t n, int levels) {
  std::vector<double> v(n);
  for (auto& x : v) x = static_cast<double>(rng() % static_cast<unsigned>(levels));
  return v;
}

/// Midpoint between two consecutive distinct raw levels, picked at random.
double random_regular(std::mt19937_64& rng, const ScalarField& f) {
  std::vector<double> raw = f.raw_values();
  std::sort(raw.begin(), raw.end());
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  const std::size_t i = rng() % (raw.size() + 1);
  if (i == 0) return raw.front() - 1;
  if (i == raw.size()) return raw.back() + 1;
  return (raw[i - 1] + raw[i]) / 2;
}

}  // namespace

TEST_CASE("scalar field evaluation and tie-breaking") {
  GridComplex x({2, 2, 0.5});
  ScalarField f(x, saddle());
  for (VertexId v = 0; v < x.vertex_count(); ++v) {
    auto p = x.coordinates(v);
    CHECK(f.raw(v) == saddle().evaluate(p));
    CHECK(std::abs(f.value(v) - f.raw(v)) < f.min_gap() / 2);
  }
  for (std::size_t i = 1; i < f.order().size(); ++i) {
    CHECK(f.value(f.order()[i - 1]) < f.value(f.order()[i]));
  }
  ScalarField constant(x, std::vector<double>(x.vertex_count(), 3.0));
  CHECK(constant.value(0) < constant.value(1));
  CHECK_THROWS_AS(ScalarField(x, std::vector<double>(3, 0.0)), ValidationError);
  CHECK_THROWS_AS(ScalarField(x, poly(3, {{1, {1, 0, 0}}})), ValidationError);
  CHECK_THROWS_AS(poly(2, {{1, {40, 0}}}).validate(), ValidationError);
}

TEST_CASE("polynomial JSON form") {
  auto p = mountain();
  auto j = p.to_json();
  CHECK(j[0]["coefficient"] == 1.0);
  CHECK(j[0]["exponents"] == nlohmann::json::array({4, 0}));
  CHECK(Polynomial::from_json(j, 2) == p);
  CHECK_THROWS_AS(Polynomial::from_json(nlohmann::json::object(), 2), ValidationError);
  CHECK_THROWS_AS(Polynomial::from_json(nlohmann::json::parse(R"([{"coefficient": 1}])"), 2), ValidationError);
  CHECK_THROWS_AS(Polynomial::from_json(nlohmann::json::parse(R"([{"coefficient": 1, "exponents": [1]}])"), 2),
                  ValidationError);
}

TEST_CASE("sublevel complex examples") {
  GridComplex x({2, 2, 0.5});
  ScalarField f(x, poly(2, {{1, {2, 0}}, {-1, {0, 2}}}));  // x^2 - y^2
  CHECK(sublevel_complex(f, -100).empty());
  CHECK(sublevel_complex(f, 100) == whole_complex(x));
  auto lower = sublevel_complex(f, -0.5);
  auto dims = reduced_homology_dims(PairOfSpaces::single(lower), 2);
  CHECK(dims.at(0) == 1);  // two components
  CHECK(dims.at(1) == 0);  // each contractible
  // monotone in c
  auto a = sublevel_complex(f, -1.3), b = sublevel_complex(f, 0.7);
  CHECK(a.vertices().is_subset_of(b.vertices()));
}

TEST_CASE("regular value examples") {
  GridComplex x({2, 2, 0.5});
  ScalarField f(x, poly(2, {{1, {2, 0}}, {-1, {0, 2}}}));
  double max = *std::max_element(f.values().begin(), f.values().end());
  CHECK(is_regular_value(f, max + 1));
  CHECK(!is_regular_value(f, 0.0));  // the saddle's level
  CHECK(blocking_vertex(f, 0.0).has_value());
  CHECK(is_regular_value(f, 0.125));  // between the levels 0 and 0.25, nothing critical there
  CHECK(!is_regular_value(f, std::numeric_limits<double>::infinity()));
}

TEST_CASE("lower link examples") {
  GridComplex x({2, 2, 0.5});
  ScalarField bowl(x, poly(2, {{1, {2, 0}}, {1, {0, 2}}}));
  ScalarField cap(x, poly(2, {{-1, {2, 0}}, {-1, {0, 2}}}));
  ScalarField sad(x, poly(2, {{1, {2, 0}}, {-1, {0, 2}}}));
  const VertexId o = at(x, {0, 0});
  CHECK(lower_link(bowl, o).vertex_count() == 0);
  auto ring = lower_link(cap, o);
  CHECK(ring.vertex_count() == 6);  // the Freudenthal star of a vertex is a hexagon
  CHECK(reduced_betti(ring, 2).at(1) == 1);
  auto arcs = lower_link(sad, o);
  CHECK(reduced_betti(arcs, 2).at(0) == 1);
  CHECK(reduced_betti(arcs, 2).at(1) == 0);
  for (std::uint32_t label : arcs.labels()) CHECK(sad.value(label) < sad.value(o));
  CHECK_THROWS_AS(lower_link(bowl, static_cast<VertexId>(x.vertex_count())), ValidationError);
}

TEST_CASE("critical group examples") {
  GridComplex x({2, 2, 0.5});
  const VertexId o = at(x, {0, 0});
  auto min = critical_groups(ScalarField(x, poly(2, {{1, {2, 0}}, {1, {0, 2}}})), o, 2);
  CHECK(min.critical_group_dims == std::vector<std::size_t>{1, 0, 0});
  auto sad = critical_groups(ScalarField(x, poly(2, {{1, {2, 0}}, {-1, {0, 2}}})), o, 2);
  CHECK(sad.critical_group_dims == std::vector<std::size_t>{0, 1, 0});
  CHECK(sad.is_pl_nondegenerate());
  auto max = critical_groups(ScalarField(x, poly(2, {{-1, {2, 0}}, {-1, {0, 2}}})), o, 2);
  CHECK(max.critical_group_dims == std::vector<std::size_t>{0, 0, 1});
  // monkey saddle x^3 - 3 x y^2: degenerate, C_1 = 2
  auto monkey = critical_groups(ScalarField(x, poly(2, {{1, {3, 0}}, {-3, {1, 2}}})), o, 2);
  CHECK(monkey.dim(1) == 2);
  CHECK(!monkey.is_pl_nondegenerate());
  CHECK(monkey.is_critical());
  auto edge = critical_groups(ScalarField(x, poly(2, {{1, {2, 0}}})), 0, 2);
  CHECK(edge.boundary);
}

TEST_CASE("critical groups agree with the brute-force oracle") {
  std::mt19937_64 rng(2024);
  struct Case { int d; double n, h; };
  for (Case c : {Case{2, 1, 0.5}, Case{2, 2, 1}, Case{3, 1, 1}, Case{3, 1, 0.5}}) {
    GridComplex x({c.d, c.n, c.h});
    oracle::Triangulation t = oracle::triangulate(c.d, c.n, c.h);
    for (int trial = 0; trial < 6; ++trial) {
      auto raw = random_field(rng, x.vertex_count(), 3 + trial);  // many ties
      ScalarField f(x, raw);
      for (std::uint32_t p : {2u, 3u}) {
        auto interior = critical_vertices(f, p);
        std::size_t expected_count = 0;
        for (VertexId v = 0; v < x.vertex_count(); ++v) {
          auto expected = oracle::critical_groups(t, raw, v, p);
          auto got = critical_groups(f, v, p);
          CHECK(got.critical_group_dims == expected);
          CHECK(got.boundary == x.on_box_boundary(v));
          bool crit = std::any_of(expected.begin(), expected.end(), [](auto k) { return k != 0; });
          if (crit && !x.on_box_boundary(v)) ++expected_count;
        }
        CHECK(interior.size() == expected_count);
        for (const auto& cv : interior) CHECK(!cv.boundary);
      }
    }
  }
}

TEST_CASE("morse number examples") {
  GridComplex x({2, 2, 0.5});
  ScalarField sad(x, poly(2, {{1, {2, 0}}, {-1, {0, 2}}}));
  auto mu = morse_numbers(sad, -1.1, 1.1, 2);
  CHECK(mu[1] >= 1);
  CHECK(morse_numbers(sad, 0.1, 0.2, 2) == std::vector<std::size_t>{0, 0, 0});
  ScalarField bowl(x, poly(2, {{1, {2, 0}}, {1, {0, 2}}}));
  auto all = morse_numbers(bowl, -1, 100, 2);
  CHECK(all[0] == 1);
  try {
    morse_numbers(sad, 0.0, 1.1, 2);
    FAIL("expected not-regular");
  } catch (const ValidationError& e) {
    CHECK(e.code() == ErrorCode::not_regular);
    CHECK(std::string(e.what()).find("vertex") != std::string::npos);
  }
  CHECK_THROWS_AS(morse_numbers(sad, 1.1, -1.1, 2), ValidationError);
}

TEST_CASE("Morse numbers telescope over regular values") {
  std::mt19937_64 rng(8);
  GridComplex x({2, 2, 0.5});
  for (int trial = 0; trial < 30; ++trial) {
    ScalarField f(x, random_field(rng, x.vertex_count(), 12));
    double c[3] = {random_regular(rng, f), random_regular(rng, f), random_regular(rng, f)};
    std::sort(c, c + 3);
    if (!(c[0] < c[1] && c[1] < c[2])) continue;
    for (auto scope : {MorseScope::interior, MorseScope::all}) {
      auto ac = morse_numbers(f, c[0], c[2], 2, scope);
      auto ab = morse_numbers(f, c[0], c[1], 2, scope);
      auto bc = morse_numbers(f, c[1], c[2], 2, scope);
      for (std::size_t q = 0; q < ac.size(); ++q) CHECK(ac[q] == ab[q] + bc[q]);
    }
  }
}

TEST_CASE("weak Morse inequalities on random fields") {
  std::mt19937_64 rng(31337);
  GridComplex x({2, 2, 0.5});
  std::size_t checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    ScalarField f(x, random_field(rng, x.vertex_count(), 2 + trial % 20));
    double a = random_regular(rng, f), b = random_regular(rng, f);
    if (a == b) b = a + 1e-3 * f.min_gap();
    if (a > b) std::swap(a, b);
    if (!is_regular_value(f, b)) continue;
    auto res = weak_morse(f, a, b, 2);
    CHECK(res.holds);
    for (std::size_t q = 0; q < res.mu.size(); ++q) CHECK(res.mu[q] >= res.homology[q]);
    ++checked;
  }
  CHECK(checked >= 95);

  ScalarField sad(x, poly(2, {{1, {2, 0}}, {-1, {0, 2}}}));
  CHECK(weak_morse_check(sad, 0.1, 0.2, 2));  // empty band
  auto res = weak_morse(sad, -1.1, 1.1, 2);
  CHECK(res.holds);
  CHECK(res.homology[1] == 1);
  CHECK(morse_numbers(sad, -1.1, 1.1, 2)[1] == 1);  // the interior saddle alone
}

TEST_CASE("adding a constant shifts levels, not critical groups") {
  GridComplex x({2, 3, 0.5});
  ScalarField f(x, mountain());
  ScalarField g(x, mountain().plus_constant(5));
  auto cf = critical_vertices(f, 2), cg = critical_vertices(g, 2);
  REQUIRE(cf.size() == cg.size());
  for (std::size_t i = 0; i < cf.size(); ++i) {
    CHECK(cf[i].vertex == cg[i].vertex);
    CHECK(cf[i].critical_group_dims == cg[i].critical_group_dims);
  }
  auto rf = certify_band(mountain_regions(x), f, 1, 2);
  auto rg = certify_band(mountain_regions(x), g, 1, 2);
  REQUIRE(rf.certificate);
  REQUIRE(rg.certificate);
  CHECK(rg.certificate->lo - rf.certificate->lo == doctest::Approx(5));
  CHECK(rg.certificate->hi - rf.certificate->hi == doctest::Approx(5));
}

TEST_CASE("mountain pass certificate") {
  GridComplex x({2, 3, 0.5});
  ScalarField f(x, mountain());
  auto out = certify_linking_principle(mountain_regions(x), f, 0.5, 1.5, 1, 2);
  CHECK(out.verdict == Verdict::certified);
  REQUIRE(out.certificate);
  CHECK(out.certificate->rank == 1);
  REQUIRE(out.certificate->witnesses.size() == 1);
  const auto& w = out.certificate->witnesses[0];
  CHECK(same_point(w, {0, 0}));
  CHECK(w.raw_value == 1.0);
  CHECK(w.dim(1) == 1);
  CHECK(out.certificate->multiplicity_claim == std::optional<std::size_t>(1));
  // brute-force agreement: the witnesses are exactly the band's C_1 vertices
  std::size_t brute = 0;
  for (const auto& c : critical_vertices(f, 2)) {
    if (c.value > 0.5 && c.value < 1.5 && c.dim(1) > 0) ++brute;
  }
  CHECK(brute == out.certificate->witnesses.size());
}

TEST_CASE("saddle certificates") {
  GridComplex x({2, 3, 0.5});
  ScalarField f(x, saddle());
  auto lp = certify_linking_principle(saddle_regions(x), f, -1, 1, 1, 2);
  REQUIRE(lp.verdict == Verdict::certified);
  REQUIRE(lp.certificate->witnesses.size() == 1);
  CHECK(same_point(lp.certificate->witnesses[0], {0, 0}));
  CHECK(lp.certificate->witnesses[0].dim(1) == 1);

  auto band = certify_band(saddle_regions(x), f, 1, 2);
  REQUIRE(band.verdict == Verdict::certified);
  const auto& c = *band.certificate;
  CHECK(c.lo <= 0);
  CHECK(c.hi >= 0);
  CHECK(c.hi - c.lo <= 2 * f.min_gap());  // [0, 0] up to one gap each side
  REQUIRE(c.witnesses.size() == 1);
  CHECK(same_point(c.witnesses[0], {0, 0}));
  for (const auto& w : c.witnesses) {
    CHECK(w.raw_value >= c.lo);
    CHECK(w.raw_value <= c.hi);
  }
}

TEST_CASE("certifier verdicts and errors") {
  GridComplex x({2, 3, 0.5});
  ScalarField f(x, mountain());
  auto r = mountain_regions(x);
  // no linking: a point far from B does not separate anything in degree 1
  Regions far = r;
  far.q = rasterize(RegionSpec::ball({0, 2}, 0), x);
  auto nl = certify_linking_principle(far, f, 0.5, 1.5, 1, 2);
  CHECK(nl.verdict == Verdict::no_linking);
  CHECK(!nl.certificate);

  ScalarField flat(x, std::vector<double>(x.vertex_count(), 2.0));
  auto hn = certify_band(r, flat, 1, 2);
  CHECK(hn.verdict == Verdict::hypotheses_not_met);
  CHECK(hn.message.find("sup f(A)") != std::string::npos);

  try {
    certify_linking_principle(r, f, -0.5, 1.5, 1, 2);  // A is not below a
    FAIL("expected inclusion error");
  } catch (const PreconditionError& e) {
    CHECK(e.code() == ErrorCode::inclusion_violated);
    CHECK(std::string(e.what()).find("f_a") != std::string::npos);
  }
  CHECK_THROWS_AS(certify_linking_principle(r, f, 1.5, 0.5, 1, 2), ValidationError);
  CHECK(std::string(to_string(Verdict::no_linking)) == "no-linking");
}

TEST_CASE("multiplicity certificates") {
  GridComplex x({2, 4, 0.5});
  // low ring at y = +-1, high core at the origin
  ScalarField ring(x, poly(2, {{-1, {2, 0}}, {-1, {0, 4}}, {2, {0, 2}}, {-1, {0, 0}}}));
  auto sp = certify_multiplicity("saddle_pair", ring, 1, 2);
  REQUIRE(sp.verdict == Verdict::certified);
  CHECK(sp.expected_degrees == std::vector<int>{1, 2});
  const auto& p0 = sp.lower.certificate->witnesses;
  const auto& p1 = sp.upper.certificate->witnesses;
  REQUIRE(!p0.empty());
  REQUIRE(!p1.empty());
  CHECK(p0[0].dim(1) > 0);
  CHECK(p1[0].dim(2) > 0);
  CHECK(p0.back().value < p1.front().value);

  ScalarField well(x, mountain());
  auto pp = certify_multiplicity("perera_pair", well, 1, 2);
  REQUIRE(pp.verdict == Verdict::certified);
  CHECK(pp.lower.certificate->witnesses[0].dim(0) > 0);
  CHECK(pp.upper.certificate->witnesses[0].dim(1) > 0);
  CHECK(same_point(pp.upper.certificate->witnesses[0], {0, 0}));

  ScalarField flat(x, std::vector<double>(x.vertex_count(), 0.0));
  CHECK(certify_multiplicity("saddle_pair", flat, 1, 2).verdict == Verdict::hypotheses_not_met);
  CHECK_THROWS_AS(certify_multiplicity("triple", well, 1, 2), ValidationError);
}

TEST_CASE("nondegenerate witnesses are at least beta in number") {
  std::mt19937_64 rng(4);
  GridComplex x({2, 3, 0.5});
  auto r = mountain_regions(x);
  int certified = 0;
  for (int trial = 0; trial < 20; ++trial) {
    // mountain pass plus a small random bump keeps the geometry but moves critical points
    auto p = mountain();
    std::uniform_real_distribution<double> u(-0.05, 0.05);
    p.terms.push_back({u(rng), {1, 0}});
    p.terms.push_back({u(rng), {0, 1}});
    p.terms.push_back({u(rng), {1, 1}});
    ScalarField f(x, p);
    auto out = certify_band(r, f, 1, 2);
    if (out.verdict != Verdict::certified) continue;
    ++certified;
    const auto& c = *out.certificate;
    CHECK(!c.witnesses.empty());
    if (c.multiplicity_claim) CHECK(*c.multiplicity_claim >= c.rank);
    for (const auto& w : c.witnesses) CHECK(w.dim(1) > 0);
  }
  CHECK(certified > 0);
}
