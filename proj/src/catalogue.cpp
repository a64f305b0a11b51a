#include "hlink/catalogue.hpp"

#include <algorithm>
#include <sstream>

#include "hlink/error.hpp"

namespace hlink {

const std::vector<std::string>& catalogue_names() {
  static const std::vector<std::string> names = {
      "prop_1_5", "prop_1_6", "prop_1_7", "cor_1_8",   "cor_1_9",   "cor_1_10",
      "cor_1_11", "cor_1_12", "cor_1_13", "prop_1_14", "prop_1_15",
  };
  return names;
}

namespace {

struct Builder {
  Decomposition dec;
  double h;
  double clip;

  int d() const { return dec.dimension; }
  std::vector<double> zero() const { return std::vector<double>(d(), 0.0); }
  std::vector<double> unit(int axis, double scale = 1.0) const {
    auto v = zero();
    v[axis] = scale;
    return v;
  }
  static std::vector<int> join(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    return a;
  }

  RegionSpec in_subspace(const std::vector<int>& axes, RegionSpec r) const {
    return RegionSpec::make_intersection({RegionSpec::slab(axes, h / 2), std::move(r)});
  }
  /// Unbounded set cut at the clip radius.
  RegionSpec clipped(RegionSpec r) const {
    RegionSpec out = RegionSpec::make_intersection({std::move(r), RegionSpec::ball(zero(), clip)});
    out.clipped = true;
    return out;
  }
  RegionSpec point(std::vector<double> x) const { return RegionSpec::ball(std::move(x), 0); }

  RegionSpec ball(double r) const { return RegionSpec::ball(zero(), r); }
  RegionSpec sphere(double r) const { return RegionSpec::sphere(zero(), r, h); }
  RegionSpec ball_1(double r = 1) const { return in_subspace(dec.coords_1, ball(r)); }
  RegionSpec sphere_1(double r = 1) const { return in_subspace(dec.coords_1, sphere(r)); }
  RegionSpec ball_2(double r = 1) const { return in_subspace(dec.coords_2, ball(r)); }
  RegionSpec sphere_2(double r = 1) const { return in_subspace(dec.coords_2, sphere(r)); }
  RegionSpec whole() const { return clipped(RegionSpec::make_everything()); }
  RegionSpec e_2() const { return clipped(RegionSpec::slab(dec.coords_2, h / 2)); }
  /// E_2 + [0, inf) e.
  RegionSpec e_2_ray() const {
    auto axes = join(dec.coords_2, {dec.e_axis});
    return clipped(RegionSpec::make_intersection(
        {RegionSpec::slab(axes, h / 2), RegionSpec::make_half_space(dec.e_axis, 0, true)}));
  }
  /// The solid box B_1 + [0, 2] e inside E_1 + R e.
  RegionSpec solid_box() const {
    return in_subspace(join(dec.coords_1, {dec.e_axis}), RegionSpec::ball(unit(dec.e_axis), 1));
  }
  /// Relative boundary of the box above, inside E_1 + R e.
  RegionSpec box_boundary() const {
    auto lo = zero(), hi = zero();
    for (int i : dec.coords_1) {
      lo[i] = -1;
      hi[i] = 1;
    }
    hi[dec.e_axis] = 2;
    return RegionSpec::box_shell(lo, hi, h);
  }
  RegionSpec two_points() const {
    return RegionSpec::make_union({point(zero()), point(unit(0, 2))});
  }
};

}  // namespace

CatalogueScenario catalogue(const std::string& name, int k, int m, double resolution,
                            double extent, double clip) {
  const auto& names = catalogue_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::ostringstream os;
    os << "unknown catalogue scenario \"" << name << "\"; known:";
    for (const auto& n : names) os << ' ' << n;
    throw ValidationError(os.str());
  }
  if (k < 1 || k > 2 || m < 1 || m > 2) {
    std::ostringstream os;
    os << "catalogue parameters k=" << k << ", m=" << m
       << " unsupported; supported ranges are k in {1, 2} and m in {1, 2}";
    throw ValidationError(os.str());
  }

  CatalogueScenario s;
  s.name = name;
  s.k = k;
  s.m = m;
  const bool extra_axis = name == "prop_1_14";
  Decomposition dec;
  dec.dimension = k + m + (extra_axis ? 1 : 0);
  for (int i = 0; i < k; ++i) dec.coords_1.push_back(i);
  for (int i = k; i < k + m; ++i) dec.coords_2.push_back(i);
  if (extra_axis) {
    dec.e_axis = k + m;
  } else if (name == "prop_1_7" || name == "cor_1_10" || name == "cor_1_13") {
    dec.e_axis = k;  // e in E_2
  } else if (name == "cor_1_12") {
    dec.e_axis = 0;  // e in E_1
  } else if (name == "prop_1_5" || name == "cor_1_8" || name == "cor_1_11") {
    dec.e_axis = 0;  // the outer point is 2 e_1
  }
  s.decomposition = dec;
  s.domain = GridDomain{dec.dimension, extent, resolution};
  s.domain.validate();

  Builder b{dec, resolution, clip > 0 ? clip : extent};
  const RegionSpec none = RegionSpec::make_empty();
  s.a = none;
  s.p = none;

  if (name == "prop_1_5") {
    s.statement = "{0, e} (0,1)-links (E,S)";
    s.b = b.two_points();
    s.q = b.whole();
    s.p = b.sphere(1);
    s.expected_degree = 0;
  } else if (name == "prop_1_6") {
    s.statement = "S_1 (k-1,1)-links (E,E_2)";
    s.b = b.sphere_1();
    s.q = b.whole();
    s.p = b.e_2();
    s.expected_degree = k - 1;
  } else if (name == "prop_1_7") {
    s.statement = "A (k,1)-links (E,S_2), A = boundary of B_1 + [0,2]e";
    s.b = b.box_boundary();
    s.q = b.whole();
    s.p = b.sphere_2();
    s.expected_degree = k;
  } else if (name == "cor_1_8") {
    s.statement = "([0,e],{0,e}) (1,1)-links S";
    s.b = RegionSpec::make_segment(b.zero(), b.unit(0, 2), resolution / 2);
    s.a = b.two_points();
    s.q = b.sphere(1);
    s.expected_degree = 1;
  } else if (name == "cor_1_9") {
    s.statement = "(B_1,S_1) (k,1)-links E_2";
    s.b = b.ball_1();
    s.a = b.sphere_1();
    s.q = b.e_2();
    s.expected_degree = k;
  } else if (name == "cor_1_10") {
    s.statement = "(B,A) (k+1,1)-links S_2, B = B_1 + [0,2]e, A = boundary of B";
    s.b = b.solid_box();
    s.a = b.box_boundary();
    s.q = b.sphere_2();
    s.expected_degree = k + 1;
  } else if (name == "cor_1_11") {
    s.statement = "{0, e} (0,1)-links (B,S)";
    s.b = b.two_points();
    s.q = b.ball(1);
    s.p = b.sphere(1);
    s.expected_degree = 0;
  } else if (name == "cor_1_12") {
    s.statement = "S_1 (k-1,1)-links (E_2 + [0,inf)e, E_2), e in E_1";
    s.b = b.sphere_1();
    s.q = b.e_2_ray();
    s.p = b.e_2();
    s.expected_degree = k - 1;
  } else if (name == "cor_1_13") {
    s.statement = "A (k,1)-links (B_2,S_2), A = boundary of B_1 + [0,2]e";
    s.b = b.box_boundary();
    s.q = b.ball_2();
    s.p = b.sphere_2();
    s.expected_degree = k;
  } else if (name == "prop_1_14") {
    s.statement = "(B_1 + e, S_1 + e) (k,1)-links (E_2 + [0,inf)e, E_2) in E_1 + E_2 + Re";
    s.b = RegionSpec::make_translate(b.ball_1(), b.unit(dec.e_axis));
    s.a = RegionSpec::make_translate(b.sphere_1(), b.unit(dec.e_axis));
    s.q = b.e_2_ray();
    s.p = b.e_2();
    s.expected_degree = k;
  } else {  // prop_1_15
    s.statement = "(B_1,S_1) (k,1)-links (B_2,S_2)";
    s.b = b.ball_1();
    s.a = b.sphere_1();
    s.q = b.ball_2();
    s.p = b.sphere_2();
    s.expected_degree = k;
  }
  return s;
}

}  // namespace hlink
