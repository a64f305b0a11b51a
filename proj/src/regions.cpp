#include "hlink/regions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hlink/error.hpp"

namespace hlink {

namespace {

constexpr double kTol = 1e-9;

double sup_norm_diff(std::span<const double> x, std::span<const double> c) {
  double m = 0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - c[i]));
  return m;
}

struct OpName {
  RegionSpec::Op op;
  const char* name;
};

constexpr OpName kOpNames[] = {
    {RegionSpec::Op::empty, "empty"},
    {RegionSpec::Op::everything, "everything"},
    {RegionSpec::Op::sup_ball, "sup_ball"},
    {RegionSpec::Op::sup_sphere_shell, "sup_sphere_shell"},
    {RegionSpec::Op::subspace_slab, "subspace_slab"},
    {RegionSpec::Op::segment, "segment"},
    {RegionSpec::Op::box_boundary_shell, "box_boundary_shell"},
    {RegionSpec::Op::half_space, "half_space"},
    {RegionSpec::Op::union_of, "union"},
    {RegionSpec::Op::intersection_of, "intersection"},
    {RegionSpec::Op::difference, "difference"},
    {RegionSpec::Op::translate, "translate"},
};

RegionSpec::Op op_from_string(const std::string& s) {
  for (const auto& e : kOpNames) {
    if (s == e.name) return e.op;
  }
  throw ValidationError("unknown region op \"" + s + "\"", ErrorCode::schema_invalid);
}

[[noreturn]] void bad(const std::string& msg) { throw ValidationError(msg); }

void need_dim(const std::vector<double>& v, int d, const char* what) {
  if (static_cast<int>(v.size()) != d) {
    std::ostringstream os;
    os << "region field \"" << what << "\" has " << v.size() << " coordinates, expected " << d;
    bad(os.str());
  }
  for (double x : v) {
    if (!std::isfinite(x)) bad(std::string("region field \"") + what + "\" is not finite");
  }
}

void need_at_least(double value, double minimum, const char* what) {
  if (!std::isfinite(value) || value < minimum * (1 - kTol)) {
    std::ostringstream os;
    os << "region " << what << " " << value << " is below the minimum " << minimum;
    bad(os.str());
  }
}

template <class T>
T get(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) {
    throw ValidationError(std::string("region is missing field \"") + key + "\"",
                          ErrorCode::schema_invalid);
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(std::string("region field \"") + key + "\" has the wrong type",
                          ErrorCode::schema_invalid);
  }
}

}  // namespace

const char* to_string(RegionSpec::Op op) {
  for (const auto& e : kOpNames) {
    if (e.op == op) return e.name;
  }
  return "?";
}

double sup_distance_to_segment(std::span<const double> x, std::span<const double> a,
                               std::span<const double> b) {
  const std::size_t d = x.size();
  std::vector<double> r(d), delta(d);
  for (std::size_t i = 0; i < d; ++i) {
    r[i] = x[i] - a[i];
    delta[i] = b[i] - a[i];
  }
  // g(t) = max_i |r_i - t delta_i| is convex piecewise linear on [0, 1]; its
  // minimum sits at an endpoint or a breakpoint.
  auto g = [&](double t) {
    double m = 0;
    for (std::size_t i = 0; i < d; ++i) m = std::max(m, std::abs(r[i] - t * delta[i]));
    return m;
  };
  double best = std::min(g(0), g(1));
  auto consider = [&](double num, double den) {
    if (den == 0) return;
    double t = num / den;
    if (t > 0 && t < 1) best = std::min(best, g(t));
  };
  for (std::size_t i = 0; i < d; ++i) {
    consider(r[i], delta[i]);
    for (std::size_t j = i + 1; j < d; ++j) {
      consider(r[i] - r[j], delta[i] - delta[j]);
      consider(r[i] + r[j], delta[i] + delta[j]);
    }
  }
  return best;
}

bool RegionSpec::contains(std::span<const double> x) const {
  switch (op) {
    case Op::empty:
      return false;
    case Op::everything:
      return true;
    case Op::sup_ball:
      return sup_norm_diff(x, center) <= radius + kTol;
    case Op::sup_sphere_shell:
      return std::abs(sup_norm_diff(x, center) - radius) <= thickness / 2 + kTol;
    case Op::subspace_slab:
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::find(coords.begin(), coords.end(), static_cast<int>(i)) != coords.end()) continue;
        if (std::abs(x[i]) > half_width + kTol) return false;
      }
      return true;
    case Op::segment:
      return sup_distance_to_segment(x, from, to) <= half_width + kTol;
    case Op::box_boundary_shell: {
      const double t = thickness / 2 + kTol;
      bool near_face = false;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < lo[i] - t || x[i] > hi[i] + t) return false;
        if (hi[i] > lo[i] && (std::abs(x[i] - lo[i]) <= t || std::abs(x[i] - hi[i]) <= t)) {
          near_face = true;
        }
      }
      return near_face;
    }
    case Op::half_space:
      return greater ? x[coord] >= bound - kTol : x[coord] <= bound + kTol;
    case Op::union_of:
      return std::any_of(args.begin(), args.end(), [&](const RegionSpec& a) { return a.contains(x); });
    case Op::intersection_of:
      return std::all_of(args.begin(), args.end(), [&](const RegionSpec& a) { return a.contains(x); });
    case Op::difference:
      return args[0].contains(x) && !args[1].contains(x);
    case Op::translate: {
      std::vector<double> y(x.begin(), x.end());
      for (std::size_t i = 0; i < y.size(); ++i) y[i] -= offset[i];
      return args[0].contains(y);
    }
  }
  return false;
}

void RegionSpec::validate(int d, double h) const {
  switch (op) {
    case Op::empty:
    case Op::everything:
      break;
    case Op::sup_ball:
      need_dim(center, d, "center");
      need_at_least(radius, 0, "radius");
      break;
    case Op::sup_sphere_shell:
      need_dim(center, d, "center");
      need_at_least(radius, 0, "radius");
      need_at_least(thickness, h, "shell thickness");
      break;
    case Op::subspace_slab:
      for (int c : coords) {
        if (c < 0 || c >= d) bad("subspace_slab coordinate out of range");
      }
      need_at_least(half_width, h / 2, "slab half_width");
      break;
    case Op::segment:
      need_dim(from, d, "from");
      need_dim(to, d, "to");
      need_at_least(half_width, h / 2, "segment half_width");
      break;
    case Op::box_boundary_shell:
      need_dim(lo, d, "lo");
      need_dim(hi, d, "hi");
      for (int i = 0; i < d; ++i) {
        if (lo[i] > hi[i]) bad("box_boundary_shell has lo > hi");
      }
      need_at_least(thickness, h, "box shell thickness");
      break;
    case Op::half_space:
      if (coord < 0 || coord >= d) bad("half_space coordinate out of range");
      if (!std::isfinite(bound)) bad("half_space bound is not finite");
      break;
    case Op::union_of:
    case Op::intersection_of:
      if (args.empty()) bad(std::string(to_string(op)) + " needs at least one argument");
      for (const auto& a : args) a.validate(d, h);
      break;
    case Op::difference:
      if (args.size() != 2) bad("difference needs exactly two arguments");
      for (const auto& a : args) a.validate(d, h);
      break;
    case Op::translate:
      if (args.size() != 1) bad("translate needs exactly one argument");
      need_dim(offset, d, "offset");
      args[0].validate(d, h);
      break;
  }
}

nlohmann::json RegionSpec::to_json() const {
  nlohmann::json j;
  j["op"] = to_string(op);
  auto one_based = [](const std::vector<int>& v) {
    std::vector<int> out;
    for (int c : v) out.push_back(c + 1);
    return out;
  };
  switch (op) {
    case Op::empty:
    case Op::everything:
      break;
    case Op::sup_ball:
      j["center"] = center;
      j["radius"] = radius;
      break;
    case Op::sup_sphere_shell:
      j["center"] = center;
      j["radius"] = radius;
      j["thickness"] = thickness;
      break;
    case Op::subspace_slab:
      j["coords"] = one_based(coords);
      j["half_width"] = half_width;
      break;
    case Op::segment:
      j["from"] = from;
      j["to"] = to;
      j["half_width"] = half_width;
      break;
    case Op::box_boundary_shell:
      j["lo"] = lo;
      j["hi"] = hi;
      j["thickness"] = thickness;
      break;
    case Op::half_space:
      j["coord"] = coord + 1;
      j["bound"] = bound;
      j["direction"] = greater ? "ge" : "le";
      break;
    case Op::union_of:
    case Op::intersection_of:
    case Op::difference: {
      auto arr = nlohmann::json::array();
      for (const auto& a : args) arr.push_back(a.to_json());
      j["args"] = arr;
      break;
    }
    case Op::translate:
      j["offset"] = offset;
      j["arg"] = args.at(0).to_json();
      break;
  }
  if (clipped) j["clipped"] = true;
  return j;
}

RegionSpec RegionSpec::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("region must be a JSON object", ErrorCode::schema_invalid);
  RegionSpec r;
  r.op = op_from_string(get<std::string>(j, "op"));
  auto zero_based = [](std::vector<int> v) {
    for (int& c : v) --c;
    return v;
  };
  switch (r.op) {
    case Op::empty:
    case Op::everything:
      break;
    case Op::sup_ball:
      r.center = get<std::vector<double>>(j, "center");
      r.radius = get<double>(j, "radius");
      break;
    case Op::sup_sphere_shell:
      r.center = get<std::vector<double>>(j, "center");
      r.radius = get<double>(j, "radius");
      r.thickness = get<double>(j, "thickness");
      break;
    case Op::subspace_slab:
      r.coords = zero_based(get<std::vector<int>>(j, "coords"));
      r.half_width = get<double>(j, "half_width");
      break;
    case Op::segment:
      r.from = get<std::vector<double>>(j, "from");
      r.to = get<std::vector<double>>(j, "to");
      r.half_width = get<double>(j, "half_width");
      break;
    case Op::box_boundary_shell:
      r.lo = get<std::vector<double>>(j, "lo");
      r.hi = get<std::vector<double>>(j, "hi");
      r.thickness = get<double>(j, "thickness");
      break;
    case Op::half_space: {
      r.coord = get<int>(j, "coord") - 1;
      r.bound = get<double>(j, "bound");
      auto dir = get<std::string>(j, "direction");
      if (dir != "ge" && dir != "le") {
        throw ValidationError("half_space direction must be \"ge\" or \"le\"", ErrorCode::schema_invalid);
      }
      r.greater = dir == "ge";
      break;
    }
    case Op::union_of:
    case Op::intersection_of:
    case Op::difference: {
      auto arr = get<nlohmann::json>(j, "args");
      if (!arr.is_array()) throw ValidationError("region args must be an array", ErrorCode::schema_invalid);
      for (const auto& a : arr) r.args.push_back(from_json(a));
      break;
    }
    case Op::translate:
      r.offset = get<std::vector<double>>(j, "offset");
      r.args.push_back(from_json(get<nlohmann::json>(j, "arg")));
      break;
  }
  if (j.contains("clipped")) r.clipped = get<bool>(j, "clipped");
  return r;
}

RegionSpec RegionSpec::make_empty() { return RegionSpec{}; }

RegionSpec RegionSpec::make_everything() {
  RegionSpec r;
  r.op = Op::everything;
  return r;
}

RegionSpec RegionSpec::ball(std::vector<double> c, double radius) {
  RegionSpec r;
  r.op = Op::sup_ball;
  r.center = std::move(c);
  r.radius = radius;
  return r;
}

RegionSpec RegionSpec::sphere(std::vector<double> c, double radius, double thickness) {
  RegionSpec r;
  r.op = Op::sup_sphere_shell;
  r.center = std::move(c);
  r.radius = radius;
  r.thickness = thickness;
  return r;
}

RegionSpec RegionSpec::slab(std::vector<int> coords, double half_width) {
  RegionSpec r;
  r.op = Op::subspace_slab;
  r.coords = std::move(coords);
  r.half_width = half_width;
  return r;
}

RegionSpec RegionSpec::make_segment(std::vector<double> from, std::vector<double> to, double half_width) {
  RegionSpec r;
  r.op = Op::segment;
  r.from = std::move(from);
  r.to = std::move(to);
  r.half_width = half_width;
  return r;
}

RegionSpec RegionSpec::box_shell(std::vector<double> lo, std::vector<double> hi, double thickness) {
  RegionSpec r;
  r.op = Op::box_boundary_shell;
  r.lo = std::move(lo);
  r.hi = std::move(hi);
  r.thickness = thickness;
  return r;
}

RegionSpec RegionSpec::make_half_space(int coord, double bound, bool greater) {
  RegionSpec r;
  r.op = Op::half_space;
  r.coord = coord;
  r.bound = bound;
  r.greater = greater;
  return r;
}

RegionSpec RegionSpec::make_union(std::vector<RegionSpec> args) {
  RegionSpec r;
  r.op = Op::union_of;
  r.args = std::move(args);
  return r;
}

RegionSpec RegionSpec::make_intersection(std::vector<RegionSpec> args) {
  RegionSpec r;
  r.op = Op::intersection_of;
  r.args = std::move(args);
  return r;
}

RegionSpec RegionSpec::make_difference(RegionSpec a, RegionSpec b) {
  RegionSpec r;
  r.op = Op::difference;
  r.args = {std::move(a), std::move(b)};
  return r;
}

RegionSpec RegionSpec::make_translate(RegionSpec a, std::vector<double> offset) {
  RegionSpec r;
  r.op = Op::translate;
  r.offset = std::move(offset);
  r.args = {std::move(a)};
  return r;
}

FullSubcomplex rasterize(const RegionSpec& spec, const GridComplex& x, const std::string& name) {
  spec.validate(x.dimension(), x.domain().resolution);
  VertexSet set(x.vertex_count());
  std::vector<double> point(static_cast<std::size_t>(x.dimension()));
  for (std::size_t v = 0; v < x.vertex_count(); ++v) {
    for (int i = 0; i < x.dimension(); ++i) point[i] = x.coordinate(static_cast<VertexId>(v), i);
    if (!spec.contains(point)) continue;
    if (!spec.clipped && x.on_box_boundary(static_cast<VertexId>(v))) {
      std::ostringstream os;
      os << name << " reaches the box boundary at (";
      for (int i = 0; i < x.dimension(); ++i) os << (i ? ", " : "") << point[i];
      os << "); enlarge the box or mark the region clipped";
      throw ValidationError(os.str());
    }
    set.set(v);
  }
  return FullSubcomplex(x, std::move(set));
}

}  // namespace hlink
