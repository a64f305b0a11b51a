#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hlink/grid.hpp"

namespace hlink {

/// Expression tree describing a region of R^d by a vertex predicate. All
/// distances use the sup-norm.
struct RegionSpec {
  enum class Op {
    empty,
    everything,
    sup_ball,            // ||x - center|| <= radius
    sup_sphere_shell,    // | ||x - center|| - radius | <= thickness / 2
    subspace_slab,       // |x_i| <= half_width for every i outside `coords`
    segment,             // sup-distance to [from, to] <= half_width
    box_boundary_shell,  // within thickness / 2 of the relative boundary of [lo, hi]
    half_space,          // x_coord >= bound (or <= bound)
    union_of,
    intersection_of,
    difference,          // args[0] minus args[1]
    translate,           // args[0] shifted by offset
  };

  Op op = Op::empty;
  std::vector<double> center, from, to, lo, hi, offset;
  double radius = 0, thickness = 0, half_width = 0, bound = 0;
  std::vector<int> coords;  // 0-based
  int coord = 0;            // 0-based
  bool greater = true;
  std::vector<RegionSpec> args;
  /// Root-level flag: the region models an unbounded set and may touch the
  /// box boundary.
  bool clipped = false;

  bool contains(std::span<const double> x) const;
  /// Throws ValidationError on arity, dimension or thickness problems.
  void validate(int dimension, double resolution) const;

  /// Canonical nested-object form; coordinate indices are 1-based.
  nlohmann::json to_json() const;
  static RegionSpec from_json(const nlohmann::json& j);

  static RegionSpec make_empty();
  static RegionSpec make_everything();
  static RegionSpec ball(std::vector<double> center, double radius);
  static RegionSpec sphere(std::vector<double> center, double radius, double thickness);
  static RegionSpec slab(std::vector<int> coords, double half_width);
  static RegionSpec make_segment(std::vector<double> from, std::vector<double> to, double half_width);
  static RegionSpec box_shell(std::vector<double> lo, std::vector<double> hi, double thickness);
  static RegionSpec make_half_space(int coord, double bound, bool greater);
  static RegionSpec make_union(std::vector<RegionSpec> args);
  static RegionSpec make_intersection(std::vector<RegionSpec> args);
  static RegionSpec make_difference(RegionSpec a, RegionSpec b);
  static RegionSpec make_translate(RegionSpec a, std::vector<double> offset);

  friend bool operator==(const RegionSpec&, const RegionSpec&) = default;
};

const char* to_string(RegionSpec::Op op);

/// Full subcomplex on the vertices inside the region. Unless the spec is
/// clipped, a region reaching the box boundary is a ValidationError.
FullSubcomplex rasterize(const RegionSpec& spec, const GridComplex& x,
                         const std::string& name = "region");

/// Sup-distance from x to the segment [a, b] (exact).
double sup_distance_to_segment(std::span<const double> x, std::span<const double> a,
                               std::span<const double> b);

}  // namespace hlink
