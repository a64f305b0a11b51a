#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "hlink/grid.hpp"

namespace hlink {

struct Monomial {
  double coefficient = 0;
  std::vector<int> exponents;  // one per variable

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Real polynomial in d variables as a term list.
struct Polynomial {
  int dimension = 0;
  std::vector<Monomial> terms;

  double evaluate(std::span<const double> x) const;
  int degree() const;
  /// Throws ValidationError on wrong exponent counts, negative or
  /// over-large exponents, or non-finite coefficients.
  void validate() const;
  Polynomial plus_constant(double c) const;

  /// [{"coefficient": c, "exponents": [e_1, ..., e_d]}, ...]
  nlohmann::json to_json() const;
  static Polynomial from_json(const nlohmann::json& j, int dimension);

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// Vertex values of a function on a grid, made injective by simulation of
/// simplicity: value(v) = raw(v) + v * epsilon with epsilon = min_gap / (2 V),
/// where min_gap is the smallest nonzero gap between raw values. Vertices are
/// ordered by (raw value, index).
class ScalarField {
 public:
  ScalarField(const GridComplex& grid, const Polynomial& f);
  ScalarField(const GridComplex& grid, std::vector<double> raw);

  const GridComplex& grid() const noexcept { return *grid_; }
  double raw(VertexId v) const { return raw_[v]; }
  double value(VertexId v) const { return value_[v]; }
  const std::vector<double>& raw_values() const noexcept { return raw_; }
  const std::vector<double>& values() const noexcept { return value_; }
  double epsilon() const noexcept { return epsilon_; }
  double min_gap() const noexcept { return min_gap_; }
  /// Strict order used for lower links.
  bool below(VertexId u, VertexId v) const {
    return raw_[u] < raw_[v] || (raw_[u] == raw_[v] && u < v);
  }
  /// Vertices sorted by increasing value.
  const std::vector<VertexId>& order() const noexcept { return order_; }

 private:
  void perturb();

  const GridComplex* grid_;
  std::vector<double> raw_;
  std::vector<double> value_;
  std::vector<VertexId> order_;
  double epsilon_ = 0;
  double min_gap_ = 0;
};

}  // namespace hlink
