#include "hlink/scalar_field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hlink/error.hpp"
#include "hlink/kernels.hpp"

namespace hlink {

namespace {
constexpr int kMaxExponent = 32;
}

double Polynomial::evaluate(std::span<const double> x) const {
  // Same operation order as the evaluation kernels.
  double sum = 0.0;
  for (const Monomial& t : terms) {
    double term = t.coefficient;
    for (int i = 0; i < dimension; ++i) {
      for (int r = 0; r < t.exponents[i]; ++r) term = term * x[i];
    }
    sum = sum + term;
  }
  return sum;
}

int Polynomial::degree() const {
  int deg = 0;
  for (const Monomial& t : terms) {
    deg = std::max(deg, std::accumulate(t.exponents.begin(), t.exponents.end(), 0));
  }
  return deg;
}

void Polynomial::validate() const {
  if (dimension < 1) throw ValidationError("polynomial dimension must be positive");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Monomial& t = terms[i];
    std::ostringstream where;
    where << "polynomial term " << i;
    if (!std::isfinite(t.coefficient)) throw ValidationError(where.str() + " has a non-finite coefficient");
    if (static_cast<int>(t.exponents.size()) != dimension) {
      std::ostringstream os;
      os << where.str() << " has " << t.exponents.size() << " exponents, expected " << dimension;
      throw ValidationError(os.str());
    }
    for (int e : t.exponents) {
      if (e < 0 || e > kMaxExponent) {
        std::ostringstream os;
        os << where.str() << " has exponent " << e << " outside [0, " << kMaxExponent << "]";
        throw ValidationError(os.str());
      }
    }
  }
}

Polynomial Polynomial::plus_constant(double c) const {
  Polynomial out = *this;
  out.terms.push_back({c, std::vector<int>(static_cast<std::size_t>(dimension), 0)});
  return out;
}

nlohmann::json Polynomial::to_json() const {
  auto arr = nlohmann::json::array();
  for (const Monomial& t : terms) {
    arr.push_back({{"coefficient", t.coefficient}, {"exponents", t.exponents}});
  }
  return arr;
}

Polynomial Polynomial::from_json(const nlohmann::json& j, int dimension) {
  if (!j.is_array()) throw ValidationError("polynomial must be an array of terms", ErrorCode::schema_invalid);
  Polynomial p;
  p.dimension = dimension;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("coefficient") || !t.contains("exponents")) {
      throw ValidationError("polynomial term needs \"coefficient\" and \"exponents\"",
                            ErrorCode::schema_invalid);
    }
    try {
      p.terms.push_back({t.at("coefficient").get<double>(), t.at("exponents").get<std::vector<int>>()});
    } catch (const nlohmann::json::exception&) {
      throw ValidationError("polynomial term has fields of the wrong type", ErrorCode::schema_invalid);
    }
  }
  p.validate();
  return p;
}

ScalarField::ScalarField(const GridComplex& grid, const Polynomial& f) : grid_(&grid) {
  if (f.dimension != grid.dimension()) {
    throw ValidationError("polynomial dimension does not match the grid dimension");
  }
  f.validate();
  const std::size_t n = grid.vertex_count();
  const auto d = static_cast<std::size_t>(grid.dimension());
  std::vector<std::vector<double>> axes(d, std::vector<double>(n));
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < d; ++i) axes[i][v] = grid.coordinate(static_cast<VertexId>(v), static_cast<int>(i));
  }
  std::vector<const double*> axis_ptr(d);
  for (std::size_t i = 0; i < d; ++i) axis_ptr[i] = axes[i].data();
  std::vector<double> coefficients;
  std::vector<std::uint8_t> exponents;
  for (const Monomial& t : f.terms) {
    coefficients.push_back(t.coefficient);
    for (int e : t.exponents) exponents.push_back(static_cast<std::uint8_t>(e));
  }
  kernels::PolynomialView view{coefficients.data(), exponents.data(), coefficients.size(), d};
  raw_.resize(n);
  kernels::active().eval_polynomial(view, axis_ptr.data(), n, raw_.data());
  perturb();
}

ScalarField::ScalarField(const GridComplex& grid, std::vector<double> raw)
    : grid_(&grid), raw_(std::move(raw)) {
  if (raw_.size() != grid.vertex_count()) {
    throw ValidationError("scalar field needs one value per grid vertex");
  }
  perturb();
}

void ScalarField::perturb() {
  for (double r : raw_) {
    if (!std::isfinite(r)) throw ValidationError("scalar field has a non-finite vertex value");
  }
  const std::size_t n = raw_.size();
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), VertexId{0});
  std::sort(order_.begin(), order_.end(), [&](VertexId a, VertexId b) { return below(a, b); });
  min_gap_ = 0;
  for (std::size_t i = 1; i < n; ++i) {
    double gap = raw_[order_[i]] - raw_[order_[i - 1]];
    if (gap > 0 && (min_gap_ == 0 || gap < min_gap_)) min_gap_ = gap;
  }
  const double gap = min_gap_ > 0 ? min_gap_ : 1.0;
  epsilon_ = gap / (2.0 * static_cast<double>(std::max<std::size_t>(n, 1)));
  value_.resize(n);
  for (std::size_t v = 0; v < n; ++v) value_[v] = raw_[v] + static_cast<double>(v) * epsilon_;
  for (std::size_t i = 1; i < n; ++i) {
    if (!(value_[order_[i - 1]] < value_[order_[i]])) {
      throw ValidationError("vertex values are too close to separate in double precision");
    }
  }
}

}  // namespace hlink
