#include "hlink/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hlink/error.hpp"

namespace hlink {

namespace {
constexpr double kLatticeTol = 1e-9;
}

void GridDomain::validate() const {
  if (dimension < 1 || dimension > kMaxGridDimension) {
    std::ostringstream os;
    os << "grid dimension " << dimension << " outside supported range [1, "
       << kMaxGridDimension << "]";
    throw ValidationError(os.str());
  }
  if (!(extent > 0.0) || !(resolution > 0.0) || !std::isfinite(extent) ||
      !std::isfinite(resolution)) {
    throw ValidationError("grid extent and resolution must be positive and finite");
  }
  double ratio = extent / resolution;
  if (std::abs(ratio - std::round(ratio)) > kLatticeTol * std::max(1.0, ratio)) {
    std::ostringstream os;
    os << "extent / resolution = " << ratio << " is not an integer";
    throw ValidationError(os.str());
  }
}

int GridDomain::steps() const {
  return static_cast<int>(std::lround(2.0 * extent / resolution));
}

// ---------------------------------------------------------------- VertexSet

VertexSet::VertexSet(std::size_t size, bool value)
    : size_(size), words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0) {
  trim();
}

void VertexSet::trim() noexcept {
  if (size_ % 64 != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }
}

void VertexSet::check_size(const VertexSet& other) const {
  if (size_ != other.size_) throw ValidationError("vertex sets over different grids");
}

std::size_t VertexSet::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
  return n;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  return first_outside(other) == size_;
}

bool VertexSet::intersects(const VertexSet& other) const {
  return first_common(other) != size_;
}

std::size_t VertexSet::first_common(const VertexSet& other) const {
  check_size(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (auto b = words_[w] & other.words_[w]) {
      return w * 64 + static_cast<std::size_t>(__builtin_ctzll(b));
    }
  }
  return size_;
}

std::size_t VertexSet::first_outside(const VertexSet& other) const {
  check_size(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (auto b = words_[w] & ~other.words_[w]) {
      return w * 64 + static_cast<std::size_t>(__builtin_ctzll(b));
    }
  }
  return size_;
}

VertexSet VertexSet::complement() const {
  VertexSet out = *this;
  for (auto& w : out.words_) w = ~w;
  out.trim();
  return out;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
  check_size(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
  check_size(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

VertexSet& VertexSet::subtract(const VertexSet& other) {
  check_size(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
  return *this;
}

// -------------------------------------------------------------- GridComplex

GridComplex::GridComplex(const GridDomain& domain) : domain_(domain) {
  domain_.validate();
  const int d = domain_.dimension;
  steps_ = domain_.steps();
  const std::size_t axis = static_cast<std::size_t>(steps_) + 1;
  stride_.assign(d, 1);
  for (int a = d - 2; a >= 0; --a) stride_[a] = stride_[a + 1] * axis;
  long double total = std::pow(static_cast<long double>(axis), d);
  if (total >= 4294967295.0L) {
    throw ResourceError("grid has " + std::to_string(static_cast<double>(total)) +
                        " vertices, more than 32-bit vertex ids allow");
  }
  vertex_count_ = stride_[0] * axis;

  const int half = (1 << d) - 1;
  for (int sign : {1, -1}) {
    for (int mask = 1; mask <= half; ++mask) {
      std::vector<int> off(d, 0);
      std::int64_t delta = 0;
      for (int a = 0; a < d; ++a) {
        if (mask & (1 << a)) {
          off[a] = sign;
          delta += sign * static_cast<std::int64_t>(stride_[a]);
        }
      }
      offsets_.push_back(std::move(off));
      offset_delta_.push_back(delta);
    }
  }
  const int n = static_cast<int>(offsets_.size());
  opposite_.resize(n);
  for (int o = 0; o < n; ++o) opposite_[o] = o < half ? o + half : o - half;

  auto is_offset_or_zero = [&](const std::vector<int>& v) {
    bool nonneg = std::all_of(v.begin(), v.end(), [](int x) { return x == 0 || x == 1; });
    bool nonpos = std::all_of(v.begin(), v.end(), [](int x) { return x == 0 || x == -1; });
    return nonneg || nonpos;
  };
  cover_.assign(n, 0);
  for (int o = 0; o < n; ++o) {
    for (int p = 0; p < n; ++p) {
      std::vector<int> diff(d);
      for (int a = 0; a < d; ++a) diff[a] = offsets_[p][a] - offsets_[o][a];
      if (is_offset_or_zero(diff)) cover_[o] |= std::uint64_t{1} << p;
    }
  }
}

std::vector<int> GridComplex::lattice(VertexId v) const {
  std::vector<int> out(dimension());
  std::size_t rest = v;
  for (int a = 0; a < dimension(); ++a) {
    out[a] = static_cast<int>(rest / stride_[a]);
    rest %= stride_[a];
  }
  return out;
}

VertexId GridComplex::vertex_at(std::span<const int> lattice) const {
  std::size_t id = 0;
  for (int a = 0; a < dimension(); ++a) {
    if (lattice[a] < 0 || lattice[a] > steps_) {
      throw ValidationError("lattice position outside the grid");
    }
    id += static_cast<std::size_t>(lattice[a]) * stride_[a];
  }
  return static_cast<VertexId>(id);
}

double GridComplex::coordinate(VertexId v, int axis) const {
  int i = static_cast<int>((v / stride_[axis]) % (static_cast<std::size_t>(steps_) + 1));
  return -domain_.extent + i * domain_.resolution;
}

std::vector<double> GridComplex::coordinates(VertexId v) const {
  std::vector<double> out(dimension());
  for (int a = 0; a < dimension(); ++a) out[a] = coordinate(v, a);
  return out;
}

VertexId GridComplex::nearest_vertex(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != dimension()) {
    throw ValidationError("point dimension does not match the grid");
  }
  std::vector<int> idx(dimension());
  for (int a = 0; a < dimension(); ++a) {
    double t = (point[a] + domain_.extent) / domain_.resolution;
    long r = std::lround(t);
    if (r < 0 || r > steps_) throw ValidationError("point lies outside the grid box");
    idx[a] = static_cast<int>(r);
  }
  return vertex_at(idx);
}

bool GridComplex::on_box_boundary(VertexId v) const {
  for (int a = 0; a < dimension(); ++a) {
    std::size_t i = (v / stride_[a]) % (static_cast<std::size_t>(steps_) + 1);
    if (i == 0 || i == static_cast<std::size_t>(steps_)) return true;
  }
  return false;
}

std::vector<std::size_t> GridComplex::simplex_counts() const {
  // A vertex with r incrementable axes is the base of
  // sum_s C(r, s) * q! * S(s, q) chains of length q.
  const int d = dimension();
  std::vector<std::vector<double>> binom(d + 1, std::vector<double>(d + 1, 0));
  for (int n = 0; n <= d; ++n) {
    binom[n][0] = 1;
    for (int k = 1; k <= n; ++k) binom[n][k] = binom[n - 1][k - 1] + (k <= n - 1 ? binom[n - 1][k] : 0);
  }
  // ordered[s][q] = surjections from an s-set onto q ordered blocks
  std::vector<std::vector<double>> ordered(d + 1, std::vector<double>(d + 1, 0));
  ordered[0][0] = 1;
  for (int s = 1; s <= d; ++s) {
    for (int q = 1; q <= s; ++q) ordered[s][q] = q * (ordered[s - 1][q - 1] + ordered[s - 1][q]);
  }
  std::vector<std::size_t> counts(d + 1, 0);
  for (int r = 0; r <= d; ++r) {
    double vertices = binom[d][r] * std::pow(static_cast<double>(steps_), r);
    for (int q = 0; q <= d; ++q) {
      double chains = 0;
      for (int s = q; s <= r; ++s) chains += binom[r][s] * ordered[s][q];
      counts[q] += static_cast<std::size_t>(std::llround(vertices * chains));
    }
  }
  return counts;
}

std::int64_t GridComplex::neighbor(VertexId v, int o) const {
  if (!((inside_mask(v) >> o) & 1u)) return -1;
  return static_cast<std::int64_t>(v) + offset_delta_[o];
}

std::uint64_t GridComplex::inside_mask(VertexId v) const {
  const int d = dimension();
  std::uint32_t up = 0, down = 0;
  for (int a = 0; a < d; ++a) {
    std::size_t i = (v / stride_[a]) % (static_cast<std::size_t>(steps_) + 1);
    if (i < static_cast<std::size_t>(steps_)) up |= 1u << a;
    if (i > 0) down |= 1u << a;
  }
  const int half = (1 << d) - 1;
  std::uint64_t mask = 0;
  for (int m = 1; m <= half; ++m) {
    if ((m & ~up) == 0) mask |= std::uint64_t{1} << (m - 1);
    if ((m & ~down) == 0) mask |= std::uint64_t{1} << (half + m - 1);
  }
  return mask;
}

void GridComplex::enumerate_chains(
    VertexId base, int q, std::uint32_t allowed,
    const std::function<void(std::span<const VertexId>)>& fn) const {
  VertexId buf[kMaxGridDimension + 1];
  buf[0] = base;
  auto delta = [&](std::uint32_t set) {
    std::size_t s = 0;
    for (int a = 0; a < dimension(); ++a)
      if (set & (1u << a)) s += stride_[a];
    return static_cast<VertexId>(s);
  };
  std::function<void(int, std::uint32_t)> rec = [&](int depth, std::uint32_t cur) {
    if (depth == q) {
      fn(std::span<const VertexId>(buf, static_cast<std::size_t>(q) + 1));
      return;
    }
    std::uint32_t free = allowed & ~cur;
    // remaining levels each need at least one new axis
    if (__builtin_popcount(free) < q - depth) return;
    for (std::uint32_t s = 1; s <= free; ++s) {
      if ((s & ~free) != 0) continue;
      std::uint32_t next = cur | s;
      buf[depth + 1] = base + delta(next);
      rec(depth + 1, next);
    }
  };
  rec(0, 0);
}

void GridComplex::for_each_simplex_from(
    VertexId base, int q, const std::function<void(std::span<const VertexId>)>& fn) const {
  if (q < 0 || q > dimension()) return;
  std::uint32_t up = 0;
  for (int a = 0; a < dimension(); ++a) {
    std::size_t i = (base / stride_[a]) % (static_cast<std::size_t>(steps_) + 1);
    if (i < static_cast<std::size_t>(steps_)) up |= 1u << a;
  }
  enumerate_chains(base, q, up, fn);
}

void GridComplex::for_each_simplex_containing(
    VertexId v, int q, const std::function<void(std::span<const VertexId>)>& fn) const {
  if (q < 0 || q > dimension()) return;
  const int d = dimension();
  std::uint32_t down = 0;
  for (int a = 0; a < d; ++a) {
    std::size_t i = (v / stride_[a]) % (static_cast<std::size_t>(steps_) + 1);
    if (i > 0) down |= 1u << a;
  }
  for (std::uint32_t s = 0; s < (1u << d); ++s) {
    if ((s & ~down) != 0) continue;
    std::size_t back = 0;
    for (int a = 0; a < d; ++a)
      if (s & (1u << a)) back += stride_[a];
    VertexId base = static_cast<VertexId>(v - back);
    for_each_simplex_from(base, q, [&](std::span<const VertexId> simplex) {
      if (std::find(simplex.begin(), simplex.end(), v) != simplex.end()) fn(simplex);
    });
  }
}

// ----------------------------------------------------------- FullSubcomplex

FullSubcomplex::FullSubcomplex(const GridComplex& parent, VertexSet vertices)
    : parent_(&parent), vertices_(std::move(vertices)) {
  if (vertices_.size() != parent.vertex_count()) {
    throw ValidationError("vertex set size does not match the parent grid");
  }
}

bool FullSubcomplex::contains(std::span<const VertexId> simplex) const {
  return std::all_of(simplex.begin(), simplex.end(),
                     [&](VertexId v) { return vertices_.test(v); });
}

std::vector<Simplex> FullSubcomplex::simplices(int q) const {
  std::vector<Simplex> out;
  vertices_.for_each([&](std::size_t v) {
    parent_->for_each_simplex_from(static_cast<VertexId>(v), q,
                                   [&](std::span<const VertexId> s) {
                                     if (contains(s)) out.emplace_back(s.begin(), s.end());
                                   });
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t FullSubcomplex::simplex_count(int q) const {
  std::size_t n = 0;
  vertices_.for_each([&](std::size_t v) {
    parent_->for_each_simplex_from(static_cast<VertexId>(v), q,
                                   [&](std::span<const VertexId> s) {
                                     if (contains(s)) ++n;
                                   });
  });
  return n;
}

int FullSubcomplex::top_dimension() const {
  for (int q = parent_->dimension(); q >= 0; --q) {
    bool found = false;
    vertices_.for_each([&](std::size_t v) {
      if (found) return;
      parent_->for_each_simplex_from(static_cast<VertexId>(v), q,
                                     [&](std::span<const VertexId> s) {
                                       if (contains(s)) found = true;
                                     });
    });
    if (found) return q;
  }
  return -1;
}

FullSubcomplex full_subcomplex(const GridComplex& x, const VertexPredicate& predicate) {
  VertexSet set(x.vertex_count());
  std::vector<double> coords(x.dimension());
  for (std::size_t v = 0; v < x.vertex_count(); ++v) {
    for (int a = 0; a < x.dimension(); ++a) coords[a] = x.coordinate(static_cast<VertexId>(v), a);
    if (predicate(coords)) set.set(v);
  }
  return FullSubcomplex(x, std::move(set));
}

FullSubcomplex whole_complex(const GridComplex& x) {
  return FullSubcomplex(x, VertexSet(x.vertex_count(), true));
}

FullSubcomplex empty_subcomplex(const GridComplex& x) {
  return FullSubcomplex(x, VertexSet(x.vertex_count(), false));
}

FullSubcomplex complement_subcomplex(const GridComplex& x, const FullSubcomplex& s) {
  if (&s.parent() != &x) throw ValidationError("subcomplex belongs to a different grid");
  return FullSubcomplex(x, s.vertices().complement());
}

}  // namespace hlink
