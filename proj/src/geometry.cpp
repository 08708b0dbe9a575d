#include "wrand/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "wrand/errors.hpp"

namespace wrand {

namespace {

constexpr std::uint64_t kMaxSweepCells = std::uint64_t(1) << 24;

void check_dim(int a, int b, const char* where) {
  if (a != b) throw SchemaError(std::string(where) + ": dimension mismatch");
}

}  // namespace

Point Point::parse(const std::string& comma_separated) {
  std::vector<Rational> coords;
  std::string cur;
  std::istringstream in(comma_separated);
  while (std::getline(in, cur, ',')) coords.push_back(parse_rational(cur));
  if (coords.empty()) throw SchemaError("empty point");
  return Point(std::move(coords));
}

bool Point::in_closed_unit_cube() const {
  for (const auto& c : coords)
    if (c < 0 || c > 1) return false;
  return true;
}

bool Point::coord_is_dyadic(int axis) const {
  BigInt den = denominator(coords[static_cast<std::size_t>(axis)]);
  while ((den & 1) == 0) den >>= 1;
  return den == 1;
}

void Box::validate() const {
  for (const auto& iv : axes_)
    if (iv.hi < iv.lo) throw SchemaError("box with hi < lo: " + iv.lo.to_string() + ".." + iv.hi.to_string());
}

Box Box::unit(int dim, bool open) {
  std::vector<Interval> axes(static_cast<std::size_t>(dim));
  for (auto& iv : axes) iv = Interval{ExactScalar(0), ExactScalar(1), !open, !open};
  return Box(std::move(axes));
}

Box Box::closed(const std::vector<ExactScalar>& lo, const std::vector<ExactScalar>& hi) {
  check_dim(static_cast<int>(lo.size()), static_cast<int>(hi.size()), "Box::closed");
  std::vector<Interval> axes;
  for (std::size_t i = 0; i < lo.size(); ++i) axes.push_back(Interval{lo[i], hi[i], true, true});
  return Box(std::move(axes));
}

Box Box::open(const std::vector<ExactScalar>& lo, const std::vector<ExactScalar>& hi) {
  check_dim(static_cast<int>(lo.size()), static_cast<int>(hi.size()), "Box::open");
  std::vector<Interval> axes;
  for (std::size_t i = 0; i < lo.size(); ++i) axes.push_back(Interval{lo[i], hi[i], false, false});
  return Box(std::move(axes));
}

bool Box::empty() const {
  for (const auto& iv : axes_) {
    if (iv.hi < iv.lo) return true;
    if (iv.lo == iv.hi && !(iv.lo_closed && iv.hi_closed)) return true;
  }
  return false;
}

ExactScalar Box::measure() const {
  ExactScalar m(1);
  for (const auto& iv : axes_) m *= (iv.hi - iv.lo);
  return m;
}

bool Box::contains(const Point& x) const {
  check_dim(dim(), x.dim(), "Box::contains");
  for (int i = 0; i < dim(); ++i) {
    const auto& iv = axes_[static_cast<std::size_t>(i)];
    const Rational& c = x.coords[static_cast<std::size_t>(i)];
    Rational lo = iv.lo.to_rational(), hi = iv.hi.to_rational();
    if (c < lo || (c == lo && !iv.lo_closed)) return false;
    if (c > hi || (c == hi && !iv.hi_closed)) return false;
  }
  return true;
}

bool Box::interior_contains(const Point& x) const {
  check_dim(dim(), x.dim(), "Box::interior_contains");
  for (int i = 0; i < dim(); ++i) {
    const auto& iv = axes_[static_cast<std::size_t>(i)];
    const Rational& c = x.coords[static_cast<std::size_t>(i)];
    if (!(iv.lo.to_rational() < c && c < iv.hi.to_rational())) return false;
  }
  return true;
}

bool Box::closure_contains(const Point& x) const {
  check_dim(dim(), x.dim(), "Box::closure_contains");
  for (int i = 0; i < dim(); ++i) {
    const auto& iv = axes_[static_cast<std::size_t>(i)];
    const Rational& c = x.coords[static_cast<std::size_t>(i)];
    if (c < iv.lo.to_rational() || c > iv.hi.to_rational()) return false;
  }
  return true;
}

std::optional<Box> Box::intersect(const Box& other) const {
  check_dim(dim(), other.dim(), "Box::intersect");
  std::vector<Interval> axes;
  axes.reserve(axes_.size());
  for (int i = 0; i < dim(); ++i) {
    const auto& a = axes_[static_cast<std::size_t>(i)];
    const auto& b = other.axes_[static_cast<std::size_t>(i)];
    Interval iv;
    if (a.lo > b.lo) {
      iv.lo = a.lo;
      iv.lo_closed = a.lo_closed;
    } else if (b.lo > a.lo) {
      iv.lo = b.lo;
      iv.lo_closed = b.lo_closed;
    } else {
      iv.lo = a.lo;
      iv.lo_closed = a.lo_closed && b.lo_closed;
    }
    if (a.hi < b.hi) {
      iv.hi = a.hi;
      iv.hi_closed = a.hi_closed;
    } else if (b.hi < a.hi) {
      iv.hi = b.hi;
      iv.hi_closed = b.hi_closed;
    } else {
      iv.hi = a.hi;
      iv.hi_closed = a.hi_closed && b.hi_closed;
    }
    if (iv.hi < iv.lo || (iv.hi == iv.lo && !(iv.lo_closed && iv.hi_closed))) return std::nullopt;
    axes.push_back(std::move(iv));
  }
  return Box(std::move(axes));
}

Box Box::translated(const std::vector<ExactScalar>& shift) const {
  check_dim(dim(), static_cast<int>(shift.size()), "Box::translated");
  std::vector<Interval> axes = axes_;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    axes[i].lo += shift[i];
    axes[i].hi += shift[i];
  }
  return Box(std::move(axes));
}

bool Box::endpoints_dyadic(unsigned max_precision) const {
  for (const auto& iv : axes_) {
    if (!iv.lo.is_dyadic() || !iv.hi.is_dyadic()) return false;
    if (iv.lo.dyadic_precision() > max_precision || iv.hi.dyadic_precision() > max_precision)
      return false;
  }
  return true;
}

std::string Box::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < dim(); ++i) {
    const auto& iv = axes_[static_cast<std::size_t>(i)];
    if (i) os << " x ";
    os << (iv.lo_closed ? '[' : '(') << iv.lo << ", " << iv.hi << (iv.hi_closed ? ']' : ')');
  }
  return os.str();
}

BoxUnion::BoxUnion(int dim, std::vector<Box> boxes) : dim_(dim) {
  for (auto& b : boxes) add(std::move(b));
}

void BoxUnion::add(Box b) {
  check_dim(b.dim(), dim_, "BoxUnion::add");
  if (!b.empty()) boxes_.push_back(std::move(b));
}

void BoxUnion::add_all(const BoxUnion& other) {
  check_dim(other.dim(), dim_, "BoxUnion::add_all");
  for (const auto& b : other.boxes_) add(b);
}

namespace {

// Exact sweep over the grid induced by all endpoint breakpoints of two box
// families. keep(in_a, in_b) selects which cells contribute to the measure.
ExactScalar sweep_measure(int dim, const std::vector<Box>& as, const std::vector<Box>& bs,
                          bool (*keep)(bool, bool)) {
  if (dim <= 0) throw SchemaError("sweep_measure: bad dimension");
  std::vector<std::vector<ExactScalar>> cuts(static_cast<std::size_t>(dim));
  auto add_cuts = [&](const std::vector<Box>& list) {
    for (const auto& b : list)
      for (int ax = 0; ax < dim; ++ax) {
        cuts[static_cast<std::size_t>(ax)].push_back(b.axis(ax).lo);
        cuts[static_cast<std::size_t>(ax)].push_back(b.axis(ax).hi);
      }
  };
  add_cuts(as);
  add_cuts(bs);
  std::uint64_t ncells = 1;
  for (auto& c : cuts) {
    if (c.empty()) return ExactScalar(0);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    if (c.size() < 2) return ExactScalar(0);
    ncells *= c.size() - 1;
    if (ncells > kMaxSweepCells) throw ResourceCapError("measure sweep exceeds cell budget");
  }

  // Per axis, per interval, bitmask of boxes covering it.
  struct AxisMasks {
    std::size_t words;
    std::vector<std::uint64_t> bits;  // [interval * words + w]
  };
  auto build_masks = [&](const std::vector<Box>& list) {
    std::vector<AxisMasks> masks(static_cast<std::size_t>(dim));
    std::size_t words = (list.size() + 63) / 64;
    for (int ax = 0; ax < dim; ++ax) {
      auto& am = masks[static_cast<std::size_t>(ax)];
      am.words = words;
      const auto& c = cuts[static_cast<std::size_t>(ax)];
      am.bits.assign((c.size() - 1) * words, 0);
      for (std::size_t bi = 0; bi < list.size(); ++bi) {
        const auto& iv = list[bi].axis(ax);
        auto lo = std::lower_bound(c.begin(), c.end(), iv.lo) - c.begin();
        auto hi = std::lower_bound(c.begin(), c.end(), iv.hi) - c.begin();
        for (auto j = lo; j < hi; ++j)
          am.bits[static_cast<std::size_t>(j) * words + bi / 64] |= std::uint64_t(1) << (bi % 64);
      }
    }
    return masks;
  };
  auto masks_a = build_masks(as);
  auto masks_b = build_masks(bs);

  std::vector<std::vector<ExactScalar>> widths(static_cast<std::size_t>(dim));
  for (int ax = 0; ax < dim; ++ax) {
    const auto& c = cuts[static_cast<std::size_t>(ax)];
    for (std::size_t j = 0; j + 1 < c.size(); ++j)
      widths[static_cast<std::size_t>(ax)].push_back(c[j + 1] - c[j]);
  }

  auto covered = [](const std::vector<AxisMasks>& masks, const std::vector<std::size_t>& idx,
                    int dim_) {
    if (masks.empty() || masks[0].words == 0) return false;
    std::size_t words = masks[0].words;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t acc = ~std::uint64_t(0);
      for (int ax = 0; ax < dim_; ++ax)
        acc &= masks[static_cast<std::size_t>(ax)].bits[idx[static_cast<std::size_t>(ax)] * words + w];
      if (acc) return true;
    }
    return false;
  };

  ExactScalar total(0);
  std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
  while (true) {
    bool in_a = !as.empty() && covered(masks_a, idx, dim);
    bool in_b = !bs.empty() && covered(masks_b, idx, dim);
    if (keep(in_a, in_b)) {
      ExactScalar vol = widths[0][idx[0]];
      for (int ax = 1; ax < dim; ++ax) vol *= widths[static_cast<std::size_t>(ax)][idx[static_cast<std::size_t>(ax)]];
      total += vol;
    }
    int ax = 0;
    for (; ax < dim; ++ax) {
      auto& j = idx[static_cast<std::size_t>(ax)];
      if (++j < widths[static_cast<std::size_t>(ax)].size()) break;
      j = 0;
    }
    if (ax == dim) break;
  }
  return total;
}

}  // namespace

ExactScalar BoxUnion::measure() const {
  if (boxes_.empty()) return ExactScalar(0);
  return sweep_measure(dim_, boxes_, {}, [](bool a, bool) { return a; });
}

Membership BoxUnion::membership(const Point& x) const {
  for (const auto& b : boxes_)
    if (b.interior_contains(x)) return Membership::inside;
  for (const auto& b : boxes_)
    if (b.closure_contains(x)) return Membership::boundary;
  return Membership::outside;
}

BoxUnion BoxUnion::intersect(const Box& clip) const {
  BoxUnion out(dim_);
  for (const auto& b : boxes_)
    if (auto c = b.intersect(clip)) out.add(std::move(*c));
  return out;
}

BoxUnion BoxUnion::translated(const std::vector<ExactScalar>& shift) const {
  BoxUnion out(dim_);
  for (const auto& b : boxes_) out.add(b.translated(shift));
  return out;
}

std::string BoxUnion::to_string() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < boxes_.size(); ++i) {
    if (i) os << ", ";
    os << boxes_[i].to_string();
  }
  os << "}";
  return os.str();
}

ExactScalar measure_diff(const BoxUnion& a, const BoxUnion& b) {
  check_dim(a.dim(), b.dim(), "measure_diff");
  if (a.empty()) return ExactScalar(0);
  return sweep_measure(a.dim(), a.boxes(), b.boxes(), [](bool x, bool y) { return x && !y; });
}

ExactScalar sym_diff_measure(const BoxUnion& a, const BoxUnion& b) {
  check_dim(a.dim(), b.dim(), "sym_diff_measure");
  if (a.empty() && b.empty()) return ExactScalar(0);
  return sweep_measure(a.dim(), a.boxes(), b.boxes(), [](bool x, bool y) { return x != y; });
}

ExactScalar intersection_measure(const BoxUnion& a, const BoxUnion& b) {
  check_dim(a.dim(), b.dim(), "intersection_measure");
  if (a.empty() || b.empty()) return ExactScalar(0);
  return sweep_measure(a.dim(), a.boxes(), b.boxes(), [](bool x, bool y) { return x && y; });
}

DyadicCube::DyadicCube(int r, std::vector<BigInt> u, CubeMode m)
    : precision(r), anchor(std::move(u)), mode(m) {
  if (r < 0) throw SchemaError("dyadic cube with negative precision");
  if (anchor.empty()) throw SchemaError("dyadic cube with empty anchor");
}

Box DyadicCube::to_box() const {
  std::vector<Interval> axes;
  axes.reserve(anchor.size());
  bool closed_lo = (mode == CubeMode::half_open);
  for (const auto& u : anchor) {
    Interval iv;
    iv.lo = ExactScalar(u, static_cast<unsigned>(precision));
    iv.hi = ExactScalar(u + 1, static_cast<unsigned>(precision));
    iv.lo_closed = closed_lo;
    iv.hi_closed = false;
    axes.push_back(std::move(iv));
  }
  return Box(std::move(axes));
}

Point DyadicCube::center() const {
  std::vector<Rational> coords;
  coords.reserve(anchor.size());
  for (const auto& u : anchor) coords.emplace_back(2 * u + 1, BigInt(1) << static_cast<unsigned>(precision + 1));
  return Point(std::move(coords));
}

std::vector<DyadicCube> DyadicCube::children() const {
  std::vector<DyadicCube> out;
  int n = dim();
  out.reserve(std::size_t(1) << n);
  for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << n); ++bits) {
    std::vector<BigInt> u(anchor.size());
    for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] = 2 * anchor[static_cast<std::size_t>(i)] + ((bits >> i) & 1);
    out.emplace_back(precision + 1, std::move(u), mode);
  }
  return out;
}

bool DyadicCube::contains_cube(const DyadicCube& other) const {
  if (other.dim() != dim() || other.precision < precision) return false;
  unsigned shift = static_cast<unsigned>(other.precision - precision);
  for (int i = 0; i < dim(); ++i)
    if (other.anchor[static_cast<std::size_t>(i)] >> shift != anchor[static_cast<std::size_t>(i)]) return false;
  return true;
}

bool DyadicCube::contains_point(const Point& x) const {
  check_dim(dim(), x.dim(), "DyadicCube::contains_point");
  return mode == CubeMode::half_open ? to_box().contains(x) : to_box().interior_contains(x);
}

std::string DyadicCube::to_string() const {
  std::ostringstream os;
  os << "Q_" << precision << "(";
  for (std::size_t i = 0; i < anchor.size(); ++i) {
    if (i) os << ",";
    os << anchor[i];
  }
  os << ")";
  return os.str();
}

Box TranslatedCube::to_box() const {
  Box b = base.to_box();
  return b.translated(shift);
}

ExactScalar TranslatedCube::measure() const { return base.measure(); }

DyadicCube locate_cube(const Point& x, int r) {
  if (r < 0) throw SchemaError("locate_cube: negative precision");
  std::vector<BigInt> u;
  u.reserve(x.coords.size());
  for (const auto& c : x.coords) {
    if (c < 0 || c >= 1)
      throw SchemaError("locate_cube: coordinate " + to_string(c) + " outside [0,1)");
    u.push_back(floor_rational(c * (BigInt(1) << static_cast<unsigned>(r))));
  }
  return DyadicCube(r, std::move(u), CubeMode::half_open);
}

TranslatedCube locate_translated(const Point& x, int r, const std::vector<ExactScalar>& t) {
  if (r < 0) throw SchemaError("locate_translated: negative precision");
  check_dim(x.dim(), static_cast<int>(t.size()), "locate_translated");
  std::vector<BigInt> u;
  u.reserve(x.coords.size());
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    Rational y = (x.coords[i] - t[i].to_rational()) * (BigInt(1) << static_cast<unsigned>(r));
    // Zero-shift axes follow the half-open (lower-closed) convention; shifted
    // axes are genuinely open, so a grid hit is a boundary condition.
    if (is_integer(y) && !t[i].is_zero())
      throw BoundaryError("point lies on a face of the translated grid (axis " +
                          std::to_string(i) + ")");
    u.push_back(floor_rational(y));
  }
  TranslatedCube out;
  out.base = DyadicCube(r, std::move(u), CubeMode::open);
  out.shift = t;
  return out;
}

std::vector<std::vector<ExactScalar>> all_shifts(int dim) {
  std::vector<std::vector<ExactScalar>> out;
  std::vector<ExactScalar> vals = {ExactScalar::third(-1), ExactScalar(0), ExactScalar::third(1)};
  std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
  while (true) {
    std::vector<ExactScalar> t;
    t.reserve(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) t.push_back(vals[idx[static_cast<std::size_t>(i)]]);
    out.push_back(std::move(t));
    int ax = dim - 1;
    for (; ax >= 0; --ax) {
      auto& j = idx[static_cast<std::size_t>(ax)];
      if (++j < 3) break;
      j = 0;
    }
    if (ax < 0) break;
  }
  return out;
}

}  // namespace wrand
