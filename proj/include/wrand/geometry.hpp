#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wrand/exact_scalar.hpp"
#include "wrand/rational.hpp"

namespace wrand {

/// A probe point. Coordinates may be arbitrary exact rationals.
struct Point {
  std::vector<Rational> coords;

  Point() = default;
  explicit Point(std::vector<Rational> c) : coords(std::move(c)) {}
  static Point parse(const std::string& comma_separated);

  int dim() const { return static_cast<int>(coords.size()); }
  bool in_closed_unit_cube() const;
  /// True when the given coordinate is a dyadic rational.
  bool coord_is_dyadic(int axis) const;
};

/// Thrown when a probe point sits on a grid face and a unique cell cannot be chosen.
class BoundaryError : public std::runtime_error {
public:
  explicit BoundaryError(const std::string& what) : std::runtime_error(what) {}
};

struct Interval {
  ExactScalar lo, hi;
  bool lo_closed = false, hi_closed = false;
};

/// Axis-aligned product of intervals with per-face openness.
class Box {
public:
  Box() = default;
  explicit Box(std::vector<Interval> axes) : axes_(std::move(axes)) { validate(); }

  /// [0,1]^n closed, or (0,1)^n open.
  static Box unit(int dim, bool open = false);
  /// Product of closed intervals [lo_i, hi_i].
  static Box closed(const std::vector<ExactScalar>& lo, const std::vector<ExactScalar>& hi);
  /// Product of open intervals (lo_i, hi_i).
  static Box open(const std::vector<ExactScalar>& lo, const std::vector<ExactScalar>& hi);

  int dim() const { return static_cast<int>(axes_.size()); }
  const Interval& axis(int i) const { return axes_[static_cast<std::size_t>(i)]; }
  const std::vector<Interval>& axes() const { return axes_; }

  /// True when the point set is empty.
  bool empty() const;
  /// Product of side lengths; independent of closure flags.
  ExactScalar measure() const;

  bool contains(const Point& x) const;           // respects closure flags
  bool interior_contains(const Point& x) const;  // strict inequalities
  bool closure_contains(const Point& x) const;   // non-strict

  std::optional<Box> intersect(const Box& other) const;
  Box translated(const std::vector<ExactScalar>& shift) const;

  /// All endpoints dyadic with precision <= max_precision (third_exp == 0).
  bool endpoints_dyadic(unsigned max_precision) const;

  std::string to_string() const;

private:
  void validate() const;
  std::vector<Interval> axes_;
};

/// Tri-state set membership following the three-valued oracle convention.
enum class Membership { outside = 0, inside = 1, boundary = -1 };

/// Finite union of boxes with an exact Lebesgue measure. Overlaps are fine;
/// measure is computed on the disjoint grid induced by the endpoint breakpoints.
class BoxUnion {
public:
  explicit BoxUnion(int dim) : dim_(dim) {}
  BoxUnion(int dim, std::vector<Box> boxes);

  int dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool empty() const { return boxes_.empty(); }
  std::size_t size() const { return boxes_.size(); }

  void add(Box b);
  void add_all(const BoxUnion& other);

  ExactScalar measure() const;
  /// inside beats boundary: 1 when some box contains x in its interior,
  /// else -1 when some box closure contains x, else 0.
  Membership membership(const Point& x) const;
  BoxUnion intersect(const Box& clip) const;
  BoxUnion translated(const std::vector<ExactScalar>& shift) const;

  std::string to_string() const;

private:
  int dim_;
  std::vector<Box> boxes_;
};

/// mu(A \ B), exact.
ExactScalar measure_diff(const BoxUnion& a, const BoxUnion& b);
/// mu(A delta B), exact.
ExactScalar sym_diff_measure(const BoxUnion& a, const BoxUnion& b);
/// mu(A cap B), exact.
ExactScalar intersection_measure(const BoxUnion& a, const BoxUnion& b);

enum class CubeMode { half_open, open };

/// Dyadic cube at precision r and integer anchor u: sides [u_i/2^r, (u_i+1)/2^r)
/// in half-open mode, open intervals in open mode.
struct DyadicCube {
  int precision = 0;
  std::vector<BigInt> anchor;
  CubeMode mode = CubeMode::half_open;

  DyadicCube() = default;
  DyadicCube(int r, std::vector<BigInt> u, CubeMode m);

  int dim() const { return static_cast<int>(anchor.size()); }
  ExactScalar measure() const { return ExactScalar::pow2(-precision * dim()); }
  Box to_box() const;
  Point center() const;

  /// The 2^n children at precision r+1 (anchors 2u + a).
  std::vector<DyadicCube> children() const;
  /// Set containment by anchor arithmetic; requires other.precision >= precision.
  bool contains_cube(const DyadicCube& other) const;
  bool contains_point(const Point& x) const;  // mode-aware

  /// Key equality ignoring mode.
  friend bool operator==(const DyadicCube& a, const DyadicCube& b) {
    return a.precision == b.precision && a.anchor == b.anchor;
  }
  std::string to_string() const;
};

/// A dyadic cube shifted by t in {-1/3, 0, 1/3}^n: sides (t_i + u_i/2^r, t_i + (u_i+1)/2^r).
struct TranslatedCube {
  DyadicCube base;  // open mode
  std::vector<ExactScalar> shift;

  Box to_box() const;
  ExactScalar measure() const;  // 2^{-rn}, before any clipping
};

/// The unique half-open Q_r(u) containing x. Requires x in [0,1)^n.
DyadicCube locate_cube(const Point& x, int r);
/// The unique member of the t-translated open grid containing x.
/// Throws BoundaryError when x lies on a face of that grid.
TranslatedCube locate_translated(const Point& x, int r, const std::vector<ExactScalar>& t);

/// All shift vectors in {-1/3, 0, 1/3}^n, in lexicographic order.
std::vector<std::vector<ExactScalar>> all_shifts(int dim);

}  // namespace wrand
