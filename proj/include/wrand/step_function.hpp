#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wrand/geometry.hpp"
#include "wrand/polynomial.hpp"

namespace wrand {

struct Piece {
  Box box;
  ExactScalar value;
};

/// A simple step function: finitely many pairwise disjoint boxes with dyadic
/// endpoints and dyadic values; zero outside the pieces. Constant on every
/// open dyadic cube of precision >= breakpoint_precision().
class SimpleStepFunction {
public:
  SimpleStepFunction(int dim, std::vector<Piece> pieces, unsigned breakpoint_precision);

  static SimpleStepFunction zero(int dim);
  static SimpleStepFunction constant(int dim, const ExactScalar& value);
  static SimpleStepFunction indicator(const Box& box, const ExactScalar& value = ExactScalar(1));

  int dim() const { return dim_; }
  unsigned breakpoint_precision() const { return precision_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  /// Pointwise op(f-value, g-value) on the common refinement grid.
  static SimpleStepFunction combine(const SimpleStepFunction& f, const SimpleStepFunction& g,
                                    const std::function<ExactScalar(const ExactScalar&, const ExactScalar&)>& op);
  SimpleStepFunction abs() const;

  friend SimpleStepFunction operator-(const SimpleStepFunction& f, const SimpleStepFunction& g) {
    return combine(f, g, [](const ExactScalar& a, const ExactScalar& b) { return a - b; });
  }
  friend SimpleStepFunction operator+(const SimpleStepFunction& f, const SimpleStepFunction& g) {
    return combine(f, g, [](const ExactScalar& a, const ExactScalar& b) { return a + b; });
  }

private:
  int dim_;
  std::vector<Piece> pieces_;
  unsigned precision_;
};

/// Result of evaluating a step function: either a value, or the breakpoint
/// sentinel when the point lies on a piece face.
struct EvalResult {
  bool breakpoint = false;
  ExactScalar value;  // meaningful only when !breakpoint
};

/// Evaluate f at d in [0,1]^n; sentinel on piece faces, 0 on the complement.
EvalResult evaluate(const SimpleStepFunction& f, const Point& d);

/// Integral of f over B, exact.
ExactScalar integrate(const SimpleStepFunction& f, const Box& b);
/// Integral of |f| over [0,1]^n.
ExactScalar l1_norm(const SimpleStepFunction& f);
ExactScalar l1_distance(const SimpleStepFunction& f, const SimpleStepFunction& g);
/// integrate(f, B) / mu(B); throws on zero-measure B.
Rational average(const SimpleStepFunction& f, const Box& b);

/// { |f| > eps } as a union of open dyadic cells at the breakpoint precision.
BoxUnion chebyshev_set(const SimpleStepFunction& f, const ExactScalar& eps,
                       std::uint64_t cell_budget = std::uint64_t(1) << 20);

struct MaximalSet {
  BoxUnion set;                           // exceeding translates clipped to [0,1]^n
  std::vector<TranslatedCube> translates; // the exceeding translates themselves
  ExactScalar tail_defect_bound;          // straddle-series bound for precisions beyond r_max
  int r_max = 0;
};

/// Truncated Hardy-Littlewood maximal set: the union over r <= r_max and
/// t in {-1/3,0,1/3}^n of all grid translates whose |f|-average exceeds eps.
/// Averages are taken against the full translate measure 2^{-rn}; f counts as
/// zero outside the unit cube. Beyond max(r_max, breakpoint precision) only
/// translates straddling the breakpoint grid can add measure; the reported
/// tail bound dominates that series.
MaximalSet maximal_set(const SimpleStepFunction& f, const ExactScalar& eps, int r_max,
                       std::uint64_t translate_budget = std::uint64_t(1) << 22);

struct StraddleCount {
  std::uint64_t count = 0;        // translates whose interior meets the precision-p grid D_p^n
  std::uint64_t not_enclosed = 0; // translates not contained in any precision-p box
  BigInt bound;                   // 3^n 2^{np}
  bool within_bound = false;      // count <= bound
};

/// Enumerates translates I^t_r with anchors in {0..2^r-1}^n, counting those
/// whose interior contains a point of the precision-p dyadic grid. That count
/// is certified against 3^n 2^{np}. In one dimension it coincides with the
/// number of translates not enclosed by any precision-p cell; the enclosure
/// count is reported separately since it grows past the certificate for n >= 2.
StraddleCount count_straddling_translates(int r, int p, int n);

/// A sequence of simple step functions converging in L1 at rate 2^{-m}, with
/// endpoint precisions controlled by a non-decreasing polynomial.
class L1StepSequence {
public:
  L1StepSequence(int dim, Polynomial precision_poly,
                 std::function<SimpleStepFunction(int)> gen, int stable_from,
                 std::string name = "sequence");

  /// f_m = f for all m.
  static L1StepSequence constant(const SimpleStepFunction& f, std::string name = "constant");
  /// f_m = fs[min(m, fs.size()) - 1]; stabilizes at the last entry.
  static L1StepSequence from_list(std::vector<SimpleStepFunction> fs, Polynomial precision_poly,
                                  std::string name = "list");

  int dim() const { return dim_; }
  const Polynomial& precision_poly() const { return precision_poly_; }
  /// First index M with f_m = f_M for all m >= M; 0 when unknown.
  int stable_from() const { return stable_from_; }
  const std::string& name() const { return name_; }

  SimpleStepFunction approximant(int m) const;

  /// Checks, for m in [1, upto]: endpoint precision <= p(m) and the
  /// consecutive-gap certificate ||f_m - f_{m+1}|| <= 2^{-m} + 2^{-m-1};
  /// for stabilized sequences also ||f_M - f_m|| <= 2^{-m}.
  void verify_contract(int upto) const;

private:
  int dim_;
  Polynomial precision_poly_;
  std::function<SimpleStepFunction(int)> gen_;
  int stable_from_;
  std::string name_;
};

struct ProbeRow {
  std::vector<ExactScalar> shift;
  int r = 0;
  bool boundary = false;  // grid-face hit; average not defined for this row
  Rational average;
};

/// Averages of f_{m_probe} over the translated cubes I^t_r(x) for every shift
/// and r <= r_max. Boundary hits are reported per row, not thrown.
std::vector<ProbeRow> lebesgue_probe(const L1StepSequence& f, const Point& x, int r_max,
                                     int m_probe);

}  // namespace wrand
