#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wrand/cover_test.hpp"
#include "wrand/geometry.hpp"

namespace wrand {

/// A non-negative function on the half-open dyadic cubes of [0,1)^n obeying
/// the averaging law: the value at a cube equals the mean of its 2^n children.
/// Evaluators reject anchors outside {0..2^r-1}^n.
struct DyadicMartingale {
  int dim = 1;
  std::string description;
  /// Exact value; for truncated materializations this is exactly the
  /// martingale of the truncated set (itself a martingale), with the
  /// truncation recorded in `description` and `exact_tail_bound`.
  std::function<ExactScalar(const DyadicCube&)> eval_exact;
  /// |eval_approx(s, Q) - d(Q)| <= 2^{-s} against the untruncated value.
  std::function<ExactScalar(int s, const DyadicCube&)> eval_approx;
  /// Bound on the initial-capital mass missing from eval_exact's truncation.
  ExactScalar exact_tail_bound;

  bool has_exact() const { return static_cast<bool>(eval_exact); }
  bool has_approx() const { return static_cast<bool>(eval_approx); }
};

struct AveragingReport {
  bool ok = true;
  DyadicCube violating;      // first cube violating the averaging law
  ExactScalar lhs, rhs;      // values at the violation
  std::uint64_t cubes_checked = 0;
};

/// Checks the averaging law exactly on every cube with precision < r_max.
AveragingReport verify_averaging(const DyadicMartingale& d, int r_max,
                                 std::uint64_t cube_budget = std::uint64_t(1) << 20);

/// Component martingale of a cover test: d_m(Q) = mu(U_m cap Q) / mu(Q),
/// materialized at the given index cap (exact for finite or vanishing tails).
DyadicMartingale test_component_martingale(const CoverTest& test, int m, int index_cap);

/// Smallest m from which U_m is certified empty, when that is decidable.
std::optional<int> vanishing_from(const CoverTest& test);

/// The summed martingale d = sum_m d_m. The approximate evaluator follows the
/// truncated-sum construction: components m <= s + nr + 1, each estimated to
/// 2^{-s-nr-2}. The exact evaluator exists when the test's tail vanishes.
DyadicMartingale sum_martingale(const CoverTest& test, int index_cap,
                                std::uint64_t cell_budget = std::uint64_t(1) << 22);

struct CapitalRow {
  int r = 0;
  DyadicCube cube;
  ExactScalar value;       // exact truncated value at the cube
  ExactScalar tail_bound;  // certified bound on what the truncation may hide
  int m_cap = 0;           // number of summed components
};

struct CapitalTrajectory {
  Point x;
  std::vector<CapitalRow> rows;
  int index_cap = 0;
};

/// Capital trajectory of the summed test martingale along x's cube chain.
/// m_cap = 0 selects components adaptively (rn + 3) so the per-row tail bound
/// stays below 1/4. The library reports the finite trajectory only; whether
/// the capital diverges is the caller's judgment.
CapitalTrajectory test_capital(const CoverTest& test, const Point& x, int r_max, int m_cap = 0,
                               int index_cap = 16);

/// Plain trajectory of any martingale with an exact evaluator.
std::vector<CapitalRow> capital(const DyadicMartingale& d, const Point& x, int r_max);

}  // namespace wrand
