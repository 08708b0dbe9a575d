#include "wrand/martingale.hpp"

#include <map>

#include "wrand/errors.hpp"

namespace wrand {

namespace {

void check_unit_anchor(const DyadicCube& q) {
  BigInt limit = BigInt(1) << static_cast<unsigned>(q.precision);
  for (const auto& u : q.anchor)
    if (u < 0 || u >= limit)
      throw SchemaError("martingale evaluated outside the unit-cube index set: " + q.to_string());
}

// mu(U_m cap region) residue above the materialized prefix, per test kind.
ExactScalar tail_in_region(const CoverTest& test, const CoverTest::Prefix& prefix,
                           const Box& region) {
  if (!test.has_series_tail()) return ExactScalar(0);
  if (prefix.tail_bound.is_zero()) return ExactScalar(0);
  if (test.spec().kind == TestKind::avoidance) {
    // Strips beyond index K inside the region: at level i at most
    // floor(w 2^i) + 2 strips of width 2^{-2i-1}, cross-section bounded by the
    // region's extent on the other axes.
    int K = prefix.last_index;
    int ax = test.spec().axis - 1;
    ExactScalar w = region.axis(ax).hi - region.axis(ax).lo;
    ExactScalar cross(1);
    for (int k = 0; k < test.dim(); ++k)
      if (k != ax) cross *= min(region.axis(k).hi - region.axis(k).lo, ExactScalar(1));
    ExactScalar bound = (w * ExactScalar::pow2(-K - 1) + ExactScalar::pow2(-2 * K)) * cross;
    return min(bound, prefix.tail_bound);
  }
  return prefix.tail_bound;
}

}  // namespace

AveragingReport verify_averaging(const DyadicMartingale& d, int r_max,
                                 std::uint64_t cube_budget) {
  if (!d.has_exact()) throw SchemaError("verify_averaging needs an exact evaluator");
  if (r_max < 1) throw SchemaError("verify_averaging: r_max must be >= 1");
  int n = d.dim;
  std::uint64_t total = 0;
  for (int r = 0; r < r_max; ++r) {
    if (static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(n) > 50)
      throw ResourceCapError("verify_averaging: grid too deep");
    total += std::uint64_t(1) << static_cast<unsigned>(r * n);
    if (total > cube_budget) throw ResourceCapError("verify_averaging exceeds cube budget");
  }

  AveragingReport rep;
  ExactScalar scale = ExactScalar::pow2(-n);
  for (int r = 0; r < r_max; ++r) {
    std::vector<BigInt> u(static_cast<std::size_t>(n), 0);
    BigInt limit = BigInt(1) << static_cast<unsigned>(r);
    while (true) {
      DyadicCube q(r, u, CubeMode::half_open);
      ExactScalar lhs = d.eval_exact(q);
      ExactScalar sum(0);
      for (const auto& child : q.children()) sum += d.eval_exact(child);
      ExactScalar rhs = scale * sum;
      ++rep.cubes_checked;
      if (!(lhs == rhs)) {
        rep.ok = false;
        rep.violating = q;
        rep.lhs = lhs;
        rep.rhs = rhs;
        return rep;
      }
      int ax = 0;
      for (; ax < n; ++ax) {
        auto& j = u[static_cast<std::size_t>(ax)];
        if (++j < limit) break;
        j = 0;
      }
      if (ax == n) break;
    }
  }
  return rep;
}

DyadicMartingale test_component_martingale(const CoverTest& test, int m, int index_cap) {
  DyadicMartingale d;
  d.dim = test.dim();
  auto prefix = std::make_shared<CoverTest::Prefix>(test.prefix(m, index_cap));
  d.exact_tail_bound = prefix->tail_bound;
  d.description = "component m=" + std::to_string(m) +
                  (prefix->last_index > 0 ? " (terms through " + std::to_string(prefix->last_index) + ")"
                                          : "");
  int n = test.dim();
  d.eval_exact = [prefix, n](const DyadicCube& q) {
    check_unit_anchor(q);
    ExactScalar mass = prefix->set.intersect(q.to_box()).measure();
    return mass * ExactScalar::pow2(q.precision * n);
  };
  auto shared_test = std::make_shared<CoverTest>(test);
  d.eval_approx = [shared_test, m, n](int s, const DyadicCube& q) {
    check_unit_anchor(q);
    ExactScalar est = measure_estimate(*shared_test, s + q.precision * n, q.precision, q.anchor, m);
    return est * ExactScalar::pow2(q.precision * n);
  };
  return d;
}

std::optional<int> vanishing_from(const CoverTest& test) {
  if (test.has_series_tail()) {
    const auto& ser = test.series();
    if (ser.empty_from <= 0) return std::nullopt;
    for (int m = 1; m <= 1 << 20; ++m)
      if (ser.start(m) >= ser.empty_from) return m;
    return std::nullopt;
  }
  if (!test.spec().custom_sets.empty())
    return static_cast<int>(test.spec().custom_sets.size()) + 1;
  return std::nullopt;  // nested chains never vanish

}

DyadicMartingale sum_martingale(const CoverTest& test, int index_cap,
                                std::uint64_t cell_budget) {
  DyadicMartingale d;
  int n = test.dim();
  d.dim = n;
  d.description = "sum martingale of " + to_string(test.spec().kind) + " test";

  auto shared_test = std::make_shared<CoverTest>(test);
  d.eval_approx = [shared_test, n, cell_budget](int s, const DyadicCube& q) {
    check_unit_anchor(q);
    int r = q.precision;
    ExactScalar scale = ExactScalar::pow2(r * n);
    ExactScalar total(0);
    int m_count = s + n * r + 1;
    for (int m = 1; m <= m_count; ++m)
      total += scale * measure_estimate(*shared_test, s + n * r + 2, r, q.anchor, m, cell_budget);
    return total;
  };

  if (auto m_star = vanishing_from(test)) {
    int cap = index_cap;
    if (test.has_series_tail()) cap = std::max(cap, test.series().empty_from - 1);
    std::vector<CoverTest::Prefix> prefixes;
    for (int m = 1; m < *m_star; ++m) {
      auto p = test.prefix(m, cap);
      if (!p.tail_bound.is_zero())
        throw InvariantViolation("sum martingale: component " + std::to_string(m) +
                                 " not exactly materialized");
      prefixes.push_back(std::move(p));
    }
    auto shared = std::make_shared<std::vector<CoverTest::Prefix>>(std::move(prefixes));
    d.eval_exact = [shared, n](const DyadicCube& q) {
      check_unit_anchor(q);
      ExactScalar scale = ExactScalar::pow2(q.precision * n);
      ExactScalar total(0);
      Box qb = q.to_box();
      for (const auto& p : *shared) total += scale * p.set.intersect(qb).measure();
      return total;
    };
    d.exact_tail_bound = ExactScalar(0);
    d.description += " (exact; components vanish from m=" + std::to_string(*m_star) + ")";
  }
  return d;
}

CapitalTrajectory test_capital(const CoverTest& test, const Point& x, int r_max, int m_cap,
                               int index_cap) {
  if (x.dim() != test.dim()) throw SchemaError("test_capital: dimension mismatch");
  int n = test.dim();
  CapitalTrajectory out;
  out.x = x;
  out.index_cap = index_cap;
  auto m_star = vanishing_from(test);
  for (int r = 0; r <= r_max; ++r) {
    DyadicCube q = locate_cube(x, r);
    Box qb = q.to_box();
    CapitalRow row;
    row.r = r;
    row.cube = q;
    row.m_cap = m_cap > 0 ? m_cap : r * n + 3;
    if (m_star && *m_star - 1 < row.m_cap) row.m_cap = std::max(*m_star - 1, 1);
    ExactScalar scale = ExactScalar::pow2(r * n);
    ExactScalar value(0), tail(0);
    for (int m = 1; m <= row.m_cap; ++m) {
      auto prefix = test.prefix(m, index_cap, qb);
      value += scale * prefix.set.measure();
      tail += scale * tail_in_region(test, prefix, qb);
    }
    // Components beyond m_cap contribute at most 2^{rn} sum_{m > cap} mu(U_m).
    if (!(m_star && *m_star - 1 <= row.m_cap)) tail += scale * ExactScalar::pow2(-row.m_cap);
    row.value = value;
    row.tail_bound = tail;
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::vector<CapitalRow> capital(const DyadicMartingale& d, const Point& x, int r_max) {
  if (!d.has_exact()) throw SchemaError("capital needs an exact evaluator");
  if (x.dim() != d.dim) throw SchemaError("capital: dimension mismatch");
  std::vector<CapitalRow> rows;
  for (int r = 0; r <= r_max; ++r) {
    CapitalRow row;
    row.r = r;
    row.cube = locate_cube(x, r);
    row.value = d.eval_exact(row.cube);
    row.tail_bound = d.exact_tail_bound * ExactScalar::pow2(r * d.dim);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace wrand
