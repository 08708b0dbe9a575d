#include "wrand/step_function.hpp"

#include <algorithm>
#include <sstream>

#include "wrand/errors.hpp"

namespace wrand {

namespace {

BigInt pow_int(const BigInt& base, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

bool boxes_disjoint(const Box& a, const Box& b) {
  auto c = a.intersect(b);
  return !c || c->empty();
}

}  // namespace

SimpleStepFunction::SimpleStepFunction(int dim, std::vector<Piece> pieces,
                                       unsigned breakpoint_precision)
    : dim_(dim), precision_(breakpoint_precision) {
  Box unit = Box::unit(dim);
  for (auto& p : pieces) {
    if (p.box.dim() != dim) throw SchemaError("step function piece dimension mismatch");
    if (p.box.empty()) continue;
    if (!p.box.endpoints_dyadic(precision_))
      throw SchemaError("piece endpoints not dyadic at precision " + std::to_string(precision_) +
                        ": " + p.box.to_string());
    if (!p.value.is_dyadic()) throw SchemaError("piece value not dyadic");
    auto clipped = p.box.intersect(unit);
    if (!clipped || !(clipped->measure() == p.box.measure()))
      throw SchemaError("piece extends outside the unit cube: " + p.box.to_string());
    pieces_.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    for (std::size_t j = i + 1; j < pieces_.size(); ++j)
      if (!boxes_disjoint(pieces_[i].box, pieces_[j].box))
        throw SchemaError("pieces overlap: " + pieces_[i].box.to_string() + " and " +
                          pieces_[j].box.to_string());
}

SimpleStepFunction SimpleStepFunction::zero(int dim) { return SimpleStepFunction(dim, {}, 0); }

SimpleStepFunction SimpleStepFunction::constant(int dim, const ExactScalar& value) {
  if (value.is_zero()) return zero(dim);
  return SimpleStepFunction(dim, {Piece{Box::unit(dim), value}}, 0);
}

SimpleStepFunction SimpleStepFunction::indicator(const Box& box, const ExactScalar& value) {
  unsigned prec = 0;
  for (const auto& iv : box.axes()) {
    if (!iv.lo.is_dyadic() || !iv.hi.is_dyadic()) throw SchemaError("indicator box not dyadic");
    prec = std::max({prec, iv.lo.dyadic_precision(), iv.hi.dyadic_precision()});
  }
  if (value.is_zero() || box.empty()) return SimpleStepFunction(box.dim(), {}, prec);
  return SimpleStepFunction(box.dim(), {Piece{box, value}}, prec);
}

SimpleStepFunction SimpleStepFunction::combine(
    const SimpleStepFunction& f, const SimpleStepFunction& g,
    const std::function<ExactScalar(const ExactScalar&, const ExactScalar&)>& op) {
  if (f.dim() != g.dim()) throw SchemaError("combine: dimension mismatch");
  int dim = f.dim();
  // Refinement grid from both functions' breakpoints plus the unit cube.
  std::vector<std::vector<ExactScalar>> cuts(static_cast<std::size_t>(dim));
  for (int ax = 0; ax < dim; ++ax) {
    auto& c = cuts[static_cast<std::size_t>(ax)];
    c.push_back(ExactScalar(0));
    c.push_back(ExactScalar(1));
    for (const auto* fn : {&f, &g})
      for (const auto& p : fn->pieces()) {
        c.push_back(p.box.axis(ax).lo);
        c.push_back(p.box.axis(ax).hi);
      }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }

  auto cell_value = [&](const SimpleStepFunction& fn, const Point& center) {
    for (const auto& p : fn.pieces())
      if (p.box.interior_contains(center)) return p.value;
    return ExactScalar(0);
  };

  std::vector<Piece> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
  while (true) {
    std::vector<ExactScalar> lo(static_cast<std::size_t>(dim)), hi(static_cast<std::size_t>(dim));
    std::vector<Rational> mid(static_cast<std::size_t>(dim));
    bool degenerate = false;
    for (int ax = 0; ax < dim; ++ax) {
      const auto& c = cuts[static_cast<std::size_t>(ax)];
      std::size_t j = idx[static_cast<std::size_t>(ax)];
      lo[static_cast<std::size_t>(ax)] = c[j];
      hi[static_cast<std::size_t>(ax)] = c[j + 1];
      if (c[j] == c[j + 1]) degenerate = true;
      mid[static_cast<std::size_t>(ax)] = (c[j].to_rational() + c[j + 1].to_rational()) / 2;
    }
    if (!degenerate) {
      Point center(mid);
      ExactScalar v = op(cell_value(f, center), cell_value(g, center));
      if (!v.is_zero()) out.push_back(Piece{Box::open(lo, hi), v});
    }
    int ax = 0;
    for (; ax < dim; ++ax) {
      auto& j = idx[static_cast<std::size_t>(ax)];
      if (++j + 1 < cuts[static_cast<std::size_t>(ax)].size()) break;
      j = 0;
    }
    if (ax == dim) break;
  }
  return SimpleStepFunction(dim, std::move(out), std::max(f.precision_, g.precision_));
}

SimpleStepFunction SimpleStepFunction::abs() const {
  std::vector<Piece> out = pieces_;
  for (auto& p : out) p.value = p.value.abs();
  return SimpleStepFunction(dim_, std::move(out), precision_);
}

EvalResult evaluate(const SimpleStepFunction& f, const Point& d) {
  if (d.dim() != f.dim()) throw SchemaError("evaluate: dimension mismatch");
  if (!d.in_closed_unit_cube()) throw SchemaError("evaluate: point outside the unit cube");
  for (const auto& p : f.pieces()) {
    if (p.box.closure_contains(d) && !p.box.interior_contains(d)) return EvalResult{true, {}};
  }
  for (const auto& p : f.pieces())
    if (p.box.interior_contains(d)) return EvalResult{false, p.value};
  return EvalResult{false, ExactScalar(0)};
}

ExactScalar integrate(const SimpleStepFunction& f, const Box& b) {
  if (b.dim() != f.dim()) throw SchemaError("integrate: dimension mismatch");
  ExactScalar total(0);
  for (const auto& p : f.pieces()) {
    auto c = p.box.intersect(b);
    if (c && !c->empty()) total += p.value * c->measure();
  }
  return total;
}

ExactScalar l1_norm(const SimpleStepFunction& f) {
  ExactScalar total(0);
  for (const auto& p : f.pieces()) total += p.value.abs() * p.box.measure();
  return total;
}

ExactScalar l1_distance(const SimpleStepFunction& f, const SimpleStepFunction& g) {
  return l1_norm(f - g);
}

Rational average(const SimpleStepFunction& f, const Box& b) {
  ExactScalar mass = b.measure();
  if (mass.is_zero()) throw SchemaError("average over a zero-measure box");
  return integrate(f, b).to_rational() / mass.to_rational();
}

BoxUnion chebyshev_set(const SimpleStepFunction& f, const ExactScalar& eps,
                       std::uint64_t cell_budget) {
  if (!eps.is_positive()) throw SchemaError("chebyshev_set requires eps > 0");
  int dim = f.dim();
  unsigned prec = f.breakpoint_precision();
  BoxUnion out(dim);
  std::uint64_t used = 0;
  for (const auto& p : f.pieces()) {
    if (!(p.value.abs() > eps)) continue;
    // Split the piece into open cells of the breakpoint-precision grid.
    std::vector<BigInt> lo(static_cast<std::size_t>(dim)), n_cells(static_cast<std::size_t>(dim));
    std::uint64_t cells = 1;
    for (int ax = 0; ax < dim; ++ax) {
      const auto& iv = p.box.axis(ax);
      BigInt a = iv.lo.num() << (prec - iv.lo.dyadic_precision());
      BigInt b = iv.hi.num() << (prec - iv.hi.dyadic_precision());
      lo[static_cast<std::size_t>(ax)] = a;
      n_cells[static_cast<std::size_t>(ax)] = b - a;
      cells *= static_cast<std::uint64_t>(b - a);
    }
    if (cells == 0) continue;
    used += cells;
    if (used > cell_budget) throw ResourceCapError("chebyshev_set exceeds cell budget");
    std::vector<BigInt> off(static_cast<std::size_t>(dim), 0);
    while (true) {
      std::vector<BigInt> anchor(static_cast<std::size_t>(dim));
      for (int ax = 0; ax < dim; ++ax)
        anchor[static_cast<std::size_t>(ax)] = lo[static_cast<std::size_t>(ax)] + off[static_cast<std::size_t>(ax)];
      out.add(DyadicCube(static_cast<int>(prec), std::move(anchor), CubeMode::open).to_box());
      int ax = 0;
      for (; ax < dim; ++ax) {
        auto& j = off[static_cast<std::size_t>(ax)];
        if (++j < n_cells[static_cast<std::size_t>(ax)]) break;
        j = 0;
      }
      if (ax == dim) break;
    }
  }
  return out;
}

MaximalSet maximal_set(const SimpleStepFunction& f, const ExactScalar& eps, int r_max,
                       std::uint64_t translate_budget) {
  if (!eps.is_positive()) throw SchemaError("maximal_set requires eps > 0");
  if (r_max < 1) throw SchemaError("maximal_set requires r_max >= 1");
  int dim = f.dim();
  SimpleStepFunction g = f.abs();
  Box unit = Box::unit(dim);
  Box open_unit = Box::unit(dim, /*open=*/true);
  MaximalSet out{BoxUnion(dim), {}, ExactScalar(0), r_max};
  std::uint64_t used = 0;
  auto shifts = all_shifts(dim);
  for (int r = 1; r <= r_max; ++r) {
    ExactScalar cube_mass = ExactScalar::pow2(-r * dim);
    ExactScalar threshold = eps * cube_mass;
    for (const auto& t : shifts) {
      // Anchor ranges per axis: translates meeting the open unit cube.
      std::vector<BigInt> u_min(static_cast<std::size_t>(dim)), u_count(static_cast<std::size_t>(dim));
      for (int ax = 0; ax < dim; ++ax) {
        Rational t_ax = t[static_cast<std::size_t>(ax)].to_rational();
        BigInt lo = floor_rational(-t_ax * (BigInt(1) << static_cast<unsigned>(r))) - 1;
        BigInt hi = floor_rational((1 - t_ax) * (BigInt(1) << static_cast<unsigned>(r))) + 1;
        u_min[static_cast<std::size_t>(ax)] = lo;
        u_count[static_cast<std::size_t>(ax)] = hi - lo + 1;
      }
      std::vector<BigInt> off(static_cast<std::size_t>(dim), 0);
      while (true) {
        std::vector<BigInt> anchor(static_cast<std::size_t>(dim));
        for (int ax = 0; ax < dim; ++ax)
          anchor[static_cast<std::size_t>(ax)] = u_min[static_cast<std::size_t>(ax)] + off[static_cast<std::size_t>(ax)];
        TranslatedCube tc{DyadicCube(r, std::move(anchor), CubeMode::open), t};
        Box box = tc.to_box();
        auto visible = box.intersect(open_unit);
        if (visible && !visible->empty()) {
          if (++used > translate_budget) throw ResourceCapError("maximal_set exceeds translate budget");
          auto clipped = box.intersect(unit);
          if (integrate(g, *clipped) > threshold) {
            out.set.add(*clipped);
            out.translates.push_back(tc);
          }
        }
        int ax = 0;
        for (; ax < dim; ++ax) {
          auto& j = off[static_cast<std::size_t>(ax)];
          if (++j < u_count[static_cast<std::size_t>(ax)]) break;
          j = 0;
        }
        if (ax == dim) break;
      }
    }
  }
  // Straddle series tail: sum over r > r_max of 3^n 2^{np} 2^{-rn}, with the
  // geometric factor 1/(1 - 2^{-n}) rounded up to 2.
  int p = static_cast<int>(f.breakpoint_precision());
  out.tail_defect_bound =
      ExactScalar(pow_int(3, static_cast<unsigned>(dim)), 0) *
      ExactScalar::pow2(dim * p - dim * r_max - dim + 1);
  return out;
}

StraddleCount count_straddling_translates(int r, int p, int n) {
  if (r <= p) throw SchemaError("count_straddling_translates requires r > p");
  if (p < 0 || n < 1) throw SchemaError("count_straddling_translates: bad arguments");
  if (r > 26 || static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(r) > 52)
    throw ResourceCapError("straddle enumeration too large");
  BigInt two_r = BigInt(1) << static_cast<unsigned>(r);

  // Per axis shift value, the number of anchors u in [0, 2^r) whose open
  // interval contains a precision-p dyadic point.
  auto axis_count = [&](const Rational& t) {
    std::uint64_t cnt = 0;
    for (BigInt u = 0; u < two_r; ++u) {
      Rational lo = (t + Rational(u, two_r)) * (BigInt(1) << static_cast<unsigned>(p));
      Rational hi = lo + Rational(BigInt(1) << static_cast<unsigned>(p), two_r);
      BigInt g_min = floor_rational(lo) + 1;
      BigInt g_max = is_integer(hi) ? floor_rational(hi) - 1 : floor_rational(hi);
      if (g_min <= g_max) ++cnt;
    }
    return cnt;
  };

  std::uint64_t counts[3] = {axis_count(Rational(-1, 3)), axis_count(Rational(0)),
                             axis_count(Rational(1, 3))};
  std::uint64_t full = static_cast<std::uint64_t>(two_r);

  StraddleCount out;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    std::uint64_t hit = 1, enclosed = 1;
    for (int ax = 0; ax < n; ++ax) {
      std::uint64_t c = counts[idx[static_cast<std::size_t>(ax)]];
      hit *= c;
      enclosed *= full - c;
    }
    out.count += hit;
    // Not enclosed by any precision-p box: at least one axis meets the grid.
    std::uint64_t all = 1;
    for (int ax = 0; ax < n; ++ax) all *= full;
    out.not_enclosed += all - enclosed;
    int ax = 0;
    for (; ax < n; ++ax) {
      auto& j = idx[static_cast<std::size_t>(ax)];
      if (++j < 3) break;
      j = 0;
    }
    if (ax == n) break;
  }
  out.bound = pow_int(3, static_cast<unsigned>(n)) * pow_int(2, static_cast<unsigned>(n * p));
  out.within_bound = BigInt(out.count) <= out.bound;
  return out;
}

L1StepSequence::L1StepSequence(int dim, Polynomial precision_poly,
                               std::function<SimpleStepFunction(int)> gen, int stable_from,
                               std::string name)
    : dim_(dim),
      precision_poly_(std::move(precision_poly)),
      gen_(std::move(gen)),
      stable_from_(stable_from),
      name_(std::move(name)) {}

L1StepSequence L1StepSequence::constant(const SimpleStepFunction& f, std::string name) {
  Polynomial p = Polynomial::constant(static_cast<std::int64_t>(f.breakpoint_precision()));
  return L1StepSequence(f.dim(), p, [f](int) { return f; }, 1, std::move(name));
}

L1StepSequence L1StepSequence::from_list(std::vector<SimpleStepFunction> fs,
                                         Polynomial precision_poly, std::string name) {
  if (fs.empty()) throw SchemaError("L1StepSequence::from_list: empty list");
  int dim = fs.front().dim();
  for (const auto& f : fs)
    if (f.dim() != dim) throw SchemaError("L1StepSequence::from_list: dimension mismatch");
  int stable = static_cast<int>(fs.size());
  auto shared = std::make_shared<std::vector<SimpleStepFunction>>(std::move(fs));
  return L1StepSequence(
      dim, std::move(precision_poly),
      [shared](int m) {
        int i = std::min<int>(m, static_cast<int>(shared->size()));
        return (*shared)[static_cast<std::size_t>(i - 1)];
      },
      stable, std::move(name));
}

SimpleStepFunction L1StepSequence::approximant(int m) const {
  if (m < 1) throw SchemaError("approximant index must be >= 1");
  SimpleStepFunction f = gen_(m);
  if (f.dim() != dim_) throw SchemaError("approximant dimension mismatch");
  return f;
}

void L1StepSequence::verify_contract(int upto) const {
  SimpleStepFunction prev = approximant(1);
  for (int m = 1; m <= upto; ++m) {
    std::int64_t pm = precision_poly_(m);
    if (static_cast<std::int64_t>(prev.breakpoint_precision()) > pm)
      throw InvariantViolation(name_ + ": approximant " + std::to_string(m) +
                               " exceeds precision polynomial value " + std::to_string(pm));
    SimpleStepFunction next = approximant(m + 1);
    ExactScalar gap = l1_distance(prev, next);
    ExactScalar allowed = ExactScalar::pow2(-m) + ExactScalar::pow2(-m - 1);
    if (gap > allowed)
      throw InvariantViolation(name_ + ": gap certificate fails at m=" + std::to_string(m) +
                               ": " + gap.to_string() + " > " + allowed.to_string());
    prev = std::move(next);
  }
  if (stable_from_ > 0) {
    SimpleStepFunction limit = approximant(std::max(stable_from_, 1));
    for (int m = 1; m <= upto; ++m) {
      ExactScalar d = l1_distance(limit, approximant(m));
      if (d > ExactScalar::pow2(-m))
        throw InvariantViolation(name_ + ": L1 bound fails at m=" + std::to_string(m));
    }
  }
}

std::vector<ProbeRow> lebesgue_probe(const L1StepSequence& f, const Point& x, int r_max,
                                     int m_probe) {
  if (x.dim() != f.dim()) throw SchemaError("lebesgue_probe: dimension mismatch");
  SimpleStepFunction fm = f.approximant(m_probe);
  Box unit = Box::unit(f.dim());
  std::vector<ProbeRow> rows;
  for (const auto& t : all_shifts(f.dim())) {
    for (int r = 1; r <= r_max; ++r) {
      ProbeRow row;
      row.shift = t;
      row.r = r;
      try {
        TranslatedCube tc = locate_translated(x, r, t);
        auto clipped = tc.to_box().intersect(unit);
        ExactScalar mass = clipped ? integrate(fm, *clipped) : ExactScalar(0);
        row.average = mass.to_rational() / tc.measure().to_rational();
      } catch (const BoundaryError&) {
        row.boundary = true;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace wrand
