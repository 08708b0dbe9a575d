#include "wrand/counterexample.hpp"

#include <algorithm>

#include "wrand/errors.hpp"

namespace wrand {

namespace {

// Residual cells of a node: the node box split along its selected children's
// faces, keeping cells outside every selected child. Cells come out open;
// the faces lost that way are null sets.
void append_residual_pieces(const DyadicTree& tree, int node_id,
                            const std::vector<bool>& in_set, std::vector<Piece>* out) {
  const TreeNode& node = tree.nodes[static_cast<std::size_t>(node_id)];
  int dim = tree.dim;
  Box nb = node.cube.to_box();
  std::vector<Box> child_boxes;
  for (int cid : node.children)
    if (in_set[static_cast<std::size_t>(cid)])
      child_boxes.push_back(tree.nodes[static_cast<std::size_t>(cid)].cube.to_box());

  std::vector<std::vector<ExactScalar>> cuts(static_cast<std::size_t>(dim));
  for (int ax = 0; ax < dim; ++ax) {
    auto& c = cuts[static_cast<std::size_t>(ax)];
    c.push_back(nb.axis(ax).lo);
    c.push_back(nb.axis(ax).hi);
    for (const auto& cb : child_boxes) {
      c.push_back(cb.axis(ax).lo);
      c.push_back(cb.axis(ax).hi);
    }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }

  std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
  while (true) {
    std::vector<ExactScalar> lo(static_cast<std::size_t>(dim)), hi(static_cast<std::size_t>(dim));
    std::vector<Rational> mid(static_cast<std::size_t>(dim));
    for (int ax = 0; ax < dim; ++ax) {
      const auto& c = cuts[static_cast<std::size_t>(ax)];
      std::size_t j = idx[static_cast<std::size_t>(ax)];
      lo[static_cast<std::size_t>(ax)] = c[j];
      hi[static_cast<std::size_t>(ax)] = c[j + 1];
      mid[static_cast<std::size_t>(ax)] = (c[j].to_rational() + c[j + 1].to_rational()) / 2;
    }
    Point center(mid);
    bool in_child = false;
    for (const auto& cb : child_boxes)
      if (cb.interior_contains(center)) {
        in_child = true;
        break;
      }
    if (!in_child) out->push_back(Piece{Box::open(lo, hi), ExactScalar(1)});
    int ax = 0;
    for (; ax < dim; ++ax) {
      auto& j = idx[static_cast<std::size_t>(ax)];
      if (++j + 1 < cuts[static_cast<std::size_t>(ax)].size()) break;
      j = 0;
    }
    if (ax == dim) break;
  }
}

}  // namespace

OscillatingFunction::OscillatingFunction(std::shared_ptr<const DyadicTree> tree)
    : tree_(std::move(tree)), full_(SimpleStepFunction::zero(tree_->dim)) {
  std::vector<bool> all(tree_->nodes.size(), true);
  full_ = materialize(all);
}

SimpleStepFunction OscillatingFunction::materialize(const std::vector<bool>& in_set) const {
  std::vector<Piece> pieces;
  unsigned precision = 0;
  for (std::size_t i = 0; i < tree_->nodes.size(); ++i) {
    if (!in_set[i]) continue;
    const TreeNode& node = tree_->nodes[i];
    precision = std::max(precision, static_cast<unsigned>(node.cube.precision));
    if (node.level % 2 == 0)
      append_residual_pieces(*tree_, static_cast<int>(i), in_set, &pieces);
  }
  return SimpleStepFunction(tree_->dim, std::move(pieces), precision);
}

SimpleStepFunction OscillatingFunction::approximant(int m) const {
  if (m < 1) throw SchemaError("approximant index must be >= 1");
  std::vector<bool> in_set(tree_->nodes.size(), false);
  in_set[0] = true;
  for (int level = 1; level <= std::min(m, tree_->depth()); ++level)
    for (int id : tree_array_nodes(*tree_, m + 2, level)) in_set[static_cast<std::size_t>(id)] = true;
  return materialize(in_set);
}

L1StepSequence OscillatingFunction::as_sequence(int m_max) const {
  std::vector<SimpleStepFunction> fs;
  for (int m = 1; m <= m_max; ++m) fs.push_back(approximant(m));
  fs.push_back(full_);
  unsigned prec = full_.breakpoint_precision();
  return L1StepSequence::from_list(std::move(fs), Polynomial::constant(static_cast<std::int64_t>(prec)),
                                   "oscillating counterexample");
}

OscillatingFunction synthesize(std::shared_ptr<const DyadicTree> tree) {
  if (!tree) throw SchemaError("synthesize: null tree");
  TreeVerdict v = verify_tree(*tree);
  if (!v.ok) throw InvariantViolation("synthesize: tree fails verification: " + v.failure);
  return OscillatingFunction(std::move(tree));
}

OscillationReport oscillation_check(const OscillatingFunction& f, const Point& x, int depth) {
  OscillationReport rep;
  const DyadicTree& tree = f.tree();
  PathProbe probe = infinite_path_probe(tree, x, depth);
  rep.depth_reached = probe.depth_reached;
  rep.complete = probe.depth_reached >= depth;

  Rational three_quarters(3, 4), one_quarter(1, 4);
  auto row_for = [&](int node_id) {
    const TreeNode& node = tree.nodes[static_cast<std::size_t>(node_id)];
    OscillationRow row;
    row.level = node.level;
    row.cube = node.cube;
    row.even = node.level % 2 == 0;
    Box b = node.cube.to_box();
    row.average = integrate(f.full(), b).to_rational() / b.measure().to_rational();
    row.within_bound = row.even ? row.average >= three_quarters : row.average <= one_quarter;
    return row;
  };
  rep.rows.push_back(row_for(0));
  for (int id : probe.nodes) rep.rows.push_back(row_for(id));
  return rep;
}

L1StepSequence dyadic_component_counterexample(int n, int axis, const ExactScalar& d) {
  if (axis < 1 || axis > n) throw SchemaError("axis out of range");
  if (!d.is_dyadic()) throw SchemaError("face coordinate must be dyadic");
  if (!(d > ExactScalar(0)) || !(d < ExactScalar(1)))
    throw SchemaError("face coordinate must be in (0,1); the limit exists at 0 and 1");
  std::vector<ExactScalar> lo(static_cast<std::size_t>(n), ExactScalar(0));
  std::vector<ExactScalar> hi(static_cast<std::size_t>(n), ExactScalar(1));
  hi[static_cast<std::size_t>(axis - 1)] = d;
  SimpleStepFunction f = SimpleStepFunction::indicator(Box::closed(lo, hi));
  return L1StepSequence::constant(f, "half-space indicator");
}

std::vector<FaceProbeRow> face_oscillation_probe(int n, int axis, const ExactScalar& d,
                                                 int r_max) {
  L1StepSequence seq = dyadic_component_counterexample(n, axis, d);
  SimpleStepFunction f = seq.approximant(1);
  int ax = axis - 1;
  std::vector<FaceProbeRow> rows;
  for (int r = 1; r <= r_max; ++r) {
    ExactScalar side = ExactScalar::pow2(-r);
    ExactScalar half = ExactScalar::pow2(-r - 1);
    if (d - side < ExactScalar(0) || d + side > ExactScalar(1)) continue;
    auto cube_with_axis = [&](const ExactScalar& lo_ax, const ExactScalar& hi_ax) {
      std::vector<ExactScalar> lo(static_cast<std::size_t>(n), ExactScalar(0));
      std::vector<ExactScalar> hi(static_cast<std::size_t>(n), side);
      lo[static_cast<std::size_t>(ax)] = lo_ax;
      hi[static_cast<std::size_t>(ax)] = hi_ax;
      return Box::open(lo, hi);
    };
    FaceProbeRow row;
    row.r = r;
    row.left = average(f, cube_with_axis(d - side, d));
    row.right = average(f, cube_with_axis(d, d + side));
    row.centered = average(f, cube_with_axis(d - half, d + half));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace wrand
