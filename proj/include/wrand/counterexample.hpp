#pragma once

#include <memory>
#include <vector>

#include "wrand/step_function.hpp"
#include "wrand/tree_decomp.hpp"

namespace wrand {

/// The parity-valued function of a dyadic tree: 1 on the residual of
/// even-level nodes (node minus its children), 0 on odd-level residuals.
/// Approximants restrict the tree to the truncated arrays T^{m+2}_i, i <= m.
class OscillatingFunction {
public:
  explicit OscillatingFunction(std::shared_ptr<const DyadicTree> tree);

  const DyadicTree& tree() const { return *tree_; }
  /// The function materialized over every built node.
  const SimpleStepFunction& full() const { return full_; }
  /// f_m: parity function of the nodes in T_{m} = union of T^{m+2}_i, i <= m.
  SimpleStepFunction approximant(int m) const;
  /// View as an L1 sequence (approximants plus the full function as limit).
  L1StepSequence as_sequence(int m_max) const;

private:
  SimpleStepFunction materialize(const std::vector<bool>& in_set) const;

  std::shared_ptr<const DyadicTree> tree_;
  SimpleStepFunction full_;
};

/// Builds the oscillating function; rejects trees failing verify_tree.
OscillatingFunction synthesize(std::shared_ptr<const DyadicTree> tree);

struct OscillationRow {
  int level = 0;
  DyadicCube cube;
  Rational average;
  bool even = false;
  bool within_bound = false;  // >= 3/4 on even levels, <= 1/4 on odd
};

struct OscillationReport {
  std::vector<OscillationRow> rows;
  int depth_reached = 0;
  bool complete = false;  // reached the requested depth
};

/// Exact averages of the synthesized function along x's containment path.
OscillationReport oscillation_check(const OscillatingFunction& f, const Point& x, int depth);

/// Indicator of [0,d] on the given axis (1-based), constant across m: the
/// cube-average limit fails at any point whose axis coordinate equals d.
L1StepSequence dyadic_component_counterexample(int n, int axis, const ExactScalar& d);

struct FaceProbeRow {
  int r = 0;
  Rational left, right, centered;  // averages over cubes hugging the face
};

/// Averages of the indicator over cubes just left of, just right of, and
/// centered on the hyperplane x_axis = d, for r = 1..r_max.
std::vector<FaceProbeRow> face_oscillation_probe(int n, int axis, const ExactScalar& d, int r_max);

}  // namespace wrand
