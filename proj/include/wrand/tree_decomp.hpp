#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wrand/cover_test.hpp"
#include "wrand/geometry.hpp"

namespace wrand {

struct TreeNode {
  DyadicCube cube;  // open mode; node 0 is the unit cube root
  int level = 0;
  int parent = -1;
  std::vector<int> children;
  int source_row = 0;          // m of the disjointified family the cube came from
  int source_tier = 0;         // k with the cube first appearing in S^k_m
  ExactScalar child_mass;      // exact total measure of the children
  ExactScalar child_mass_upper;  // certified bound including unmaterialized tiers
};

/// Tree of dyadic cubes rooted at the unit cube: children are subsets of their
/// parent, any two nodes are disjoint or nested, and each node's children
/// carry less than a quarter of its mass.
struct DyadicTree {
  int dim = 1;
  int k_cap = 0;
  std::string source;
  std::vector<TreeNode> nodes;

  int depth() const;
  std::vector<int> level_nodes(int level) const;
  const TreeNode& root() const { return nodes.front(); }
};

/// Splits every box into the open dyadic cubes of its own endpoint precision.
/// Throws when the split exceeds the budget or a box is not dyadic.
std::vector<DyadicCube> box_union_to_cubes(const BoxUnion& u,
                                           std::uint64_t cell_budget = std::uint64_t(1) << 18);

/// Disjointification: processes rows in order, keeping each cube unless it is
/// contained in an already-kept one. Prefix unions are preserved up to
/// measure zero. Rows must not regress in granularity (a kept cube may never
/// be strictly inside a later one).
std::vector<std::vector<DyadicCube>> disjointify(const std::vector<std::vector<DyadicCube>>& rows);

struct DecomposeOptions {
  int depth = 3;
  int k_cap = 2;
  std::uint64_t node_budget = 200000;
  std::uint64_t cell_budget = std::uint64_t(1) << 18;
};

/// Builds the dyadic tree of a cover test. Each node with cube measure 2^{-rn}
/// draws children from the disjointified family S_m at m = rn + 4 (the
/// smallest m with 2^{-m} < mu(Q)/8), restricted to the node. Rows are taken
/// at re-indexed tiers so the row defect is at most 2^{-(k+m)}; the certified
/// child-mass bound (materialized mass plus tier tail) must stay below
/// mu(Q)/4 or the construction aborts.
DyadicTree decompose(const CoverTest& test, const DecomposeOptions& opts = {});

/// T^k_m: level-1 nodes with tier <= k; deeper nodes with tier <= k+3 whose
/// parent is in T^k_{m-1}.
std::vector<int> tree_array_nodes(const DyadicTree& tree, int k, int m);
BoxUnion tree_array(const DyadicTree& tree, int k, int m);

struct TreeVerdict {
  bool ok = true;
  std::string failure;
  int node_a = -1, node_b = -1;
};

/// Exhaustive check of the three tree invariants over all materialized nodes.
TreeVerdict verify_tree(const DyadicTree& tree);

struct PathProbe {
  std::vector<int> nodes;  // containment chain, excluding the root
  int depth_reached = 0;
};

/// Walks the containment chain of x down to the requested depth.
PathProbe infinite_path_probe(const DyadicTree& tree, const Point& x, int depth);

}  // namespace wrand
