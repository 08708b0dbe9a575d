#include "wrand/tree_decomp.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "wrand/errors.hpp"

namespace wrand {

namespace {

// Containment of dyadic cubes by anchor arithmetic; equal cubes count.
bool cube_inside(const DyadicCube& inner, const DyadicCube& outer) {
  return outer.contains_cube(inner);
}

struct CubeKey {
  int precision;
  std::vector<BigInt> anchor;
  bool operator<(const CubeKey& o) const {
    if (precision != o.precision) return precision < o.precision;
    return anchor < o.anchor;
  }
};

CubeKey key_of(const DyadicCube& c) { return CubeKey{c.precision, c.anchor}; }

}  // namespace

int DyadicTree::depth() const {
  int d = 0;
  for (const auto& n : nodes) d = std::max(d, n.level);
  return d;
}

std::vector<int> DyadicTree::level_nodes(int level) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].level == level) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<DyadicCube> box_union_to_cubes(const BoxUnion& u, std::uint64_t cell_budget) {
  std::vector<DyadicCube> out;
  std::uint64_t used = 0;
  int dim = u.dim();
  for (const auto& b : u.boxes()) {
    unsigned prec = 0;
    for (const auto& iv : b.axes()) {
      if (!iv.lo.is_dyadic() || !iv.hi.is_dyadic())
        throw SchemaError("box_union_to_cubes: endpoints not dyadic: " + b.to_string());
      prec = std::max({prec, iv.lo.dyadic_precision(), iv.hi.dyadic_precision()});
    }
    std::vector<BigInt> lo(static_cast<std::size_t>(dim));
    std::vector<BigInt> cnt(static_cast<std::size_t>(dim));
    std::uint64_t cells = 1;
    bool degenerate = false;
    for (int ax = 0; ax < dim; ++ax) {
      const auto& iv = b.axis(ax);
      BigInt a = iv.lo.num() << (prec - iv.lo.dyadic_precision());
      BigInt c = iv.hi.num() << (prec - iv.hi.dyadic_precision());
      if (c <= a) degenerate = true;
      lo[static_cast<std::size_t>(ax)] = a;
      cnt[static_cast<std::size_t>(ax)] = c - a;
      if (!degenerate) cells *= static_cast<std::uint64_t>(c - a);
      if (cells > cell_budget) throw ResourceCapError("box_union_to_cubes exceeds cell budget");
    }
    if (degenerate) continue;
    used += cells;
    if (used > cell_budget) throw ResourceCapError("box_union_to_cubes exceeds cell budget");
    std::vector<BigInt> off(static_cast<std::size_t>(dim), 0);
    while (true) {
      std::vector<BigInt> anchor(static_cast<std::size_t>(dim));
      for (int ax = 0; ax < dim; ++ax)
        anchor[static_cast<std::size_t>(ax)] =
            lo[static_cast<std::size_t>(ax)] + off[static_cast<std::size_t>(ax)];
      out.emplace_back(static_cast<int>(prec), std::move(anchor), CubeMode::open);
      int ax = 0;
      for (; ax < dim; ++ax) {
        auto& j = off[static_cast<std::size_t>(ax)];
        if (++j < cnt[static_cast<std::size_t>(ax)]) break;
        j = 0;
      }
      if (ax == dim) break;
    }
  }
  return out;
}

std::vector<std::vector<DyadicCube>> disjointify(const std::vector<std::vector<DyadicCube>>& rows) {
  std::vector<std::vector<DyadicCube>> out;
  std::vector<DyadicCube> kept;
  std::map<CubeKey, bool> seen;
  for (const auto& row : rows) {
    std::vector<DyadicCube> sorted = row;
    std::sort(sorted.begin(), sorted.end(),
              [](const DyadicCube& a, const DyadicCube& b) { return a.precision < b.precision; });
    std::vector<DyadicCube> accepted;
    for (const auto& cube : sorted) {
      if (seen.count(key_of(cube))) continue;
      bool covered = false;
      for (const auto& old : kept) {
        if (cube_inside(cube, old)) {
          covered = true;
          break;
        }
        if (old.precision > cube.precision && cube_inside(old, cube))
          throw InvariantViolation("disjointify: row granularity regressed at " + cube.to_string());
      }
      if (covered) continue;
      seen[key_of(cube)] = true;
      accepted.push_back(cube);
    }
    // Within-row acceptance order already guarantees disjointness: dyadic
    // cubes are nested or disjoint, and nested ones were dropped.
    kept.insert(kept.end(), accepted.begin(), accepted.end());
    out.push_back(std::move(accepted));
  }
  return out;
}

DyadicTree decompose(const CoverTest& test, const DecomposeOptions& opts) {
  if (opts.depth < 0) throw SchemaError("decompose: negative depth");
  int n = test.dim();
  DyadicTree tree;
  tree.dim = n;
  tree.k_cap = opts.k_cap;
  tree.source = to_string(test.spec().kind);

  TreeNode root;
  root.cube = DyadicCube(0, std::vector<BigInt>(static_cast<std::size_t>(n), 0), CubeMode::open);
  root.level = 0;
  tree.nodes.push_back(std::move(root));

  const SeriesTail* series = test.has_series_tail() ? &test.series() : nullptr;

  std::deque<int> frontier{0};
  while (!frontier.empty()) {
    int parent_id = frontier.front();
    frontier.pop_front();
    const DyadicCube parent_cube = tree.nodes[static_cast<std::size_t>(parent_id)].cube;
    const int parent_level = tree.nodes[static_cast<std::size_t>(parent_id)].level;
    if (parent_level >= opts.depth) continue;

    int m = parent_cube.precision * n + 4;  // smallest m with 2^{-m} < mu(Q)/8
    Box clip = parent_cube.to_box();

    // Materialize rows R^k_m at tiers re-indexed for defect <= 2^{-(k+m)}.
    std::vector<std::vector<DyadicCube>> rows;
    for (int k = 1; k <= opts.k_cap; ++k) {
      int tier = k + m;
      if (series && series->row_defect) {
        bool ok = false;
        for (; tier <= k + m + 12; ++tier) {
          if (!(series->row_defect(tier, m) > ExactScalar::pow2(-(k + m)))) {
            ok = true;
            break;
          }
        }
        if (!ok)
          throw ResourceCapError("decompose: cannot reach row defect 2^-(k+m) at k=" +
                                 std::to_string(k) + ", m=" + std::to_string(m));
      }
      rows.push_back(box_union_to_cubes(test.array().at(tier, m, clip), opts.cell_budget));
    }
    auto srows = disjointify(rows);

    ExactScalar mass(0);
    std::vector<std::pair<DyadicCube, int>> children;  // cube, tier
    for (int k = 1; k <= opts.k_cap; ++k) {
      for (const auto& cube : srows[static_cast<std::size_t>(k - 1)]) {
        if (!parent_cube.contains_cube(cube)) continue;
        mass += cube.measure();
        children.emplace_back(cube, k);
      }
    }
    // Unmaterialized tiers can add at most sum_{k > k_cap} mu(S^k_m), bounded
    // through consecutive row defects by 3 * 2^{-(k_cap+m)}.
    ExactScalar tier_tail =
        series ? ExactScalar(3) * ExactScalar::pow2(-(opts.k_cap + m)) : ExactScalar(0);
    ExactScalar upper = mass + tier_tail;
    ExactScalar quarter = parent_cube.measure() * ExactScalar(BigInt(1), 2);  // mu(Q)/4
    if (!(upper < quarter))
      throw InvariantViolation("decompose: certified child mass " + upper.to_string() +
                               " reaches mu(Q)/4 at node " + parent_cube.to_string());
    tree.nodes[static_cast<std::size_t>(parent_id)].child_mass = mass;
    tree.nodes[static_cast<std::size_t>(parent_id)].child_mass_upper = upper;

    for (auto& [cube, tier] : children) {
      if (tree.nodes.size() >= opts.node_budget)
        throw ResourceCapError("decompose exceeds node budget");
      TreeNode node;
      node.cube = cube;
      node.level = parent_level + 1;
      node.parent = parent_id;
      node.source_row = m;
      node.source_tier = tier;
      int id = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back(std::move(node));
      tree.nodes[static_cast<std::size_t>(parent_id)].children.push_back(id);
      frontier.push_back(id);
    }
  }
  return tree;
}

std::vector<int> tree_array_nodes(const DyadicTree& tree, int k, int m) {
  if (m < 1) throw SchemaError("tree_array: level must be >= 1");
  std::vector<int> prev;
  if (m == 1) {
    for (int id : tree.level_nodes(1))
      if (tree.nodes[static_cast<std::size_t>(id)].source_tier <= k) prev.push_back(id);
    return prev;
  }
  std::vector<int> parents = tree_array_nodes(tree, k, m - 1);
  std::vector<int> out;
  for (int pid : parents)
    for (int cid : tree.nodes[static_cast<std::size_t>(pid)].children)
      if (tree.nodes[static_cast<std::size_t>(cid)].source_tier <= k + 3) out.push_back(cid);
  return out;
}

BoxUnion tree_array(const DyadicTree& tree, int k, int m) {
  BoxUnion out(tree.dim);
  for (int id : tree_array_nodes(tree, k, m))
    out.add(tree.nodes[static_cast<std::size_t>(id)].cube.to_box());
  return out;
}

TreeVerdict verify_tree(const DyadicTree& tree) {
  TreeVerdict v;
  const auto& nodes = tree.nodes;
  // Children are subsets of their parent.
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (int cid : nodes[i].children) {
      if (!cube_inside(nodes[static_cast<std::size_t>(cid)].cube, nodes[i].cube)) {
        v.ok = false;
        v.failure = "child not inside parent";
        v.node_a = static_cast<int>(i);
        v.node_b = cid;
        return v;
      }
    }
  }
  // Any two nodes disjoint or nested; with dyadic cubes the only way to fail
  // is a duplicated cube in unrelated positions, or sibling duplication.
  std::map<CubeKey, int> index;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    auto key = key_of(nodes[i].cube);
    auto [it, fresh] = index.emplace(key, static_cast<int>(i));
    if (!fresh) {
      v.ok = false;
      v.failure = "duplicate cube at two nodes";
      v.node_a = it->second;
      v.node_b = static_cast<int>(i);
      return v;
    }
  }
  // Siblings pairwise disjoint (no nesting among children of one node).
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& ch = nodes[i].children;
    for (std::size_t a = 0; a < ch.size(); ++a)
      for (std::size_t b = a + 1; b < ch.size(); ++b) {
        const auto& ca = nodes[static_cast<std::size_t>(ch[a])].cube;
        const auto& cb = nodes[static_cast<std::size_t>(ch[b])].cube;
        if (cube_inside(ca, cb) || cube_inside(cb, ca)) {
          v.ok = false;
          v.failure = "overlapping siblings";
          v.node_a = ch[a];
          v.node_b = ch[b];
          return v;
        }
      }
  }
  // Child mass strictly below a quarter of the node mass.
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    ExactScalar mass(0);
    for (int cid : nodes[i].children) mass += nodes[static_cast<std::size_t>(cid)].cube.measure();
    ExactScalar quarter = nodes[i].cube.measure() * ExactScalar(BigInt(1), 2);
    if (!(mass < quarter)) {
      v.ok = false;
      v.failure = "child mass reaches mu(Q)/4";
      v.node_a = static_cast<int>(i);
      return v;
    }
  }
  return v;
}

PathProbe infinite_path_probe(const DyadicTree& tree, const Point& x, int depth) {
  PathProbe probe;
  int cur = 0;
  while (probe.depth_reached < depth) {
    int next = -1;
    for (int cid : tree.nodes[static_cast<std::size_t>(cur)].children) {
      if (tree.nodes[static_cast<std::size_t>(cid)].cube.contains_point(x)) {
        next = cid;
        break;
      }
    }
    if (next < 0) break;
    probe.nodes.push_back(next);
    probe.depth_reached += 1;
    cur = next;
  }
  return probe;
}

}  // namespace wrand
