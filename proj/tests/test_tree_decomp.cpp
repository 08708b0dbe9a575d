#include "wrand/tree_decomp.hpp"

#include "doctest.h"
#include "wrand/corpus.hpp"
#include "wrand/errors.hpp"

using namespace wrand;

namespace {

ExactScalar sc(const char* text) { return ExactScalar::from_rational(parse_rational(text)); }

DyadicCube interval_cube(int r, long u) {
  return DyadicCube(r, std::vector<BigInt>{BigInt(u)}, CubeMode::open);
}

BoxUnion cubes_to_union(int dim, const std::vector<DyadicCube>& cubes) {
  BoxUnion out(dim);
  for (const auto& c : cubes) out.add(c.to_box());
  return out;
}

}  // namespace

TEST_CASE("box_union_to_cubes splits at each box's own precision") {
  BoxUnion strip(1, {Box::open({sc("7/16")}, {sc("9/16")})});
  auto cubes = box_union_to_cubes(strip);
  CHECK(cubes.size() == 2);
  CHECK(cubes[0].precision == 4);
  CHECK(sym_diff_measure(cubes_to_union(1, cubes), strip) == ExactScalar(0));

  BoxUnion big(2, {Box::open({sc("0"), sc("0")}, {sc("1"), sc("1")})});
  CHECK(box_union_to_cubes(big).size() == 1);
  BoxUnion fine(2, {Box::open({sc("0"), sc("0")}, {sc("1"), sc("1/4")})});
  CHECK(box_union_to_cubes(fine).size() == 4);
  CHECK_THROWS_AS(box_union_to_cubes(fine, 2), ResourceCapError);
}

TEST_CASE("disjointify drops covered cubes and preserves prefix unions") {
  std::vector<std::vector<DyadicCube>> rows1{{interval_cube(1, 0)}, {interval_cube(2, 2)}};
  auto s1 = disjointify(rows1);
  CHECK(s1[0].size() == 1);
  CHECK(s1[1].size() == 1);

  // R^1 = (0,1/2), R^2 = (1/4,3/4): the surviving part of row 2 is (1/2,3/4)
  std::vector<std::vector<DyadicCube>> rows2{{interval_cube(1, 0)},
                                             {interval_cube(2, 1), interval_cube(2, 2)}};
  auto s2 = disjointify(rows2);
  REQUIRE(s2[1].size() == 1);
  CHECK(s2[1][0] == interval_cube(2, 2));

  CorpusRng rng(77);
  for (int it = 0; it < 10; ++it) {
    std::vector<std::vector<DyadicCube>> rows;
    std::vector<BoxUnion> row_unions;
    for (int k = 1; k <= 4; ++k) {
      unsigned prec = static_cast<unsigned>(2 + k);
      BoxUnion u(1);
      for (int b = 0; b < 3; ++b) {
        std::int64_t a = rng.in_range(0, (1 << prec) - 2);
        u.add(Box::open({ExactScalar(BigInt(a), prec)},
                        {ExactScalar(BigInt(a + 1 + rng.in_range(0, 1)), prec)}));
      }
      rows.push_back(box_union_to_cubes(u));
      row_unions.push_back(u);
    }
    auto s = disjointify(rows);
    BoxUnion r_prefix(1), s_prefix(1);
    for (int k = 0; k < 4; ++k) {
      r_prefix.add_all(row_unions[static_cast<std::size_t>(k)]);
      s_prefix.add_all(cubes_to_union(1, s[static_cast<std::size_t>(k)]));
      CHECK(sym_diff_measure(r_prefix, s_prefix) == ExactScalar(0));
    }
    std::vector<DyadicCube> all;
    for (const auto& row : s) all.insert(all.end(), row.begin(), row.end());
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        CHECK(!all[i].contains_cube(all[j]));
        CHECK(!all[j].contains_cube(all[i]));
      }
  }
}

TEST_CASE("empty tests decompose to the bare root") {
  CoverTest t = custom_test(1, {});
  DyadicTree tree = decompose(t, {3, 2, 1000, 1 << 16});
  CHECK(tree.nodes.size() == 1);
  CHECK(verify_tree(tree).ok);
  CHECK(infinite_path_probe(tree, Point::parse("1/3"), 3).depth_reached == 0);
}

TEST_CASE("nested chain decomposes to a path with the stated child rule") {
  CoverTest t = nested_cube_test(Point::parse("1/3,1/3"));
  DecomposeOptions opts;
  opts.depth = 5;
  opts.k_cap = 2;
  DyadicTree tree = decompose(t, opts);
  CHECK(tree.depth() == 5);
  CHECK(verify_tree(tree).ok);
  for (int level = 1; level <= 5; ++level) CHECK(tree.level_nodes(level).size() == 1);
  CHECK(tree.nodes[1].source_row == 4);  // first m with 2^-m < mu(root)/8
  PathProbe probe = infinite_path_probe(tree, Point::parse("1/3,1/3"), 5);
  CHECK(probe.depth_reached == 5);
  for (const auto& node : tree.nodes)
    if (!node.children.empty())
      CHECK(node.child_mass_upper < node.cube.measure() * sc("1/4"));
}

TEST_CASE("one-dimensional nested chain matches the precision-4 example") {
  CoverTest t = nested_cube_test(Point::parse("1/3"));
  DecomposeOptions opts;
  opts.depth = 2;
  opts.k_cap = 2;
  DyadicTree tree = decompose(t, opts);
  REQUIRE(tree.depth() == 2);
  const TreeNode& level1 = tree.nodes[static_cast<std::size_t>(tree.level_nodes(1)[0])];
  CHECK(level1.cube.precision == 4);
  // a node of measure 2^-4 pulls children from m = 8
  const TreeNode& level2 = tree.nodes[static_cast<std::size_t>(tree.level_nodes(2)[0])];
  CHECK(level2.source_row == 8);
}

TEST_CASE("avoidance tree: invariants hold and a deep dyadic rides a path") {
  CoverTest t = dyadic_avoidance_test(1, 1);
  DecomposeOptions opts;
  opts.depth = 2;
  opts.k_cap = 1;
  opts.node_budget = 100000;
  DyadicTree tree = decompose(t, opts);
  CHECK(tree.depth() == 2);
  CHECK(verify_tree(tree).ok);

  ExactScalar mass(0);
  for (int id : tree.level_nodes(1)) {
    CHECK(tree.nodes[static_cast<std::size_t>(id)].source_row == 4);
    mass += tree.nodes[static_cast<std::size_t>(id)].cube.measure();
  }
  CHECK(mass < sc("1/4"));
  CHECK(tree.root().child_mass == mass);

  ExactScalar level2(0);
  for (int id : tree.level_nodes(2)) level2 += tree.nodes[static_cast<std::size_t>(id)].cube.measure();
  CHECK(level2 < sc("1/16"));

  // x = 1/2 + 2^-12 sits inside a strip cube at every materialized level
  PathProbe probe = infinite_path_probe(tree, Point::parse("2049/4096"), 2);
  CHECK(probe.depth_reached == 2);
}

TEST_CASE("tree arrays approximate levels with per-node control") {
  DyadicTree tree;
  tree.dim = 1;
  TreeNode root;
  root.cube = DyadicCube(0, {BigInt(0)}, CubeMode::open);
  tree.nodes.push_back(root);
  for (int i = 0; i < 4; ++i) {  // level-1 cubes of measure 2^-5, tiers 1..4
    TreeNode n;
    n.cube = interval_cube(5, 2 * i);
    n.level = 1;
    n.parent = 0;
    n.source_row = 4;
    n.source_tier = i + 1;
    tree.nodes.push_back(n);
    tree.nodes[0].children.push_back(static_cast<int>(tree.nodes.size()) - 1);
  }
  for (int i = 0; i < 2; ++i) {  // two children inside (0, 1/32), tiers 1 and 5
    TreeNode n;
    n.cube = interval_cube(11, i);
    n.level = 2;
    n.parent = 1;
    n.source_row = 9;
    n.source_tier = i == 0 ? 1 : 5;
    tree.nodes.push_back(n);
    tree.nodes[1].children.push_back(static_cast<int>(tree.nodes.size()) - 1);
  }
  REQUIRE(verify_tree(tree).ok);

  for (int k = 1; k <= 4; ++k) {
    BoxUnion level1(1);
    for (int id : tree.level_nodes(1)) level1.add(tree.nodes[static_cast<std::size_t>(id)].cube.to_box());
    ExactScalar defect = sym_diff_measure(level1, tree_array(tree, k, 1));
    CHECK(defect == ExactScalar(4 - std::min(k, 4)) * ExactScalar::pow2(-5));
    CHECK(defect <= ExactScalar::pow2(-k));

    BoxUnion level2(1);
    for (int id : tree.level_nodes(2)) level2.add(tree.nodes[static_cast<std::size_t>(id)].cube.to_box());
    CHECK(sym_diff_measure(level2, tree_array(tree, k, 2)) <= ExactScalar::pow2(-k));
  }

  // per-node truncation defect <= mu(Q)/8 2^-k once the stray tier drops out
  const TreeNode& q = tree.nodes[1];
  for (int k = 2; k <= 4; ++k) {
    BoxUnion children(1);
    for (int cid : q.children) children.add(tree.nodes[static_cast<std::size_t>(cid)].cube.to_box());
    BoxUnion ck(1);
    for (int cid : q.children)
      if (tree.nodes[static_cast<std::size_t>(cid)].source_tier <= k + 3)
        ck.add(tree.nodes[static_cast<std::size_t>(cid)].cube.to_box());
    CHECK(measure_diff(children, ck) <=
          q.cube.measure() * ExactScalar::pow2(-3) * ExactScalar::pow2(-k));
  }
}

TEST_CASE("verify_tree flags injected violations") {
  DyadicTree tree;
  tree.dim = 1;
  TreeNode root;
  root.cube = DyadicCube(0, {BigInt(0)}, CubeMode::open);
  tree.nodes.push_back(root);
  TreeNode a, b;
  a.cube = interval_cube(1, 0);
  a.level = 1;
  a.parent = 0;
  b.cube = interval_cube(2, 1);  // nested inside a
  b.level = 1;
  b.parent = 0;
  tree.nodes.push_back(a);
  tree.nodes.push_back(b);
  tree.nodes[0].children = {1, 2};
  TreeVerdict v = verify_tree(tree);
  CHECK(!v.ok);
  CHECK(v.failure == "overlapping siblings");
  CHECK(v.node_a == 1);
  CHECK(v.node_b == 2);

  DyadicTree tree2;
  tree2.dim = 1;
  tree2.nodes.push_back(root);
  TreeNode c;
  c.cube = interval_cube(3, 1);
  c.level = 1;
  c.parent = 0;
  tree2.nodes.push_back(c);
  tree2.nodes[0].children = {1};
  TreeNode d;
  d.cube = interval_cube(3, 6);  // not inside (1/8, 1/4)
  d.level = 2;
  d.parent = 1;
  tree2.nodes.push_back(d);
  tree2.nodes[1].children = {2};
  TreeVerdict v2 = verify_tree(tree2);
  CHECK(!v2.ok);
  CHECK(v2.failure == "child not inside parent");

  DyadicTree tree3;
  tree3.dim = 1;
  tree3.nodes.push_back(root);
  for (int i = 0; i < 2; ++i) {
    TreeNode n;
    n.cube = interval_cube(1, i);
    n.level = 1;
    n.parent = 0;
    tree3.nodes.push_back(n);
    tree3.nodes[0].children.push_back(i + 1);
  }
  TreeVerdict v3 = verify_tree(tree3);
  CHECK(!v3.ok);
  CHECK(v3.failure == "child mass reaches mu(Q)/4");
}

TEST_CASE("gap tests with vanished unions decompose to the bare root") {
  Box cell = Box::closed({sc("0")}, {sc("1/16")});
  std::vector<SimpleStepFunction> fs;
  for (int m = 1; m <= 6; ++m)
    fs.push_back(m == 5 ? SimpleStepFunction::indicator(cell, sc("1/4"))
                        : SimpleStepFunction::zero(1));
  auto f = std::make_shared<L1StepSequence>(
      L1StepSequence::from_list(std::move(fs), Polynomial::constant(4), "pulse"));
  DyadicTree ct = decompose(cauchy_gap_test(f, 8), {3, 2, 1000, 1 << 16});
  CHECK(ct.nodes.size() == 1);
  DyadicTree mt = decompose(maximal_gap_test(f, 6, 2, 6), {3, 2, 1000, 1 << 16});
  CHECK(mt.nodes.size() == 1);
  CHECK(verify_tree(ct).ok);
  CHECK(verify_tree(mt).ok);
}
