#include "wrand/counterexample.hpp"

#include "doctest.h"
#include "wrand/errors.hpp"

using namespace wrand;

namespace {

ExactScalar sc(const char* text) { return ExactScalar::from_rational(parse_rational(text)); }

std::shared_ptr<DyadicTree> nested_tree(const char* point, int depth) {
  CoverTest t = nested_cube_test(Point::parse(point));
  DecomposeOptions opts;
  opts.depth = depth;
  opts.k_cap = 2;
  return std::make_shared<DyadicTree>(decompose(t, opts));
}

}  // namespace

TEST_CASE("bare root synthesizes to the constant one") {
  auto tree = std::make_shared<DyadicTree>();
  tree->dim = 2;
  TreeNode root;
  root.cube = DyadicCube(0, {BigInt(0), BigInt(0)}, CubeMode::open);
  tree->nodes.push_back(root);
  OscillatingFunction f = synthesize(tree);
  CHECK(integrate(f.full(), Box::unit(2)) == ExactScalar(1));
  CHECK(average(f.full(), Box::unit(2)) == Rational(1));
  CHECK(evaluate(f.full(), Point::parse("1/3,1/5")).value == ExactScalar(1));
}

TEST_CASE("a single child flips the value on its interior") {
  auto tree = std::make_shared<DyadicTree>();
  tree->dim = 1;
  TreeNode root;
  root.cube = DyadicCube(0, {BigInt(0)}, CubeMode::open);
  tree->nodes.push_back(root);
  TreeNode child;
  child.cube = DyadicCube(3, {BigInt(2)}, CubeMode::open);  // (1/4, 3/8)
  child.level = 1;
  child.parent = 0;
  child.source_tier = 1;
  tree->nodes.push_back(child);
  tree->nodes[0].children = {1};
  OscillatingFunction f = synthesize(tree);
  CHECK(evaluate(f.full(), Point::parse("1/10")).value == ExactScalar(1));
  CHECK(evaluate(f.full(), Point::parse("3/10")).value == ExactScalar(0));
  CHECK(integrate(f.full(), Box::unit(1)) == ExactScalar(1) - ExactScalar::pow2(-3));
}

TEST_CASE("synthesize rejects invalid trees") {
  auto bad = std::make_shared<DyadicTree>();
  bad->dim = 1;
  TreeNode root;
  root.cube = DyadicCube(0, {BigInt(0)}, CubeMode::open);
  bad->nodes.push_back(root);
  for (long u : {0L, 1L}) {
    TreeNode n;
    n.cube = DyadicCube(1, {BigInt(u)}, CubeMode::open);
    n.level = 1;
    n.parent = 0;
    bad->nodes.push_back(n);
  }
  bad->nodes[0].children = {1, 2};
  CHECK_THROWS_AS(synthesize(bad), InvariantViolation);
}

TEST_CASE("oscillation along the nested path crosses 3/4 and 1/4") {
  auto tree = nested_tree("1/3,1/3", 5);
  OscillatingFunction f = synthesize(tree);
  OscillationReport rep = oscillation_check(f, Point::parse("1/3,1/3"), 5);
  CHECK(rep.complete);
  REQUIRE(rep.rows.size() == 6);
  for (const auto& row : rep.rows) {
    CHECK(row.within_bound);
    if (row.even)
      CHECK(row.average >= Rational(3, 4));
    else
      CHECK(row.average <= Rational(1, 4));
  }
  // a point off the path yields a partial report
  OscillationReport partial = oscillation_check(f, Point::parse("9/10,9/10"), 5);
  CHECK(!partial.complete);
  CHECK(partial.depth_reached == 0);
}

TEST_CASE("parity integration bounds hold node by node") {
  auto tree = nested_tree("1/3,1/3", 4);
  OscillatingFunction f = synthesize(tree);
  for (const auto& node : tree->nodes) {
    Box qb = node.cube.to_box();
    ExactScalar mass = integrate(f.full(), qb);
    ExactScalar child_mass(0);
    for (int cid : node.children)
      child_mass += tree->nodes[static_cast<std::size_t>(cid)].cube.measure();
    ExactScalar q = node.cube.measure();
    if (node.level % 2 == 0) {
      CHECK(mass >= q - child_mass);
      CHECK(mass * ExactScalar(4) >= ExactScalar(3) * q);
    } else {
      CHECK(mass <= child_mass);
      CHECK(mass * ExactScalar(4) <= q);
    }
  }
}

TEST_CASE("approximants converge at rate 2^-m") {
  auto tree = nested_tree("1/3,1/3", 5);
  OscillatingFunction f = synthesize(tree);
  for (int m = 1; m <= 4; ++m) {
    SimpleStepFunction fm = f.approximant(m);
    CHECK(l1_distance(f.full(), fm) <= ExactScalar::pow2(-m));
    SimpleStepFunction fm1 = f.approximant(m + 1);
    CHECK(l1_distance(fm, fm1) <= ExactScalar::pow2(-m) + ExactScalar::pow2(-m - 1));
    // values stay in {0, 1}
    for (const auto& piece : fm.pieces())
      CHECK((piece.value == ExactScalar(0) || piece.value == ExactScalar(1)));
  }
  // packaged as a sequence, the standard contract holds
  f.as_sequence(4).verify_contract(4);
}

TEST_CASE("half-space indicator: validation and face averages") {
  CHECK_THROWS_AS(dyadic_component_counterexample(2, 1, sc("1/3")), SchemaError);
  CHECK_THROWS_AS(dyadic_component_counterexample(2, 1, ExactScalar(0)), SchemaError);
  CHECK_THROWS_AS(dyadic_component_counterexample(2, 1, ExactScalar(1)), SchemaError);
  CHECK_THROWS_AS(dyadic_component_counterexample(2, 3, sc("1/2")), SchemaError);

  L1StepSequence f = dyadic_component_counterexample(2, 1, sc("1/2"));
  CHECK(f.stable_from() == 1);
  auto rows = face_oscillation_probe(2, 1, sc("1/2"), 6);
  REQUIRE(!rows.empty());
  for (const auto& row : rows) {
    CHECK(row.left == Rational(1));
    CHECK(row.right == Rational(0));
    CHECK(row.centered == Rational(1, 2));
  }

  // probe rows at x = (1/2, 1/3): zero-shift averages fall to 0 while
  // shifted families keep mass on the left, so the oscillation gap is >= 1/2
  auto probe = lebesgue_probe(f, Point::parse("1/2,1/3"), 5, 1);
  Rational lo(1), hi(0);
  for (const auto& row : probe) {
    if (row.boundary) continue;
    lo = std::min(lo, row.average);
    hi = std::max(hi, row.average);
  }
  CHECK(hi - lo >= Rational(1, 2));
}
