#include "wrand/serialization.hpp"

#include "doctest.h"
#include "wrand/corpus.hpp"

using namespace wrand;

namespace {

ExactScalar sc(const char* text) { return ExactScalar::from_rational(parse_rational(text)); }

}  // namespace

TEST_CASE("scalar, rational and point round trips") {
  CorpusRng rng(3);
  for (int it = 0; it < 50; ++it) {
    ExactScalar x(BigInt(rng.in_range(-1000, 1000)), static_cast<unsigned>(rng.below(8)),
                  static_cast<unsigned>(rng.below(3)));
    CHECK(scalar_from_json(to_json(x)) == x);
  }
  Rational q(-22, 7);
  CHECK(rational_from_json(to_json(q)) == q);
  Point p = Point::parse("1/3,22/7");
  Point back = point_from_json(to_json(p));
  CHECK(back.coords == p.coords);
  CHECK_THROWS_AS(rational_from_json(parse_json("{\"num\":\"1\",\"den\":\"0\"}")), SchemaError);
  CHECK_THROWS_AS(scalar_from_json(parse_json("{\"two_exp\":1}")), SchemaError);
  CHECK_THROWS_AS(parse_json("{nope"), SchemaError);
}

TEST_CASE("box and union round trips preserve structure") {
  Box b(std::vector<Interval>{Interval{sc("1/3"), sc("5/6"), false, true},
                              Interval{sc("0"), sc("1"), true, true}});
  Box back = box_from_json(to_json(b));
  CHECK(back.axis(0).lo == b.axis(0).lo);
  CHECK(back.axis(0).hi_closed == b.axis(0).hi_closed);
  CHECK(back.axis(1).lo_closed);

  BoxUnion u(2);
  u.add(b);
  u.add(Box::unit(2, true));
  BoxUnion uu = box_union_from_json(to_json(u));
  CHECK(uu.size() == u.size());
  CHECK(sym_diff_measure(u, uu) == ExactScalar(0));
}

TEST_CASE("step functions and sequences round trip") {
  CorpusRng rng(9);
  SimpleStepFunction f = random_step_function(rng, 2, 2);
  SimpleStepFunction g = step_from_json(to_json(f));
  CHECK(l1_distance(f, g) == ExactScalar(0));
  CHECK(g.breakpoint_precision() == f.breakpoint_precision());

  auto seq = random_l1_sequence(rng, 1, 4, 5);
  auto seq2 = sequence_from_json(to_json(*seq));
  CHECK(seq2->stable_from() == seq->stable_from());
  for (int m = 1; m <= 6; ++m)
    CHECK(l1_distance(seq->approximant(m), seq2->approximant(m)) == ExactScalar(0));
}

TEST_CASE("test descriptions reconstruct equivalent tests") {
  CoverTest avoid = dyadic_avoidance_test(2, 1);
  CoverTest avoid2 = test_from_json(test_to_json(avoid));
  CHECK(avoid2.spec().kind == TestKind::avoidance);
  for (int m = 1; m <= 3; ++m)
    CHECK(sym_diff_measure(avoid.prefix(m, 5).set, avoid2.prefix(m, 5).set) == ExactScalar(0));

  CoverTest nest = nested_cube_test(Point::parse("1/3,1/3"));
  CoverTest nest2 = test_from_json(test_to_json(nest));
  for (int m = 1; m <= 4; ++m)
    CHECK(sym_diff_measure(nest.prefix(m, 1).set, nest2.prefix(m, 1).set) == ExactScalar(0));

  std::vector<BoxUnion> sets{BoxUnion(1, {Box::open({sc("0")}, {sc("1/4")})})};
  CoverTest cust = custom_test(1, std::move(sets));
  CoverTest cust2 = test_from_json(test_to_json(cust));
  CHECK(sym_diff_measure(cust.prefix(1, 1).set, cust2.prefix(1, 1).set) == ExactScalar(0));

  CorpusRng rng(21);
  auto seq = random_l1_sequence(rng, 1, 4, 5);
  CoverTest gap = cauchy_gap_test(seq, 6);
  CoverTest gap2 = test_from_json(test_to_json(gap));
  CHECK(gap2.spec().kind == TestKind::cauchy_gap);
  for (int k = 1; k <= 3; ++k)
    CHECK(sym_diff_measure(gap.array().at(k, 1), gap2.array().at(k, 1)) == ExactScalar(0));

  CHECK_THROWS_AS(test_from_json(parse_json("{\"kind\":\"bogus\",\"dim\":1}")), SchemaError);
}

TEST_CASE("trees round trip with verification intact") {
  CoverTest t = nested_cube_test(Point::parse("1/3,1/3"));
  DecomposeOptions opts;
  opts.depth = 4;
  opts.k_cap = 2;
  DyadicTree tree = decompose(t, opts);
  DyadicTree back = tree_from_json(tree_to_json(tree));
  CHECK(back.nodes.size() == tree.nodes.size());
  CHECK(verify_tree(back).ok);
  for (int k = 1; k <= 3; ++k)
    for (int m = 1; m <= 3; ++m)
      CHECK(sym_diff_measure(tree_array(tree, k, m), tree_array(back, k, m)) == ExactScalar(0));
}

TEST_CASE("config round trips unchanged") {
  RunConfig c;
  c.dimension = 2;
  c.r_max = 10;
  c.k_max = 5;
  c.depth = 4;
  c.index_cap = 9;
  c.cell_budget = 12345;
  c.node_budget = 777;
  c.hl_constant = 36;
  c.seed = 99;
  RunConfig back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));
  CHECK_THROWS_AS(config_from_json(parse_json("{\"dimension\":9}")), SchemaError);
}
