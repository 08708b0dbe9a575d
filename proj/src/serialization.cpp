#include "wrand/serialization.hpp"

namespace wrand {

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

const Json& require(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "'");
  return *it;
}

namespace {

BigInt bigint_from(const Json& j, const char* what) {
  try {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    return parse_bigint(j.get<std::string>());
  } catch (const std::exception&) {
    throw SchemaError(std::string("bad integer in ") + what);
  }
}

int int_from(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw SchemaError(std::string("expected integer at ") + what);
  return j.get<int>();
}

}  // namespace

Json to_json(const ExactScalar& s) {
  return Json{{"num", s.num().str()},
              {"two_exp", s.two_exp()},
              {"third", s.third_exp()}};
}

ExactScalar scalar_from_json(const Json& j) {
  BigInt num = bigint_from(require(j, "num"), "scalar num");
  unsigned two = static_cast<unsigned>(int_from(require(j, "two_exp"), "two_exp"));
  unsigned third = j.contains("third") ? static_cast<unsigned>(int_from(j["third"], "third")) : 0;
  return ExactScalar(std::move(num), two, third);
}

Json to_json(const Rational& q) {
  return Json{{"num", numerator(q).str()}, {"den", denominator(q).str()}};
}

Rational rational_from_json(const Json& j) {
  BigInt num = bigint_from(require(j, "num"), "rational num");
  BigInt den = bigint_from(require(j, "den"), "rational den");
  if (den == 0) throw SchemaError("rational with zero denominator");
  return Rational(num, den);
}

Json to_json(const Point& p) {
  Json coords = Json::array();
  for (const auto& c : p.coords) coords.push_back(to_json(c));
  return Json{{"coords", coords}};
}

Point point_from_json(const Json& j) {
  std::vector<Rational> coords;
  for (const auto& c : require(j, "coords")) coords.push_back(rational_from_json(c));
  if (coords.empty()) throw SchemaError("empty point");
  return Point(std::move(coords));
}

Json to_json(const Box& b) {
  Json axes = Json::array();
  for (const auto& iv : b.axes())
    axes.push_back(Json{{"lo", to_json(iv.lo)},
                        {"hi", to_json(iv.hi)},
                        {"lo_closed", iv.lo_closed},
                        {"hi_closed", iv.hi_closed}});
  return Json{{"axes", axes}};
}

Box box_from_json(const Json& j) {
  std::vector<Interval> axes;
  for (const auto& a : require(j, "axes")) {
    Interval iv;
    iv.lo = scalar_from_json(require(a, "lo"));
    iv.hi = scalar_from_json(require(a, "hi"));
    iv.lo_closed = require(a, "lo_closed").get<bool>();
    iv.hi_closed = require(a, "hi_closed").get<bool>();
    axes.push_back(std::move(iv));
  }
  if (axes.empty()) throw SchemaError("box with no axes");
  return Box(std::move(axes));
}

Json to_json(const BoxUnion& u) {
  Json boxes = Json::array();
  for (const auto& b : u.boxes()) boxes.push_back(to_json(b));
  return Json{{"dim", u.dim()}, {"boxes", boxes}};
}

BoxUnion box_union_from_json(const Json& j) {
  BoxUnion out(int_from(require(j, "dim"), "dim"));
  for (const auto& b : require(j, "boxes")) out.add(box_from_json(b));
  return out;
}

Json to_json(const DyadicCube& c) {
  Json u = Json::array();
  for (const auto& a : c.anchor) u.push_back(a.str());
  return Json{{"r", c.precision},
              {"u", u},
              {"mode", c.mode == CubeMode::half_open ? "half_open" : "open"}};
}

DyadicCube cube_from_json(const Json& j) {
  std::vector<BigInt> anchor;
  for (const auto& a : require(j, "u")) anchor.push_back(bigint_from(a, "cube anchor"));
  CubeMode mode = CubeMode::half_open;
  if (j.contains("mode") && j["mode"] == "open") mode = CubeMode::open;
  return DyadicCube(int_from(require(j, "r"), "cube r"), std::move(anchor), mode);
}

Json to_json(const SimpleStepFunction& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces())
    pieces.push_back(Json{{"box", to_json(p.box)}, {"value", to_json(p.value)}});
  return Json{{"dim", f.dim()}, {"precision", f.breakpoint_precision()}, {"pieces", pieces}};
}

SimpleStepFunction step_from_json(const Json& j) {
  int dim = int_from(require(j, "dim"), "dim");
  unsigned precision = static_cast<unsigned>(int_from(require(j, "precision"), "precision"));
  std::vector<Piece> pieces;
  for (const auto& p : require(j, "pieces"))
    pieces.push_back(Piece{box_from_json(require(p, "box")), scalar_from_json(require(p, "value"))});
  return SimpleStepFunction(dim, std::move(pieces), precision);
}

Json to_json(const L1StepSequence& f) {
  if (f.stable_from() <= 0)
    throw SchemaError("only stabilized sequences can be serialized");
  Json approx = Json::array();
  for (int m = 1; m <= f.stable_from(); ++m) approx.push_back(to_json(f.approximant(m)));
  Json poly = Json::array();
  for (auto c : f.precision_poly().coeffs()) poly.push_back(c);
  return Json{{"dim", f.dim()},
              {"precision_poly", poly},
              {"stable_from", f.stable_from()},
              {"name", f.name()},
              {"approximants", approx}};
}

std::shared_ptr<L1StepSequence> sequence_from_json(const Json& j) {
  std::vector<SimpleStepFunction> fs;
  for (const auto& a : require(j, "approximants")) fs.push_back(step_from_json(a));
  std::vector<std::int64_t> coeffs;
  for (const auto& c : require(j, "precision_poly")) coeffs.push_back(c.get<std::int64_t>());
  std::string name = j.contains("name") ? j["name"].get<std::string>() : "sequence";
  return std::make_shared<L1StepSequence>(
      L1StepSequence::from_list(std::move(fs), Polynomial(std::move(coeffs)), name));
}

Json test_to_json(const CoverTest& t) {
  const TestSpec& spec = t.spec();
  Json j;
  j["kind"] = to_string(spec.kind);
  j["dim"] = spec.dim;
  switch (spec.kind) {
    case TestKind::avoidance:
      j["axis"] = spec.axis;
      break;
    case TestKind::cauchy_gap:
      j["function"] = to_json(*spec.source);
      break;
    case TestKind::maximal_gap:
      j["function"] = to_json(*spec.source);
      j["offset_c"] = spec.offset_c;
      j["term_tier"] = spec.term_tier;
      break;
    case TestKind::custom:
      if (spec.nested_center) {
        j["center"] = to_json(*spec.nested_center);
      } else {
        Json sets = Json::array();
        for (const auto& u : spec.custom_sets) sets.push_back(to_json(u));
        j["sets"] = sets;
      }
      break;
  }
  return j;
}

CoverTest test_from_json(const Json& j) {
  std::string kind = require(j, "kind").get<std::string>();
  int dim = int_from(require(j, "dim"), "dim");
  if (kind == "avoidance") {
    int axis = j.contains("axis") ? int_from(j["axis"], "axis") : 1;
    return dyadic_avoidance_test(dim, axis);
  }
  if (kind == "cauchy_gap") {
    return cauchy_gap_test(sequence_from_json(require(j, "function")));
  }
  if (kind == "maximal_gap") {
    auto f = sequence_from_json(require(j, "function"));
    int c = j.contains("offset_c") ? int_from(j["offset_c"], "offset_c") : 0;
    if (c <= 0) {
      c = 1;
      for (int i = 0; i < dim; ++i) c *= 6;
    }
    int tier = j.contains("term_tier") ? int_from(j["term_tier"], "term_tier") : 2;
    return maximal_gap_test(f, c, tier);
  }
  if (kind == "custom") {
    if (j.contains("center")) return nested_cube_test(point_from_json(j["center"]));
    std::vector<BoxUnion> sets;
    for (const auto& u : require(j, "sets")) sets.push_back(box_union_from_json(u));
    return custom_test(dim, std::move(sets));
  }
  throw SchemaError("unknown test kind '" + kind + "'");
}

Json tree_to_json(const DyadicTree& t) {
  Json nodes = Json::array();
  for (const auto& n : t.nodes) {
    Json u = Json::array();
    for (const auto& a : n.cube.anchor) u.push_back(a.str());
    Json children = Json::array();
    for (int c : n.children) children.push_back(c);
    nodes.push_back(Json{{"r", n.cube.precision},
                         {"u", u},
                         {"level", n.level},
                         {"parent", n.parent},
                         {"children", children},
                         {"source_row", n.source_row},
                         {"source_tier", n.source_tier}});
  }
  return Json{{"dim", t.dim}, {"k_cap", t.k_cap}, {"source", t.source}, {"nodes", nodes}};
}

DyadicTree tree_from_json(const Json& j) {
  DyadicTree t;
  t.dim = int_from(require(j, "dim"), "dim");
  t.k_cap = j.contains("k_cap") ? int_from(j["k_cap"], "k_cap") : 0;
  t.source = j.contains("source") ? j["source"].get<std::string>() : "";
  for (const auto& nj : require(j, "nodes")) {
    TreeNode n;
    std::vector<BigInt> anchor;
    for (const auto& a : require(nj, "u")) anchor.push_back(bigint_from(a, "node anchor"));
    n.cube = DyadicCube(int_from(require(nj, "r"), "node r"), std::move(anchor), CubeMode::open);
    n.level = int_from(require(nj, "level"), "level");
    n.parent = nj.contains("parent") ? int_from(nj["parent"], "parent") : -1;
    if (nj.contains("children"))
      for (const auto& c : nj["children"]) n.children.push_back(int_from(c, "child id"));
    if (nj.contains("source_row")) n.source_row = int_from(nj["source_row"], "source_row");
    if (nj.contains("source_tier")) n.source_tier = int_from(nj["source_tier"], "source_tier");
    t.nodes.push_back(std::move(n));
  }
  if (t.nodes.empty()) throw SchemaError("tree with no nodes");
  for (const auto& n : t.nodes)
    for (int c : n.children)
      if (c < 0 || c >= static_cast<int>(t.nodes.size()))
        throw SchemaError("tree child index out of range");
  return t;
}

Json config_to_json(const RunConfig& c) {
  return Json{{"dimension", c.dimension},
              {"max_dimension", c.max_dimension},
              {"r_max", c.r_max},
              {"k_max", c.k_max},
              {"depth", c.depth},
              {"index_cap", c.index_cap},
              {"cell_budget", c.cell_budget},
              {"node_budget", c.node_budget},
              {"hl_constant", c.hl_constant},
              {"seed", c.seed}};
}

RunConfig config_from_json(const Json& j) {
  RunConfig c;
  if (j.contains("dimension")) c.dimension = int_from(j["dimension"], "dimension");
  if (j.contains("max_dimension")) c.max_dimension = int_from(j["max_dimension"], "max_dimension");
  if (j.contains("r_max")) c.r_max = int_from(j["r_max"], "r_max");
  if (j.contains("k_max")) c.k_max = int_from(j["k_max"], "k_max");
  if (j.contains("depth")) c.depth = int_from(j["depth"], "depth");
  if (j.contains("index_cap")) c.index_cap = int_from(j["index_cap"], "index_cap");
  if (j.contains("cell_budget")) c.cell_budget = j["cell_budget"].get<std::uint64_t>();
  if (j.contains("node_budget")) c.node_budget = j["node_budget"].get<std::uint64_t>();
  if (j.contains("hl_constant")) c.hl_constant = j["hl_constant"].get<std::int64_t>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  c.validate();
  return c;
}

}  // namespace wrand
