#pragma once

#include <memory>

#include "json.hpp"
#include "wrand/config.hpp"
#include "wrand/counterexample.hpp"
#include "wrand/cover_test.hpp"
#include "wrand/geometry.hpp"
#include "wrand/martingale.hpp"
#include "wrand/step_function.hpp"
#include "wrand/tree_decomp.hpp"

namespace wrand {

// Ordered keys keep CLI output byte-stable for a fixed config and seed.
using Json = nlohmann::ordered_json;

Json to_json(const ExactScalar& s);
ExactScalar scalar_from_json(const Json& j);

Json to_json(const Rational& q);  // {"num", "den"} decimal strings
Rational rational_from_json(const Json& j);

Json to_json(const Point& p);
Point point_from_json(const Json& j);

Json to_json(const Box& b);
Box box_from_json(const Json& j);

Json to_json(const BoxUnion& u);
BoxUnion box_union_from_json(const Json& j);

Json to_json(const DyadicCube& c);
DyadicCube cube_from_json(const Json& j);

Json to_json(const SimpleStepFunction& f);
SimpleStepFunction step_from_json(const Json& j);

/// Serializes stabilized sequences as the materialized list of approximants.
Json to_json(const L1StepSequence& f);
std::shared_ptr<L1StepSequence> sequence_from_json(const Json& j);

/// {"kind": "avoidance"|"cauchy_gap"|"maximal_gap"|"custom", params...}
Json test_to_json(const CoverTest& t);
CoverTest test_from_json(const Json& j);

Json tree_to_json(const DyadicTree& t);
DyadicTree tree_from_json(const Json& j);

Json config_to_json(const RunConfig& c);
RunConfig config_from_json(const Json& j);

/// Throws SchemaError on malformed/missing fields instead of nlohmann errors.
Json parse_json(const std::string& text);
const Json& require(const Json& j, const char* key);

}  // namespace wrand
