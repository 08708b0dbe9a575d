#pragma once

#include <cstdint>
#include <string>

#include "wrand/errors.hpp"

namespace wrand {

/// Run-wide knobs: dimension, truncation caps, budgets, the maximal-function
/// constant, and the corpus seed. Round-trips through JSON unchanged.
struct RunConfig {
  int dimension = 1;
  int max_dimension = 3;
  int r_max = 8;
  int k_max = 6;
  int depth = 3;
  int index_cap = 12;
  std::uint64_t cell_budget = std::uint64_t(1) << 20;
  std::uint64_t node_budget = 200000;
  std::int64_t hl_constant = 0;  // 0 = default 6^dimension
  std::uint64_t seed = 1;

  std::int64_t effective_hl_constant() const {
    if (hl_constant > 0) return hl_constant;
    std::int64_t c = 1;
    for (int i = 0; i < dimension; ++i) c *= 6;
    return c;
  }

  void validate() const {
    if (dimension < 1 || dimension > max_dimension)
      throw SchemaError("dimension must be in [1, " + std::to_string(max_dimension) + "]");
    if (r_max < 1 || k_max < 1 || depth < 0 || index_cap < 1)
      throw SchemaError("caps must be positive");
  }
};

}  // namespace wrand
