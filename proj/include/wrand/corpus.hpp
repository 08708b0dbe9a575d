#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "wrand/step_function.hpp"

namespace wrand {

/// Deterministic draws on top of the fixed mt19937_64 stream, so corpora are
/// identical across platforms for a given seed.
class CorpusRng {
public:
  explicit CorpusRng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }
  std::int64_t in_range(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

private:
  std::uint64_t state_;
};

/// Step function on the full precision-p grid with dyadic values num/2^p in
/// [-2, 2]; roughly a third of the cells are zero.
SimpleStepFunction random_step_function(CorpusRng& rng, int dim, unsigned precision);

std::vector<SimpleStepFunction> random_corpus(std::uint64_t seed, int count, int dim,
                                              unsigned precision);

/// Stabilizing sequence f_m = base + pert_m with ||pert_m|| <= 2^{-m-1},
/// constant from stable_at on. Gap certificates hold by construction.
std::shared_ptr<L1StepSequence> random_l1_sequence(CorpusRng& rng, int dim, unsigned precision,
                                                   int stable_at);

}  // namespace wrand
