#include "wrand/corpus.hpp"

#include "wrand/errors.hpp"

namespace wrand {

SimpleStepFunction random_step_function(CorpusRng& rng, int dim, unsigned precision) {
  if (dim < 1 || precision > 8) throw SchemaError("random_step_function: bad parameters");
  std::vector<Piece> pieces;
  std::vector<BigInt> anchor(static_cast<std::size_t>(dim), 0);
  BigInt limit = BigInt(1) << precision;
  while (true) {
    if (rng.below(3) != 0) {
      // value num / 2^precision with |value| <= 2
      std::int64_t span = std::int64_t(2) << precision;
      std::int64_t num = rng.in_range(-span, span);
      if (num != 0) {
        std::vector<BigInt> a = anchor;
        pieces.push_back(Piece{DyadicCube(static_cast<int>(precision), std::move(a),
                                          CubeMode::half_open)
                                   .to_box(),
                               ExactScalar(BigInt(num), precision)});
      }
    }
    int ax = 0;
    for (; ax < dim; ++ax) {
      auto& u = anchor[static_cast<std::size_t>(ax)];
      if (++u < limit) break;
      u = 0;
    }
    if (ax == dim) break;
  }
  return SimpleStepFunction(dim, std::move(pieces), precision);
}

std::vector<SimpleStepFunction> random_corpus(std::uint64_t seed, int count, int dim,
                                              unsigned precision) {
  CorpusRng rng(seed);
  std::vector<SimpleStepFunction> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(random_step_function(rng, dim, precision));
  return out;
}

std::shared_ptr<L1StepSequence> random_l1_sequence(CorpusRng& rng, int dim, unsigned precision,
                                                   int stable_at) {
  if (stable_at < 1) throw SchemaError("random_l1_sequence: stable_at must be >= 1");
  SimpleStepFunction base = random_step_function(rng, dim, precision);
  int pn = static_cast<int>(precision) * dim;

  std::vector<SimpleStepFunction> fs;
  for (int m = 1; m < stable_at; ++m) {
    // pert_m = d_m on one grid cell, |d_m| mu(cell) <= 2^{-m-1}; the largest
    // admissible |d_m| is 2^{pn-m-1}.
    std::vector<BigInt> anchor(static_cast<std::size_t>(dim));
    for (int ax = 0; ax < dim; ++ax)
      anchor[static_cast<std::size_t>(ax)] = BigInt(rng.below(std::uint64_t(1) << precision));
    Box cell = DyadicCube(static_cast<int>(precision), std::move(anchor), CubeMode::half_open).to_box();
    int shrink = static_cast<int>(rng.below(2));
    ExactScalar d = ExactScalar::pow2(pn - m - 1 - shrink);
    if (rng.below(2)) d = -d;
    SimpleStepFunction pert = SimpleStepFunction::indicator(cell, d);
    fs.push_back(base + pert);
  }
  fs.push_back(base);
  Polynomial p = Polynomial::constant(static_cast<std::int64_t>(precision));
  return std::make_shared<L1StepSequence>(
      L1StepSequence::from_list(std::move(fs), p, "corpus sequence"));
}

}  // namespace wrand
