#include <gtest/gtest.h>

#include "support.hpp"

using namespace convisd;
using testsupport::classic_code;
using testsupport::pm;

namespace {

const Field F2(2);

ConvCode random_delay_free(const Field& f, std::size_t k, std::size_t n, std::size_t mem, Rng& rng) {
  for (;;) {
    PolyMatrix g = testsupport::random_polymatrix(f, k, n, mem, rng);
    if (rank(g.coeff(0)) != k) continue;
    return ConvCode::from_generator(g);
  }
}

PolyVector random_poly_vector(const Field& f, std::size_t width, std::size_t len, Rng& rng) {
  return PolyVector::from_flat(f, width, testsupport::random_vector(f, width * len, rng));
}

}  // namespace

TEST(ConvCode, Parameters) {
  const ConvCode c = classic_code();
  EXPECT_EQ(c.n(), 2u);
  EXPECT_EQ(c.k(), 1u);
  EXPECT_EQ(c.memory(), 2u);
  EXPECT_TRUE(c.delay_free());
  EXPECT_TRUE(c.left_prime());
  EXPECT_TRUE(poly_mul(*c.parity(), c.generator().transpose()).is_zero());
  EXPECT_EQ(rank(c.parity()->coeff(0)), 1u);
  EXPECT_THROW(ConvCode::from_generator(pm(F2, 2, 1, {Poly{1}, Poly{1}})), RankDeficient);
}

TEST(ConvCode, CatastrophicHasNoParity) {
  const ConvCode c = ConvCode::from_generator(pm(F2, 1, 2, {Poly{1, 1}, Poly{0, 1, 1}}));
  EXPECT_FALSE(c.left_prime());
  EXPECT_THROW(sliding_parity(c, 1), NoParityCheck);
  const SlidingBlockCode b = make_sliding_block(c, 2);
  EXPECT_FALSE(b.h0.has_value());
  EXPECT_TRUE((b.parity * b.g0.transpose()).is_zero());
}

TEST(PolyVector, WeightAndTrim) {
  const PolyVector v = PolyVector::from_flat(F2, 2, Vector{1, 1, 0, 1, 0, 0, 0, 0});
  EXPECT_EQ(v.length(), 2u);
  EXPECT_EQ(v.weight(), 3u);
  EXPECT_EQ(v.degree(), std::optional<std::size_t>(1));
  EXPECT_TRUE(PolyVector(F2, 2).is_zero());
  EXPECT_EQ(v.shifted(2).coeff(2), (Vector{1, 1}));
  const auto blocks = v.blocks(3, 2);
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0], (Vector{1, 1, 0, 1, 0, 0}));
  EXPECT_EQ(blocks[1], Vector(6, 0));
  EXPECT_EQ(v - v, PolyVector(F2, 2));
}

TEST(Encode, Examples) {
  const ConvCode c = classic_code();
  EXPECT_TRUE(encode(c, PolyVector(F2, 1)).is_zero());
  const PolyVector one = PolyVector::from_flat(F2, 1, Vector{1});
  const PolyVector cw = encode(c, one);
  EXPECT_EQ(cw, PolyVector::from_flat(F2, 2, Vector{1, 1, 1, 0, 1, 1}));
  EXPECT_EQ(cw.weight(), 5u);
  EXPECT_THROW(encode(c, PolyVector::from_flat(F2, 2, Vector{1, 1})), DimensionMismatch);
}

TEST(Encode, ShiftEquivarianceAndLinearity) {
  Rng rng(21);
  const Field f(3);
  const ConvCode c = random_delay_free(f, 2, 4, 2, rng);
  for (int trial = 0; trial < 20; ++trial) {
    const PolyVector a = random_poly_vector(f, 2, 1 + rng.below(5), rng);
    const PolyVector b = random_poly_vector(f, 2, 1 + rng.below(5), rng);
    EXPECT_EQ(encode(c, a.shifted(3)), encode(c, a).shifted(3));
    EXPECT_EQ(encode(c, a + b), encode(c, a) + encode(c, b));
  }
}

TEST(SlidingGenerator, GammaZeroIsCoefficient) {
  const ConvCode c = classic_code();
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(sliding_generator(c, 0, i), c.coeff(i));
}

TEST(SlidingGenerator, GammaTwoZeroBlockLayout) {
  Rng rng(22);
  const ConvCode c = random_delay_free(Field(2), 2, 3, 3, rng);
  const Matrix g = sliding_generator(c, 2, 0);
  const Matrix zero(c.field(), 2, 3);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t col = 0; col < 3; ++col)
      EXPECT_EQ(g.block(r * 2, col * 3, 2, 3), col >= r ? c.coeff(col - r) : zero) << r << "," << col;
}

TEST(SlidingGenerator, OffDiagonalBlockByHand) {
  const Matrix g = sliding_generator(classic_code(), 1, 1);
  EXPECT_EQ(g, Matrix::from_rows(F2, {{1, 1, 0, 0}, {1, 0, 1, 1}}));
}

TEST(SlidingParity, Examples) {
  const ConvCode c = ConvCode::from_generator(pm(F2, 1, 2, {Poly{1}, Poly{0, 1}}));
  EXPECT_EQ(*c.parity(), pm(F2, 1, 2, {Poly{0, 1}, Poly{1}}));
  EXPECT_EQ(sliding_parity(c, 0), c.parity()->coeff(0));
  EXPECT_EQ(sliding_parity(c, 1), Matrix::from_rows(F2, {{0, 1, 0, 0}, {1, 0, 0, 1}}));
}

TEST(SlidingParity, AnnihilatesSlidingGenerator) {
  Rng rng(23);
  for (std::uint32_t q : {2u, 4u}) {
    const Field f(q);
    int checked = 0;
    for (int trial = 0; trial < 30 && checked < 8; ++trial) {
      const ConvCode c = random_delay_free(f, 2, 4, 2, rng);
      if (!c.left_prime()) continue;
      for (std::size_t gamma = 0; gamma < 4; ++gamma)
        EXPECT_TRUE((sliding_parity(c, gamma) * sliding_generator(c, gamma, 0).transpose()).is_zero());
      ++checked;
    }
    EXPECT_GT(checked, 0);
  }
}

TEST(SlidingBlock, EncodingRecursion) {
  Rng rng(24);
  const Field f(2);
  for (int trial = 0; trial < 10; ++trial) {
    const ConvCode c = random_delay_free(f, 2, 3, 1 + rng.below(4), rng);
    const std::size_t gamma = rng.below(3);
    const SlidingBlockCode b = make_sliding_block(c, gamma);
    EXPECT_EQ(b.N, 3 * (gamma + 1));
    EXPECT_EQ(b.K, 2 * (gamma + 1));
    EXPECT_EQ(rank(b.g0), b.K);
    EXPECT_TRUE((b.parity * b.g0.transpose()).is_zero());
    const PolyVector m = random_poly_vector(f, 2, 6, rng);
    const PolyVector cw = encode(c, m);
    const std::size_t s = (cw.length() + gamma) / (gamma + 1);
    const auto cb = cw.blocks(gamma + 1, s);
    const auto mb = m.blocks(gamma + 1, s);
    for (std::size_t j = 0; j < s; ++j) {
      Vector acc = vec_mat(mb[j], b.g0);
      for (std::size_t i = 0; i < j; ++i)
        if (const Matrix* g = b.residual(j - i)) vec_mat_acc(acc, mb[i], *g);
      EXPECT_EQ(acc, cb[j]) << "block " << j;
    }
  }
}

TEST(SlidingBlock, MinimumDistanceMatchesConstantTerm) {
  Rng rng(25);
  const Field f(2);
  for (int trial = 0; trial < 10; ++trial) {
    const ConvCode c = random_delay_free(f, 2, 4, 2, rng);
    const SlidingBlockCode b = make_sliding_block(c, 2);
    std::size_t d_block = SIZE_MAX, d_zero = SIZE_MAX;
    testsupport::for_each_vector(f, b.K, [&](const Vector& m) {
      if (is_zero(m)) return;
      const Vector cw = vec_mat(m, b.g0);
      d_block = std::min(d_block, weight(cw));
      std::size_t first = 0;
      while (is_zero(std::span<const Elem>(cw.data() + first * b.n, b.n))) ++first;
      const Vector lead(cw.begin() + first * b.n, cw.begin() + (first + 1) * b.n);
      EXPECT_TRUE(solve_left(c.coeff(0), lead).has_value());
    });
    testsupport::for_each_vector(f, 2, [&](const Vector& m) {
      if (!is_zero(m)) d_zero = std::min(d_zero, weight(vec_mat(m, c.coeff(0))));
    });
    EXPECT_EQ(d_block, d_zero);
  }
}

TEST(ColumnDistance, Examples) {
  const ConvCode c = classic_code();
  EXPECT_EQ(column_distance(c, 0), 2u);
  EXPECT_EQ(column_distance(c, 1), 3u);
  EXPECT_THROW(column_distance(c, 40), TooLarge);
  EXPECT_THROW(column_distance(ConvCode::from_generator(pm(F2, 1, 2, {Poly{0, 1}, Poly{0, 1}})), 1), NotDelayFree);
}

TEST(ColumnDistance, Monotone) {
  Rng rng(26);
  for (int trial = 0; trial < 10; ++trial) {
    const ConvCode c = random_delay_free(F2, 1 + rng.below(2), 3, 2, rng);
    const auto d0 = column_distance(c, 0), d1 = column_distance(c, 1), d2 = column_distance(c, 2);
    EXPECT_LE(d0, d1);
    EXPECT_LE(d1, d2);
  }
}

TEST(LowWeight, ClassicBlockMatchesExhaustiveCodewords) {
  const SlidingBlockCode b = make_sliding_block(classic_code(), 2);
  const auto lows = low_weight_codewords(b, 2);
  std::set<Vector> got;
  for (const auto& w : lows) {
    EXPECT_EQ(vec_mat(w.message, b.g0), w.codeword);
    got.insert(w.codeword);
  }
  EXPECT_EQ(got, testsupport::codewords_up_to(b.g0, 2));
  EXPECT_TRUE(std::is_sorted(lows.begin(), lows.end(), low_weight_less));
}

TEST(LowWeight, RandomBlocksMatchMessageEnumeration) {
  Rng rng(27);
  for (std::uint32_t q : {2u, 3u}) {
    const Field f(q);
    for (int trial = 0; trial < 8; ++trial) {
      const ConvCode c = random_delay_free(f, 2, 4, 2, rng);
      const SlidingBlockCode b = make_sliding_block(c, 2);
      std::set<Vector> got;
      for (const auto& w : low_weight_codewords(b, 3)) got.insert(w.codeword);
      EXPECT_EQ(got, testsupport::codewords_up_to(b.g0, 3));
    }
  }
}

TEST(LowWeight, GeneratorRowAppearsAndHighDistanceIsEmpty) {
  Matrix g(F2, 2, 4);
  g(0, 2) = g(0, 3) = 1;
  g(1, 0) = g(1, 1) = g(1, 2) = 1;
  const ConvCode pair = ConvCode::from_generator(PolyMatrix::constant(g));
  bool found = false;
  for (const auto& w : low_weight_codewords(make_sliding_block(pair, 0), 2))
    found |= w.codeword == Vector{0, 0, 1, 1};
  EXPECT_TRUE(found);

  const ConvCode rep = ConvCode::from_generator(PolyMatrix::constant(Matrix::from_rows(F2, {{1, 1, 1, 1, 1}})));
  EXPECT_TRUE(low_weight_codewords(make_sliding_block(rep, 0), 2).empty());
  EXPECT_THROW(low_weight_codewords(make_sliding_block(rep, 30), 20, 1000), TooLarge);
}

TEST(Degree, Examples) {
  EXPECT_EQ(compute_degree(ConvCode::from_generator(PolyMatrix::identity(F2, 3))), 0u);
  EXPECT_EQ(compute_degree(classic_code()), 2u);
}

TEST(Degree, MatchesCofactorMinors) {
  Rng rng(28);
  for (int trial = 0; trial < 20; ++trial) {
    const PolyMatrix g = testsupport::random_polymatrix(Field(3), 2, 3, 2, rng);
    ConvCode c;
    try {
      c = ConvCode::from_generator(g);
    } catch (const RankDeficient&) {
      continue;
    }
    std::size_t best = 0;
    for (std::size_t drop = 0; drop < 3; ++drop) {
      std::vector<std::size_t> cols;
      for (std::size_t j = 0; j < 3; ++j)
        if (j != drop) cols.push_back(j);
      const Poly d = testsupport::cofactor_det(g.field(), {{g.entry(0, cols[0]), g.entry(0, cols[1])},
                                                           {g.entry(1, cols[0]), g.entry(1, cols[1])}});
      if (!d.empty()) best = std::max(best, d.size() - 1);
    }
    EXPECT_EQ(compute_degree(c), best);
  }
}
