#include <gtest/gtest.h>

#include "convisd/cryptolab.hpp"
#include "support.hpp"

using namespace convisd;

namespace {

PolyMatrix permutation_matrix(const Field& f, const std::vector<std::size_t>& perm) {
  Matrix p(f, perm.size(), perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) p(perm[j], j) = 1;
  return PolyMatrix::constant(p);
}

PolyVector row_of(const PolyMatrix& g, std::size_t i) {
  std::vector<Poly> entries(g.cols());
  for (std::size_t j = 0; j < g.cols(); ++j) entries[j] = g.entry(i, j);
  std::size_t len = 0;
  for (const auto& e : entries) len = std::max(len, e.size());
  std::vector<Vector> coeffs(len, Vector(g.cols(), 0));
  for (std::size_t j = 0; j < g.cols(); ++j)
    for (std::size_t d = 0; d < entries[j].size(); ++d) coeffs[d][j] = entries[j][d];
  return PolyVector::from_coeffs(g.field(), g.cols(), coeffs);
}

bool rows_in(const PolyMatrix& rows, const ConvCode& code) {
  const CodeMembership member(code);
  for (std::size_t i = 0; i < rows.rows(); ++i)
    if (!member.contains(row_of(rows, i))) return false;
  return true;
}

}  // namespace

TEST(Keygen, MemoryZeroGivesConstantKey) {
  const KeyPair kp = keygen(2, 5, 3, 0, 7);
  EXPECT_EQ(kp.pub.memory, 0u);
  EXPECT_EQ(kp.pub.code.generator().coeffs().size(), 1u);
  EXPECT_TRUE(kp.pub.delay_free());
}

TEST(Keygen, PublicKeyIsDelayFreeAndDeterministic) {
  for (std::uint32_t q : {2u, 3u, 16u})
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const KeyPair a = keygen(q, 5, 3, 2, seed);
      const KeyPair b = keygen(q, 5, 3, 2, seed);
      EXPECT_EQ(a.pub.code.generator(), b.pub.code.generator());
      EXPECT_EQ(a.pub.rank_at_zero, 3u);
      EXPECT_TRUE(a.pub.code.delay_free());
      EXPECT_LE(a.pub.memory, 3u);
      EXPECT_EQ(a.secret.g.degree_or_zero(), 2u);
    }
  EXPECT_NE(keygen(2, 5, 3, 2, 1).pub.code.generator(), keygen(2, 5, 3, 2, 2).pub.code.generator());
}

TEST(Keygen, PublicKeyIsScrambledSecret) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const KeyPair kp = keygen(2, 6, 3, 2, seed);
    const Field& f = kp.pub.code.field();
    const PolyMatrix p = permutation_matrix(f, kp.secret.permutation);
    EXPECT_TRUE(is_unimodular(kp.secret.u));
    EXPECT_EQ(poly_mul(poly_mul(kp.secret.u, kp.secret.g), p), kp.pub.code.generator());
    const PolyMatrix gp = poly_mul(kp.secret.g, p);
    EXPECT_TRUE(rows_in(gp, kp.pub.code));
    EXPECT_TRUE(rows_in(kp.pub.code.generator(), ConvCode::from_generator(gp)));
  }
}

TEST(Keygen, SecretConstantTermHasNoWeightOneWord) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const KeyPair kp = keygen(2, 5, 3, 1, seed);
    const Matrix g0 = kp.secret.g.coeff(0);
    for (const auto& c : testsupport::codewords_up_to(g0, 1)) EXPECT_GE(weight(c), 2u);
  }
}

TEST(Keygen, RejectsBadShape) {
  EXPECT_THROW(keygen(2, 3, 3, 1, 0), InconsistentSpec);
  EXPECT_THROW(keygen(2, 3, 0, 1, 0), InconsistentSpec);
}

TEST(ErrorSpec, Validation) {
  ErrorSpec s;
  s.t_e = 11;
  s.degree_bound = 1;
  EXPECT_THROW(validate(s, 5), InconsistentSpec);
  s.t_e = 10;
  EXPECT_NO_THROW(validate(s, 5));
  s.mode = ErrorMode::PerBlockWeights;
  s.block_coeffs = 1;
  s.pattern = {2, 3};
  s.t_e = 5;
  EXPECT_NO_THROW(validate(s, 5));
  s.t_e = 6;
  EXPECT_THROW(validate(s, 5), InconsistentSpec);
  s.pattern = {6};
  s.t_e = 12;
  EXPECT_THROW(validate(s, 5), InconsistentSpec);
  s.pattern.clear();
  EXPECT_THROW(validate(s, 5), InconsistentSpec);
}

TEST(SampleError, ZeroWeightGivesZero) {
  ErrorSpec s;
  s.degree_bound = 9;
  EXPECT_TRUE(sample_error(Field(2), s, 4, 3).is_zero());
}

TEST(SampleError, UniformWeightAndDeterminism) {
  const Field f(4);
  ErrorSpec s;
  s.t_e = 7;
  s.degree_bound = 9;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PolyVector e = sample_error(f, s, 3, seed);
    EXPECT_EQ(e.weight(), 7u);
    EXPECT_LE(e.length(), 10u);
    EXPECT_EQ(e, sample_error(f, s, 3, seed));
  }
}

TEST(SampleError, PatternBlocks) {
  ErrorSpec s;
  s.mode = ErrorMode::PerBlockWeights;
  s.degree_bound = 8;
  s.block_coeffs = 1;
  s.pattern = {2, 3, 3};
  s.t_e = 24;
  const PolyVector e = sample_error(Field(64), s, 10, 5);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(weight(e.coeff(i)), s.pattern[i % 3]) << i;
  for (std::size_t i = 0; i + 3 <= 9; i += 3) {
    std::size_t sum = 0;
    for (std::size_t j = i; j < i + 3; ++j) sum += weight(e.coeff(j));
    EXPECT_EQ(sum, 8u);
  }
}

// Each coefficient block receives a hypergeometric share of a uniform t_e-subset.
TEST(SampleError, UniformBlockWeightMatchesHypergeometric) {
  const Field f(2);
  ErrorSpec s;
  s.t_e = 6;
  s.degree_bound = 5;
  const std::size_t n = 4, total = 24;
  const int samples = 20000;
  std::vector<int> hist(5, 0);
  for (int i = 0; i < samples; ++i) {
    const auto w = weight(sample_error(f, s, n, i).coeff(0));
    if (w < hist.size()) ++hist[w];
  }
  for (std::size_t w = 0; w <= 4; ++w) {
    const double p = testsupport::choose(n, w) * testsupport::choose(total - n, 6 - w) / testsupport::choose(total, 6);
    const double sigma = std::sqrt(p * (1 - p) / samples);
    EXPECT_NEAR(static_cast<double>(hist[w]) / samples, p, 4 * sigma + 1e-4) << w;
  }
}

// Every position and every nonzero value should be hit equally often.
TEST(SampleError, PositionsAndValuesAreUniform) {
  const Field f(3);
  ErrorSpec s;
  s.t_e = 2;
  s.degree_bound = 1;
  const std::size_t n = 3, len = 6;
  const int samples = 12000;
  std::vector<int> pos(len, 0), val(3, 0);
  for (int i = 0; i < samples; ++i) {
    const Vector flat = sample_error(f, s, n, 1000 + i).flat(2);
    for (std::size_t j = 0; j < len; ++j)
      if (flat[j]) ++pos[j], ++val[flat[j]];
  }
  const double expect_pos = samples * 2.0 / len;
  double chi2 = 0;
  for (auto c : pos) chi2 += (c - expect_pos) * (c - expect_pos) / expect_pos;
  EXPECT_LT(chi2, 20.5);  // 5 dof, p = 0.001
  const double expect_val = samples;
  chi2 = 0;
  for (int v = 1; v <= 2; ++v) chi2 += (val[v] - expect_val) * (val[v] - expect_val) / expect_val;
  EXPECT_LT(chi2, 10.8);  // 1 dof, p = 0.001
  EXPECT_EQ(val[0], 0);
}

TEST(Encrypt, CiphertextIsCodewordPlusPlantedError) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const KeyPair kp = keygen(2, 5, 3, 2, seed);
    ErrorSpec s;
    s.t_e = 6;
    s.degree_bound = 20;
    const PolyVector m = random_message(kp.pub.code.field(), 3, s.degree_bound - kp.pub.memory, seed);
    const Ciphertext ct = encrypt(kp.pub, m, s, seed);
    EXPECT_EQ(ct.planted_error.weight(), 6u);
    EXPECT_TRUE(verify(kp.pub.code, ct.received, ct.planted_error));
    EXPECT_EQ(recover_message(kp.pub.code, ct.received - ct.planted_error), m);
    const Ciphertext again = encrypt(kp.pub, m, s, seed);
    EXPECT_EQ(again.received, ct.received);
  }
}

TEST(Encrypt, RejectsLongMessages) {
  const KeyPair kp = keygen(2, 5, 3, 2, 1);
  ErrorSpec s;
  s.degree_bound = 4;
  const PolyVector m = random_message(kp.pub.code.field(), 3, 10, 1);
  EXPECT_THROW(encrypt(kp.pub, m, s, 1), DimensionMismatch);
  EXPECT_THROW(encrypt(kp.pub, random_message(kp.pub.code.field(), 2, 1, 1), s, 1), DimensionMismatch);
}

TEST(BlockWeights, SumsToTotal) {
  ErrorSpec s;
  s.t_e = 9;
  s.degree_bound = 23;
  const PolyVector e = sample_error(Field(2), s, 5, 4);
  const auto w = block_weights(e, 2, 8);
  ASSERT_EQ(w.size(), 8u);
  std::size_t sum = 0;
  for (auto x : w) sum += x;
  EXPECT_EQ(sum, 9u);
}

TEST(Experiment, SmallRunRecoversAndDiscards) {
  ExperimentConfig cfg;
  cfg.q = 2, cfg.n = 2, cfg.k = 1, cfg.memory = 2;
  cfg.error.t_e = 4;
  cfg.error.degree_bound = 11;
  cfg.attack.gamma = 2;
  cfg.attack.epsilon = 1;
  cfg.attack.t_e = 4;
  cfg.attack.exhaustive = true;
  cfg.attack.w_low = 2;
  for (std::uint64_t s = 1; s <= 12; ++s) cfg.seeds.push_back(s);
  const ExperimentReport rep = run_experiment(cfg);
  EXPECT_EQ(rep.blocks, 4u);
  EXPECT_EQ(rep.t, 1u);
  EXPECT_GT(rep.predicted_keep, 0.0);
  EXPECT_LT(rep.predicted_keep, 1.0);
  ASSERT_EQ(rep.outcomes.size(), 12u);
  for (const auto& o : rep.outcomes) {
    bool heavy = false;
    for (auto w : o.block_weights) heavy |= w > 2;
    EXPECT_EQ(o.discarded, heavy);
    if (!o.discarded) { EXPECT_TRUE(o.found) << o.seed; }
  }
  cfg.jobs = 3;
  const ExperimentReport par = run_experiment(cfg);
  for (std::size_t i = 0; i < rep.outcomes.size(); ++i) {
    EXPECT_EQ(par.outcomes[i].seed, rep.outcomes[i].seed);
    EXPECT_EQ(par.outcomes[i].found, rep.outcomes[i].found);
    EXPECT_EQ(par.outcomes[i].nodes, rep.outcomes[i].nodes);
  }
}

TEST(Experiment, CheatModeEstimates) {
  ExperimentConfig cfg;
  cfg.q = 2, cfg.n = 2, cfg.k = 1, cfg.memory = 2;
  cfg.error.t_e = 3;
  cfg.error.degree_bound = 11;
  cfg.attack.gamma = 2;
  cfg.attack.epsilon = 2;
  cfg.attack.t_e = 3;
  cfg.attack.exhaustive = true;
  cfg.attack.w_low = 3;
  cfg.cheat = true;
  cfg.seeds = {1, 2, 3, 4};
  const ExperimentReport rep = run_experiment(cfg);
  for (const auto& o : rep.outcomes) {
    if (o.discarded) continue;
    ASSERT_TRUE(o.estimate.has_value());
    EXPECT_EQ(o.estimate->positions.size(), rep.blocks);
  }
}
