#ifndef CONVISD_CRYPTOLAB_HPP
#define CONVISD_CRYPTOLAB_HPP

#include <chrono>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "convisd/convcode.hpp"
#include "convisd/planner.hpp"
#include "convisd/polymat.hpp"
#include "convisd/rng.hpp"
#include "convisd/seqdecode.hpp"

namespace convisd {

struct PublicKey {
  ConvCode code;
  std::uint32_t q = 2;
  std::size_t n = 0, k = 0, memory = 0;
  std::size_t rank_at_zero = 0;

  bool delay_free() const { return rank_at_zero == k; }
};

// Secret parts of a key; kept for bookkeeping only and never handed to the attack.
struct SecretWitness {
  PolyMatrix g;
  PolyMatrix u;
  std::vector<std::size_t> permutation;  // column j of G' is column permutation[j] of U G
};

struct KeyPair {
  PublicKey pub;
  SecretWitness secret;
};

struct KeygenOptions {
  std::size_t scramble_ops = 20;
  // Maximum degree of the scrambler U; defaults to min(1, memory).
  std::optional<std::size_t> scramble_degree;
  // Reject G when rowspan(G(0)) has a nonzero word lighter than this. A weight-1
  // word there forces that coordinate into every information set of every window.
  std::size_t min_distance0 = 2;
};

namespace detail {

inline Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, Rng& rng) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<Elem>(rng.below(f.size()));
  return m;
}

inline Elem random_unit(const Field& f, Rng& rng) { return static_cast<Elem>(1 + rng.below(f.size() - 1)); }

// U built from elementary row operations, rejecting steps that push deg U past max_degree.
inline PolyMatrix random_unimodular(const Field& f, std::size_t k, std::size_t ops, std::size_t max_degree, Rng& rng) {
  std::vector<Poly> u(k * k);
  for (std::size_t i = 0; i < k; ++i) u[i * k + i] = Poly{1};
  auto deg_of = [&](std::size_t row) {
    std::size_t d = 0;
    for (std::size_t j = 0; j < k; ++j) d = std::max(d, u[row * k + j].empty() ? 0 : u[row * k + j].size() - 1);
    return d;
  };
  std::size_t done = 0, attempts = 0;
  while (done < ops && attempts < 100 * (ops + 1)) {
    ++attempts;
    const std::uint64_t kind = k > 1 ? rng.below(3) : 1;
    if (kind == 0) {
      const std::size_t a = rng.below(k), b = rng.below(k);
      for (std::size_t j = 0; j < k; ++j) std::swap(u[a * k + j], u[b * k + j]);
    } else if (kind == 1) {
      const std::size_t a = rng.below(k);
      const Elem c = random_unit(f, rng);
      for (std::size_t j = 0; j < k; ++j) u[a * k + j] = poly::scale(f, u[a * k + j], c);
    } else {
      const std::size_t a = rng.below(k);
      std::size_t b = rng.below(k - 1);
      if (b >= a) ++b;
      const Poly factor = poly::monomial(random_unit(f, rng), rng.below(max_degree + 1));
      std::vector<Poly> row(k);
      for (std::size_t j = 0; j < k; ++j) row[j] = poly::add(f, u[a * k + j], poly::mul(f, factor, u[b * k + j]));
      std::vector<Poly> saved(u.begin() + a * k, u.begin() + (a + 1) * k);
      std::copy(row.begin(), row.end(), u.begin() + a * k);
      if (deg_of(a) > max_degree) {
        std::copy(saved.begin(), saved.end(), u.begin() + a * k);
        continue;
      }
    }
    ++done;
  }
  return PolyMatrix::from_entries(f, k, k, u);
}

inline bool min_distance_at_least(const Matrix& g, std::size_t d) {
  const Matrix h = nullspace(g);
  bool light = false;
  for_each_syndrome_solution(h, Vector(h.rows(), 0), d - 1, [&](const Vector& v) { light |= !is_zero(v); });
  return !light;
}

}  // namespace detail

/*
 * Toy key: random delay-free G(z) of exact memory, scrambled as G' = U G P with
 * U unimodular and P a column permutation.
 */
inline KeyPair keygen(std::uint32_t q, std::size_t n, std::size_t k, std::size_t memory, std::uint64_t seed,
                      const KeygenOptions& opt = {}) {
  if (k == 0 || k >= n) throw InconsistentSpec("need 0 < k < n");
  const Field f(q);
  Rng rng(derive_seed({seed, 0x6b6579}));
  PolyMatrix g;
  for (;;) {
    std::vector<Matrix> coeffs;
    for (std::size_t d = 0; d <= memory; ++d) coeffs.push_back(detail::random_matrix(f, k, n, rng));
    if (rank(coeffs[0]) != k || coeffs[memory].is_zero()) continue;
    if (opt.min_distance0 > 1 && !detail::min_distance_at_least(coeffs[0], std::min(opt.min_distance0, n - k + 1)))
      continue;
    g = PolyMatrix::from_coeffs(f, k, n, std::move(coeffs));
    break;  // G(0) of full rank already gives full row rank over F_q(z)
  }
  const std::size_t udeg = opt.scramble_degree ? *opt.scramble_degree : std::min<std::size_t>(1, memory);
  PolyMatrix u = detail::random_unimodular(f, k, opt.scramble_ops, udeg, rng);
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  rng.shuffle(perm);
  Matrix p(f, n, n);
  for (std::size_t j = 0; j < n; ++j) p(perm[j], j) = 1;
  const PolyMatrix gpub = poly_mul(poly_mul(u, g), PolyMatrix::constant(p));

  KeyPair kp;
  kp.pub.code = ConvCode::from_generator(gpub);
  kp.pub.q = q;
  kp.pub.n = n;
  kp.pub.k = k;
  kp.pub.memory = kp.pub.code.memory();
  kp.pub.rank_at_zero = rank(gpub.coeff(0));
  kp.secret = {g, u, perm};
  return kp;
}

enum class ErrorMode { UniformTotalWeight, PerBlockWeights };

struct ErrorSpec {
  ErrorMode mode = ErrorMode::UniformTotalWeight;
  std::size_t t_e = 0;
  std::size_t degree_bound = 0;
  // Pattern mode: coefficients per block and the repeating per-block weights.
  std::size_t block_coeffs = 1;
  std::vector<std::size_t> pattern;

  std::size_t coeff_count() const { return degree_bound + 1; }
  std::size_t block_count() const { return (coeff_count() + block_coeffs - 1) / block_coeffs; }
};

inline void validate(const ErrorSpec& spec, std::size_t n) {
  if (n == 0) throw InconsistentSpec("code length is zero");
  if (spec.mode == ErrorMode::UniformTotalWeight) {
    if (spec.t_e > spec.coeff_count() * n) throw InconsistentSpec("t_e exceeds the number of coordinates");
    return;
  }
  if (spec.block_coeffs == 0) throw InconsistentSpec("block length must be positive");
  if (spec.pattern.empty()) throw InconsistentSpec("pattern mode needs block weights");
  std::size_t total = 0;
  for (std::size_t b = 0; b < spec.block_count(); ++b) {
    const std::size_t len = std::min(spec.block_coeffs, spec.coeff_count() - b * spec.block_coeffs) * n;
    const std::size_t w = spec.pattern[b % spec.pattern.size()];
    if (w > len) throw InconsistentSpec("pattern weight exceeds block length");
    total += w;
  }
  if (total != spec.t_e) throw InconsistentSpec("pattern weights sum to " + std::to_string(total) + ", not t_e");
}

inline PolyVector sample_error(const Field& f, const ErrorSpec& spec, std::size_t n, std::uint64_t seed) {
  validate(spec, n);
  Rng rng(derive_seed({seed, 0x657272}));
  Vector flat(spec.coeff_count() * n, 0);
  auto place = [&](std::size_t offset, std::size_t len, std::size_t w) {
    for (auto pos : rng.sample_subset(len, w)) flat[offset + pos] = detail::random_unit(f, rng);
  };
  if (spec.mode == ErrorMode::UniformTotalWeight) {
    place(0, flat.size(), spec.t_e);
  } else {
    for (std::size_t b = 0; b < spec.block_count(); ++b) {
      const std::size_t off = b * spec.block_coeffs * n;
      const std::size_t len = std::min(spec.block_coeffs * n, flat.size() - off);
      place(off, len, spec.pattern[b % spec.pattern.size()]);
    }
  }
  return PolyVector::from_flat(f, n, std::move(flat));
}

inline PolyVector random_message(const Field& f, std::size_t k, std::size_t degree, std::uint64_t seed) {
  Rng rng(derive_seed({seed, 0x6d7367}));
  Vector flat((degree + 1) * k);
  for (auto& x : flat) x = static_cast<Elem>(rng.below(f.size()));
  return PolyVector::from_flat(f, k, std::move(flat));
}

struct Ciphertext {
  PolyVector received;
  PolyVector planted_error;
};

inline Ciphertext encrypt(const PublicKey& pub, const PolyVector& message, const ErrorSpec& spec, std::uint64_t seed) {
  if (message.width() != pub.k) throw DimensionMismatch("message width differs from k");
  const PolyVector c = encode(pub.code, message);
  if (c.length() > spec.coeff_count()) throw DimensionMismatch("message degree too large for the error degree bound");
  PolyVector e = sample_error(pub.code.field(), spec, pub.n, seed);
  return {c + e, e};
}

// Per-block weights of v cut into s blocks of (gamma+1) coefficients.
inline std::vector<std::size_t> block_weights(const PolyVector& v, std::size_t gamma, std::size_t s) {
  std::vector<std::size_t> w;
  for (const auto& b : to_blocks(v, gamma, s)) w.push_back(weight(b));
  return w;
}

struct ExperimentConfig {
  std::uint32_t q = 2;
  std::size_t n = 0, k = 0, memory = 0;
  KeygenOptions keygen;
  ErrorSpec error;
  std::optional<std::size_t> message_degree;  // default: degree_bound - public memory
  AttackParams attack;
  std::vector<std::uint64_t> seeds;
  bool cheat = false;
  double clock_ghz = 3.4;
  unsigned jobs = 1;
};

struct SeedOutcome {
  std::uint64_t seed = 0;
  bool discarded = false;
  bool found = false;
  bool recovered_planted = false;
  AttackStatus status = AttackStatus::NotFound;
  std::uint64_t nodes = 0;
  double seconds = 0;
  double bits = 0;
  std::vector<std::size_t> block_weights;
  std::optional<WorkEstimate> estimate;
};

struct ExperimentReport {
  std::vector<SeedOutcome> outcomes;
  std::size_t blocks = 0;
  std::size_t t = 0;
  double predicted_keep = 0;  // planner probability that no block exceeds t + eps

  std::size_t discarded() const {
    std::size_t d = 0;
    for (const auto& o : outcomes) d += o.discarded;
    return d;
  }
  double discard_rate() const { return outcomes.empty() ? 0 : static_cast<double>(discarded()) / outcomes.size(); }
  std::size_t recovered() const {
    std::size_t r = 0;
    for (const auto& o : outcomes) r += o.recovered_planted;
    return r;
  }
};

inline SeedOutcome run_seed(const ExperimentConfig& cfg, std::uint64_t seed) {
  SeedOutcome out;
  out.seed = seed;
  const KeyPair kp = keygen(cfg.q, cfg.n, cfg.k, cfg.memory, seed, cfg.keygen);
  const std::size_t pub_mem = kp.pub.memory;
  if (!cfg.message_degree && cfg.error.degree_bound < pub_mem) throw InconsistentSpec("degree bound below public memory");
  const std::size_t mdeg = cfg.message_degree ? *cfg.message_degree : cfg.error.degree_bound - pub_mem;
  const PolyVector m = random_message(kp.pub.code.field(), cfg.k, mdeg, seed);
  const Ciphertext ct = encrypt(kp.pub, m, cfg.error, seed);

  AttackParams ap = cfg.attack;
  ap.seed = derive_seed({cfg.attack.seed, seed});
  const std::size_t s = ap.blocks ? *ap.blocks : block_count(cfg.error.coeff_count(), ap.gamma);
  ap.blocks = s;
  const std::size_t t = ap.t ? *ap.t : (ap.t_e ? (*ap.t_e + s - 1) / s : 0);
  out.block_weights = block_weights(ct.planted_error, ap.gamma, s);
  for (auto w : out.block_weights)
    if (w > t + ap.epsilon) out.discarded = true;
  if (out.discarded) return out;

  if (cfg.cheat) {
    out.estimate = estimate_work(kp.pub.code, ct.received, ct.planted_error, ap);
    const auto& est = *out.estimate;
    out.found = est.missing == 0;
    out.recovered_planted = out.found;
    out.nodes = est.total_rank_sum;
    out.seconds = est.seconds;
  } else {
    const AttackResult res = attack(kp.pub.code, ct.received, ap);
    out.status = res.status;
    out.found = res.found();
    out.recovered_planted = res.found() && res.error == ct.planted_error;
    out.nodes = res.nodes;
    out.seconds = res.seconds;
  }
  if (out.seconds > 0) out.bits = time_to_bits(out.seconds, cfg.clock_ghz);
  return out;
}

/*
 * Runs every seed, discarding those whose planted error has a block heavier
 * than t + eps. Independent seeds may run concurrently; results are keyed by
 * seed order.
 */
inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  const std::size_t s =
      cfg.attack.blocks ? *cfg.attack.blocks : block_count(cfg.error.coeff_count(), cfg.attack.gamma);
  rep.blocks = s;
  rep.t = cfg.attack.t ? *cfg.attack.t : (cfg.attack.t_e ? (*cfg.attack.t_e + s - 1) / s : 0);
  BlockProfile prof;
  prof.q = cfg.q;
  prof.N = cfg.n * (cfg.attack.gamma + 1);
  prof.K = cfg.k * (cfg.attack.gamma + 1);
  prof.s = s;
  prof.t_e = cfg.error.t_e;
  prof.epsilon = cfg.attack.epsilon;
  if (prof.t() == rep.t) rep.predicted_keep = to_double(block_weight_probability(prof));

  rep.outcomes.resize(cfg.seeds.size());
  const unsigned jobs = std::max(1u, cfg.jobs);
  for (std::size_t base = 0; base < cfg.seeds.size(); base += jobs) {
    std::vector<std::future<SeedOutcome>> pending;
    for (std::size_t i = base; i < std::min(cfg.seeds.size(), base + jobs); ++i)
      pending.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, run_seed, std::cref(cfg),
                                   cfg.seeds[i]));
    for (std::size_t i = 0; i < pending.size(); ++i) rep.outcomes[base + i] = pending[i].get();
  }
  return rep;
}

}  // namespace convisd

#endif
