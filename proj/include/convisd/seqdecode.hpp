#ifndef CONVISD_SEQDECODE_HPP
#define CONVISD_SEQDECODE_HPP

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "convisd/convcode.hpp"
#include "convisd/isd.hpp"
#include "convisd/polymat.hpp"

namespace convisd {

struct AttackParams {
  std::size_t gamma = 0;
  std::optional<std::size_t> t;  // defaults to ceil(t_e / s)
  std::size_t epsilon = 0;
  std::uint64_t W = 1;
  std::optional<std::size_t> t_e;  // unset disables the weight-budget prune
  std::size_t w_low = 0;
  std::uint64_t seed = 0;
  bool cheat_mode = false;
  std::uint64_t max_nodes = 1'000'000;
  bool exhaustive = false;                  // exhaustive-mode ISD at every node
  std::optional<std::size_t> blocks;        // s; defaults to ceil(len(r) / (gamma + 1))
  bool use_supercode = true;                // decode non-delay-free keys through the left-prime factor
  bool record_trace = false;
  std::uint64_t enumeration_budget = kDefaultEnumerationBudget;
};

inline std::size_t block_count(std::size_t received_coeffs, std::size_t gamma) {
  return std::max<std::size_t>(1, (received_coeffs + gamma) / (gamma + 1));
}

// Flat error of a polynomial vector broken into s blocks of n(gamma+1) symbols.
inline std::vector<Vector> to_blocks(const PolyVector& v, std::size_t gamma, std::size_t s) {
  if (v.length() > s * (gamma + 1)) throw DimensionMismatch("vector longer than s blocks");
  return v.blocks(gamma + 1, s);
}

// r~_j - sum_{i<j} m~_i G~_{j-i}
inline Vector residual(const SlidingBlockCode& block, const std::vector<Vector>& r_blocks,
                       const std::vector<Vector>& messages, std::size_t j) {
  if (j >= r_blocks.size()) throw IndexOutOfRange("block index beyond received word");
  if (messages.size() < j) throw IndexOutOfRange("fewer accepted messages than the depth");
  Vector acc(block.N, 0);
  for (std::size_t i = 0; i < j; ++i)
    if (const Matrix* g = block.residual(j - i)) vec_mat_acc(acc, messages[i], *g);
  return vec_sub(block.field(), r_blocks[j], acc);
}

namespace detail {

inline std::vector<Poly> entry_polys(const PolyVector& v) {
  std::vector<Poly> e(v.width());
  for (std::size_t j = 0; j < v.width(); ++j) {
    e[j].resize(v.length());
    for (std::size_t d = 0; d < v.length(); ++d) e[j][d] = v.flat()[d * v.width() + j];
    poly::trim(e[j]);
  }
  return e;
}

inline PolyVector from_entry_polys(const Field& f, const std::vector<Poly>& e) {
  std::size_t len = 0;
  for (const auto& p : e) len = std::max(len, p.size());
  Vector flat(len * e.size(), 0);
  for (std::size_t j = 0; j < e.size(); ++j)
    for (std::size_t d = 0; d < e[j].size(); ++d) flat[d * e.size() + j] = e[j][d];
  return PolyVector::from_flat(f, e.size(), std::move(flat));
}

}  // namespace detail

/*
 * Membership and message recovery through the Hermite form g * u = (L | 0):
 * c lies in the code iff the last n - k entries of c * u vanish and m * L equals
 * the first k, which is solved by back substitution with exact division.
 */
class CodeMembership {
 public:
  explicit CodeMembership(const ConvCode& code) : code_(code), hf_(row_hermite_form(code.generator())) {}

  std::optional<PolyVector> message_of(const PolyVector& c) const {
    const Field& f = code_.field();
    const std::size_t n = code_.n(), k = code_.k();
    if (c.width() != n) throw DimensionMismatch("codeword width differs from n");
    const auto ce = detail::entry_polys(c);
    std::vector<Poly> y(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        if (!ce[l].empty()) y[j] = poly::add(f, y[j], poly::mul(f, ce[l], hf_.u.entry(l, j)));
    for (std::size_t j = k; j < n; ++j)
      if (!y[j].empty()) return std::nullopt;
    std::vector<Poly> m(k);
    for (std::size_t j = k; j-- > 0;) {
      Poly rhs = y[j];
      for (std::size_t i = j + 1; i < k; ++i)
        if (!m[i].empty()) rhs = poly::sub(f, rhs, poly::mul(f, m[i], hf_.h.entry(i, j)));
      auto [quot, rem] = poly::divmod(f, rhs, hf_.h.entry(j, j));
      if (!rem.empty()) return std::nullopt;
      m[j] = std::move(quot);
    }
    return detail::from_entry_polys(f, m);
  }

  bool contains(const PolyVector& c) const { return message_of(c).has_value(); }

 private:
  ConvCode code_;
  HermiteForm hf_;
};

inline PolyVector recover_message(const ConvCode& code, const PolyVector& codeword) {
  auto m = CodeMembership(code).message_of(codeword);
  if (!m) throw NotInCode("word is not a codeword");
  return *m;
}

// r - e in the code; uses the parity-check matrix when there is one.
inline bool verify(const ConvCode& code, const PolyVector& received, const PolyVector& error) {
  if (received.width() != code.n() || error.width() != code.n()) return false;
  const PolyVector c = received - error;
  if (!code.parity()) return CodeMembership(code).contains(c);
  const Field& f = code.field();
  const auto ce = detail::entry_polys(c);
  const PolyMatrix& h = *code.parity();
  for (std::size_t i = 0; i < h.rows(); ++i) {
    Poly acc;
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (!ce[j].empty()) acc = poly::add(f, acc, poly::mul(f, h.entry(i, j), ce[j]));
    if (!acc.empty()) return false;
  }
  return true;
}

// The code the block machinery runs on: the code itself when delay-free, else its left-prime supercode.
inline ConvCode decoding_view(const ConvCode& code, bool use_supercode) {
  if (code.delay_free()) return code;
  if (!use_supercode) throw NotDelayFree("generator is not delay-free and supercode decoding is disabled");
  ConvCode view = ConvCode::from_generator(supercode_factorization(code.generator()).u1);
  if (!view.delay_free()) throw NotDelayFree("supercode is not delay-free");
  return view;
}

enum class AttackStatus { Found, NotFound, BudgetExceeded };

inline const char* to_string(AttackStatus s) {
  switch (s) {
    case AttackStatus::Found: return "found";
    case AttackStatus::NotFound: return "not_found";
    case AttackStatus::BudgetExceeded: return "budget_exceeded";
  }
  return "unknown";
}

struct NodeVisit {
  std::size_t depth;
  std::size_t index;  // position in that depth's candidate list
  friend bool operator==(const NodeVisit&, const NodeVisit&) = default;
};

struct AttackResult {
  AttackStatus status = AttackStatus::NotFound;
  PolyVector error;
  PolyVector message;
  std::size_t blocks = 0;
  std::size_t t = 0;
  std::uint64_t nodes = 0;
  std::uint64_t isd_calls = 0;
  std::vector<std::size_t> branch_list_sizes;  // list size at each depth of the returned branch
  std::vector<std::size_t> max_list_sizes;     // largest list built at each depth
  std::vector<NodeVisit> trace;
  double seconds = 0;

  bool found() const { return status == AttackStatus::Found; }
};

/*
 * Shared state for one instance: sliding block code of the decoding view,
 * received blocks, low-weight codewords and the seeded candidate generator.
 */
class SequentialDecoder {
 public:
  SequentialDecoder(const ConvCode& code, const PolyVector& received, const AttackParams& params)
      : code_(code), view_(decoding_view(code, params.use_supercode)), params_(params), received_(received) {
    if (received.width() != code.n()) throw DimensionMismatch("received width differs from n");
    block_ = make_sliding_block(view_, params.gamma);
    s_ = params.blocks ? *params.blocks : block_count(received.length(), params.gamma);
    if (s_ * (params.gamma + 1) < received.length()) throw InconsistentSpec("s * N is shorter than the received word");
    t_ = params.t ? *params.t : (params.t_e ? (*params.t_e + s_ - 1) / s_ : 0);
    w_max_ = t_ + params.epsilon;
    if (w_max_ > block_.N) throw InconsistentSpec("t + epsilon exceeds N");
    r_blocks_ = to_blocks(received, params.gamma, s_);
    if (params.w_low > 0) lows_ = low_weight_codewords(block_, params.w_low, params.enumeration_budget);
  }

  const SlidingBlockCode& block() const { return block_; }
  const ConvCode& view() const { return view_; }
  std::size_t blocks() const { return s_; }
  std::size_t t() const { return t_; }
  std::size_t w_max() const { return w_max_; }
  const std::vector<Vector>& received_blocks() const { return r_blocks_; }
  const std::vector<LowWeightWord>& lows() const { return lows_; }

  // ISD plus augmentation on a residual; the seed depends only on (seed, depth, residual).
  SolutionList candidates(std::size_t depth, const Vector& res) const {
    IsdConfig cfg;
    cfg.w_max = w_max_;
    cfg.iterations = params_.W;
    cfg.seed = derive_seed({params_.seed, depth, fnv1a(res)});
    cfg.exhaustive = params_.exhaustive;
    SolutionList list = prange_collect(block_.g0, res, cfg, params_.enumeration_budget);
    return augment_low_weight(block_.field(), std::move(list), lows_, w_max_);
  }

  PolyVector assemble(const std::vector<Vector>& error_blocks) const {
    Vector flat;
    for (const auto& e : error_blocks) flat.insert(flat.end(), e.begin(), e.end());
    return PolyVector::from_flat(code_.field(), code_.n(), std::move(flat));
  }

  AttackResult run() const {
    const auto start = std::chrono::steady_clock::now();
    AttackResult res;
    res.blocks = s_;
    res.t = t_;
    res.max_list_sizes.assign(s_, 0);
    const std::size_t budget = params_.t_e ? *params_.t_e : std::numeric_limits<std::size_t>::max();
    const CodeMembership membership(code_);

    std::vector<SolutionList> lists(s_);
    std::vector<std::size_t> cursor(s_, 0);
    std::vector<Vector> errors(s_, Vector(block_.N, 0)), messages(s_, Vector(block_.K, 0));
    std::vector<std::size_t> weights(s_, 0);
    std::size_t acc = 0;

    auto build = [&](std::size_t depth, const Vector& r) {
      lists[depth] = candidates(depth, r);
      cursor[depth] = 0;
      ++res.isd_calls;
      res.max_list_sizes[depth] = std::max(res.max_list_sizes[depth], lists[depth].size());
    };
    auto finish = [&](AttackStatus st) {
      res.status = st;
      res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return res;
    };

    build(0, r_blocks_[0]);
    std::size_t j = 0;
    for (;;) {
      if (cursor[j] == lists[j].size()) {
        if (j == 0) return finish(AttackStatus::NotFound);
        --j;
        acc -= weights[j];
        weights[j] = 0;
        std::fill(errors[j].begin(), errors[j].end(), 0);
        std::fill(messages[j].begin(), messages[j].end(), 0);
        continue;
      }
      const std::size_t index = cursor[j]++;
      const Solution& cand = lists[j][index];
      const std::size_t w = weight(cand.error);
      if (w > budget || acc > budget - w) continue;
      if (res.nodes == params_.max_nodes) return finish(AttackStatus::BudgetExceeded);
      ++res.nodes;
      if (params_.record_trace) res.trace.push_back({j, index});
      errors[j] = cand.error;
      messages[j] = cand.message;

      if (j + 1 == s_) {
        const PolyVector e = assemble(errors);
        if (auto m = membership.message_of(received_ - e)) {
          res.error = e;
          res.message = *m;
          for (std::size_t d = 0; d < s_; ++d) res.branch_list_sizes.push_back(lists[d].size());
          return finish(AttackStatus::Found);
        }
        continue;
      }
      build(j + 1, residual(block_, r_blocks_, messages, j + 1));
      if (lists[j + 1].empty()) continue;
      weights[j] = w;
      acc += w;
      ++j;
    }
  }

 private:
  ConvCode code_;
  ConvCode view_;
  AttackParams params_;
  PolyVector received_;
  SlidingBlockCode block_;
  std::size_t s_ = 0, t_ = 0, w_max_ = 0;
  std::vector<Vector> r_blocks_;
  std::vector<LowWeightWord> lows_;
};

inline AttackResult attack(const ConvCode& code, const PolyVector& received, const AttackParams& params) {
  return SequentialDecoder(code, received, params).run();
}

struct WorkEstimate {
  std::vector<std::optional<std::size_t>> positions;  // 1-based; nullopt when the correct block error is missing
  std::uint64_t total_rank_sum = 0;
  std::size_t missing = 0;
  double seconds = 0;  // wall time spent in the ISD calls along the branch
};

/*
 * Walks the correct branch with the planted error known and records where the
 * correct block error sits in each candidate list.
 */
inline WorkEstimate estimate_work(const ConvCode& code, const PolyVector& received, const PolyVector& planted,
                                  const AttackParams& params) {
  const SequentialDecoder dec(code, received, params);
  const auto& block = dec.block();
  const PolyVector m = recover_message(dec.view(), received - planted);
  const std::vector<Vector> e_blocks = to_blocks(planted, params.gamma, dec.blocks());
  const std::size_t m_count = std::max(dec.blocks(), (m.length() + params.gamma) / (params.gamma + 1));
  std::vector<Vector> m_blocks = m.blocks(params.gamma + 1, m_count);
  m_blocks.resize(dec.blocks());
  WorkEstimate est;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t j = 0; j < dec.blocks(); ++j) {
    const SolutionList list = dec.candidates(j, residual(block, dec.received_blocks(), m_blocks, j));
    std::optional<std::size_t> pos;
    for (std::size_t i = 0; i < list.size(); ++i)
      if (list[i].error == e_blocks[j]) {
        pos = i + 1;
        break;
      }
    if (pos)
      est.total_rank_sum += *pos;
    else
      ++est.missing;
    est.positions.push_back(pos);
  }
  est.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return est;
}

}  // namespace convisd

#endif
