#ifndef CONVISD_CLI_HPP
#define CONVISD_CLI_HPP

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "convisd/cryptolab.hpp"
#include "convisd/json_io.hpp"
#include "convisd/planner.hpp"
#include "convisd/seqdecode.hpp"

namespace convisd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotFound = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Profile {
  std::string name;
  std::uint32_t q = 2;
  std::size_t n = 0, k = 0, memory = 0;
  ErrorSpec spec;
  AttackParams attack;
  bool full_scale = false;
};

// Parameter presets for the two attacked schemes plus a desk-scale analog.
inline std::optional<Profile> preset(const std::string& name) {
  Profile p;
  p.name = name;
  if (name == "bolkema-toy") {
    p.q = 2, p.n = 5, p.k = 3, p.memory = 10;
    p.spec.t_e = 14;
    p.spec.degree_bound = 191;
    p.attack.gamma = 11;
    p.attack.epsilon = 3;
    p.attack.t_e = 14;
    p.attack.w_low = 2;
    p.attack.blocks = 16;
    p.attack.W = iterations_for_target(60, 36, 4, 16, 0.98);
  } else if (name == "bolkema-full") {
    p.q = 2, p.n = 5, p.k = 3, p.memory = 94;
    p.spec.t_e = 140;
    p.spec.degree_bound = 1999;
    p.attack.gamma = 11;
    p.attack.epsilon = 3;
    p.attack.t_e = 140;
    p.attack.w_low = 2;
    p.attack.blocks = 167;
    p.attack.W = 430;
    p.full_scale = true;
  } else if (name == "abns21-full") {
    p.q = 64, p.n = 62, p.k = 30, p.memory = 1;
    p.spec.mode = ErrorMode::PerBlockWeights;
    p.spec.t_e = 133;
    p.spec.degree_bound = 49;
    p.spec.block_coeffs = 1;
    p.spec.pattern = {2, 3, 3};
    p.attack.gamma = 0;
    p.attack.t = 2;
    p.attack.epsilon = 3;
    p.attack.t_e = 133;
    p.attack.w_low = 2;
    p.attack.blocks = 50;
    p.attack.W = 700;
    p.full_scale = true;
  } else {
    return std::nullopt;
  }
  return p;
}

namespace detail {

// "a..b" or a single integer.
inline std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s) {
  auto num = [&](const std::string& x) {
    if (x.empty() || x.find_first_not_of("0123456789") != std::string::npos) throw UsageError("bad range '" + s + "'");
    return std::stoull(x);
  };
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const auto v = num(s);
    return {v, v};
  }
  const auto lo = num(s.substr(0, dots)), hi = num(s.substr(dots + 2));
  if (lo > hi) throw UsageError("empty range '" + s + "'");
  return {lo, hi};
}

inline std::vector<std::size_t> parse_pattern(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("bad pattern '" + s + "'");
    out.push_back(std::stoull(item));
  }
  if (out.empty()) throw UsageError("empty pattern");
  return out;
}

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_text_file(path, text);
}

inline std::string hex64(std::uint64_t x) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

}  // namespace detail

struct PlanOptions {
  std::optional<std::uint64_t> q, N, K, s, te, t, W, w;
  std::string eps = "0..6";
  std::optional<double> target;
  bool table1 = false;
  std::uint64_t te_max = 5, tc_max = 3;
  std::string format = "csv";
  std::string out;
};

inline int cmd_plan(const PlanOptions& o, std::ostream& out) {
  if (!o.q) throw UsageError("plan: --q is required");
  if (o.format != "csv" && o.format != "json") throw UsageError("plan: --format must be csv or json");
  json j;
  std::string csv;
  j["q"] = *o.q;
  if (o.table1) {
    if (!o.N) throw UsageError("plan --table1: --N is required");
    csv = table1_csv(*o.q, *o.N, o.te_max, o.tc_max);
    json grid = json::array();
    for (std::uint64_t tc = 1; tc <= o.tc_max; ++tc)
      for (std::uint64_t te = 1; te <= o.te_max; ++te)
        grid.push_back({{"te", te}, {"tc", tc}, {"prob", to_double(lost_probability(*o.q, *o.N, te, tc))}});
    j["table1"] = grid;
  } else {
    if (!o.N || !o.K || !o.s || !o.te) throw UsageError("plan: --N, --K, --s and --te are required");
    if (*o.K > *o.N) throw UsageError("plan: K exceeds N");
    const auto [lo, hi] = detail::parse_range(o.eps);
    BlockProfile p{*o.q, *o.N, *o.K, *o.s, *o.te, 0};
    const std::uint64_t t = o.t ? *o.t : p.t();
    if (t != p.t()) throw UsageError("plan: --t must equal ceil(te / s) for the exact block probability");
    csv = fig2_csv(p, lo, hi) + "\n" + fig3_csv(*o.N, *o.K, t, lo, hi) + "\n";
    csv += "epsilon,tail_bound,expected_solutions\n";
    json rows = json::array();
    for (std::uint64_t e = lo; e <= hi; ++e) {
      p.epsilon = e;
      const double prob = to_double(block_weight_probability(p));
      const double ratio = to_double(workfactor_ratio(*o.N, *o.K, t, e));
      const double tb = t * p.s >= 1 ? tail_bound(*o.N, p.s, t, e) : 0.0;
      const double es = expected_solutions(*o.q, *o.N, *o.K, t, e);
      csv += std::to_string(e) + "," + format_g15(tb) + "," + format_g15(es) + "\n";
      rows.push_back({{"epsilon", e}, {"probability", prob}, {"wf_ratio", ratio}, {"tail_bound", tb},
                      {"expected_solutions", es}});
    }
    j["profile"] = {{"N", *o.N}, {"K", *o.K}, {"s", *o.s}, {"te", *o.te}, {"t", t}};
    j["epsilon"] = rows;
    const std::uint64_t w = o.w ? *o.w : t + hi;
    std::string kv;
    if (o.W) {
      const double sp = success_probability(*o.N, *o.K, w, *o.W, *o.s);
      kv += "success_probability," + format_g15(sp) + "\n";
      j["success_probability"] = {{"w", w}, {"W", *o.W}, {"value", sp}};
    }
    if (o.target) {
      const auto W = iterations_for_target(*o.N, *o.K, w, *o.s, *o.target);
      kv += "recommended_W," + std::to_string(W) + "\n";
      j["recommended_W"] = {{"w", w}, {"target", *o.target}, {"value", W}};
    }
    if (!kv.empty()) csv += "\nkey,value\n" + kv;
  }
  detail::emit(o.format == "csv" ? csv : j.dump(2) + "\n", o.out, out);
  return kExitOk;
}

struct GenOptions {
  std::string profile;
  std::optional<std::uint32_t> q;
  std::optional<std::size_t> n, k, memory, gamma, te, degree, eps, wlow, message_degree, t, s;
  std::optional<std::uint64_t> W;
  std::string pattern;
  std::uint64_t seed = 1;
  double target = 0.98;
  bool benchmark = false;
  std::string out, secret_out;
};

inline Profile profile_from(const GenOptions& o) {
  Profile p;
  if (!o.profile.empty()) {
    auto pre = preset(o.profile);
    if (!pre) throw UsageError("unknown profile '" + o.profile + "'");
    p = *pre;
  } else {
    if (!o.q || !o.n || !o.k || !o.memory || !o.te || !o.degree)
      throw UsageError("gen: --q, --n, --k, --memory, --te and --degree are required without --profile");
    p.name = "custom";
  }
  if (o.q) p.q = *o.q;
  if (o.n) p.n = *o.n;
  if (o.k) p.k = *o.k;
  if (o.memory) p.memory = *o.memory;
  if (o.gamma) p.attack.gamma = *o.gamma;
  if (o.te) p.spec.t_e = *o.te, p.attack.t_e = *o.te;
  if (o.degree) p.spec.degree_bound = *o.degree;
  if (o.eps) p.attack.epsilon = *o.eps;
  if (o.wlow) p.attack.w_low = *o.wlow;
  if (o.t) p.attack.t = *o.t;
  if (!o.pattern.empty()) {
    p.spec.mode = ErrorMode::PerBlockWeights;
    p.spec.pattern = detail::parse_pattern(o.pattern);
    p.spec.block_coeffs = p.attack.gamma + 1;
  }
  if (o.k && o.n && *o.k >= *o.n) throw UsageError("gen: need k < n");
  try {
    Field f(p.q);
  } catch (const InvalidField& e) {
    throw UsageError(e.what());
  }
  try {
    validate(p.spec, p.n);
  } catch (const InconsistentSpec& e) {
    throw UsageError(std::string("gen: ") + e.what());
  }
  const std::size_t s = o.s ? *o.s : block_count(p.spec.coeff_count(), p.attack.gamma);
  p.attack.blocks = s;
  if (o.W) {
    p.attack.W = *o.W;
  } else if (o.profile.empty() || o.gamma || o.te || o.eps || o.degree) {
    const std::size_t N = p.n * (p.attack.gamma + 1), K = p.k * (p.attack.gamma + 1);
    const std::size_t t = p.attack.t ? *p.attack.t : (p.spec.t_e + s - 1) / s;
    if (t + p.attack.epsilon <= N - K) p.attack.W = iterations_for_target(N, K, t + p.attack.epsilon, s, o.target);
  }
  return p;
}

inline int cmd_gen(const GenOptions& o, std::ostream& out, std::ostream& err) {
  const Profile p = profile_from(o);
  if (p.full_scale) err << "warning: profile " << p.name << " is full scale; attacking it takes hours\n";
  const KeyPair kp = keygen(p.q, p.n, p.k, p.memory, o.seed);
  if (p.spec.degree_bound < kp.pub.memory && !o.message_degree)
    throw UsageError("gen: error degree bound is below the public memory");
  const std::size_t mdeg = o.message_degree ? *o.message_degree : p.spec.degree_bound - kp.pub.memory;
  const PolyVector m = random_message(kp.pub.code.field(), p.k, mdeg, o.seed);
  Ciphertext ct;
  try {
    ct = encrypt(kp.pub, m, p.spec, o.seed);
  } catch (const DimensionMismatch& e) {
    throw UsageError(std::string("gen: ") + e.what());
  }
  Instance in{kp.pub.code, ct.received, p.spec, o.seed, std::nullopt, p.attack, p.name};
  if (o.benchmark) in.planted_error = ct.planted_error;
  detail::emit(instance_to_json(in).dump(2) + "\n", o.out, out);
  if (!o.secret_out.empty()) write_text_file(o.secret_out, secret_to_json(kp.secret, o.seed).dump(2) + "\n");
  return kExitOk;
}

struct AttackOptions {
  std::string in, out, error_out;
  std::optional<std::size_t> gamma, te, eps, wlow, t, s;
  std::optional<std::uint64_t> W, max_nodes;
  std::uint64_t seed = 1;
  bool cheat = false;
  bool exhaustive = false;
  double clock_ghz = 3.4;
  unsigned jobs = 1;
};

inline AttackParams attack_params_from(const Instance& in, const AttackOptions& o) {
  AttackParams p = in.attack ? *in.attack : AttackParams{};
  if (!p.t_e) p.t_e = in.spec.t_e;
  if (o.gamma) p.gamma = *o.gamma;
  if (o.te) p.t_e = *o.te;
  if (o.eps) p.epsilon = *o.eps;
  if (o.wlow) p.w_low = *o.wlow;
  if (o.t) p.t = *o.t;
  if (o.s) p.blocks = *o.s;
  if (o.W) p.W = *o.W;
  if (o.max_nodes) p.max_nodes = *o.max_nodes;
  if (o.exhaustive) p.exhaustive = true;
  if (o.gamma && !o.s) p.blocks.reset();
  p.seed = o.seed;
  p.cheat_mode = o.cheat;
  if (p.W == 0) throw UsageError("attack: --W must be at least 1");
  return p;
}

inline json report_header(const std::string& command, const Field& f, std::uint64_t seed, const json& params,
                          const json& instance) {
  json j;
  j["command"] = command;
  j["seed"] = seed;
  j["config_hash"] = detail::hex64(fnv1a_bytes(instance.dump(), fnv1a_bytes(params.dump())));
  j["field"] = field_to_json(f);
  j["params"] = params;
  return j;
}

inline int cmd_attack(const AttackOptions& o, std::ostream& out) {
  const json raw = read_json_file(o.in);
  const Instance in = instance_from_json(raw);
  const AttackParams p = attack_params_from(in, o);
  json params = attack_params_to_json(p);
  params["cheat"] = o.cheat;
  json rep = report_header("attack", in.public_key.field(), o.seed, params, raw);

  if (o.cheat) {
    if (!in.planted_error) throw UsageError("attack --cheat needs an instance generated with --benchmark");
    const WorkEstimate est = estimate_work(in.public_key, in.ciphertext, *in.planted_error, p);
    json pos = json::array();
    for (const auto& x : est.positions) pos.push_back(x ? json(*x) : json("missing"));
    rep["mode"] = "estimate";
    rep["positions"] = pos;
    rep["total_rank_sum"] = est.total_rank_sum;
    rep["missing"] = est.missing;
    const double per_call = est.positions.empty() ? 0 : est.seconds / static_cast<double>(est.positions.size());
    const double estimated = per_call * static_cast<double>(est.total_rank_sum);
    json timing;
    timing["seconds"] = est.seconds;
    timing["estimated_seconds"] = estimated;
    timing["clock_ghz"] = o.clock_ghz;
    if (estimated > 0) timing["estimated_bits"] = time_to_bits(estimated, o.clock_ghz);
    rep["timing"] = timing;
    detail::emit(rep.dump(2) + "\n", o.out, out);
    return est.missing == 0 ? kExitOk : kExitNotFound;
  }

  const AttackResult res = attack(in.public_key, in.ciphertext, p);
  const bool verified = res.found() && verify(in.public_key, in.ciphertext, res.error) &&
                        (!p.t_e || res.error.weight() <= *p.t_e);
  rep["mode"] = "attack";
  rep["status"] = to_string(res.status);
  rep["found"] = res.found();
  rep["verified"] = verified;
  rep["blocks"] = res.blocks;
  rep["t"] = res.t;
  rep["nodes"] = res.nodes;
  rep["isd_calls"] = res.isd_calls;
  rep["branch_list_sizes"] = res.branch_list_sizes;
  rep["max_list_sizes"] = res.max_list_sizes;
  if (res.found()) {
    rep["error_weight"] = res.error.weight();
    rep["error"] = polyvector_to_json(res.error);
    rep["message"] = polyvector_to_json(res.message);
    if (in.planted_error) rep["matches_planted"] = res.error == *in.planted_error;
  }
  json timing;
  timing["seconds"] = res.seconds;
  timing["clock_ghz"] = o.clock_ghz;
  if (res.seconds > 0) timing["bits"] = time_to_bits(res.seconds, o.clock_ghz);
  rep["timing"] = timing;
  detail::emit(rep.dump(2) + "\n", o.out, out);
  if (res.found() && !o.error_out.empty()) write_text_file(o.error_out, polyvector_to_json(res.error).dump(2) + "\n");
  return verified ? kExitOk : kExitNotFound;
}

struct VerifyOptions {
  std::string in, error;
  std::optional<std::size_t> te;
};

inline int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  const Instance in = instance_from_json(read_json_file(o.in));
  const json ej = read_json_file(o.error);
  const PolyVector e = polyvector_from_json(ej.is_object() && ej.contains("error") ? ej.at("error") : ej);
  if (e.width() != in.public_key.n() || e.field() != in.public_key.field())
    throw FormatError("error does not match the public key");
  const std::size_t te = o.te ? *o.te : in.spec.t_e;
  const bool member = verify(in.public_key, in.ciphertext, e);
  const bool ok = member && e.weight() <= te;
  out << (ok ? "valid" : "invalid") << ": weight " << e.weight() << " (limit " << te << "), "
      << (member ? "r - e is a codeword" : "r - e is not a codeword") << "\n";
  return ok ? kExitOk : kExitNotFound;
}

struct ExperimentOptions {
  GenOptions gen;
  AttackOptions attack;
  std::string seeds = "1..20";
};

inline int cmd_experiment(const ExperimentOptions& o, std::ostream& out, std::ostream& err) {
  const Profile p = profile_from(o.gen);
  if (p.full_scale && !o.attack.cheat) err << "warning: profile " << p.name << " is full scale; this takes hours\n";
  const auto [lo, hi] = detail::parse_range(o.seeds);
  ExperimentConfig cfg;
  cfg.q = p.q, cfg.n = p.n, cfg.k = p.k, cfg.memory = p.memory;
  cfg.error = p.spec;
  cfg.message_degree = o.gen.message_degree;
  Instance dummy;
  dummy.attack = p.attack;
  dummy.spec = p.spec;
  cfg.attack = attack_params_from(dummy, o.attack);
  cfg.attack.seed = o.gen.seed;
  cfg.cheat = o.attack.cheat;
  cfg.clock_ghz = o.attack.clock_ghz;
  cfg.jobs = o.attack.jobs;
  for (auto s = lo; s <= hi; ++s) cfg.seeds.push_back(s);
  const ExperimentReport rep = run_experiment(cfg);
  json params = attack_params_to_json(cfg.attack);
  params["profile"] = p.name;
  params["seeds"] = o.seeds;
  params["cheat"] = cfg.cheat;
  json j = report_header("experiment", Field(p.q), o.gen.seed, params, error_spec_to_json(p.spec));
  j["report"] = experiment_report_to_json(rep);
  detail::emit(j.dump(2) + "\n", o.attack.out, out);
  return kExitOk;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Sequential information-set decoding of convolutional codes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "convisd 1.0");

  PlanOptions plan;
  auto* sp = app.add_subcommand("plan", "Block-weight probabilities, work factors and iteration budgets");
  sp->add_option("--q", plan.q, "Field size");
  sp->add_option("--N", plan.N, "Block length n(gamma+1)");
  sp->add_option("--K", plan.K, "Block dimension k(gamma+1)");
  sp->add_option("--s", plan.s, "Number of blocks");
  sp->add_option("--te", plan.te, "Total error weight");
  sp->add_option("--t", plan.t, "Per-block weight (must equal ceil(te/s))");
  sp->add_option("--eps", plan.eps, "Epsilon or range a..b")->capture_default_str();
  sp->add_option("--W", plan.W, "Prange iterations per block for success_probability");
  sp->add_option("--w", plan.w, "Block error weight for W planning (default t + max eps)");
  sp->add_option("--target", plan.target, "Target success probability for the recommended W");
  sp->add_flag("--table1", plan.table1, "Emit the lost-probability grid (te, tc) instead");
  sp->add_option("--te-max", plan.te_max, "Largest te in the grid")->capture_default_str();
  sp->add_option("--tc-max", plan.tc_max, "Largest tc in the grid")->capture_default_str();
  sp->add_option("--format", plan.format, "csv or json")->capture_default_str();
  sp->add_option("--out", plan.out, "Output file (default stdout)");

  auto add_gen_options = [](CLI::App* c, GenOptions& g) {
    c->add_option("--profile", g.profile, "Preset: bolkema-toy, bolkema-full, abns21-full");
    c->add_option("--q", g.q, "Field size");
    c->add_option("--n", g.n, "Code length");
    c->add_option("--k", g.k, "Code dimension");
    c->add_option("--memory", g.memory, "Memory of the secret generator");
    c->add_option("--gamma", g.gamma, "Window parameter gamma");
    c->add_option("--te", g.te, "Total error weight");
    c->add_option("--degree", g.degree, "Error degree bound");
    c->add_option("--pattern", g.pattern, "Repeating per-block weights, e.g. 2,3,3");
    c->add_option("--eps", g.eps, "Tolerance epsilon");
    c->add_option("--t", g.t, "Per-block weight t");
    c->add_option("--s", g.s, "Number of blocks");
    c->add_option("--W", g.W, "Prange iterations per block (default from --target)");
    c->add_option("--wlow", g.wlow, "Low-weight codeword bound for augmentation");
    c->add_option("--target", g.target, "Success target used to pick W")->capture_default_str();
    c->add_option("--message-degree", g.message_degree, "Message degree (default: degree bound - memory)");
  };

  GenOptions gen;
  auto* sg = app.add_subcommand("gen", "Generate a key and ciphertext instance");
  add_gen_options(sg, gen);
  sg->add_option("--seed", gen.seed, "Seed")->capture_default_str();
  sg->add_flag("--benchmark", gen.benchmark, "Store the planted error in the instance");
  sg->add_option("--out", gen.out, "Instance file (default stdout)");
  sg->add_option("--secret-out", gen.secret_out, "Separate file for the secret witness");

  // Weight and window options are shared with the generator flags in batch mode.
  auto add_attack_options = [](CLI::App* c, AttackOptions& a, bool weights) {
    if (weights) {
      c->add_option("--te", a.te, "Total error weight (default from instance)");
      c->add_option("--eps", a.eps, "Tolerance epsilon");
      c->add_option("--W", a.W, "Prange iterations per block");
      c->add_option("--wlow", a.wlow, "Low-weight codeword bound");
      c->add_option("--t", a.t, "Per-block weight t");
      c->add_option("--s", a.s, "Number of blocks");
    }
    c->add_option("--max-nodes", a.max_nodes, "Search-node budget");
    c->add_flag("--exhaustive", a.exhaustive, "Enumerate all information sets at each node");
    c->add_flag("--cheat", a.cheat, "Estimate work from the planted error instead of searching");
    c->add_option("--clock", a.clock_ghz, "Clock in GHz for the bit translation")->capture_default_str();
    c->add_option("--jobs", a.jobs, "Worker threads (batch mode only)")->capture_default_str();
    c->add_option("--out", a.out, "Report file (default stdout)");
  };

  AttackOptions atk;
  auto* sa = app.add_subcommand("attack", "Run the depth-first sequential attack on an instance");
  sa->add_option("--in,instance", atk.in, "Instance file")->required();
  sa->add_option("--gamma", atk.gamma, "Window parameter gamma");
  sa->add_option("--seed", atk.seed, "Seed")->capture_default_str();
  sa->add_option("--error-out", atk.error_out, "Write the recovered error here");
  add_attack_options(sa, atk, true);

  VerifyOptions ver;
  auto* sv = app.add_subcommand("verify", "Check that r - e is a codeword and wt(e) <= te");
  sv->add_option("--in,instance", ver.in, "Instance file")->required();
  sv->add_option("--error,error_file", ver.error, "Error file or attack report")->required();
  sv->add_option("--te", ver.te, "Weight limit (default from instance)");

  ExperimentOptions ex;
  auto* se = app.add_subcommand("experiment", "Batch over seeds with the discard rule");
  add_gen_options(se, ex.gen);
  add_attack_options(se, ex.attack, false);
  se->add_option("--seed", ex.gen.seed, "Base seed for the attack")->capture_default_str();
  se->add_option("--seeds", ex.seeds, "Instance seeds a..b")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*sp) return cmd_plan(plan, out);
    if (*sg) return cmd_gen(gen, out, err);
    if (*sa) return cmd_attack(atk, out);
    if (*sv) return cmd_verify(ver, out);
    if (*se) return cmd_experiment(ex, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace convisd

#endif
