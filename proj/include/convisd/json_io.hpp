#ifndef CONVISD_JSON_IO_HPP
#define CONVISD_JSON_IO_HPP

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "convisd/convcode.hpp"
#include "convisd/cryptolab.hpp"
#include "convisd/error.hpp"
#include "convisd/seqdecode.hpp"

namespace convisd {

using json = nlohmann::ordered_json;

namespace detail {

template <typename T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad field '") + key + "': " + e.what());
  }
}

inline Field field_from(std::uint64_t q) {
  try {
    return Field(static_cast<std::uint32_t>(q));
  } catch (const InvalidField& e) {
    throw FormatError(e.what());
  }
}

inline Elem element(const Field& f, const json& v) {
  if (!v.is_number_unsigned() || !f.contains(v.get<std::uint64_t>())) throw FormatError("entry is not a field element");
  return static_cast<Elem>(v.get<std::uint64_t>());
}

}  // namespace detail

inline json field_to_json(const Field& f) {
  json j;
  j["q"] = f.size();
  j["p"] = f.characteristic();
  j["m"] = f.extension_degree();
  j["modulus"] = f.modulus();
  j["description"] = f.describe();
  return j;
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(std::vector<Elem>(m.row(i).begin(), m.row(i).end()));
  return rows;
}

inline json polymatrix_to_json(const PolyMatrix& g) {
  json j;
  j["q"] = g.field().size();
  j["rows"] = g.rows();
  j["cols"] = g.cols();
  json coeffs = json::array();
  for (const auto& c : g.coeffs()) coeffs.push_back(matrix_to_json(c));
  j["coeffs"] = coeffs;
  return j;
}

inline PolyMatrix polymatrix_from_json(const json& j, const char* rows_key = "rows", const char* cols_key = "cols") {
  const Field f = detail::field_from(detail::get_field<std::uint64_t>(j, "q"));
  const auto rows = detail::get_field<std::size_t>(j, rows_key);
  const auto cols = detail::get_field<std::size_t>(j, cols_key);
  const json& coeffs = j.contains("coeffs") ? j.at("coeffs") : json();
  if (!coeffs.is_array()) throw FormatError("'coeffs' must be an array");
  std::vector<Matrix> mats;
  for (const auto& cj : coeffs) {
    if (!cj.is_array() || cj.size() != rows) throw FormatError("coefficient matrix has wrong row count");
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      if (!cj[i].is_array() || cj[i].size() != cols) throw FormatError("coefficient row has wrong length");
      for (std::size_t c = 0; c < cols; ++c) m(i, c) = detail::element(f, cj[i][c]);
    }
    mats.push_back(std::move(m));
  }
  return PolyMatrix::from_coeffs(f, rows, cols, std::move(mats));
}

// {"q", "n", "k", "coeffs"} with coeffs[i] the k x n matrix of z^i.
inline json code_to_json(const ConvCode& c) {
  json j;
  j["q"] = c.field().size();
  j["n"] = c.n();
  j["k"] = c.k();
  json coeffs = json::array();
  for (const auto& m : c.generator().coeffs()) coeffs.push_back(matrix_to_json(m));
  j["coeffs"] = coeffs;
  return j;
}

inline ConvCode code_from_json(const json& j) {
  PolyMatrix g = polymatrix_from_json(j, "k", "n");
  try {
    return ConvCode::from_generator(std::move(g));
  } catch (const RankDeficient& e) {
    throw FormatError(std::string("generator: ") + e.what());
  }
}

inline json polyvector_to_json(const PolyVector& v) {
  json j;
  j["q"] = v.field().size();
  j["width"] = v.width();
  json coeffs = json::array();
  for (std::size_t i = 0; i < v.length(); ++i) coeffs.push_back(v.coeff(i));
  j["coeffs"] = coeffs;
  return j;
}

inline PolyVector polyvector_from_json(const json& j) {
  const Field f = detail::field_from(detail::get_field<std::uint64_t>(j, "q"));
  const auto width = detail::get_field<std::size_t>(j, "width");
  if (width == 0) throw FormatError("width must be positive");
  const json& coeffs = j.contains("coeffs") ? j.at("coeffs") : json();
  if (!coeffs.is_array()) throw FormatError("'coeffs' must be an array");
  Vector flat;
  for (const auto& c : coeffs) {
    if (!c.is_array() || c.size() != width) throw FormatError("coefficient has wrong length");
    for (const auto& x : c) flat.push_back(detail::element(f, x));
  }
  return PolyVector::from_flat(f, width, std::move(flat));
}

inline json error_spec_to_json(const ErrorSpec& s) {
  json j;
  j["mode"] = s.mode == ErrorMode::UniformTotalWeight ? "uniform_total_weight" : "per_block_weights";
  j["t_e"] = s.t_e;
  j["degree_bound"] = s.degree_bound;
  if (s.mode == ErrorMode::PerBlockWeights) {
    j["block_coeffs"] = s.block_coeffs;
    j["pattern"] = s.pattern;
  }
  return j;
}

inline ErrorSpec error_spec_from_json(const json& j) {
  ErrorSpec s;
  const auto mode = detail::get_field<std::string>(j, "mode");
  if (mode == "uniform_total_weight")
    s.mode = ErrorMode::UniformTotalWeight;
  else if (mode == "per_block_weights")
    s.mode = ErrorMode::PerBlockWeights;
  else
    throw FormatError("unknown error mode '" + mode + "'");
  s.t_e = detail::get_field<std::size_t>(j, "t_e");
  s.degree_bound = detail::get_field<std::size_t>(j, "degree_bound");
  if (s.mode == ErrorMode::PerBlockWeights) {
    s.block_coeffs = detail::get_field<std::size_t>(j, "block_coeffs");
    s.pattern = detail::get_field<std::vector<std::size_t>>(j, "pattern");
  }
  return s;
}

// Attack settings stored alongside an instance so `attack` can run without flags.
inline json attack_params_to_json(const AttackParams& p) {
  json j;
  j["gamma"] = p.gamma;
  if (p.t) j["t"] = *p.t;
  j["epsilon"] = p.epsilon;
  j["W"] = p.W;
  if (p.t_e) j["t_e"] = *p.t_e;
  j["w_low"] = p.w_low;
  j["max_nodes"] = p.max_nodes;
  j["exhaustive"] = p.exhaustive;
  if (p.blocks) j["s"] = *p.blocks;
  return j;
}

inline AttackParams attack_params_from_json(const json& j) {
  AttackParams p;
  p.gamma = detail::get_field<std::size_t>(j, "gamma");
  if (j.contains("t")) p.t = detail::get_field<std::size_t>(j, "t");
  p.epsilon = detail::get_field<std::size_t>(j, "epsilon");
  p.W = detail::get_field<std::uint64_t>(j, "W");
  if (j.contains("t_e")) p.t_e = detail::get_field<std::size_t>(j, "t_e");
  if (j.contains("w_low")) p.w_low = detail::get_field<std::size_t>(j, "w_low");
  if (j.contains("max_nodes")) p.max_nodes = detail::get_field<std::uint64_t>(j, "max_nodes");
  if (j.contains("exhaustive")) p.exhaustive = detail::get_field<bool>(j, "exhaustive");
  if (j.contains("s")) p.blocks = detail::get_field<std::size_t>(j, "s");
  return p;
}

struct Instance {
  ConvCode public_key;
  PolyVector ciphertext;
  ErrorSpec spec;
  std::uint64_t seed = 0;
  std::optional<PolyVector> planted_error;
  std::optional<AttackParams> attack;
  std::string profile;
};

inline json instance_to_json(const Instance& in) {
  json j;
  j["public_key"] = code_to_json(in.public_key);
  j["ciphertext"] = polyvector_to_json(in.ciphertext);
  j["spec"] = error_spec_to_json(in.spec);
  j["seed"] = in.seed;
  if (in.planted_error) j["planted_error"] = polyvector_to_json(*in.planted_error);
  if (in.attack) j["attack"] = attack_params_to_json(*in.attack);
  if (!in.profile.empty()) j["profile"] = in.profile;
  return j;
}

inline Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("instance must be a JSON object");
  Instance in;
  if (!j.contains("public_key") || !j.contains("ciphertext") || !j.contains("spec"))
    throw FormatError("instance needs public_key, ciphertext and spec");
  in.public_key = code_from_json(j.at("public_key"));
  in.ciphertext = polyvector_from_json(j.at("ciphertext"));
  in.spec = error_spec_from_json(j.at("spec"));
  in.seed = detail::get_field<std::uint64_t>(j, "seed");
  if (j.contains("planted_error")) in.planted_error = polyvector_from_json(j.at("planted_error"));
  if (j.contains("attack")) in.attack = attack_params_from_json(j.at("attack"));
  if (j.contains("profile")) in.profile = detail::get_field<std::string>(j, "profile");
  if (in.ciphertext.width() != in.public_key.n() || in.ciphertext.field() != in.public_key.field())
    throw FormatError("ciphertext does not match the public key");
  if (in.planted_error && (in.planted_error->width() != in.public_key.n()))
    throw FormatError("planted error does not match the public key");
  return in;
}

inline json secret_to_json(const SecretWitness& s, std::uint64_t seed) {
  json j;
  j["seed"] = seed;
  j["g"] = polymatrix_to_json(s.g);
  j["u"] = polymatrix_to_json(s.u);
  j["permutation"] = s.permutation;
  return j;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

inline json experiment_report_to_json(const ExperimentReport& rep) {
  json j;
  j["blocks"] = rep.blocks;
  j["t"] = rep.t;
  j["predicted_keep_probability"] = rep.predicted_keep;
  j["discard_rate"] = rep.discard_rate();
  j["recovered"] = rep.recovered();
  json seeds = json::array();
  for (const auto& o : rep.outcomes) {
    json s;
    s["seed"] = o.seed;
    s["discarded"] = o.discarded;
    s["found"] = o.found;
    s["recovered_planted"] = o.recovered_planted;
    s["block_weights"] = o.block_weights;
    if (!o.discarded) {
      s["status"] = o.estimate ? "estimated" : to_string(o.status);
      s["nodes"] = o.nodes;
      s["seconds"] = o.seconds;
      s["bits"] = o.bits;
    }
    if (o.estimate) {
      json pos = json::array();
      for (const auto& p : o.estimate->positions) pos.push_back(p ? json(*p) : json(nullptr));
      s["positions"] = pos;
      s["total_rank_sum"] = o.estimate->total_rank_sum;
    }
    seeds.push_back(s);
  }
  j["seeds"] = seeds;
  return j;
}

}  // namespace convisd

#endif
