#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "magelast/common.hpp"
#include "magelast/jsonio.hpp"
#include "magelast/pann.hpp"

namespace magelast {

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot write file: " + path.string());
  out << text;
}

namespace detail {

inline JValue layers_to_json(const PNNParams& p) {
  JValue arr = JValue::array();
  for (const auto& l : p.layers) {
    JValue rows = JValue::array();
    for (int r = 0; r < l.out; ++r) {
      JValue row = JValue::array();
      for (int c = 0; c < l.in; ++c) row.push(l.w(r, c));
      rows.push(std::move(row));
    }
    JValue jl = JValue::object();
    jl.set("W", std::move(rows));
    jl.set("b", JValue::numbers(l.b));
    arr.push(std::move(jl));
  }
  return arr;
}

inline JValue norm_to_json(const NormalizationSpec& n) {
  JValue o = JValue::object();
  o.set("imin", JValue::numbers(n.imin));
  o.set("imax", JValue::numbers(n.imax));
  o.set("oscale", n.oscale);
  return o;
}

inline PNNParams layers_from_json(const nlohmann::json& j, bool nonneg_output) {
  PNNParams p;
  p.nonneg_output = nonneg_output;
  for (const auto& jl : j) {
    DenseLayer l;
    const auto& w = jl.at("W");
    l.out = static_cast<int>(w.size());
    l.in = l.out > 0 ? static_cast<int>(w[0].size()) : 0;
    l.W.reserve(static_cast<std::size_t>(l.out) * l.in);
    for (const auto& row : w)
      for (const auto& v : row) l.W.push_back(v.get<double>());
    for (const auto& v : jl.at("b")) l.b.push_back(v.get<double>());
    if (static_cast<int>(l.b.size()) != l.out)
      throw config_error("model json: bias length mismatch");
    p.layers.push_back(std::move(l));
  }
  return p;
}

inline NormalizationSpec norm_from_json(const nlohmann::json& j) {
  NormalizationSpec n;
  for (const auto& v : j.at("imin")) n.imin.push_back(v.get<double>());
  for (const auto& v : j.at("imax")) n.imax.push_back(v.get<double>());
  n.oscale = j.at("oscale").get<double>();
  n.is_fitted = true;
  return n;
}

}  // namespace detail

inline std::string model_to_json(const PANNModel& m) {
  JValue root = JValue::object();
  root.set("schema_version", std::int64_t{m.schema_version});
  root.set("elastic_layers", detail::layers_to_json(m.elastic));
  root.set("coupled_layers", detail::layers_to_json(m.coupled));
  root.set("norm_elastic", detail::norm_to_json(m.norm_el));
  root.set("norm_coupled", detail::norm_to_json(m.norm_cmv));
  root.set("phi1", m.angles.phi1);
  root.set("phi2", m.angles.phi2);
  root.set("lambda_gro", m.lambda_gro);
  root.set("units", "SI");
  JValue prov = JValue::object();
  prov.set("seed", std::uint64_t{m.provenance.seed});
  prov.set("config_hash", m.provenance.config_hash);
  root.set("provenance", std::move(prov));
  return root.dump(2);
}

inline PANNModel model_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw config_error(std::string("model json: parse error: ") + e.what());
  }
  PANNModel m;
  m.schema_version = j.at("schema_version").get<int>();
  if (m.schema_version != 1)
    throw config_error("model json: unsupported schema_version " +
                       std::to_string(m.schema_version));
  m.elastic = detail::layers_from_json(j.at("elastic_layers"), true);
  m.coupled = detail::layers_from_json(j.at("coupled_layers"), true);
  m.norm_el = detail::norm_from_json(j.at("norm_elastic"));
  m.norm_cmv = detail::norm_from_json(j.at("norm_coupled"));
  m.angles.phi1 = j.at("phi1").get<double>();
  m.angles.phi2 = j.at("phi2").get<double>();
  m.lambda_gro = j.at("lambda_gro").get<double>();
  if (j.contains("provenance")) {
    m.provenance.seed = j["provenance"].value("seed", std::uint64_t{0});
    m.provenance.config_hash = j["provenance"].value("config_hash", std::string{});
  }
  m.validate();
  m.bump_version();
  return m;
}

inline void save_model(const PANNModel& m, const std::filesystem::path& path) {
  write_text_file(path, model_to_json(m));
}

inline PANNModel load_model(const std::filesystem::path& path) {
  return model_from_json(read_text_file(path));
}

}  // namespace magelast
