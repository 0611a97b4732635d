#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "magelast/jsonio.hpp"
#include "magelast/sampling.hpp"
#include "magelast/serialization.hpp"

namespace magelast {

// Dataset file: UTF-8 CSV, one row per tuple, SI units, 17-significant-digit
// decimals. Split labels and counts live in the companion manifest.
inline constexpr const char* kDatasetHeader =
    "kind,path,step,F11,F12,F13,F21,F22,F23,F31,F32,F33,B1,B2,B3,"
    "S11,S12,S13,S21,S22,S23,S31,S32,S33,m1,m2,m3";

namespace detail {

inline void append_csv_numbers(std::string& row, const double* v, int n) {
  for (int i = 0; i < n; ++i) {
    row.push_back(',');
    row += JValue::format_double(v[i]);
  }
}

}  // namespace detail

inline std::string dataset_to_csv(const Dataset& ds) {
  std::string out = kDatasetHeader;
  out.push_back('\n');
  const auto emit = [&out](const char* kind, const DataTuple& t) {
    std::string row = kind;
    row += ',';
    row += std::to_string(t.path);
    row += ',';
    row += std::to_string(t.step);
    detail::append_csv_numbers(row, t.F.m.data(), 9);
    detail::append_csv_numbers(row, t.B.c.data(), 3);
    detail::append_csv_numbers(row, t.sig.m.data(), 9);
    detail::append_csv_numbers(row, t.m.c.data(), 3);
    row.push_back('\n');
    out += row;
  };
  for (const auto& t : ds.mech) emit("mech", t);
  for (const auto& t : ds.coup) emit("coup", t);
  return out;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (const char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  cells.push_back(cur);
  return cells;
}

inline double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{}) throw config_error("csv: bad number '" + s + "'");
  return v;
}

inline Dataset dataset_from_csv(const std::string& text) {
  Dataset ds;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw config_error("dataset csv: empty file");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 27) throw config_error("dataset csv: expected 27 columns");
    DataTuple t;
    t.path = std::stoi(cells[1]);
    t.step = std::stoi(cells[2]);
    for (int i = 0; i < 9; ++i) t.F.m[i] = parse_double(cells[3 + i]);
    for (int i = 0; i < 3; ++i) t.B[i] = parse_double(cells[12 + i]);
    for (int i = 0; i < 9; ++i) t.sig.m[i] = parse_double(cells[15 + i]);
    for (int i = 0; i < 3; ++i) t.m[i] = parse_double(cells[24 + i]);
    if (cells[0] == "mech")
      ds.mech.push_back(t);
    else if (cells[0] == "coup")
      ds.coup.push_back(t);
    else
      throw config_error("dataset csv: unknown kind '" + cells[0] + "'");
  }
  return ds;
}

inline JValue ranges_to_json(const SamplingRanges& r) {
  JValue o = JValue::object();
  o.set("lam_min", r.lam_min).set("lam_max", r.lam_max);
  o.set("J_min", r.J_min).set("J_max", r.J_max);
  o.set("th_min", r.th_min).set("th_max", r.th_max);
  o.set("phi1_min", r.phi1_min).set("phi1_max", r.phi1_max);
  o.set("phi2_min", r.phi2_min).set("phi2_max", r.phi2_max);
  o.set("B_min", r.B_min).set("B_max", r.B_max);
  o.set("paths", std::int64_t{r.paths});
  o.set("increments", std::int64_t{r.increments});
  o.set("eps_tol", r.eps_tol);
  o.set("magnetic", r.magnetic);
  return o;
}

inline JValue oracle_to_json(const OracleParams& p) {
  JValue o = JValue::object();
  o.set("ogden_mu", JValue::numbers(p.ogden.mu));
  o.set("ogden_alpha", JValue::numbers(p.ogden.alpha));
  o.set("c7", p.c7).set("c8", p.c8).set("kappa", p.kappa);
  o.set("chi_iso", p.chi_iso).set("m_s1", p.m_s1);
  o.set("chi_a", p.chi_a).set("m_s2", p.m_s2);
  o.set("S", JValue::numbers(p.S.c));
  return o;
}

inline JValue counts_to_json(const DatasetCounts& c) {
  JValue o = JValue::object();
  o.set("sampled_paths", std::int64_t{c.sampled_paths});
  o.set("path_states", std::int64_t{c.path_states});
  o.set("dropped_stretch", std::int64_t{c.dropped_stretch});
  o.set("dropped_redundant", std::int64_t{c.dropped_redundant});
  o.set("dropped_oracle", std::int64_t{c.dropped_oracle});
  o.set("tuples", std::int64_t{c.tuples});
  return o;
}

inline std::string dataset_manifest_json(const Dataset& ds, const SamplingRanges& mech,
                                         const SamplingRanges& coup, const OracleParams& oracle,
                                         std::uint64_t seed, const std::string& config_hash) {
  JValue root = JValue::object();
  root.set("schema_version", std::int64_t{1});
  root.set("seed", std::uint64_t{seed});
  root.set("config_hash", config_hash);
  JValue ranges = JValue::object();
  ranges.set("mechanical", ranges_to_json(mech));
  ranges.set("coupled", ranges_to_json(coup));
  root.set("ranges", std::move(ranges));
  JValue filter = JValue::object();
  filter.set("eps_tol_mech", mech.eps_tol);
  filter.set("eps_tol_coup", coup.eps_tol);
  root.set("filter", std::move(filter));
  root.set("oracle", oracle_to_json(oracle));
  JValue counts = JValue::object();
  counts.set("mechanical", counts_to_json(ds.mech_counts));
  counts.set("coupled", counts_to_json(ds.coup_counts));
  root.set("counts", std::move(counts));
  JValue split = JValue::object();
  split.set("mech_test_paths", JValue::numbers(ds.mech_test_paths));
  split.set("coup_test_paths", JValue::numbers(ds.coup_test_paths));
  root.set("split", std::move(split));
  return root.dump(2);
}

// Re-applies the manifest's path-level split labels to tuples loaded from CSV.
inline void apply_manifest_split(Dataset& ds, const std::string& manifest_text) {
  nlohmann::json j = nlohmann::json::parse(manifest_text);
  ds.mech_test_paths.clear();
  ds.coup_test_paths.clear();
  for (const auto& v : j.at("split").at("mech_test_paths"))
    ds.mech_test_paths.push_back(static_cast<int>(v.get<double>()));
  for (const auto& v : j.at("split").at("coup_test_paths"))
    ds.coup_test_paths.push_back(static_cast<int>(v.get<double>()));
  std::sort(ds.mech_test_paths.begin(), ds.mech_test_paths.end());
  std::sort(ds.coup_test_paths.begin(), ds.coup_test_paths.end());
  for (auto& t : ds.mech)
    t.is_test = std::binary_search(ds.mech_test_paths.begin(), ds.mech_test_paths.end(), t.path);
  for (auto& t : ds.coup)
    t.is_test = std::binary_search(ds.coup_test_paths.begin(), ds.coup_test_paths.end(), t.path);
}

// Load-path CSV (one row per increment).
inline constexpr const char* kPathsHeader =
    "path,step,F11,F12,F13,F21,F22,F23,F31,F32,F33,B1,B2,B3";

inline std::string paths_to_csv(std::span<const LoadPath> paths) {
  std::string out = kPathsHeader;
  out.push_back('\n');
  for (const auto& p : paths) {
    for (int m = 0; m < static_cast<int>(p.states.size()); ++m) {
      std::string row = std::to_string(p.id);
      row += ',';
      row += std::to_string(m + 1);
      detail::append_csv_numbers(row, p.states[m].F.m.data(), 9);
      detail::append_csv_numbers(row, p.states[m].B.c.data(), 3);
      row.push_back('\n');
      out += row;
    }
  }
  return out;
}

inline std::vector<LoadPath> paths_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw config_error("paths csv: empty file");
  std::vector<LoadPath> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 14) throw config_error("paths csv: expected 14 columns");
    const int id = std::stoi(cells[0]);
    LoadState st;
    for (int i = 0; i < 9; ++i) st.F.m[i] = parse_double(cells[2 + i]);
    for (int i = 0; i < 3; ++i) st.B[i] = parse_double(cells[11 + i]);
    if (out.empty() || out.back().id != id) {
      LoadPath p;
      p.id = id;
      out.push_back(p);
    }
    out.back().states.push_back(st);
  }
  return out;
}

}  // namespace magelast
