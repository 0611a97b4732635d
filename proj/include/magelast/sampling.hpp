#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "magelast/common.hpp"
#include "magelast/fields.hpp"
#include "magelast/invariants.hpp"
#include "magelast/materials.hpp"
#include "magelast/rng.hpp"
#include "magelast/tensor.hpp"

namespace magelast {

// ---------------------------------------------------------------------------
// Load-state sampling, load paths, invariant-based filtering and dataset
// generation against the oracle.

struct SamplingRanges {
  double lam_min = 0.95, lam_max = 1.04;   // principal stretches
  double J_min = 0.995, J_max = 1.005;     // Jacobian determinant
  double th_min = 0.0, th_max = 2.0 * pi;  // stretch-rotation Euler angles
  double phi1_min = 0.0, phi1_max = 0.5 * pi;  // B polar angle
  double phi2_min = 0.0, phi2_max = 2.0 * pi;  // B azimuth
  double B_min = 0.5, B_max = 2.2;             // |B| in tesla
  int paths = 64;       // N
  int increments = 20;  // M
  double eps_tol = 0.45;
  bool magnetic = true;

  static SamplingRanges mechanical_defaults() {
    SamplingRanges r;
    r.paths = 28;
    r.magnetic = false;
    r.B_min = r.B_max = 0.0;
    return r;
  }
  static SamplingRanges coupled_defaults() { return {}; }

  void validate() const {
    if (lam_min > lam_max || J_min > J_max || th_min > th_max || phi1_min > phi1_max ||
        phi2_min > phi2_max || B_min > B_max)
      throw config_error("SamplingRanges: min exceeds max");
    if (lam_min <= 0.0 || J_min <= 0.0) throw config_error("SamplingRanges: non-positive range");
    if (paths < 1 || increments < 1) throw config_error("SamplingRanges: need N >= 1, M >= 1");
    if (eps_tol < 0.0) throw config_error("SamplingRanges: eps_tol must be >= 0");
  }
};

struct LoadState {
  Mat3d F = Mat3d::identity();
  Vec3d B{};
};

struct LoadPath {
  int id = 0;
  std::vector<LoadState> states;  // increments m = 1..M, last one is the terminal
};

// Latin hypercube: one sample per stratum per dimension, independently
// permuted across dimensions.
inline std::vector<std::vector<double>> latin_hypercube(int n, std::span<const double> lo,
                                                        std::span<const double> hi, Rng& rng) {
  const int d = static_cast<int>(lo.size());
  std::vector<std::vector<double>> out(n, std::vector<double>(d));
  std::vector<int> perm(n);
  for (int k = 0; k < d; ++k) {
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
      std::swap(perm[i], perm[j]);
    }
    for (int i = 0; i < n; ++i) {
      const double u = rng.uniform();
      out[i][k] = lo[k] + (hi[k] - lo[k]) * ((perm[i] + u) / n);
    }
  }
  return out;
}

// Terminal load states: symmetric stretch F = Q_U diag(l1, l2, J/(l1 l2)) Q_U^T
// with Q_U from two Euler angles about the axes perpendicular to e3, and
// B = |B| Q_B(polar, azimuth) e3. Deterministic for a given seed.
inline std::vector<LoadState> sample_load_states(const SamplingRanges& r, std::uint64_t seed) {
  r.validate();
  Rng rng = Rng(seed).split(r.magnetic ? "sample/coupled" : "sample/mechanical");

  std::vector<double> lo{r.lam_min, r.lam_min, r.J_min, r.th_min, r.th_min};
  std::vector<double> hi{r.lam_max, r.lam_max, r.J_max, r.th_max, r.th_max};
  if (r.magnetic) {
    lo.insert(lo.end(), {r.phi1_min, r.phi2_min, r.B_min});
    hi.insert(hi.end(), {r.phi1_max, r.phi2_max, r.B_max});
  }
  const auto samples = latin_hypercube(r.paths, lo, hi, rng);

  const Vec3d e3{{0.0, 0.0, 1.0}};
  std::vector<LoadState> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    const double l1 = s[0], l2 = s[1], jj = s[2];
    const Mat3d qu = rotation_euler_two_axis(s[3], s[4]);
    const Mat3d u = qu * Mat3d::diagonal(l1, l2, jj / (l1 * l2)) * transpose(qu);
    LoadState st;
    st.F = u;
    if (r.magnetic) {
      const Mat3d qb = rotation_polar_azimuth(s[5], s[6]);
      st.B = s[7] * (qb * e3);
    }
    out.push_back(st);
  }
  return out;
}

struct PathBuildResult {
  std::vector<LoadPath> paths;
  std::vector<int> rejected;  // ids of paths with det(F) <= 0 at some increment
};

// Proportional loading: F = 1 + (m/M)(F_M - 1), B = (m/M) B_M for m = 1..M.
inline PathBuildResult build_load_paths(std::span<const LoadState> terminals, int increments) {
  if (increments < 1) throw config_error("build_load_paths: M >= 1 required");
  PathBuildResult out;
  const Mat3d id = Mat3d::identity();
  for (int n = 0; n < static_cast<int>(terminals.size()); ++n) {
    LoadPath path;
    path.id = n;
    bool ok = true;
    for (int m = 1; m <= increments; ++m) {
      const double t = static_cast<double>(m) / increments;
      LoadState st;
      st.F = id + t * (terminals[n].F - id);
      st.B = t * terminals[n].B;
      if (determinant(st.F) <= 0.0) {
        ok = false;
        break;
      }
      path.states.push_back(st);
    }
    if (ok)
      out.paths.push_back(std::move(path));
    else
      out.rejected.push_back(n);
  }
  return out;
}

inline std::array<double, 3> principal_stretches(const Mat3d& f) {
  const Eigen3<double> e = symmetric_eigen(transpose(f) * f);
  return {std::sqrt(std::max(e.values[0], 0.0)), std::sqrt(std::max(e.values[1], 0.0)),
          std::sqrt(std::max(e.values[2], 0.0))};
}

struct StateRecord {
  int path = 0;
  int step = 0;  // 1-based increment index
  LoadState state;
};

struct FilterResult {
  std::vector<char> keep;
  int dropped_stretch = 0;
  int dropped_redundant = 0;
  int kept = 0;
};

// Two-stage filter: (a) exclude states with any principal stretch outside
// [lam_min, lam_max]; (b) greedy redundancy pass in input order that keeps a
// state only if its invariant vector, min-max normalized per coordinate over
// the candidates surviving (a), is farther than eps_tol from every kept state
// in Chebyshev distance. Filtering a filtered set is a no-op.
inline FilterResult filter_states(std::span<const StateRecord> states, const Vec3d& s_dir,
                                  double lam_min, double lam_max, double eps_tol) {
  FilterResult out;
  out.keep.assign(states.size(), 0);

  std::vector<char> candidate(states.size(), 0);
  std::vector<InvariantArray<double>> inv(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto ps = principal_stretches(states[i].state.F);
    const bool ok = ps[0] <= lam_max + 1e-12 && ps[2] >= lam_min - 1e-12;
    candidate[i] = ok ? 1 : 0;
    if (!ok) {
      ++out.dropped_stretch;
      continue;
    }
    inv[i] = compute_invariants(states[i].state.F, states[i].state.B, s_dir);
  }

  InvariantArray<double> lo{}, hi{};
  bool first = true;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!candidate[i]) continue;
    for (int l = 0; l < 10; ++l) {
      if (first) {
        lo[l] = hi[l] = inv[i][l];
      } else {
        lo[l] = std::min(lo[l], inv[i][l]);
        hi[l] = std::max(hi[l], inv[i][l]);
      }
    }
    first = false;
  }

  std::vector<std::size_t> kept_idx;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!candidate[i]) continue;
    bool keep = true;
    for (const std::size_t k : kept_idx) {
      double dist = 0.0;
      for (int l = 0; l < 10; ++l) {
        const double range = hi[l] - lo[l];
        if (range <= 0.0) continue;
        dist = std::max(dist, std::abs(inv[i][l] - inv[k][l]) / range);
      }
      if (!(dist > eps_tol)) {
        keep = false;
        break;
      }
    }
    if (keep) {
      kept_idx.push_back(i);
      out.keep[i] = 1;
      ++out.kept;
    } else {
      ++out.dropped_redundant;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Datasets.

struct DataTuple {
  int path = 0;
  int step = 0;
  Mat3d F = Mat3d::identity();
  Vec3d B{};    // zero for mechanical tuples
  Mat3d sig{};  // sigma_el for mechanical tuples, mechanical sigma for coupled
  Vec3d m{};    // zero for mechanical tuples
  bool is_test = false;
};

struct DatasetCounts {
  int sampled_paths = 0;
  int path_states = 0;       // N * M before filtering
  int dropped_stretch = 0;
  int dropped_redundant = 0;
  int dropped_oracle = 0;
  int tuples = 0;
};

struct Dataset {
  std::vector<DataTuple> mech;
  std::vector<DataTuple> coup;
  std::vector<int> mech_test_paths;
  std::vector<int> coup_test_paths;
  DatasetCounts mech_counts;
  DatasetCounts coup_counts;
};

// 70/30 split over path ids; every increment of a path shares its label.
inline std::vector<int> pick_test_paths(int n_paths, Rng rng) {
  std::vector<int> ids(n_paths);
  std::iota(ids.begin(), ids.end(), 0);
  for (int i = n_paths - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
    std::swap(ids[i], ids[j]);
  }
  const int n_train = static_cast<int>(std::llround(0.7 * n_paths));
  std::vector<int> test(ids.begin() + n_train, ids.end());
  std::sort(test.begin(), test.end());
  return test;
}

namespace detail {

inline void generate_kind(std::span<const LoadPath> paths, const OracleModel& oracle,
                          const SamplingRanges& ranges, std::span<const int> test_paths,
                          bool coupled, std::vector<DataTuple>& out, DatasetCounts& counts) {
  std::vector<StateRecord> flat;
  for (const auto& p : paths)
    for (int m = 0; m < static_cast<int>(p.states.size()); ++m)
      flat.push_back({p.id, m + 1, p.states[m]});
  counts.sampled_paths = static_cast<int>(paths.size());
  counts.path_states = static_cast<int>(flat.size());

  const FilterResult fr =
      filter_states(flat, oracle.params().S, ranges.lam_min, ranges.lam_max, ranges.eps_tol);
  counts.dropped_stretch = fr.dropped_stretch;
  counts.dropped_redundant = fr.dropped_redundant;

  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (!fr.keep[i]) continue;
    DataTuple t;
    t.path = flat[i].path;
    t.step = flat[i].step;
    t.F = flat[i].state.F;
    t.B = coupled ? flat[i].state.B : Vec3d{};
    FieldSet fs;
    try {
      fs = derived_fields(oracle, t.F, t.B);
    } catch (const error&) {
      // mirrors dropping states whose microscale solve failed
      ++counts.dropped_oracle;
      continue;
    }
    t.sig = fs.sig;
    t.m = coupled ? fs.m : Vec3d{};
    t.is_test = std::binary_search(test_paths.begin(), test_paths.end(), t.path);
    out.push_back(t);
  }
  counts.tuples = static_cast<int>(out.size());
}

}  // namespace detail

inline Dataset generate_dataset(std::span<const LoadPath> mech_paths,
                                std::span<const LoadPath> coup_paths, const OracleModel& oracle,
                                const SamplingRanges& mech_ranges,
                                const SamplingRanges& coup_ranges, std::uint64_t split_seed) {
  Dataset ds;
  Rng rng(split_seed);
  ds.mech_test_paths = pick_test_paths(static_cast<int>(mech_paths.size()), rng.split("split/mech"));
  ds.coup_test_paths = pick_test_paths(static_cast<int>(coup_paths.size()), rng.split("split/coup"));
  detail::generate_kind(mech_paths, oracle, mech_ranges, ds.mech_test_paths, false, ds.mech,
                        ds.mech_counts);
  detail::generate_kind(coup_paths, oracle, coup_ranges, ds.coup_test_paths, true, ds.coup,
                        ds.coup_counts);
  return ds;
}

// ---------------------------------------------------------------------------
// Additional purely magnetic constraint states: directions at angles
// phi in [0, pi/2] from S (phi = 0 along S, phi = pi/2 along the projected
// e1), magnitudes uniform over [b_min, b_max]; F = 1 for all of them.

struct AddSetConfig {
  int n_phi = 6;
  int n_b = 9;
  double b_min = 2.0;  // T
  double b_max = 4.0;  // T

  void validate() const {
    if (n_phi < 1 || n_b < 3)
      throw config_error("AddSetConfig: need n_phi >= 1 and n_b >= 3 for the concavity term");
    if (!(b_max > b_min) || b_min < 0.0) throw config_error("AddSetConfig: bad magnitude range");
  }
};

// In-plane reference: e1 projected off S, with e2 as fallback when S == +-e1.
template <class T>
Vec3<T> additional_plane_reference(const Vec3<T>& s) {
  Vec3<T> e1{{T(1.0), T(0.0), T(0.0)}};
  Vec3<T> ref = e1 - dot(e1, s) * s;
  if (primal(norm_sq(ref)) < 1e-12) {
    Vec3<T> e2{{T(0.0), T(1.0), T(0.0)}};
    ref = e2 - dot(e2, s) * s;
  }
  return normalized(ref);
}

template <class T>
Vec3<T> additional_direction(const Vec3<T>& s, double phi) {
  const Vec3<T> ref = additional_plane_reference(s);
  return T(std::cos(phi)) * s + T(std::sin(phi)) * ref;
}

struct AdditionalMagneticSet {
  struct Entry {
    double phi = 0.0;  // angle to S
    double b = 0.0;    // magnitude, T
    Vec3d B{};
  };
  std::vector<Entry> entries;  // phi-major, magnitude ascending within a direction
  int n_phi = 0, n_b = 0;
  double db = 0.0, b_max = 0.0;
};

inline AdditionalMagneticSet build_additional_set(const Vec3d& s, const AddSetConfig& cfg) {
  cfg.validate();
  AdditionalMagneticSet out;
  out.n_phi = cfg.n_phi;
  out.n_b = cfg.n_b;
  out.b_max = cfg.b_max;
  out.db = (cfg.b_max - cfg.b_min) / (cfg.n_b - 1);
  for (int i = 0; i < cfg.n_phi; ++i) {
    const double phi = cfg.n_phi == 1 ? 0.0 : (0.5 * pi) * i / (cfg.n_phi - 1);
    const Vec3d dir = additional_direction(s, phi);
    for (int j = 0; j < cfg.n_b; ++j) {
      const double b = cfg.b_min + out.db * j;
      out.entries.push_back({phi, b, b * dir});
    }
  }
  return out;
}

}  // namespace magelast
