#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>

#include "magelast/common.hpp"
#include "magelast/fields.hpp"
#include "magelast/invariants.hpp"
#include "magelast/pnn.hpp"
#include "magelast/tensor.hpp"

namespace magelast {

// ---------------------------------------------------------------------------
// Physics-augmented free-energy model: two positive networks over the
// invariant basis plus correction terms that enforce zero energy and zero
// stress in the unloaded state exactly, a trainable preferred direction, and
// a volumetric growth term.
//
//   Psi = Psi_el(I1,I2,I3,I7,I8) + Psi_cmv(I1..I10)
//   Psi_el  = PNN_el  - n_el_circ (J-1) - n_el_par (I7-1) - PNN_el|ref
//             + lambda_gro (J + 1/J - 2)^2
//   Psi_cmv = PNN_cmv - n_cmv_circ (J-1) - n_cmv_par (I7-1) - PNN_cmv|ref
//
// with n_circ = 2 dPNN/dI3|ref and n_par = (dPNN/dI7 + 2 dPNN/dI8)|ref, the
// reference state being F = 1, B = 0. dPsi_cmv/dB vanishes at B = 0 for every
// F because all magnetic invariants are quadratic in B.

// Trainable direction angles; phi1 in [0, pi/2], phi2 in [0, 2 pi].
struct DirectionAngles {
  double phi1 = 0.0;
  double phi2 = 0.0;

  void clamp() {
    phi1 = std::clamp(phi1, 0.0, 0.5 * pi);
    phi2 = std::clamp(phi2, 0.0, 2.0 * pi);
  }
};

template <class T>
Vec3<T> direction_from_angles(const T& phi1, const T& phi2) {
  using std::cos;
  using std::sin;
  using magelast::cos;
  using magelast::sin;
  return {{sin(phi1) * cos(phi2), sin(phi1) * sin(phi2), cos(phi1)}};
}

inline void direction_angle_tangents(const DirectionAngles& a, Vec3d& d_phi1, Vec3d& d_phi2) {
  const double s1 = std::sin(a.phi1), c1 = std::cos(a.phi1);
  const double s2 = std::sin(a.phi2), c2 = std::cos(a.phi2);
  d_phi1 = {{c1 * c2, c1 * s2, -s1}};
  d_phi2 = {{-s1 * s2, s1 * c2, 0.0}};
}

// Correction coefficients are functions of the current network parameters
// (and only of them: the reference invariants are the same for every unit S).
template <class T>
struct CorrectionsT {
  T n_el_circ{}, n_el_par{};
  T n_cmv_circ{}, n_cmv_par{};
  T psi_el_ref{}, psi_cmv_ref{};
};
using CorrectionCoeffs = CorrectionsT<double>;

// Elastic-network inputs are entries {I1, I2, I3, I7, I8} of the full vector.
inline constexpr int kElasticInputs[5] = {0, 1, 2, 6, 7};

struct PANNProvenance {
  std::uint64_t seed = 0;
  std::string config_hash;
};

struct PANNModel {
  PNNParams elastic;   // 5 -> ... -> 1
  PNNParams coupled;   // 10 -> ... -> 1
  NormalizationSpec norm_el;
  NormalizationSpec norm_cmv;
  DirectionAngles angles;
  double lambda_gro = 1.0;  // Pa
  int schema_version = 1;
  PANNProvenance provenance;

  Vec3d direction() const { return direction_from_angles(angles.phi1, angles.phi2); }

  int parameter_count() const {
    return elastic.parameter_count() + coupled.parameter_count() + 2;
  }

  void validate() const {
    elastic.validate();
    coupled.validate();
    if (elastic.input_dim() != 5) throw contract_violation("PANNModel: elastic input dim != 5");
    if (coupled.input_dim() != 10) throw contract_violation("PANNModel: coupled input dim != 10");
    if (!(lambda_gro > 0.0)) throw contract_violation("PANNModel: lambda_gro must be > 0");
  }

  // Any mutation of networks or angles must bump the version so cached
  // correction coefficients are recomputed.
  void bump_version() const { ++version_; }
  std::uint64_t version() const { return version_; }

  const CorrectionCoeffs& corrections() const;

  template <class T>
  EnergyEval<T> eval(const Mat3<T>& f, const Vec3<T>& b) const;

 private:
  mutable std::uint64_t version_ = 1;
  mutable std::uint64_t cache_version_ = 0;
  mutable CorrectionCoeffs cache_{};
};

// Default architecture: 5-6-1 elastic and 10-10-10-1 coupled (276 trainable
// parameters including the two angles).
inline PANNModel make_default_pann() {
  PANNModel m;
  const int el[] = {5, 6, 1};
  const int cm[] = {10, 10, 10, 1};
  m.elastic = PNNParams::zeros(el);
  m.coupled = PNNParams::zeros(cm);
  return m;
}

// Reference-state correction coefficients. The reference invariants are
// evaluated through the same code path as regular states so the assembled
// energy vanishes bitwise at F = 1, B = 0.
template <class T>
CorrectionsT<T> compute_corrections(const PANNModel& m, const Vec3<T>& s) {
  const Mat3<T> id = Mat3<T>::identity();
  const Vec3<T> zero{};
  const InvariantArray<T> inv = compute_invariants(id, zero, s);

  std::array<T, 5> xel;
  for (int i = 0; i < 5; ++i) xel[i] = inv[kElasticInputs[i]];
  const PnnEval<T> el = pnn_forward(m.elastic, m.norm_el, xel.data(), 5);
  const PnnEval<T> cm = pnn_forward(m.coupled, m.norm_cmv, inv.data(), 10);

  CorrectionsT<T> c;
  c.psi_el_ref = el.value;
  c.n_el_circ = T(2.0) * el.grad[2];
  c.n_el_par = el.grad[3] + T(2.0) * el.grad[4];
  c.psi_cmv_ref = cm.value;
  c.n_cmv_circ = T(2.0) * cm.grad[2];
  c.n_cmv_par = cm.grad[6] + T(2.0) * cm.grad[7];
  return c;
}

inline const CorrectionCoeffs& PANNModel::corrections() const {
  if (cache_version_ != version_) {
    cache_ = compute_corrections(*this, direction());
    cache_version_ = version_;
  }
  return cache_;
}

template <class T>
struct PsiElEval {
  T psi{};
  Mat3<T> dF{};
};

namespace detail {

template <class T>
CorrectionsT<T> lift_corrections(const CorrectionCoeffs& c) {
  CorrectionsT<T> r;
  r.n_el_circ = T(c.n_el_circ);
  r.n_el_par = T(c.n_el_par);
  r.n_cmv_circ = T(c.n_cmv_circ);
  r.n_cmv_par = T(c.n_cmv_par);
  r.psi_el_ref = T(c.psi_el_ref);
  r.psi_cmv_ref = T(c.psi_cmv_ref);
  return r;
}

}  // namespace detail

// Purely mechanical part, with stress. The invariant derivatives may be
// shared with the coupled part by the caller.
template <class T>
PsiElEval<T> assemble_psi_el_impl(const PANNModel& m, const Mat3<T>& f,
                                  const InvariantDerivs<T>& dv, const CorrectionsT<T>& corr) {
  std::array<T, 5> xel;
  for (int i = 0; i < 5; ++i) xel[i] = dv.I[kElasticInputs[i]];
  const PnnEval<T> el = pnn_forward(m.elastic, m.norm_el, xel.data(), 5);

  const T j = determinant(f);
  const Mat3<T> coff = cofactor(f);
  const T jdev = j + T(1.0) / j - T(2.0);

  PsiElEval<T> out;
  out.psi = el.value - corr.n_el_circ * (j - T(1.0)) - corr.n_el_par * (dv.I[6] - T(1.0)) -
            corr.psi_el_ref + T(m.lambda_gro) * jdev * jdev;
  out.dF = el.grad[0] * dv.dF[0];
  out.dF += el.grad[1] * dv.dF[1];
  out.dF += el.grad[2] * dv.dF[2];
  out.dF += el.grad[3] * dv.dF[6];
  out.dF += el.grad[4] * dv.dF[7];
  out.dF -= corr.n_el_circ * coff;
  out.dF -= corr.n_el_par * dv.dF[6];
  out.dF += (T(2.0 * m.lambda_gro) * jdev * (T(1.0) - T(1.0) / (j * j))) * coff;
  return out;
}

// Coupled magneto-mechanical part, with stress and magnetic field.
template <class T>
EnergyEval<T> assemble_psi_cmv_impl(const PANNModel& m, const Mat3<T>& f,
                                    const InvariantDerivs<T>& dv, const CorrectionsT<T>& corr) {
  const PnnEval<T> cm = pnn_forward(m.coupled, m.norm_cmv, dv.I.data(), 10);
  const T j = determinant(f);
  const Mat3<T> coff = cofactor(f);

  EnergyEval<T> out;
  out.psi = cm.value - corr.n_cmv_circ * (j - T(1.0)) - corr.n_cmv_par * (dv.I[6] - T(1.0)) -
            corr.psi_cmv_ref;
  for (int l = 0; l < 10; ++l) {
    out.dF += cm.grad[l] * dv.dF[l];
    out.dB += cm.grad[l] * dv.dB[l];
  }
  out.dF -= corr.n_cmv_circ * coff;
  out.dF -= corr.n_cmv_par * dv.dF[6];
  return out;
}

// Full energy with explicit direction and corrections; used by training where
// the direction carries Dual tangents.
template <class T>
EnergyEval<T> pann_eval_impl(const PANNModel& m, const Mat3<T>& f, const Vec3<T>& b,
                             const Vec3<T>& s, const CorrectionsT<T>& corr) {
  const InvariantDerivs<T> dv = invariant_derivatives(f, b, s);
  const PsiElEval<T> el = assemble_psi_el_impl(m, f, dv, corr);
  EnergyEval<T> out = assemble_psi_cmv_impl(m, f, dv, corr);
  out.psi += el.psi;
  out.dF += el.dF;
  return out;
}

template <class T>
EnergyEval<T> PANNModel::eval(const Mat3<T>& f, const Vec3<T>& b) const {
  const Vec3d sd = direction();
  Vec3<T> s;
  for (int i = 0; i < 3; ++i) s[i] = T(sd[i]);
  return pann_eval_impl(*this, f, b, s, detail::lift_corrections<T>(corrections()));
}

// Public per-part accessors matching the model split.
inline PsiElEval<double> assemble_psi_el(const PANNModel& m, const Mat3d& f) {
  const Vec3d s = m.direction();
  const InvariantDerivs<double> dv = invariant_derivatives(f, Vec3d{}, s);
  return assemble_psi_el_impl(m, f, dv, m.corrections());
}

inline EnergyEval<double> assemble_psi_cmv(const PANNModel& m, const DeformationState& st) {
  const Vec3d s = m.direction();
  const InvariantDerivs<double> dv = invariant_derivatives(st.F, st.B, s);
  return assemble_psi_cmv_impl(m, st.F, dv, m.corrections());
}

inline FieldSet model_predict(const PANNModel& m, const DeformationState& st) {
  return derived_fields(m, st.F, st.B);
}

inline EnergyHessians model_second_derivatives(const PANNModel& m, const DeformationState& st) {
  return energy_hessians(m, st.F, st.B);
}

}  // namespace magelast
