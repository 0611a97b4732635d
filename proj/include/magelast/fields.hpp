#pragma once

#include <array>

#include "magelast/common.hpp"
#include "magelast/tensor.hpp"

namespace magelast {

// Free energy value with exact first derivatives. Every energy model in the
// library (microscale laws, the synthetic oracle, the PANN) exposes
//   template <class T> EnergyEval<T> eval(const Mat3<T>& F, const Vec3<T>& B) const;
// so the same downstream code produces stresses, field transforms and, via
// Dual sweeps, second derivatives.
template <class T>
struct EnergyEval {
  T psi{};
  Mat3<T> dF{};
  Vec3<T> dB{};
};

// All derived magneto-mechanical quantities at one state (SI units).
struct FieldSet {
  Mat3d Ptot{};    // total first Piola-Kirchhoff stress, Pa
  Vec3d H{};       // referential magnetic field, A/m
  Mat3d sig_tot{}; // total Cauchy stress, Pa
  Vec3d b{};       // current magnetic induction, T
  Vec3d h{};       // current magnetic field, A/m
  Vec3d m{};       // current magnetization, A/m
  Mat3d sig_pon{}; // ponderomotive stress, Pa
  Mat3d sig{};     // mechanical Cauchy stress, Pa
};

// Push-forwards and stress decomposition from P^tot = dPsi/dF, H = dPsi/dB:
//   sig_tot = J^-1 P^tot F^T,  b = J^-1 F B,  h = H . F^-1,  m = b/mu0 - h,
//   sig_pon = mu0^-1 (b(x)b - |b|^2/2 1) + (b.m) 1 - m(x)b,  sig = sig_tot - sig_pon.
template <class Model>
FieldSet derived_fields(const Model& model, const Mat3d& f, const Vec3d& b_ref) {
  const double j = determinant(f);
  if (j <= 0.0) throw invalid_deformation_error("derived_fields: det(F) <= 0");

  const EnergyEval<double> ev = model.eval(f, b_ref);
  FieldSet out;
  out.Ptot = ev.dF;
  out.H = ev.dB;
  out.sig_tot = (1.0 / j) * (out.Ptot * transpose(f));
  out.b = (1.0 / j) * (f * b_ref);
  out.h = vecmat(out.H, inverse(f));
  out.m = (1.0 / mu0) * out.b - out.h;

  const double b2 = norm_sq(out.b);
  out.sig_pon = (1.0 / mu0) * outer(out.b, out.b);
  const double diag = -0.5 * b2 / mu0 + dot(out.b, out.m);
  out.sig_pon(0, 0) += diag;
  out.sig_pon(1, 1) += diag;
  out.sig_pon(2, 2) += diag;
  out.sig_pon -= outer(out.m, out.b);

  out.sig = out.sig_tot - out.sig_pon;
  return out;
}

// Second derivatives of the energy by forward-differentiating the analytic
// first derivatives: 9 Dual sweeps for d2Psi/dFdF (row-major 9x9) and 3 for
// d2Psi/dBdB.
struct EnergyHessians {
  std::array<double, 81> d2F{};
  Mat3d d2B{};
};

template <class Model>
EnergyHessians energy_hessians(const Model& model, const Mat3d& f, const Vec3d& b_ref) {
  EnergyHessians out;
  Mat3<Dual> fd;
  Vec3<Dual> bd;
  for (int i = 0; i < 9; ++i) fd.m[i] = Dual(f.m[i]);
  for (int i = 0; i < 3; ++i) bd[i] = Dual(b_ref[i]);

  for (int k = 0; k < 9; ++k) {
    fd.m[k].d = 1.0;
    const EnergyEval<Dual> ev = model.eval(fd, bd);
    for (int i = 0; i < 9; ++i) out.d2F[9 * i + k] = ev.dF.m[i].d;
    fd.m[k].d = 0.0;
  }
  for (int k = 0; k < 3; ++k) {
    bd[k].d = 1.0;
    const EnergyEval<Dual> ev = model.eval(fd, bd);
    for (int i = 0; i < 3; ++i) out.d2B(i, k) = ev.dB[i].d;
    bd[k].d = 0.0;
  }
  return out;
}

}  // namespace magelast
