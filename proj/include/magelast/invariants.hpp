#pragma once

#include <array>

#include "magelast/common.hpp"
#include "magelast/tensor.hpp"

namespace magelast {

// The ten transversely isotropic invariants of (F, B, S), in order:
//   I1 = tr(Ciso)                 I6  = B . Ciso^2 . B
//   I2 = (tr^2 Ciso - tr Ciso^2)/2  I7  = S . Ciso . S
//   I3 = J^2                      I8  = S . Ciso^2 . S
//   I4 = B . B                    I9  = (S . B)^2
//   I5 = B . Ciso . B             I10 = (S . Ciso . B)^2
// with Ciso = J^(-2/3) C, C = F^T F, J = det F. Mechanical invariants carry
// either a purely volumetric (I3) or purely isochoric contribution; B enters
// only quadratically.
template <class T>
using InvariantArray = std::array<T, 10>;

// Values plus exact first derivatives with respect to F and B.
template <class T>
struct InvariantDerivs {
  InvariantArray<T> I{};
  std::array<Mat3<T>, 10> dF{};
  std::array<Vec3<T>, 10> dB{};
};

namespace detail {

template <class T>
void check_invariant_inputs(const Mat3<T>& f, const Vec3<T>& s) {
  if (std::abs(primal(norm_sq(s)) - 1.0) > 2.5e-12)
    throw contract_violation("invariants: preferred direction is not a unit vector");
  if (primal(determinant(f)) <= 0.0)
    throw invalid_deformation_error("invariants: det(F) <= 0");
}

}  // namespace detail

template <class T>
InvariantArray<T> compute_invariants(const Mat3<T>& f, const Vec3<T>& b, const Vec3<T>& s) {
  using std::pow;
  using magelast::pow;
  detail::check_invariant_inputs(f, s);

  const T j = determinant(f);
  const Mat3<T> c = transpose(f) * f;
  const T jm23 = pow(j, -2.0 / 3.0);
  const Mat3<T> ciso = c * jm23;
  const Mat3<T> ciso2 = ciso * ciso;

  InvariantArray<T> inv;
  const T tr1 = trace(ciso);
  inv[0] = tr1;
  inv[1] = (tr1 * tr1 - trace(ciso2)) * T(0.5);
  inv[2] = j * j;
  inv[3] = dot(b, b);
  inv[4] = dot(b, ciso * b);
  inv[5] = dot(b, ciso2 * b);
  inv[6] = dot(s, ciso * s);
  inv[7] = dot(s, ciso2 * s);
  const T sb = dot(s, b);
  inv[8] = sb * sb;
  const T g = dot(s, ciso * b);
  inv[9] = g * g;
  return inv;
}

// Closed-form first derivatives of every invariant. Derivatives with respect
// to the direction S are obtained by evaluating this with a Dual-valued S.
template <class T>
InvariantDerivs<T> invariant_derivatives(const Mat3<T>& f, const Vec3<T>& b, const Vec3<T>& s) {
  using std::pow;
  using magelast::pow;
  detail::check_invariant_inputs(f, s);

  InvariantDerivs<T> r;
  const T j = determinant(f);
  const Mat3<T> c = transpose(f) * f;
  const T jm23 = pow(j, -2.0 / 3.0);
  const T jm43 = jm23 * jm23;
  const Mat3<T> ciso = c * jm23;
  const Mat3<T> ciso2 = ciso * ciso;
  const Mat3<T> finv_t = transpose(inverse(f));

  const Vec3<T> fb = f * b;
  const Vec3<T> fs = f * s;
  const Vec3<T> cb = c * b;
  const Vec3<T> cs = c * s;
  const Vec3<T> fcb = f * cb;
  const Vec3<T> fcs = f * cs;
  const T trc = trace(c);

  const T tr1 = trace(ciso);
  r.I[0] = tr1;
  r.I[1] = (tr1 * tr1 - trace(ciso2)) * T(0.5);
  r.I[2] = j * j;
  r.I[3] = dot(b, b);
  r.I[4] = dot(b, ciso * b);
  r.I[5] = dot(b, ciso2 * b);
  r.I[6] = dot(s, ciso * s);
  r.I[7] = dot(s, ciso2 * s);
  const T sb = dot(s, b);
  r.I[8] = sb * sb;
  const T g = dot(s, ciso * b);
  r.I[9] = g * g;

  // I1iso
  r.dF[0] = T(2.0) * jm23 * (f - (trc / T(3.0)) * finv_t);
  // I2iso
  r.dF[1] = (T(-4.0 / 3.0) * r.I[1]) * finv_t + T(2.0) * jm43 * (trc * f - f * c);
  // I3
  r.dF[2] = (T(2.0) * j * j) * finv_t;
  // I4
  r.dB[3] = T(2.0) * b;
  // I5iso
  r.dF[4] = (T(-2.0 / 3.0) * r.I[4]) * finv_t + (T(2.0) * jm23) * outer(fb, b);
  r.dB[4] = (T(2.0) * jm23) * cb;
  // I6iso
  r.dF[5] = (T(-4.0 / 3.0) * r.I[5]) * finv_t +
            (T(2.0) * jm43) * (outer(fb, cb) + outer(fcb, b));
  r.dB[5] = (T(2.0) * jm43) * (c * cb);
  // I7iso
  r.dF[6] = (T(-2.0 / 3.0) * r.I[6]) * finv_t + (T(2.0) * jm23) * outer(fs, s);
  // I8iso
  r.dF[7] = (T(-4.0 / 3.0) * r.I[7]) * finv_t +
            (T(2.0) * jm43) * (outer(fs, cs) + outer(fcs, s));
  // I9
  r.dB[8] = (T(2.0) * sb) * s;
  // I10iso = g^2 with g = S . Ciso . B
  {
    const Mat3<T> dg_dF =
        (T(-2.0 / 3.0) * g) * finv_t + jm23 * (outer(fb, s) + outer(fs, b));
    r.dF[9] = (T(2.0) * g) * dg_dF;
    r.dB[9] = (T(2.0) * g * jm23) * cs;
  }
  return r;
}

// Invariants at the reference state F = 1, B = 0.
inline constexpr std::array<double, 10> reference_invariants_unloaded() {
  return {3.0, 3.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0};
}

}  // namespace magelast
