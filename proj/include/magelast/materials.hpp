#pragma once

#include <array>
#include <cmath>

#include "magelast/common.hpp"
#include "magelast/fields.hpp"
#include "magelast/invariants.hpp"
#include "magelast/tensor.hpp"

namespace magelast {

// ---------------------------------------------------------------------------
// Microscale material laws and the synthetic transversely isotropic composite
// "ground truth" used to generate datasets in place of FE homogenization.

struct OgdenParams {
  std::array<double, 3> mu{};     // Pa
  std::array<double, 3> alpha{};  // dimensionless
  double kappa = 0.0;             // Pa

  void validate() const {
    double ga = 0.0;
    for (int p = 0; p < 3; ++p) ga += mu[p] * alpha[p];
    if (ga <= 0.0) throw contract_violation("OgdenParams: sum mu_p alpha_p must be > 0");
    if (kappa <= 0.0) throw contract_violation("OgdenParams: kappa must be > 0");
  }
  // Initial shear modulus G = sum(mu_p alpha_p) / 2.
  double shear_modulus() const {
    return 0.5 * (mu[0] * alpha[0] + mu[1] * alpha[1] + mu[2] * alpha[2]);
  }

  // Silicone rubber matrix, 20% silicone oil.
  static OgdenParams silicone_matrix() {
    return {{-11.80e3, 12.45e3, 4.59e-2}, {-6.68, 2.09, 18.34}, 5.0e6};
  }
};

struct NeoHookeParams {
  double G = 251.1e6;     // Pa
  double kappa = 544.05e6;  // Pa, from nu = 0.3
  void validate() const {
    if (G <= 0.0 || kappa <= 0.0) throw contract_violation("NeoHookeParams: moduli must be > 0");
  }
};

struct LangevinParams {
  double m_s = 1000.0e3;  // saturation magnetization, A/m
  double chi = 0.9;       // susceptibility
  void validate() const {
    if (m_s <= 0.0 || chi <= 0.0)
      throw contract_violation("LangevinParams: m_s and chi must be > 0");
  }
};

namespace detail {

// log(x) - log(sinh(x)) as a function of x^2, stable through x -> 0 and
// large x. The small-x series keeps the expression smooth in x^2, which also
// makes Dual evaluation exact at B = 0.
template <class T>
T log_x_over_sinh_x_from_x2(const T& x2) {
  using std::log;
  using std::sinh;
  using std::sqrt;
  using magelast::log;
  using magelast::sinh;
  using magelast::sqrt;
  const double p = primal(x2);
  if (p < 1e-8) return -x2 / T(6.0) + x2 * x2 / T(180.0);
  const T x = sqrt(x2);
  if (p > 900.0) return log(T(2.0) * x) - x;
  return log(x) - log(sinh(x));
}

// L(x)/x with the Langevin function L(x) = coth(x) - 1/x, as a function of
// x^2 (same smoothness rationale as above). Tends to 1/3 as x -> 0.
template <class T>
T langevin_over_x_from_x2(const T& x2) {
  using std::cosh;
  using std::sinh;
  using std::sqrt;
  using magelast::cosh;
  using magelast::sinh;
  using magelast::sqrt;
  const double p = primal(x2);
  if (p < 1e-8) return T(1.0 / 3.0) - x2 / T(45.0) + T(2.0 / 945.0) * x2 * x2;
  const T x = sqrt(x2);
  if (p > 900.0) return (T(1.0) - T(1.0) / x) / x;
  return (cosh(x) / sinh(x) - T(1.0) / x) / x;
}

}  // namespace detail

// Volumetric contribution (kappa/4)(J^2 - 2 ln J - 1); zero at J = 1 and
// divergent as J -> 0+ and J -> inf.
template <class T>
T volumetric_energy(const T& j, double kappa) {
  using std::log;
  using magelast::log;
  if (primal(j) <= 0.0) throw invalid_deformation_error("volumetric_energy: J <= 0");
  return T(0.25 * kappa) * (j * j - T(2.0) * log(j) - T(1.0));
}

// Vacuum field energy |F.B|^2 / (2 mu0 J).
template <class T>
T vacuum_energy(const Mat3<T>& f, const Vec3<T>& b) {
  const T j = determinant(f);
  if (primal(j) <= 0.0) throw invalid_deformation_error("vacuum_energy: det(F) <= 0");
  const Vec3<T> fb = f * b;
  return norm_sq(fb) / (T(2.0 * mu0) * j);
}

// Langevin-type magnetic energy for an effective induction magnitude ell (T):
//   (mu0 m_s^2 / 3 chi) [ln x - ln sinh x],  x = 3 chi ell / (mu0 m_s).
// Always <= 0; the induced magnetization magnitude saturates at m_s.
template <class T>
T langevin_energy(const T& ell, const LangevinParams& p) {
  if (primal(ell) < 0.0) throw contract_violation("langevin_energy: ell must be >= 0");
  const double k = 3.0 * p.chi / (mu0 * p.m_s);
  const T x2 = T(k * k) * ell * ell;
  const double pref = mu0 * p.m_s * p.m_s / (3.0 * p.chi);
  return T(pref) * detail::log_x_over_sinh_x_from_x2(x2);
}

// Ogden energy of the isochoric principal stretches; zero for any pure
// dilation.
template <class T>
T ogden_iso_energy(const Mat3<T>& f, const OgdenParams& p) {
  using std::pow;
  using magelast::pow;
  const T j = determinant(f);
  if (primal(j) <= 0.0) throw invalid_deformation_error("ogden_iso_energy: det(F) <= 0");
  const Mat3<T> c = transpose(f) * f;
  const Eigen3<T> e = symmetric_eigen(c);
  const T jm13 = pow(j, -1.0 / 3.0);
  std::array<T, 3> liso;
  for (int i = 0; i < 3; ++i) {
    using std::sqrt;
    using magelast::sqrt;
    liso[i] = sqrt(e.values[i]) * jm13;
  }
  T psi(0.0);
  for (int q = 0; q < 3; ++q) {
    const double a = p.alpha[q];
    psi += T(p.mu[q] / a) *
           (pow(liso[0], a) + pow(liso[1], a) + pow(liso[2], a) - T(3.0));
  }
  return psi;
}

// First Piola-Kirchhoff stress of the isochoric Ogden energy,
// P = F . sum_j (dpsi/dlam_j / lam_j) v_j (x) v_j.
template <class T>
Mat3<T> ogden_iso_stress(const Mat3<T>& f, const OgdenParams& p) {
  using std::pow;
  using std::sqrt;
  using magelast::pow;
  using magelast::sqrt;
  const T j = determinant(f);
  if (primal(j) <= 0.0) throw invalid_deformation_error("ogden_iso_stress: det(F) <= 0");
  const Mat3<T> c = transpose(f) * f;
  const Eigen3<T> e = symmetric_eigen(c);
  const T jm13 = pow(j, -1.0 / 3.0);
  std::array<T, 3> lam, liso;
  for (int i = 0; i < 3; ++i) {
    lam[i] = sqrt(e.values[i]);
    liso[i] = lam[i] * jm13;
  }
  std::array<T, 3> pw_sum{T(0.0), T(0.0), T(0.0)};
  for (int q = 0; q < 3; ++q) {
    const double a = p.alpha[q];
    std::array<T, 3> pw{pow(liso[0], a), pow(liso[1], a), pow(liso[2], a)};
    const T mean = (pw[0] + pw[1] + pw[2]) / T(3.0);
    for (int i = 0; i < 3; ++i) pw_sum[i] += T(p.mu[q]) * (pw[i] - mean);
  }
  Mat3<T> g{};
  for (int i = 0; i < 3; ++i) g += (pw_sum[i] / (lam[i] * lam[i])) * outer(e.vectors[i], e.vectors[i]);
  return f * g;
}

// Neo-Hooke point evaluator (particle material): G/2 (tr Ciso - 3) plus the
// volumetric term.
template <class T>
T neo_hooke_energy(const Mat3<T>& f, const NeoHookeParams& p) {
  const T j = determinant(f);
  if (primal(j) <= 0.0) throw invalid_deformation_error("neo_hooke_energy: det(F) <= 0");
  const Mat3<T> ciso = isochoric_part(f);
  const Mat3<T> c = transpose(ciso) * ciso;
  return T(0.5 * p.G) * (trace(c) - T(3.0)) + volumetric_energy(j, p.kappa);
}

// ---------------------------------------------------------------------------
// Synthetic composite oracle.
//
// ogden (stiffness-scaled matrix) + c7 (I7iso - 1)^2 + c8 (I8iso - I7iso^2)
// + volumetric + Langevin(ell; chi_iso, m_s1) + Langevin(ell_par; chi_a, m_s2)
// + vacuum, with ell = J^(-1/2)|F.B| and ell_par = J^(-1/2) sqrt(I10iso).
// Both reinforcement terms are non-negative and stress-free at F = 1; the
// Langevin pair saturates the magnetization below m_s1 + m_s2.
struct OracleParams {
  OgdenParams ogden;
  double c7 = 5.0e3;       // Pa, chain-direction reinforcement
  double c8 = 30.0e3;      // Pa, fiber-plane shear reinforcement
  double kappa = 5.0e6;    // Pa
  double chi_iso = 0.25;
  double m_s1 = 160.0e3;   // A/m
  double chi_a = 0.08;
  double m_s2 = 40.0e3;    // A/m
  Vec3d S{{0.0, 0.0, 1.0}};

  static OracleParams defaults() {
    OracleParams p;
    p.ogden = OgdenParams::silicone_matrix();
    for (auto& mu : p.ogden.mu) mu *= 2.5;
    p.ogden.kappa = p.kappa;
    return p;
  }

  double m_s_mre() const { return m_s1 + m_s2; }

  void validate() const {
    ogden.validate();
    if (c7 < 0.0 || c8 < 0.0) throw contract_violation("OracleParams: c7, c8 must be >= 0");
    if (kappa <= 0.0) throw contract_violation("OracleParams: kappa must be > 0");
    if (chi_iso <= 0.0 || chi_a <= 0.0 || m_s1 <= 0.0 || m_s2 <= 0.0)
      throw contract_violation("OracleParams: magnetic parameters must be > 0");
    if (std::abs(norm(S) - 1.0) > 1e-12)
      throw contract_violation("OracleParams: S must be a unit vector");
  }
};

class OracleModel {
 public:
  explicit OracleModel(OracleParams params) : p_(params) { p_.validate(); }
  const OracleParams& params() const { return p_; }

  template <class T>
  T energy(const Mat3<T>& f, const Vec3<T>& b) const {
    return eval(f, b).psi;
  }

  template <class T>
  EnergyEval<T> eval(const Mat3<T>& f, const Vec3<T>& b) const {
    using std::pow;
    using magelast::pow;
    const T j = determinant(f);
    if (primal(j) <= 0.0) throw invalid_deformation_error("oracle: det(F) <= 0");

    Vec3<T> s;
    for (int i = 0; i < 3; ++i) s[i] = T(p_.S[i]);
    const Mat3<T> c = transpose(f) * f;
    const Mat3<T> coff = cofactor(f);  // dJ/dF = J F^-T
    const Mat3<T> finv_t = coff * (T(1.0) / j);
    const T jm23 = pow(j, -2.0 / 3.0);
    const T jm43 = jm23 * jm23;
    const Vec3<T> fs = f * s;
    const Vec3<T> cs = c * s;
    const Vec3<T> fb = f * b;
    const Vec3<T> cb = c * b;
    const T i7 = jm23 * dot(s, cs);
    const T i8 = jm43 * dot(cs, cs);
    const Mat3<T> g7 = (T(-2.0 / 3.0) * i7) * finv_t + (T(2.0) * jm23) * outer(fs, s);
    const Mat3<T> g8 = (T(-4.0 / 3.0) * i8) * finv_t +
                       (T(2.0) * jm43) * (outer(fs, cs) + outer(f * cs, s));

    EnergyEval<T> out;
    out.psi = ogden_iso_energy(f, p_.ogden);
    out.dF = ogden_iso_stress(f, p_.ogden);

    // reinforcement along and around the preferred direction
    out.psi += T(p_.c7) * (i7 - T(1.0)) * (i7 - T(1.0));
    out.dF += (T(2.0 * p_.c7) * (i7 - T(1.0))) * g7;
    out.psi += T(p_.c8) * (i8 - i7 * i7);
    out.dF += T(p_.c8) * (g8 - (T(2.0) * i7) * g7);

    // volumetric
    out.psi += volumetric_energy(j, p_.kappa);
    out.dF += T(0.5 * p_.kappa) * (j * j - T(1.0)) * finv_t;

    // isotropic Langevin, ell^2 = J^-1 B.C.B
    const T w2 = dot(b, cb);
    {
      const double k = 3.0 * p_.chi_iso / (mu0 * p_.m_s1);
      const T ell2 = w2 / j;
      const T x2 = T(k * k) * ell2;
      const double pref = mu0 * p_.m_s1 * p_.m_s1 / (3.0 * p_.chi_iso);
      out.psi += T(pref) * detail::log_x_over_sinh_x_from_x2(x2);
      const T u = T(-3.0 * p_.chi_iso / mu0) * detail::langevin_over_x_from_x2(x2);
      out.dB += (u / j) * cb;
      out.dF += (u / j) * outer(fb, b) - (T(0.5) * u * ell2) * finv_t;
    }

    // chain-direction Langevin, ell_par^2 = J^(-7/3) (S.C.B)^2
    {
      const double k = 3.0 * p_.chi_a / (mu0 * p_.m_s2);
      const T sgn = dot(s, cb);
      const T jm73 = pow(j, -7.0 / 3.0);
      const T ell2 = jm73 * sgn * sgn;
      const T x2 = T(k * k) * ell2;
      const double pref = mu0 * p_.m_s2 * p_.m_s2 / (3.0 * p_.chi_a);
      out.psi += T(pref) * detail::log_x_over_sinh_x_from_x2(x2);
      const T u = T(-3.0 * p_.chi_a / mu0) * detail::langevin_over_x_from_x2(x2);
      out.dB += (u * jm73 * sgn) * cs;
      out.dF += (u * jm73 * sgn) * (outer(fb, s) + outer(fs, b)) -
                (T(7.0 / 6.0) * u * ell2) * finv_t;
    }

    // vacuum
    out.psi += w2 / (T(2.0 * mu0) * j);
    out.dB += (T(1.0) / (T(mu0) * j)) * cb;
    out.dF += (T(1.0) / (T(mu0) * j)) * outer(fb, b) - (w2 / (T(2.0 * mu0) * j)) * finv_t;

    return out;
  }

 private:
  OracleParams p_;
};

}  // namespace magelast
