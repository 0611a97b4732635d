#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "magelast/common.hpp"
#include "magelast/dual.hpp"

namespace magelast {

// Minimal dense 3-vector / 3x3-tensor algebra, templated on the scalar so
// the same kernels run on double and on Dual. Matrices are row-major.

template <class T>
struct Vec3 {
  std::array<T, 3> c{};

  T& operator[](std::size_t i) { return c[i]; }
  const T& operator[](std::size_t i) const { return c[i]; }

  Vec3& operator+=(const Vec3& o) {
    for (int i = 0; i < 3; ++i) c[i] += o.c[i];
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    for (int i = 0; i < 3; ++i) c[i] -= o.c[i];
    return *this;
  }
  Vec3& operator*=(const T& s) {
    for (int i = 0; i < 3; ++i) c[i] *= s;
    return *this;
  }
};

template <class T>
struct Mat3 {
  std::array<T, 9> m{};

  T& operator()(std::size_t i, std::size_t j) { return m[3 * i + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return m[3 * i + j]; }

  static Mat3 identity() {
    Mat3 r;
    r(0, 0) = T(1.0);
    r(1, 1) = T(1.0);
    r(2, 2) = T(1.0);
    return r;
  }
  static Mat3 diagonal(const T& a, const T& b, const T& c) {
    Mat3 r;
    r(0, 0) = a;
    r(1, 1) = b;
    r(2, 2) = c;
    return r;
  }

  Mat3& operator+=(const Mat3& o) {
    for (int i = 0; i < 9; ++i) m[i] += o.m[i];
    return *this;
  }
  Mat3& operator-=(const Mat3& o) {
    for (int i = 0; i < 9; ++i) m[i] -= o.m[i];
    return *this;
  }
  Mat3& operator*=(const T& s) {
    for (int i = 0; i < 9; ++i) m[i] *= s;
    return *this;
  }
};

using Vec3d = Vec3<double>;
using Mat3d = Mat3<double>;

template <class T>
Vec3<T> operator+(Vec3<T> a, const Vec3<T>& b) {
  return a += b;
}
template <class T>
Vec3<T> operator-(Vec3<T> a, const Vec3<T>& b) {
  return a -= b;
}
template <class T>
Vec3<T> operator*(Vec3<T> a, const T& s) {
  return a *= s;
}
template <class T>
Vec3<T> operator*(const T& s, Vec3<T> a) {
  return a *= s;
}
inline Vec3<Dual> operator*(double s, Vec3<Dual> a) { return a *= Dual(s); }
inline Vec3<Dual> operator*(Vec3<Dual> a, double s) { return a *= Dual(s); }
template <class T>
Vec3<T> operator-(const Vec3<T>& a) {
  return {{-a[0], -a[1], -a[2]}};
}

template <class T>
Mat3<T> operator+(Mat3<T> a, const Mat3<T>& b) {
  return a += b;
}
template <class T>
Mat3<T> operator-(Mat3<T> a, const Mat3<T>& b) {
  return a -= b;
}
template <class T>
Mat3<T> operator*(Mat3<T> a, const T& s) {
  return a *= s;
}
template <class T>
Mat3<T> operator*(const T& s, Mat3<T> a) {
  return a *= s;
}
inline Mat3<Dual> operator*(double s, Mat3<Dual> a) { return a *= Dual(s); }
inline Mat3<Dual> operator*(Mat3<Dual> a, double s) { return a *= Dual(s); }
template <class T>
Mat3<T> operator-(const Mat3<T>& a) {
  Mat3<T> r;
  for (int i = 0; i < 9; ++i) r.m[i] = -a.m[i];
  return r;
}

template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return {{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]}};
}

template <class T>
T norm_sq(const Vec3<T>& a) {
  return dot(a, a);
}
template <class T>
T norm(const Vec3<T>& a) {
  using std::sqrt;
  using magelast::sqrt;
  return sqrt(norm_sq(a));
}

template <class T>
Vec3<T> normalized(const Vec3<T>& a) {
  const T n = norm(a);
  return {{a[0] / n, a[1] / n, a[2] / n}};
}

template <class T>
Mat3<T> outer(const Vec3<T>& a, const Vec3<T>& b) {
  Mat3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a[i] * b[j];
  return r;
}

template <class T>
Mat3<T> transpose(const Mat3<T>& a) {
  Mat3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(j, i);
  return r;
}

template <class T>
T trace(const Mat3<T>& a) {
  return a(0, 0) + a(1, 1) + a(2, 2);
}

template <class T>
Mat3<T> matmul(const Mat3<T>& a, const Mat3<T>& b) {
  Mat3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      T s = a(i, 0) * b(0, j);
      s += a(i, 1) * b(1, j);
      s += a(i, 2) * b(2, j);
      r(i, j) = s;
    }
  return r;
}
template <class T>
Mat3<T> operator*(const Mat3<T>& a, const Mat3<T>& b) {
  return matmul(a, b);
}

// A . v
template <class T>
Vec3<T> operator*(const Mat3<T>& a, const Vec3<T>& v) {
  Vec3<T> r;
  for (int i = 0; i < 3; ++i) r[i] = a(i, 0) * v[0] + a(i, 1) * v[1] + a(i, 2) * v[2];
  return r;
}

// v . A  (== A^T . v)
template <class T>
Vec3<T> vecmat(const Vec3<T>& v, const Mat3<T>& a) {
  Vec3<T> r;
  for (int j = 0; j < 3; ++j) r[j] = v[0] * a(0, j) + v[1] * a(1, j) + v[2] * a(2, j);
  return r;
}

template <class T>
T determinant(const Mat3<T>& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

// Frobenius inner product A:B = A_ij B_ij and the induced norm.
template <class T>
T ddot(const Mat3<T>& a, const Mat3<T>& b) {
  T s = a.m[0] * b.m[0];
  for (int i = 1; i < 9; ++i) s += a.m[i] * b.m[i];
  return s;
}
template <class T>
T frob_norm(const Mat3<T>& a) {
  using std::sqrt;
  using magelast::sqrt;
  return sqrt(ddot(a, a));
}

// Matrix of cofactors, cof(A) = det(A) A^-T, computed from 2x2 minors.
template <class T>
Mat3<T> cofactor(const Mat3<T>& a) {
  if (std::abs(primal(determinant(a))) < 1e-14)
    throw singular_tensor_error("cofactor: singular tensor");
  Mat3<T> r;
  r(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  r(0, 1) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
  r(0, 2) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
  r(1, 0) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
  r(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
  r(1, 2) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
  r(2, 0) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
  r(2, 1) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
  r(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  return r;
}

template <class T>
Mat3<T> inverse(const Mat3<T>& a) {
  const T det = determinant(a);
  if (std::abs(primal(det)) < 1e-14) throw singular_tensor_error("inverse: singular tensor");
  return transpose(cofactor(a)) * (T(1.0) / det);
}

// F^iso = det(F)^(-1/3) F, the volume-preserving part of the deformation.
template <class T>
Mat3<T> isochoric_part(const Mat3<T>& f) {
  using std::pow;
  using magelast::pow;
  const T j = determinant(f);
  if (primal(j) <= 0.0) throw invalid_deformation_error("isochoric_part: det(F) <= 0");
  return f * pow(j, -1.0 / 3.0);
}

// Model input pair: deformation gradient (dimensionless) and referential
// magnetic induction (tesla).
struct DeformationState {
  Mat3d F = Mat3d::identity();
  Vec3d B{};

  void validate() const {
    if (determinant(F) <= 0.0)
      throw invalid_deformation_error("DeformationState: det(F) <= 0");
  }
};

// ---------------------------------------------------------------------------
// Symmetric 3x3 eigendecomposition.
//
// Closed-form trigonometric eigenvalues; eigenvectors via the most isolated
// eigenvalue first (cross products of rows of A - lambda*1), then deflation
// to a 2x2 problem in the orthogonal complement. Eigenvalues are returned in
// descending order with orthonormal eigenvectors.

template <class T>
struct Eigen3 {
  std::array<T, 3> values{};
  std::array<Vec3<T>, 3> vectors{};
};

namespace detail {

inline Vec3d eigenvector_isolated(const Mat3d& a, double lambda) {
  Mat3d r = a;
  r(0, 0) -= lambda;
  r(1, 1) -= lambda;
  r(2, 2) -= lambda;
  const Vec3d row0{{r(0, 0), r(0, 1), r(0, 2)}};
  const Vec3d row1{{r(1, 0), r(1, 1), r(1, 2)}};
  const Vec3d row2{{r(2, 0), r(2, 1), r(2, 2)}};
  const Vec3d c01 = cross(row0, row1);
  const Vec3d c02 = cross(row0, row2);
  const Vec3d c12 = cross(row1, row2);
  const double n01 = norm_sq(c01), n02 = norm_sq(c02), n12 = norm_sq(c12);
  if (n01 >= n02 && n01 >= n12 && n01 > 0.0) return normalized(c01);
  if (n02 >= n12 && n02 > 0.0) return normalized(c02);
  if (n12 > 0.0) return normalized(c12);
  return {{1.0, 0.0, 0.0}};  // (near-)degenerate: any unit vector works
}

inline void orthogonal_complement(const Vec3d& w, Vec3d& u, Vec3d& v) {
  if (std::abs(w[0]) > std::abs(w[1]))
    u = normalized(Vec3d{{-w[2], 0.0, w[0]}});
  else
    u = normalized(Vec3d{{0.0, w[2], -w[1]}});
  v = cross(w, u);
}

}  // namespace detail

inline Eigen3<double> symmetric_eigen(const Mat3d& a) {
  const double scale = frob_norm(a);
  {
    Mat3d asym = a - transpose(a);
    if (frob_norm(asym) > 1e-10 * (scale > 0.0 ? scale : 1.0))
      throw contract_violation("symmetric_eigen: input is not symmetric");
  }
  const Mat3d s = 0.5 * (a + transpose(a));

  const double q = trace(s) / 3.0;
  Mat3d b = s;
  b(0, 0) -= q;
  b(1, 1) -= q;
  b(2, 2) -= q;
  const double p2 = ddot(b, b) / 6.0;
  const double p = std::sqrt(p2);

  Eigen3<double> out;
  if (p < 1e-14 * (std::abs(q) + 1.0) * 1e-2 || p == 0.0) {
    out.values = {q, q, q};
    out.vectors = {Vec3d{{1, 0, 0}}, Vec3d{{0, 1, 0}}, Vec3d{{0, 0, 1}}};
    return out;
  }

  Mat3d bn = b * (1.0 / p);
  double r = determinant(bn) / 2.0;
  r = std::clamp(r, -1.0, 1.0);
  const double theta = std::acos(r) / 3.0;
  double l0 = q + 2.0 * p * std::cos(theta);
  double l2 = q + 2.0 * p * std::cos(theta + 2.0 * pi / 3.0);
  double l1 = 3.0 * q - l0 - l2;
  // theta in [0, pi/3] gives l0 >= l1 >= l2 analytically.

  // Eigenvector for the most isolated eigenvalue first, then deflation.
  const bool top_isolated = (l0 - l1) >= (l1 - l2);
  const double liso = top_isolated ? l0 : l2;
  const Vec3d w = detail::eigenvector_isolated(s, liso);

  Vec3d u, v;
  detail::orthogonal_complement(w, u, v);
  const Vec3d su = s * u, sv = s * v;
  const double m00 = dot(u, su), m01 = dot(u, sv), m11 = dot(v, sv);
  const double lmid = l1;
  Vec3d wm;
  {
    const double a0 = m00 - lmid, a1 = m11 - lmid;
    if (std::abs(a0) >= std::abs(a1)) {
      const double n = std::hypot(a0, m01);
      wm = n > 0.0 ? (u * (-m01 / n) + v * (a0 / n)) : u;
    } else {
      const double n = std::hypot(a1, m01);
      wm = n > 0.0 ? (u * (a1 / n) + v * (-m01 / n)) : u;
    }
  }
  const Vec3d wo = cross(w, wm);

  if (top_isolated) {
    out.values = {l0, l1, l2};
    out.vectors = {w, wm, wo};
  } else {
    out.values = {l0, l1, l2};
    out.vectors = {wo, wm, w};
  }
  return out;
}

// Dual overload: eigenvalue/eigenvector tangents by first-order perturbation
// theory. Near-degenerate gaps are floored at a 1e-12 split of the spectral
// scale so derivative evaluation stays finite through repeated eigenvalues.
inline Eigen3<Dual> symmetric_eigen(const Mat3<Dual>& a) {
  Mat3d av, ad;
  for (int i = 0; i < 9; ++i) {
    av.m[i] = a.m[i].v;
    ad.m[i] = 0.5 * (a.m[i].d + a.m[3 * (i % 3) + i / 3].d);  // symmetrize tangent
  }
  const Eigen3<double> e = symmetric_eigen(av);
  const double scale = std::max({std::abs(e.values[0]), std::abs(e.values[2]), 1e-300});
  const double split = 1e-12 * scale;

  Eigen3<Dual> out;
  std::array<Vec3d, 3> adv;
  for (int i = 0; i < 3; ++i) adv[i] = ad * e.vectors[i];
  for (int i = 0; i < 3; ++i) {
    out.values[i] = Dual(e.values[i], dot(e.vectors[i], adv[i]));
    Vec3d vdot{};
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      double gap = e.values[i] - e.values[j];
      if (std::abs(gap) < split) gap = (gap >= 0.0 ? split : -split);
      vdot += e.vectors[j] * (dot(e.vectors[j], adv[i]) / gap);
    }
    for (int k = 0; k < 3; ++k) out.vectors[i][k] = Dual(e.vectors[i][k], vdot[k]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rotations.

template <class T>
Mat3<T> rotation_x(const T& t) {
  using std::cos;
  using std::sin;
  using magelast::cos;
  using magelast::sin;
  Mat3<T> r = Mat3<T>::identity();
  r(1, 1) = cos(t);
  r(1, 2) = -sin(t);
  r(2, 1) = sin(t);
  r(2, 2) = cos(t);
  return r;
}
template <class T>
Mat3<T> rotation_y(const T& t) {
  using std::cos;
  using std::sin;
  using magelast::cos;
  using magelast::sin;
  Mat3<T> r = Mat3<T>::identity();
  r(0, 0) = cos(t);
  r(0, 2) = sin(t);
  r(2, 0) = -sin(t);
  r(2, 2) = cos(t);
  return r;
}
template <class T>
Mat3<T> rotation_z(const T& t) {
  using std::cos;
  using std::sin;
  using magelast::cos;
  using magelast::sin;
  Mat3<T> r = Mat3<T>::identity();
  r(0, 0) = cos(t);
  r(0, 1) = -sin(t);
  r(1, 0) = sin(t);
  r(1, 1) = cos(t);
  return r;
}

// Two rotations about the axes perpendicular to e3.
template <class T>
Mat3<T> rotation_euler_two_axis(const T& t1, const T& t2) {
  return rotation_x(t1) * rotation_y(t2);
}

// Maps e3 to (sin p1 cos p2, sin p1 sin p2, cos p1).
template <class T>
Mat3<T> rotation_polar_azimuth(const T& p1, const T& p2) {
  return rotation_z(p2) * rotation_y(p1);
}

// Rotation by alpha about the unit axis s:
//   Q = cos(a) 1 + (1 - cos(a)) s (x) s - sin(a) e.s
template <class T>
Mat3<T> rotation_axis_angle(const Vec3<T>& s, const T& alpha) {
  using std::cos;
  using std::sin;
  using magelast::cos;
  using magelast::sin;
  const T c = cos(alpha), si = sin(alpha);
  Mat3<T> q = outer(s, s) * (T(1.0) - c);
  q(0, 0) += c;
  q(1, 1) += c;
  q(2, 2) += c;
  // permutation tensor contracted with s: (e.s)_ij = e_ijk s_k
  q(0, 1) -= si * s[2];
  q(0, 2) += si * s[1];
  q(1, 0) += si * s[2];
  q(1, 2) -= si * s[0];
  q(2, 0) -= si * s[1];
  q(2, 1) += si * s[0];
  return q;
}

}  // namespace magelast
