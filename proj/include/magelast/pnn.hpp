#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <type_traits>
#include <vector>

#include "magelast/common.hpp"
#include "magelast/dual.hpp"

namespace magelast {

// ---------------------------------------------------------------------------
// Positive neural network: a small softplus MLP whose output-layer weights
// and bias are non-negative, so the output is non-negative for any input.

template <class T>
T softplus(const T& x) {
  using std::exp;
  using std::log1p;
  using magelast::exp;
  using magelast::log1p;
  if (primal(x) > 0.0) return x + log1p(exp(-x));
  return log1p(exp(x));
}

inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

inline double softplus_inv(double y) {
  if (y <= 0.0) throw contract_violation("softplus_inv: argument must be > 0");
  if (y > 30.0) return y;
  return std::log(std::expm1(y));
}

struct DenseLayer {
  int in = 0;
  int out = 0;
  std::vector<double> W;  // row-major, out x in
  std::vector<double> b;

  double& w(int r, int c) { return W[static_cast<std::size_t>(r) * in + c]; }
  double w(int r, int c) const { return W[static_cast<std::size_t>(r) * in + c]; }
};

struct PNNParams {
  std::vector<DenseLayer> layers;  // softplus on all but the last (linear) layer
  bool nonneg_output = true;

  int input_dim() const { return layers.empty() ? 0 : layers.front().in; }
  int parameter_count() const {
    int n = 0;
    for (const auto& l : layers) n += l.out * l.in + l.out;
    return n;
  }

  void validate() const {
    if (layers.empty()) throw contract_violation("PNNParams: no layers");
    for (std::size_t k = 0; k + 1 < layers.size(); ++k)
      if (layers[k].out != layers[k + 1].in)
        throw contract_violation("PNNParams: layer shape mismatch");
    if (layers.back().out != 1) throw contract_violation("PNNParams: output dim must be 1");
    if (nonneg_output) {
      const auto& lo = layers.back();
      for (double v : lo.W)
        if (v < 0.0) throw contract_violation("PNNParams: output weights must be >= 0");
      for (double v : lo.b)
        if (v < 0.0) throw contract_violation("PNNParams: output bias must be >= 0");
    }
  }

  static PNNParams zeros(std::span<const int> widths) {
    PNNParams p;
    for (std::size_t k = 0; k + 1 < widths.size(); ++k) {
      DenseLayer l;
      l.in = widths[k];
      l.out = widths[k + 1];
      l.W.assign(static_cast<std::size_t>(l.in) * l.out, 0.0);
      l.b.assign(l.out, 0.0);
      p.layers.push_back(std::move(l));
    }
    return p;
  }
};

// Affine input map into [-1, 1] over the fitted range, plus the output scale.
struct NormalizationSpec {
  std::vector<double> imin, imax;
  double oscale = 1.0;
  bool is_fitted = false;

  void fit(std::span<const std::array<double, 10>> samples, int dim, double output_scale) {
    if (samples.empty()) throw config_error("NormalizationSpec: no samples to fit");
    imin.assign(dim, 0.0);
    imax.assign(dim, 0.0);
    for (int i = 0; i < dim; ++i) {
      double lo = samples[0][i], hi = samples[0][i];
      for (const auto& s : samples) {
        lo = std::min(lo, s[i]);
        hi = std::max(hi, s[i]);
      }
      // constant coordinates get a unit range so the map stays well defined
      if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) hi = lo + 1.0;
      imin[i] = lo;
      imax[i] = hi;
    }
    if (output_scale <= 0.0) throw config_error("NormalizationSpec: output scale must be > 0");
    oscale = output_scale;
    is_fitted = true;
  }

  void validate(int dim) const {
    if (!is_fitted) throw config_error("NormalizationSpec: not fitted");
    if (static_cast<int>(imin.size()) != dim || static_cast<int>(imax.size()) != dim)
      throw config_error("NormalizationSpec: dimension mismatch");
    for (int i = 0; i < dim; ++i)
      if (!(imax[i] > imin[i])) throw config_error("NormalizationSpec: imax must exceed imin");
    if (!(oscale > 0.0)) throw config_error("NormalizationSpec: oscale must be > 0");
  }

  double alpha(int i) const { return 2.0 / (imax[i] - imin[i]); }
  double beta(int i) const { return -(imax[i] + imin[i]) / (imax[i] - imin[i]); }
};

inline constexpr int kMaxWidth = 16;
inline constexpr int kMaxLayers = 4;

template <class T>
struct PnnEval {
  T value{};                      // oscale * network output, >= 0
  std::array<T, 10> grad{};       // d value / d raw inputs
  int dim = 0;
};

// Value and input-gradient of the normalized PNN for any scalar type.
template <class T>
PnnEval<T> pnn_forward(const PNNParams& p, const NormalizationSpec& n, const T* x, int dim) {
  n.validate(dim);
  if (p.input_dim() != dim) throw contract_violation("pnn_forward: input dimension mismatch");

  std::array<std::array<T, kMaxWidth>, kMaxLayers + 1> act;
  std::array<std::array<T, kMaxWidth>, kMaxLayers> sp1;
  for (int i = 0; i < dim; ++i) act[0][i] = T(n.alpha(i)) * x[i] + T(n.beta(i));

  const int L = static_cast<int>(p.layers.size());
  for (int k = 0; k < L; ++k) {
    const DenseLayer& l = p.layers[k];
    for (int r = 0; r < l.out; ++r) {
      T z = T(l.b[r]);
      for (int c = 0; c < l.in; ++c) z += T(l.w(r, c)) * act[k][c];
      if (k + 1 < L) {
        act[k + 1][r] = softplus(z);
        const double s = sigmoid(primal(z));
        if constexpr (std::is_same_v<T, Dual>) {
          // softplus'(z) carried as a Dual so the reverse pass propagates
          // the tangent of the gradient too
          sp1[k][r] = Dual(s, s * (1.0 - s) * tangent(z));
        } else {
          sp1[k][r] = s;
        }
      } else {
        act[k + 1][r] = z;
      }
    }
  }

  PnnEval<T> out;
  out.dim = dim;
  out.value = T(n.oscale) * act[L][0];

  // reverse pass for the input gradient
  std::array<T, kMaxWidth> g;
  const DenseLayer& lo = p.layers[L - 1];
  for (int c = 0; c < lo.in; ++c) g[c] = T(n.oscale) * T(lo.w(0, c));
  for (int k = L - 2; k >= 0; --k) {
    const DenseLayer& l = p.layers[k];
    std::array<T, kMaxWidth> gz;
    for (int r = 0; r < l.out; ++r) gz[r] = sp1[k][r] * g[r];
    for (int c = 0; c < l.in; ++c) {
      T s(0.0);
      for (int r = 0; r < l.out; ++r) s += T(l.w(r, c)) * gz[r];
      g[c] = s;
    }
  }
  for (int i = 0; i < dim; ++i) out.grad[i] = T(n.alpha(i)) * g[i];
  return out;
}

// Accumulates into grad_out the parameter gradient of the scalar
//   y(params) = c0 * Psi_NN(x) + sum_i c[i] * dPsi_NN/dx_i (x),
// i.e. the mixed parameter-input derivative contracted with a cotangent.
// This is the Sobolev-training building block: stress and magnetic-field
// residuals reduce to exactly this form. Layout of grad_out: per layer, W
// row-major then b.
inline void pnn_param_cotangent_gradient(const PNNParams& p, const NormalizationSpec& n,
                                         const double* x, int dim, double c0, const double* c,
                                         double* grad_out) {
  n.validate(dim);
  const int L = static_cast<int>(p.layers.size());

  // forward with value and tangent streams; tangent direction u = alpha (.) c
  std::array<std::array<double, kMaxWidth>, kMaxLayers + 1> a, ad;
  std::array<std::array<double, kMaxWidth>, kMaxLayers> z, zd, s1, s2;
  for (int i = 0; i < dim; ++i) {
    a[0][i] = n.alpha(i) * x[i] + n.beta(i);
    ad[0][i] = n.alpha(i) * c[i];
  }
  for (int k = 0; k < L; ++k) {
    const DenseLayer& l = p.layers[k];
    for (int r = 0; r < l.out; ++r) {
      double zv = l.b[r], zt = 0.0;
      for (int cc = 0; cc < l.in; ++cc) {
        zv += l.w(r, cc) * a[k][cc];
        zt += l.w(r, cc) * ad[k][cc];
      }
      z[k][r] = zv;
      zd[k][r] = zt;
      if (k + 1 < L) {
        const double s = sigmoid(zv);
        s1[k][r] = s;
        s2[k][r] = s * (1.0 - s);
        a[k + 1][r] = softplus(zv);
        ad[k + 1][r] = s * zt;
      } else {
        a[k + 1][r] = zv;
        ad[k + 1][r] = zt;
      }
    }
  }

  // reverse pass over (value, tangent): abar/adbar are adjoints of a/ad
  std::array<double, kMaxWidth> abar, adbar, abar_next, adbar_next;
  double* gptr = grad_out;
  std::vector<double*> layer_grad(L);
  for (int k = 0; k < L; ++k) {
    layer_grad[k] = gptr;
    gptr += p.layers[k].out * p.layers[k].in + p.layers[k].out;
  }

  {
    const DenseLayer& lo = p.layers[L - 1];
    double* gw = layer_grad[L - 1];
    double* gb = gw + lo.out * lo.in;
    // y = oscale * (c0 * (w.a + b) + w.ad)
    for (int cc = 0; cc < lo.in; ++cc) {
      gw[cc] += n.oscale * (c0 * a[L - 1][cc] + ad[L - 1][cc]);
      abar[cc] = n.oscale * c0 * lo.w(0, cc);
      adbar[cc] = n.oscale * lo.w(0, cc);
    }
    gb[0] += n.oscale * c0;
  }

  for (int k = L - 2; k >= 0; --k) {
    const DenseLayer& l = p.layers[k];
    double* gw = layer_grad[k];
    double* gb = gw + l.out * l.in;
    std::array<double, kMaxWidth> zbar, zdbar;
    for (int r = 0; r < l.out; ++r) {
      zbar[r] = s1[k][r] * abar[r] + s2[k][r] * zd[k][r] * adbar[r];
      zdbar[r] = s1[k][r] * adbar[r];
    }
    for (int r = 0; r < l.out; ++r) {
      for (int cc = 0; cc < l.in; ++cc)
        gw[static_cast<std::size_t>(r) * l.in + cc] += zbar[r] * a[k][cc] + zdbar[r] * ad[k][cc];
      gb[r] += zbar[r];
    }
    for (int cc = 0; cc < l.in; ++cc) {
      double sa = 0.0, sad = 0.0;
      for (int r = 0; r < l.out; ++r) {
        sa += l.w(r, cc) * zbar[r];
        sad += l.w(r, cc) * zdbar[r];
      }
      abar_next[cc] = sa;
      adbar_next[cc] = sad;
    }
    abar = abar_next;
    adbar = adbar_next;
  }
}

inline void pack_pnn(const PNNParams& p, std::vector<double>& out) {
  for (const auto& l : p.layers) {
    out.insert(out.end(), l.W.begin(), l.W.end());
    out.insert(out.end(), l.b.begin(), l.b.end());
  }
}

inline void unpack_pnn(std::span<const double> flat, PNNParams& p) {
  std::size_t k = 0;
  for (auto& l : p.layers) {
    for (auto& v : l.W) v = flat[k++];
    for (auto& v : l.b) v = flat[k++];
  }
}

}  // namespace magelast
