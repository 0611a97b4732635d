#pragma once

#include <cmath>
#include <cstddef>
#include <deque>
#include <functional>
#include <span>
#include <vector>

#include "magelast/common.hpp"

namespace magelast {

// Objective: fills grad (same length as theta) and returns the loss.
using Objective = std::function<double(std::span<const double>, std::span<double>)>;

// Simple coordinate box on a trailing slice of the parameter vector (used to
// keep the direction angles inside their domain).
struct BoxConstraint {
  int begin = -1;  // -1: no box
  std::vector<double> lo, hi;

  bool active() const { return begin >= 0; }
  // Returns true if clamping changed x.
  bool project(std::span<double> x) const {
    if (!active()) return false;
    bool changed = false;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      double& v = x[begin + i];
      const double c = std::clamp(v, lo[i], hi[i]);
      if (c != v) {
        v = c;
        changed = true;
      }
    }
    return changed;
  }
};

struct OptimizeOptions {
  int max_iters = 1000;
  double stall_tol = 1e-12;  // early stop: improvement below this ...
  int stall_window = 50;     // ... over this many iterations
};

struct AdamOptions : OptimizeOptions {
  double lr = 1e-2;
  int decay_every = 500;
  double decay = 0.5;
  double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
};

namespace detail {

inline bool stalled(const std::vector<double>& hist, const OptimizeOptions& o) {
  const std::size_t n = hist.size();
  if (n < static_cast<std::size_t>(o.stall_window) + 1) return false;
  return hist[n - 1 - o.stall_window] - hist[n - 1] < o.stall_tol;
}

}  // namespace detail

// Full-batch adaptive moment estimation with step-decay schedule and
// projection onto the box after every step.
inline double adam_minimize(const Objective& f, std::vector<double>& theta,
                            const AdamOptions& opt, const BoxConstraint& box,
                            std::vector<double>& history) {
  const std::size_t n = theta.size();
  std::vector<double> g(n), m(n, 0.0), v(n, 0.0);
  double fx = 0.0;
  for (int t = 1; t <= opt.max_iters; ++t) {
    fx = f(theta, g);
    if (!std::isfinite(fx)) return fx;
    history.push_back(fx);
    const double lr =
        opt.lr * std::pow(opt.decay, static_cast<double>((t - 1) / opt.decay_every));
    const double b1t = 1.0 - std::pow(opt.beta1, t);
    const double b2t = 1.0 - std::pow(opt.beta2, t);
    for (std::size_t i = 0; i < n; ++i) {
      m[i] = opt.beta1 * m[i] + (1.0 - opt.beta1) * g[i];
      v[i] = opt.beta2 * v[i] + (1.0 - opt.beta2) * g[i] * g[i];
      theta[i] -= lr * (m[i] / b1t) / (std::sqrt(v[i] / b2t) + opt.eps);
    }
    box.project(theta);
    if (detail::stalled(history, opt)) break;
  }
  return fx;
}

struct LbfgsOptions : OptimizeOptions {
  int memory = 10;
  double grad_tol = 1e-11;
  double c1 = 1e-4, c2 = 0.9;
  int max_line_evals = 25;
};

// Limited-memory BFGS with strong-Wolfe line search. Box coordinates are
// handled with a light active-set rule: a coordinate pinned at its bound with
// an outward-pointing gradient is frozen; trial points are projected and the
// memory is cleared whenever the active set changes.
inline double lbfgs_minimize(const Objective& f, std::vector<double>& theta,
                             const LbfgsOptions& opt, const BoxConstraint& box,
                             std::vector<double>& history) {
  const std::size_t n = theta.size();
  std::vector<double> g(n), x = theta;
  double fx = f(x, g);
  if (!std::isfinite(fx)) {
    theta = x;
    return fx;
  }

  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;
  std::vector<char> frozen(n, 0), frozen_prev(n, 0);

  const auto update_active_set = [&]() {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) frozen[i] = 0;
    if (box.active()) {
      for (std::size_t i = 0; i < box.lo.size(); ++i) {
        const std::size_t k = box.begin + i;
        if ((x[k] <= box.lo[i] && g[k] > 0.0) || (x[k] >= box.hi[i] && g[k] < 0.0)) frozen[k] = 1;
      }
    }
    for (std::size_t i = 0; i < n; ++i) changed |= (frozen[i] != frozen_prev[i]);
    frozen_prev = frozen;
    return changed;
  };

  std::vector<double> d(n), gm(n), xt(n), gt(n);
  for (int iter = 0; iter < opt.max_iters; ++iter) {
    if (update_active_set()) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
    }
    for (std::size_t i = 0; i < n; ++i) gm[i] = frozen[i] ? 0.0 : g[i];

    double gnorm = 0.0;
    for (const double v : gm) gnorm = std::max(gnorm, std::abs(v));
    if (gnorm < opt.grad_tol) break;

    // two-loop recursion
    d = gm;
    std::vector<double> alpha(s_hist.size());
    for (int k = static_cast<int>(s_hist.size()) - 1; k >= 0; --k) {
      double sd = 0.0;
      for (std::size_t i = 0; i < n; ++i) sd += s_hist[k][i] * d[i];
      alpha[k] = rho_hist[k] * sd;
      for (std::size_t i = 0; i < n; ++i) d[i] -= alpha[k] * y_hist[k][i];
    }
    if (!s_hist.empty()) {
      double sy = 0.0, yy = 0.0;
      const auto& s = s_hist.back();
      const auto& y = y_hist.back();
      for (std::size_t i = 0; i < n; ++i) {
        sy += s[i] * y[i];
        yy += y[i] * y[i];
      }
      const double h0 = sy / yy;
      for (auto& v : d) v *= h0;
    }
    for (int k = 0; k < static_cast<int>(s_hist.size()); ++k) {
      double yd = 0.0;
      for (std::size_t i = 0; i < n; ++i) yd += y_hist[k][i] * d[i];
      const double beta = rho_hist[k] * yd;
      for (std::size_t i = 0; i < n; ++i) d[i] += (alpha[k] - beta) * s_hist[k][i];
    }
    for (std::size_t i = 0; i < n; ++i) d[i] = frozen[i] ? 0.0 : -d[i];

    double dg = 0.0;
    for (std::size_t i = 0; i < n; ++i) dg += d[i] * g[i];
    if (dg >= 0.0) {  // not a descent direction: fall back to steepest descent
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      dg = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        d[i] = -gm[i];
        dg += d[i] * g[i];
      }
      if (dg >= 0.0) break;
    }

    // strong-Wolfe line search with projected trial points
    const auto eval_at = [&](double a, double& fa, double& dga) {
      for (std::size_t i = 0; i < n; ++i) xt[i] = x[i] + a * d[i];
      box.project(xt);
      fa = f(xt, gt);
      dga = 0.0;
      for (std::size_t i = 0; i < n; ++i) dga += gt[i] * d[i];
    };

    double a = 1.0, a_prev = 0.0, f_prev = fx;
    double a_lo = 0.0, a_hi = 0.0, f_lo = fx;
    bool bracketed = false, accepted = false;
    double fa = fx, dga = dg;
    int evals = 0;
    double best_a = 0.0, best_f = fx;

    while (evals < opt.max_line_evals) {
      eval_at(a, fa, dga);
      ++evals;
      if (std::isfinite(fa) && fa < best_f) {
        best_f = fa;
        best_a = a;
      }
      if (!std::isfinite(fa) || fa > fx + opt.c1 * a * dg || (evals > 1 && fa >= f_prev)) {
        a_lo = a_prev;
        f_lo = f_prev;
        a_hi = a;
        bracketed = true;
        break;
      }
      if (std::abs(dga) <= -opt.c2 * dg) {
        accepted = true;
        break;
      }
      if (dga >= 0.0) {
        a_lo = a;
        f_lo = fa;
        a_hi = a_prev;
        bracketed = true;
        break;
      }
      a_prev = a;
      f_prev = fa;
      a *= 2.0;
    }
    if (bracketed && !accepted) {
      while (evals < opt.max_line_evals) {
        a = 0.5 * (a_lo + a_hi);
        eval_at(a, fa, dga);
        ++evals;
        if (std::isfinite(fa) && fa < best_f) {
          best_f = fa;
          best_a = a;
        }
        if (!std::isfinite(fa) || fa > fx + opt.c1 * a * dg || fa >= f_lo) {
          a_hi = a;
        } else {
          if (std::abs(dga) <= -opt.c2 * dg) {
            accepted = true;
            break;
          }
          if (dga * (a_hi - a_lo) >= 0.0) a_hi = a_lo;
          a_lo = a;
          f_lo = fa;
        }
      }
    }
    if (!accepted) {
      if (best_a == 0.0 || best_f >= fx) break;  // no progress possible along d
      a = best_a;
      eval_at(a, fa, dga);
    }

    // accept the (projected) step
    std::vector<double> s(n), y(n);
    bool proj_changed = false;
    for (std::size_t i = 0; i < n; ++i) xt[i] = x[i] + a * d[i];
    proj_changed = box.project(xt);
    if (fa > fx) break;  // projection or round-off ruined the step
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = xt[i] - x[i];
      y[i] = gt[i] - g[i];
    }
    x = xt;
    g = gt;
    fx = fa;
    history.push_back(fx);

    if (proj_changed) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
    } else {
      double sy = 0.0, ss = 0.0, yy = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        sy += s[i] * y[i];
        ss += s[i] * s[i];
        yy += y[i] * y[i];
      }
      if (sy > 1e-12 * std::sqrt(ss * yy)) {
        s_hist.push_back(std::move(s));
        y_hist.push_back(std::move(y));
        rho_hist.push_back(1.0 / sy);
        if (static_cast<int>(s_hist.size()) > opt.memory) {
          s_hist.pop_front();
          y_hist.pop_front();
          rho_hist.pop_front();
        }
      }
    }
    if (detail::stalled(history, opt)) break;
  }
  theta = x;
  return fx;
}

}  // namespace magelast
