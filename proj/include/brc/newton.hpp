#pragma once

// Damped Newton iteration on the cleared-denominator Bethe system.
//
// The same kernel serves two systems:
//   full:     a(x) = (x+i/2)^N,                b(x) = (x-i/2)^N
//   reduced:  a(x) = (x+i/2)^(N-1) (x-3i/2),   b(x) = (x-i/2)^(N-1) (x+3i/2)
// The reduced one is what remains of the full system for the other roots
// once the pair +-i/2 is fixed exactly (rows for +-i/2 vanish identically,
// the other rows carry the common factor (x^2+1/4)).

#include <algorithm>
#include <cmath>
#include <vector>

#include "brc/bethe.hpp"
#include "brc/numeric.hpp"

namespace brc::newton {

struct System {
  int n_sites = 0;
  int p = 0;
  int q = 0;

  static System full(int n) { return {n, n, 0}; }
  static System singular_core(int n) { return {n, n - 1, 1}; }
  int scale_degree(int m) const { return p + q + m - 1; }
};

struct Options {
  double tol = 1e-12;
  int max_iters = 200;
  double dedup_tol = 1e-8;
  double stable_tol = 1e-9;
  double divergence = 1e6;
  int max_halvings = 30;
  int polish_steps = 3;
  /// Give up after this many consecutive steps that cut the residual by less
  /// than 10x (0 = never). Newton creeps linearly toward a multiple zero.
  int max_slow_steps = 0;
};

enum class Status { converged, max_iters, diverged, stalled, collapsed };

template <class C>
struct Result {
  std::vector<C> roots;
  Status status = Status::stalled;
  double residual = 0.0;
  int iterations = 0;
  bool stable = false;
  bool ok() const { return status == Status::converged; }
};

template <class C>
struct Workspace {
  std::vector<C> f;
  std::vector<C> jac;
  std::vector<real_t<C>> scale;
};

namespace detail {

template <class C>
void coefficient_pair(const System& sys, const C& x, C& a, C& b, C& da, C& db) {
  const C h = half_i<C>();
  const C t = make_complex<C>(0.0, 1.5);
  const C up = x + h, um = x - h;
  const C vp = x + t, vm = x - t;
  const C up_p1 = sys.p > 0 ? ipow<C>(up, sys.p - 1) : make_complex<C>(0.0, 0.0);
  const C um_p1 = sys.p > 0 ? ipow<C>(um, sys.p - 1) : make_complex<C>(0.0, 0.0);
  const C up_p = sys.p > 0 ? up_p1 * up : make_complex<C>(1.0, 0.0);
  const C um_p = sys.p > 0 ? um_p1 * um : make_complex<C>(1.0, 0.0);
  const C vm_q1 = sys.q > 0 ? ipow<C>(vm, sys.q - 1) : make_complex<C>(0.0, 0.0);
  const C vp_q1 = sys.q > 0 ? ipow<C>(vp, sys.q - 1) : make_complex<C>(0.0, 0.0);
  const C vm_q = sys.q > 0 ? vm_q1 * vm : make_complex<C>(1.0, 0.0);
  const C vp_q = sys.q > 0 ? vp_q1 * vp : make_complex<C>(1.0, 0.0);
  const C pp(real_t<C>(sys.p), 0), qq(real_t<C>(sys.q), 0);
  a = up_p * vm_q;
  b = um_p * vp_q;
  da = pp * up_p1 * vm_q + qq * up_p * vm_q1;
  db = pp * um_p1 * vp_q + qq * um_p * vp_q1;
}

}  // namespace detail

/// Unscaled residual and (optionally) row-major Jacobian; scale holds the row scales.
template <class C>
void evaluate(const System& sys, const std::vector<C>& x, Workspace<C>& ws, bool with_jacobian) {
  const std::size_t m = x.size();
  const C i1 = imag_unit<C>();
  ws.f.assign(m, C());
  ws.scale.assign(m, real_t<C>(1));
  if (with_jacobian) ws.jac.assign(m * m, C());
  std::vector<C> fm(m), fp(m);
  for (std::size_t k = 0; k < m; ++k) {
    C a, b, da, db;
    detail::coefficient_pair(sys, x[k], a, b, da, db);
    C pm = make_complex<C>(1.0, 0.0), pp = make_complex<C>(1.0, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      if (j == k) continue;
      fm[j] = x[k] - x[j] - i1;
      fp[j] = x[k] - x[j] + i1;
      pm *= fm[j];
      pp *= fp[j];
    }
    ws.f[k] = a * pm - b * pp;
    ws.scale[k] = bethe::residual_scale(x[k], sys.scale_degree(static_cast<int>(m)));
    if (!with_jacobian) continue;
    C dkk = da * pm - db * pp;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == k) continue;
      C em = make_complex<C>(1.0, 0.0), ep = make_complex<C>(1.0, 0.0);
      for (std::size_t r = 0; r < m; ++r) {
        if (r == k || r == j) continue;
        em *= fm[r];
        ep *= fp[r];
      }
      // d/dx_k of fm[j] is +1, d/dx_j is -1
      dkk += a * em - b * ep;
      ws.jac[k * m + j] = -a * em + b * ep;
    }
    ws.jac[k * m + k] = dkk;
  }
}

template <class C>
double scaled_norm(const Workspace<C>& ws) {
  double m = 0.0;
  for (std::size_t k = 0; k < ws.f.size(); ++k) m = std::max(m, abs_d(ws.f[k]) * static_cast<double>(ws.scale[k]));
  return m;
}

/// Gaussian elimination with partial pivoting; b is overwritten by the solution.
template <class C>
bool solve_linear(std::vector<C> a, std::vector<C>& b) {
  using std::abs;
  const std::size_t m = b.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    real_t<C> best = abs(a[col * m + col]);
    for (std::size_t r = col + 1; r < m; ++r) {
      real_t<C> v = abs(a[r * m + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < m; ++c) std::swap(a[col * m + c], a[piv * m + c]);
      std::swap(b[col], b[piv]);
    }
    const C inv = make_complex<C>(1.0, 0.0) / a[col * m + col];
    for (std::size_t r = col + 1; r < m; ++r) {
      const C factor = a[r * m + col] * inv;
      if (factor == C()) continue;
      for (std::size_t c = col; c < m; ++c) a[r * m + c] -= factor * a[col * m + c];
      b[r] -= factor * b[col];
    }
  }
  for (std::size_t r = m; r-- > 0;) {
    C acc = b[r];
    for (std::size_t c = r + 1; c < m; ++c) acc -= a[r * m + c] * b[c];
    b[r] = acc / a[r * m + r];
  }
  for (const auto& v : b)
    if (!std::isfinite(abs_d(v))) return false;
  return true;
}

/// Newton direction at x with rows scaled for pivoting; false on a singular Jacobian.
template <class C, class Eval>
bool newton_step_with(Eval& eval, const std::vector<C>& x, Workspace<C>& ws, std::vector<C>& step) {
  eval(x, ws, true);
  const std::size_t m = x.size();
  std::vector<C> a = ws.jac;
  step.assign(m, C());
  for (std::size_t k = 0; k < m; ++k) {
    const C s(ws.scale[k], real_t<C>(0));
    for (std::size_t j = 0; j < m; ++j) a[k * m + j] *= s;
    step[k] = -ws.f[k] * s;
  }
  return solve_linear(std::move(a), step);
}

template <class C>
bool newton_step(const System& sys, const std::vector<C>& x, Workspace<C>& ws, std::vector<C>& step) {
  auto eval = [&](const std::vector<C>& v, Workspace<C>& w, bool jac) { evaluate(sys, v, w, jac); };
  return newton_step_with(eval, x, ws, step);
}

/// Damped Newton on the scaled max-norm; eval(x, ws, with_jacobian) fills the workspace.
template <class C, class Eval>
Result<C> refine_with(Eval eval, std::vector<C> x, const Options& opt) {
  Result<C> res;
  Workspace<C> ws;
  std::vector<C> step, trial;
  const std::size_t m = x.size();

  auto too_far = [&](const std::vector<C>& v) {
    for (const auto& z : v)
      if (!(abs_d(z) < opt.divergence)) return true;
    return false;
  };

  eval(x, ws, false);
  double merit = scaled_norm(ws);
  int polish_left = opt.polish_steps;
  int slow = 0;
  int it = 0;
  for (; it < opt.max_iters; ++it) {
    const bool below = merit < opt.tol;
    if (below && polish_left-- <= 0) break;
    if (!newton_step_with(eval, x, ws, step)) {
      res.status = below ? Status::converged : Status::stalled;
      break;
    }
    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h <= opt.max_halvings; ++h, t *= 0.5) {
      trial = x;
      const C tc(real_t<C>(t), real_t<C>(0));
      for (std::size_t k = 0; k < m; ++k) trial[k] += tc * step[k];
      if (too_far(trial)) continue;
      eval(trial, ws, false);
      const double mt = scaled_norm(ws);
      if (mt < merit || (below && mt <= merit)) {
        slow = (!below && mt > 0.1 * merit) ? slow + 1 : 0;
        x.swap(trial);
        merit = mt;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (below) break;
      res.status = too_far(x) ? Status::diverged : Status::stalled;
      res.roots = std::move(x);
      res.residual = merit;
      res.iterations = it;
      return res;
    }
    if (opt.max_slow_steps > 0 && slow >= opt.max_slow_steps) {
      res.status = Status::stalled;
      res.roots = std::move(x);
      res.residual = merit;
      res.iterations = it + 1;
      return res;
    }
    if (too_far(x)) {
      res.status = Status::diverged;
      res.roots = std::move(x);
      res.residual = merit;
      res.iterations = it;
      return res;
    }
  }
  res.iterations = it;
  res.residual = merit;
  if (merit >= opt.tol) {
    res.status = too_far(x) ? Status::diverged : Status::max_iters;
    res.roots = std::move(x);
    return res;
  }
  res.status = Status::converged;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      if (abs_d(x[a] - x[b]) < opt.dedup_tol) res.status = Status::collapsed;

  // an undamped step that stays put marks a well-determined root
  res.stable = false;
  if (newton_step_with(eval, x, ws, step)) {
    double worst = 0.0;
    for (std::size_t k = 0; k < m; ++k) worst = std::max(worst, abs_d(step[k]) / (1.0 + abs_d(x[k])));
    res.stable = worst < opt.stable_tol;
  }
  res.roots = std::move(x);
  return res;
}

template <class C>
Result<C> refine(const System& sys, std::vector<C> x, const Options& opt) {
  return refine_with<C>([&](const std::vector<C>& v, Workspace<C>& w, bool jac) { evaluate(sys, v, w, jac); },
                        std::move(x), opt);
}

/// (y_a - y_b + shift)^power; b < 0 drops the second variable.
template <class C>
struct Factor {
  int a;
  int b;
  C shift;
  int power;
};

/// Product of the factors and its gradient (prefix and suffix products, no division).
template <class C>
C factor_product(const std::vector<Factor<C>>& fs, const std::vector<C>& y, std::vector<C>* grad) {
  const std::size_t k = fs.size();
  std::vector<C> val(k), dval(k);
  for (std::size_t i = 0; i < k; ++i) {
    C f = y[static_cast<std::size_t>(fs[i].a)] + fs[i].shift;
    if (fs[i].b >= 0) f -= y[static_cast<std::size_t>(fs[i].b)];
    const C fp = ipow<C>(f, fs[i].power - 1);
    val[i] = fp * f;
    dval[i] = C(real_t<C>(fs[i].power), real_t<C>(0)) * fp;
  }
  std::vector<C> pre(k + 1), suf(k + 1);
  pre[0] = make_complex<C>(1.0, 0.0);
  suf[k] = pre[0];
  for (std::size_t i = 0; i < k; ++i) pre[i + 1] = pre[i] * val[i];
  for (std::size_t i = k; i-- > 0;) suf[i] = suf[i + 1] * val[i];
  if (grad) {
    grad->assign(y.size(), C());
    for (std::size_t i = 0; i < k; ++i) {
      const C d = pre[i] * dval[i] * suf[i + 1];
      (*grad)[static_cast<std::size_t>(fs[i].a)] += d;
      if (fs[i].b >= 0) (*grad)[static_cast<std::size_t>(fs[i].b)] -= d;
    }
  }
  return pre[k];
}

/// Equations lhs = rhs, each side a product of factors.
template <class C>
struct FactorEquation {
  std::vector<Factor<C>> lhs;
  std::vector<Factor<C>> rhs;
  int degree = 0;
};

/// An exact 2-string {x + i/2, x - i/2} with free roots mu: unknowns (x, mu...).
/// The string enters through the product of its two equations, where the
/// factors x^N cancel; this fixes x even when the string deviation is far
/// below the working precision.
template <class C>
std::vector<FactorEquation<C>> exact_pair_system(int n, std::size_t free_roots) {
  const C h = half_i<C>(), i1 = imag_unit<C>(), t = make_complex<C>(0.0, 1.5);
  const int m = static_cast<int>(free_roots);
  std::vector<FactorEquation<C>> eqs(free_roots + 1);
  auto& center = eqs[0];
  center.lhs.push_back({0, -1, i1, n});
  center.rhs.push_back({0, -1, -i1, n});
  for (int k = 1; k <= m; ++k) {
    center.lhs.push_back({0, k, -h, 1});
    center.lhs.push_back({0, k, -t, 1});
    center.rhs.push_back({0, k, t, 1});
    center.rhs.push_back({0, k, h, 1});
  }
  center.degree = n + 2 * m;
  for (int k = 1; k <= m; ++k) {
    auto& e = eqs[static_cast<std::size_t>(k)];
    e.lhs.push_back({k, -1, h, n});
    e.rhs.push_back({k, -1, -h, n});
    for (int j = 1; j <= m; ++j) {
      if (j == k) continue;
      e.lhs.push_back({k, j, -i1, 1});
      e.rhs.push_back({k, j, i1, 1});
    }
    e.lhs.push_back({k, 0, -t, 1});
    e.lhs.push_back({k, 0, -h, 1});
    e.rhs.push_back({k, 0, t, 1});
    e.rhs.push_back({k, 0, h, 1});
    e.degree = n + m + 1;
  }
  return eqs;
}

template <class C>
void evaluate_equations(const std::vector<FactorEquation<C>>& eqs, const std::vector<C>& y, Workspace<C>& ws,
                        bool with_jacobian) {
  const std::size_t m = y.size();
  ws.f.assign(m, C());
  ws.scale.assign(m, real_t<C>(1));
  if (with_jacobian) ws.jac.assign(m * m, C());
  std::vector<C> gl, gr;
  for (std::size_t k = 0; k < m; ++k) {
    const auto& e = eqs[k];
    ws.f[k] = factor_product(e.lhs, y, with_jacobian ? &gl : nullptr) -
              factor_product(e.rhs, y, with_jacobian ? &gr : nullptr);
    ws.scale[k] = bethe::residual_scale(y[k], e.degree);
    if (with_jacobian)
      for (std::size_t j = 0; j < m; ++j) ws.jac[k * m + j] = gl[j] - gr[j];
  }
}

/// Solves the exact-pair system from y = (x, mu...).
template <class C>
Result<C> refine_exact_pair(int n, std::vector<C> y, const Options& opt) {
  const auto eqs = exact_pair_system<C>(n, y.size() - 1);
  return refine_with<C>([&](const std::vector<C>& v, Workspace<C>& w, bool jac) { evaluate_equations(eqs, v, w, jac); },
                        std::move(y), opt);
}

}  // namespace brc::newton
