#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <queue>
#include <vector>

#include "hyperfh/errors.hpp"
#include "hyperfh/geometry.hpp"

namespace hyperfh {

struct QuadResult {
  cplx value{};
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = true;
};

struct VecQuadResult {
  std::vector<cplx> value;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = true;
};

struct QuadOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;
  bool throw_on_failure = true;
};

using Integrand = std::function<cplx(double)>;
using VecIntegrand = std::function<void(double, cplx*)>;

namespace detail {

struct KronrodTable {
  std::array<double, 16> x, wk, wg;  // wg is zero on Kronrod-only nodes
};
const KronrodTable& kronrod31();

template <class F>
inline void gk31(F& f, double a, double b, cplx& k, double& err) {
  const auto& t = kronrod31();
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  cplx f0 = f(c);
  cplx sk = t.wk[0] * f0, sg = t.wg[0] * f0;
  for (int i = 1; i < 16; ++i) {
    cplx s = f(c - h * t.x[i]) + f(c + h * t.x[i]);
    sk += t.wk[i] * s;
    if (t.wg[i] != 0.0) sg += t.wg[i] * s;
  }
  k = sk * h;
  err = std::abs((sk - sg) * h);
}

struct Panel {
  double a, b;
  cplx v;
  double e;
  bool operator<(const Panel& o) const { return e < o.e; }
};

}  // namespace detail

/// Globally adaptive Gauss-Kronrod 15/31 with bisection of the worst panel.
template <class F>
QuadResult adapt(F&& f, double a, double b, const QuadOptions& opt) {
  QuadResult r;
  if (a == b) return r;
  std::priority_queue<detail::Panel> q;
  cplx v;
  double e;
  detail::gk31(f, a, b, v, e);
  r.evaluations = 31;
  q.push({a, b, v, e});
  cplx total = v;
  double etotal = e;
  int splits = 0;
  while (etotal > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (splits >= opt.max_subdivisions) {
      r.converged = false;
      break;
    }
    detail::Panel p = q.top();
    q.pop();
    double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b)) {
      r.converged = false;
      q.push(p);
      break;
    }
    cplx v1, v2;
    double e1, e2;
    detail::gk31(f, p.a, m, v1, e1);
    detail::gk31(f, m, p.b, v2, e2);
    r.evaluations += 62;
    ++splits;
    q.push({p.a, m, v1, e1});
    q.push({m, p.b, v2, e2});
    total += v1 + v2 - p.v;
    etotal += e1 + e2 - p.e;
  }
  std::vector<detail::Panel> ps;
  ps.reserve(q.size());
  while (!q.empty()) {
    ps.push_back(q.top());
    q.pop();
  }
  std::sort(ps.begin(), ps.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
  r.value = 0.0;
  r.error_estimate = 0.0;
  for (const auto& p : ps) {
    r.value += p.v;
    r.error_estimate += p.e;
  }
  if (!r.converged && opt.throw_on_failure)
    throw Error(ErrorCode::NoConvergence, "adaptive quadrature on [" + std::to_string(a) + ", " +
                                              std::to_string(b) + "], error " +
                                              std::to_string(r.error_estimate));
  return r;
}

QuadResult integrate_1d(const Integrand& f, double a, double b, double tol);
QuadResult integrate_1d(const Integrand& f, double a, double b, const QuadOptions& opt);

enum class Endpoint { None, Left, Right, Both };

/// Removes (t-a)^{-1/2} (and/or (b-t)^{-1/2}) endpoint behaviour by t = a + s^2.
QuadResult integrate_1d_sqrt(const Integrand& f, double a, double b, Endpoint sing, const QuadOptions& opt);

/// Vector-valued adaptive quadrature; the error is the max over components.
VecQuadResult integrate_1d_vec(const VecIntegrand& f, int n, double a, double b, const QuadOptions& opt);

struct SemiaxisOptions {
  double tol = 1e-10;
  double start = 0.0;
  double max_length = 400.0;
  std::vector<double> breakpoints;
  bool check_decay = true;
};

/// Integral over [start, inf) of f with |f| <= C exp(-decay_rate t).
QuadResult integrate_semiaxis(const Integrand& f, double decay_rate, const SemiaxisOptions& opt);
inline QuadResult integrate_semiaxis(const Integrand& f, double decay_rate, double tol) {
  SemiaxisOptions o;
  o.tol = tol;
  return integrate_semiaxis(f, decay_rate, o);
}
/// Truncation point used by integrate_semiaxis for a given envelope constant.
double semiaxis_cutoff(double envelope, double decay_rate, double tol);

using Integrand2 = std::function<cplx(double, double)>;

/// Integral over R^2 using lambda = tan(theta) on each axis.
QuadResult integrate_r2(const Integrand2& f, double tol, double decay_power = 2.0);

struct Contour {
  double a = -M_PI, b = M_PI;
  std::function<C3(double)> point;
  std::function<cplx(double)> measure;  // d mu / dt
  bool periodic = false;
  static Contour gamma0();  // xi(alpha) = (1, cos a, sin a), d mu = d alpha / 2
  static Contour boosted(const LorentzElement& g);
};

QuadResult integrate_contour(const std::function<cplx(const C3&)>& f, const Contour& c, double tol);

/// Fixed Gauss-Legendre panels on [a, b].
struct Nodes {
  std::vector<double> x, w;
};
Nodes gauss_panels(double a, double b, int panels, int order = 20);

/// Periodic trapezoid on [-pi, pi) with offset nodes (k + 1/2) 2 pi / n.
Nodes trapezoid_periodic(int n);

}  // namespace hyperfh
