#include "hyperfh/quad.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace hyperfh {

namespace detail {

const KronrodTable& kronrod31() {
  static const KronrodTable t = [] {
    KronrodTable k{};
    const auto& x = boost::math::quadrature::gauss_kronrod<double, 31>::abscissa();
    const auto& w = boost::math::quadrature::gauss_kronrod<double, 31>::weights();
    const auto& g = boost::math::quadrature::gauss<double, 15>::weights();
    for (int i = 0; i < 16; ++i) {
      k.x[i] = x[i];
      k.wk[i] = w[i];
      k.wg[i] = (i % 2 == 0) ? g[i / 2] : 0.0;
    }
    return k;
  }();
  return t;
}

}  // namespace detail

QuadResult integrate_1d(const Integrand& f, double a, double b, double tol) {
  QuadOptions o;
  o.abs_tol = tol;
  o.rel_tol = tol;
  return integrate_1d(f, a, b, o);
}

QuadResult integrate_1d(const Integrand& f, double a, double b, const QuadOptions& opt) {
  return adapt(f, a, b, opt);
}

QuadResult integrate_1d_sqrt(const Integrand& f, double a, double b, Endpoint sing, const QuadOptions& opt) {
  double L = b - a;
  switch (sing) {
    case Endpoint::None: return adapt(f, a, b, opt);
    case Endpoint::Left: {
      auto g = [&](double s) { return 2.0 * s * f(a + s * s); };
      return adapt(g, 0.0, std::sqrt(L), opt);
    }
    case Endpoint::Right: {
      auto g = [&](double s) { return 2.0 * s * f(b - s * s); };
      return adapt(g, 0.0, std::sqrt(L), opt);
    }
    case Endpoint::Both: {
      double h = std::sqrt(0.5 * L);
      auto g1 = [&](double s) { return 2.0 * s * f(a + s * s); };
      auto g2 = [&](double s) { return 2.0 * s * f(b - s * s); };
      QuadResult r1 = adapt(g1, 0.0, h, opt), r2 = adapt(g2, 0.0, h, opt);
      return {r1.value + r2.value, r1.error_estimate + r2.error_estimate, r1.evaluations + r2.evaluations,
              r1.converged && r2.converged};
    }
  }
  return {};
}

VecQuadResult integrate_1d_vec(const VecIntegrand& f, int n, double a, double b, const QuadOptions& opt) {
  struct VP {
    double a, b;
    std::vector<cplx> v;
    double e;
    bool operator<(const VP& o) const { return e < o.e; }
  };
  const auto& t = detail::kronrod31();
  std::vector<cplx> buf(n), sk(n), sg(n);
  auto rule = [&](double lo, double hi) {
    VP p{lo, hi, std::vector<cplx>(n), 0.0};
    double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    f(c, buf.data());
    for (int j = 0; j < n; ++j) {
      sk[j] = t.wk[0] * buf[j];
      sg[j] = t.wg[0] * buf[j];
    }
    for (int i = 1; i < 16; ++i) {
      for (int sgn = -1; sgn <= 1; sgn += 2) {
        f(c + sgn * h * t.x[i], buf.data());
        for (int j = 0; j < n; ++j) {
          sk[j] += t.wk[i] * buf[j];
          sg[j] += t.wg[i] * buf[j];
        }
      }
    }
    for (int j = 0; j < n; ++j) {
      p.v[j] = sk[j] * h;
      p.e = std::max(p.e, std::abs((sk[j] - sg[j]) * h));
    }
    return p;
  };
  VecQuadResult r;
  r.value.assign(n, 0.0);
  if (a == b) return r;
  std::priority_queue<VP> q;
  q.push(rule(a, b));
  r.evaluations = 31;
  std::vector<cplx> total = q.top().v;
  double etotal = q.top().e;
  int splits = 0;
  auto scale = [&]() {
    double m = 0.0;
    for (auto& v : total) m = std::max(m, std::abs(v));
    return m;
  };
  while (etotal > std::max(opt.abs_tol, opt.rel_tol * scale())) {
    if (splits >= opt.max_subdivisions) {
      r.converged = false;
      break;
    }
    VP p = q.top();
    q.pop();
    double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b)) {
      r.converged = false;
      q.push(p);
      break;
    }
    VP p1 = rule(p.a, m), p2 = rule(m, p.b);
    r.evaluations += 62;
    ++splits;
    for (int j = 0; j < n; ++j) total[j] += p1.v[j] + p2.v[j] - p.v[j];
    etotal += p1.e + p2.e - p.e;
    q.push(std::move(p1));
    q.push(std::move(p2));
  }
  std::vector<VP> ps;
  while (!q.empty()) {
    ps.push_back(q.top());
    q.pop();
  }
  std::sort(ps.begin(), ps.end(), [](const VP& x, const VP& y) { return x.a < y.a; });
  for (const auto& p : ps) {
    for (int j = 0; j < n; ++j) r.value[j] += p.v[j];
    r.error_estimate += p.e;
  }
  if (!r.converged && opt.throw_on_failure)
    throw Error(ErrorCode::NoConvergence, "vector quadrature, error " + std::to_string(r.error_estimate));
  return r;
}

double semiaxis_cutoff(double envelope, double decay_rate, double tol) {
  if (envelope <= 0.0) return 1.0;
  double t = std::log(10.0 * envelope / (decay_rate * tol)) / decay_rate;
  return std::max(t, 1.0);
}

QuadResult integrate_semiaxis(const Integrand& f, double decay_rate, const SemiaxisOptions& opt) {
  if (!(decay_rate > 0.0)) throw Error(ErrorCode::DomainError, "decay_rate must be positive");
  // envelope constant from early samples
  double env = 0.0;
  const double probe = std::min(opt.max_length, 4.0 / decay_rate);
  for (int k = 0; k <= 16; ++k) {
    double t = opt.start + probe * k / 16.0;
    env = std::max(env, std::abs(f(t)) * std::exp(decay_rate * (t - opt.start)));
  }
  double len = std::min(semiaxis_cutoff(std::max(env, 1e-300), decay_rate, opt.tol), opt.max_length);
  double T = opt.start + len;
  if (opt.check_decay && env > 0.0) {
    for (int k = 0; k <= 8; ++k) {
      double t = opt.start + len * (0.5 + k / 8.0);
      double bound = 10.0 * env * std::exp(-decay_rate * (t - opt.start));
      double v = std::abs(f(t));
      if (v > bound && v > opt.tol)
        throw Error(ErrorCode::DecayViolated, "|f(" + std::to_string(t) + ")| = " + std::to_string(v) +
                                                  " exceeds envelope " + std::to_string(bound));
    }
  }
  QuadOptions qo;
  qo.abs_tol = opt.tol;
  qo.rel_tol = opt.tol;
  std::vector<double> pts{opt.start};
  for (double b : opt.breakpoints)
    if (b > opt.start && b < T) pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.push_back(T);
  QuadResult r;
  r.evaluations = 0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    QuadResult p = adapt(f, pts[i], pts[i + 1], qo);
    r.value += p.value;
    r.error_estimate += p.error_estimate;
    r.evaluations += p.evaluations;
  }
  r.error_estimate += env * std::exp(-decay_rate * len) / decay_rate;
  return r;
}

QuadResult integrate_r2(const Integrand2& f, double tol, double decay_power) {
  if (!(decay_power > 1.0)) throw Error(ErrorCode::DecayViolated, "declared decay power must exceed 1");
  const double h = 0.5 * M_PI;
  QuadOptions outer;
  outer.abs_tol = tol;
  outer.rel_tol = tol;
  QuadOptions inner = outer;
  inner.abs_tol = 0.1 * tol;
  inner.rel_tol = 0.1 * tol;
  long evals = 0;
  auto g = [&](double t1) {
    double l = std::tan(t1), j1 = 1.0 + l * l;
    auto gi = [&](double t2) {
      double m = std::tan(t2);
      return f(l, m) * (1.0 + m * m);
    };
    QuadResult ri = adapt(gi, -h, h, inner);
    evals += ri.evaluations;
    return ri.value * j1;
  };
  QuadResult r = adapt(g, -h, h, outer);
  r.evaluations = evals;
  return r;
}

Contour Contour::gamma0() {
  Contour c;
  c.point = [](double a) { return C3{cplx(1.0), cplx(std::cos(a)), cplx(std::sin(a))}; };
  c.measure = [](double) { return cplx(0.5); };
  c.periodic = true;
  return c;
}

Contour Contour::boosted(const LorentzElement& g) {
  Contour c = gamma0();
  c.point = [g](double a) { return g.apply(C3{cplx(1.0), cplx(std::cos(a)), cplx(std::sin(a))}); };
  return c;
}

QuadResult integrate_contour(const std::function<cplx(const C3&)>& f, const Contour& c, double tol) {
  auto g = [&](double t) { return f(c.point(t)) * c.measure(t); };
  if (c.periodic) {
    // trapezoid doubling; spectrally accurate for smooth periodic integrands
    int n = 16;
    cplx prev;
    long evals = 0;
    {
      Nodes nd = trapezoid_periodic(n);
      for (size_t k = 0; k < nd.x.size(); ++k) prev += nd.w[k] * g(c.a + (nd.x[k] + M_PI) * (c.b - c.a) / (2 * M_PI));
      prev *= (c.b - c.a) / (2 * M_PI);
      evals += n;
    }
    for (; n <= (1 << 16);) {
      n *= 2;
      Nodes nd = trapezoid_periodic(n);
      cplx cur;
      for (size_t k = 0; k < nd.x.size(); ++k) cur += nd.w[k] * g(c.a + (nd.x[k] + M_PI) * (c.b - c.a) / (2 * M_PI));
      cur *= (c.b - c.a) / (2 * M_PI);
      evals += n;
      double err = std::abs(cur - prev);
      if (err <= tol * std::max(1.0, std::abs(cur))) return {cur, err, evals, true};
      prev = cur;
    }
    throw Error(ErrorCode::NoConvergence, "periodic contour quadrature");
  }
  QuadOptions o;
  o.abs_tol = tol;
  o.rel_tol = tol;
  return adapt(g, c.a, c.b, o);
}

Nodes gauss_panels(double a, double b, int panels, int order) {
  std::vector<double> gx, gw;
  auto fill = [&](const auto& x, const auto& w) {
    for (size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0.0) {
        gx.push_back(0.0);
        gw.push_back(w[i]);
      } else {
        gx.push_back(x[i]);
        gw.push_back(w[i]);
        gx.push_back(-x[i]);
        gw.push_back(w[i]);
      }
    }
  };
  using boost::math::quadrature::gauss;
  switch (order) {
    case 10: fill(gauss<double, 10>::abscissa(), gauss<double, 10>::weights()); break;
    case 15: fill(gauss<double, 15>::abscissa(), gauss<double, 15>::weights()); break;
    case 30: fill(gauss<double, 30>::abscissa(), gauss<double, 30>::weights()); break;
    default: fill(gauss<double, 20>::abscissa(), gauss<double, 20>::weights()); break;
  }
  Nodes n;
  double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double c = a + (p + 0.5) * h;
    for (size_t i = 0; i < gx.size(); ++i) {
      n.x.push_back(c + 0.5 * h * gx[i]);
      n.w.push_back(0.5 * h * gw[i]);
    }
  }
  return n;
}

Nodes trapezoid_periodic(int n) {
  Nodes nd;
  double h = 2.0 * M_PI / n;
  for (int k = 0; k < n; ++k) {
    nd.x.push_back(-M_PI + (k + 0.5) * h);
    nd.w.push_back(h);
  }
  return nd;
}

}  // namespace hyperfh
