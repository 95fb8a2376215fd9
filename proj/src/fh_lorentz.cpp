#include "hyperfh/fh_lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <thread>

#include "hyperfh/quad.hpp"
#include "hyperfh/specfun.hpp"

namespace hyperfh {

namespace {

const cplx I(0.0, 1.0);

int worker_count() {
  if (const char* e = std::getenv("HYPERFH_THREADS")) {
    int n = std::atoi(e);
    if (n >= 1) return n;
  }
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : int(h);
}

R3 cycle_point(const CycleSpec& c, double alpha) {
  R3 xi{1.0, std::cos(alpha), std::sin(alpha)};
  return c.boost ? c.boost->apply(xi) : xi;
}

}  // namespace

cplx boundary_power(double t, cplx s, int side) {
  if (t > 0.0) return std::exp(s * std::log(t));
  if (t < 0.0) return std::exp(double(side) * I * M_PI * s) * std::exp(s * std::log(-t));
  if (s.real() > 0.0) return 0.0;
  throw Error(ErrorCode::DomainError, "boundary power at t = 0 with Re s <= 0");
}

cplx side_power(cplx base, cplx s, int side) {
  if (base.imag() == 0.0) return boundary_power(base.real(), s, side);
  return std::exp(s * std::log(base));
}

int transform_side_for(TuboidLabel t) {
  switch (t) {
    case TuboidLabel::TMinus: return +1;
    case TuboidLabel::TPlus: return -1;
    default: throw Error(ErrorCode::DomainError, std::string("no Lorentzian inversion for ") + label_name(t));
  }
}

TuboidLabel inverse_domain(int side) { return side > 0 ? TuboidLabel::TMinus : TuboidLabel::TPlus; }

// ---------------------------------------------------------------------------
// Rotated-chart evaluation.  With c = cos(alpha/2), s = sin(alpha/2) and
// lambda = (s a - c)/(c a + s), [x.xi(alpha)] = 2/(a - b) and
// f d sigma = R_alpha(a, b) da db / (a - b).

struct LorentzFHTransform::State {
  FHOptions opt;
  Nodes tau;
  std::mutex mu;
  struct Profile {
    std::vector<cplx> kp, km;  // K(+-e^tau) times the tau weights
    cplx k0p, k0m;
  };
  std::map<double, std::shared_ptr<const Profile>> cache;
};

namespace {

cplx k_of_u(const FunctionOnX& f, double c, double s, double u, double abs_tol, double rel_tol) {
  auto Ra = [&](double a, double b) {
    double da = c * a + s, db = c * b + s;
    if (da == 0.0) da = 1e-300;
    if (db == 0.0) db = 1e-300;
    return f.R_real((s * a - c) / da, (s * b - c) / db) / (da * db);
  };
  QuadOptions o;
  o.abs_tol = abs_tol;
  o.rel_tol = rel_tol;
  o.throw_on_failure = false;
  o.max_subdivisions = 600;
  const double h = std::asinh(0.5 * u);
  const double L = 36.0 + std::abs(h);
  // a-parametrization where b = a - u runs away, then the b-parametrization
  auto g1 = [&](double t) {
    double a = std::sinh(t);
    return Ra(a, a - u) * std::cosh(t);
  };
  auto g2 = [&](double t) {
    double b = std::sinh(t);
    return Ra(b + u, b) * std::cosh(t);
  };
  if (u > 0) return adapt(g1, -L, h, o).value + adapt(g2, -h, L, o).value;
  return adapt(g1, h, L, o).value + adapt(g2, -L, -h, o).value;
}

}  // namespace

LorentzFHTransform::LorentzFHTransform(FunctionOnX f, FHOptions opt)
    : st_(std::make_shared<State>()), source_(std::make_shared<const FunctionOnX>(std::move(f))) {
  st_->opt = opt;
  int panels = std::max(1, int(std::lround((opt.tau_max - opt.tau_min) / opt.panel)));
  st_->tau = gauss_panels(opt.tau_min, opt.tau_max, panels, 20);
  label_ = source_->spec().dump();
}

LorentzFHTransform::LorentzFHTransform(Evaluator ev, std::string label) : ev_(std::move(ev)), label_(std::move(label)) {}

LorentzFHTransform LorentzFHTransform::zero() {
  return LorentzFHTransform([](const std::vector<R3>& xi, cplx, int, cplx* out) { std::fill(out, out + xi.size(), 0.0); },
                            "zero");
}

const FunctionOnX& LorentzFHTransform::source() const {
  if (!source_) throw Error(ErrorCode::DomainError, "closed-form transform has no source function");
  return *source_;
}

std::size_t LorentzFHTransform::cached_profiles() const {
  if (!st_) return 0;
  std::lock_guard<std::mutex> lk(st_->mu);
  return st_->cache.size();
}

void LorentzFHTransform::eval(const std::vector<R3>& xi, cplx s, int side, cplx* out) const {
  if (ev_) {
    ev_(xi, s, side, out);
    return;
  }
  if (!(s.real() > -1.0 && s.real() < 0.0)) throw Error(ErrorCode::DomainError, "need -1 < Re s < 0");
  const std::size_t n = xi.size();
  std::vector<double> alpha(n), xi0(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(xi[k][0] > 0.0)) throw Error(ErrorCode::DomainError, "cone point needs xi0 > 0");
    xi0[k] = xi[k][0];
    alpha[k] = std::atan2(xi[k][2], xi[k][1]);
  }
  if (source_->is_zero()) {
    std::fill(out, out + n, 0.0);
    return;
  }
  // missing profiles
  std::vector<double> todo;
  {
    std::lock_guard<std::mutex> lk(st_->mu);
    for (double a : alpha)
      if (!st_->cache.count(a)) todo.push_back(a);
  }
  std::sort(todo.begin(), todo.end());
  todo.erase(std::unique(todo.begin(), todo.end()), todo.end());
  if (!todo.empty()) {
    const Nodes& tn = st_->tau;
    const FHOptions& op = st_->opt;
    const FunctionOnX& f = *source_;
    auto build = [&](double a) {
      auto p = std::make_shared<State::Profile>();
      double c = std::cos(0.5 * a), sn = std::sin(0.5 * a);
      double scale = std::max({std::abs(k_of_u(f, c, sn, 1.0, 1e-300, op.k_tol)),
                               std::abs(k_of_u(f, c, sn, -1.0, 1e-300, op.k_tol)), 1e-300});
      p->kp.resize(tn.x.size());
      p->km.resize(tn.x.size());
      for (std::size_t j = 0; j < tn.x.size(); ++j) {
        double t = tn.x[j], u = std::exp(t);
        double at = op.k_tol * 1e-3 * scale * std::exp(-0.5 * std::max(t, 0.0));
        p->kp[j] = k_of_u(f, c, sn, u, at, op.k_tol) * tn.w[j];
        p->km[j] = k_of_u(f, c, sn, -u, at, op.k_tol) * tn.w[j];
      }
      double u0 = std::exp(op.tau_min);
      p->k0p = k_of_u(f, c, sn, u0, 1e-300, op.k_tol);
      p->k0m = k_of_u(f, c, sn, -u0, 1e-300, op.k_tol);
      std::lock_guard<std::mutex> lk(st_->mu);
      st_->cache[a] = p;
    };
    int nw = std::min<int>(worker_count(), int(todo.size()));
    if (nw <= 1) {
      for (double a : todo) build(a);
    } else {
      std::vector<std::thread> th;
      for (int w = 0; w < nw; ++w)
        th.emplace_back([&, w] {
          for (std::size_t i = w; i < todo.size(); i += nw) build(todo[i]);
        });
      for (auto& t : th) t.join();
    }
  }
  // shared phases e^{-s tau}
  const Nodes& tn = st_->tau;
  std::vector<cplx> ph(tn.x.size());
  for (std::size_t j = 0; j < ph.size(); ++j) ph[j] = std::exp(-s * tn.x[j]);
  const double T = st_->opt.tau_min;
  const cplx tail = std::exp(-s * T) / (-s);
  const cplx two_s = std::exp(s * std::log(2.0));
  const cplx rot = std::exp(double(side) * I * M_PI * (s + 1.0));
  for (std::size_t k = 0; k < n; ++k) {
    std::shared_ptr<const State::Profile> p;
    {
      std::lock_guard<std::mutex> lk(st_->mu);
      p = st_->cache.at(alpha[k]);
    }
    cplx mp = p->k0p * tail, mm = p->k0m * tail;
    for (std::size_t j = 0; j < ph.size(); ++j) {
      mp += p->kp[j] * ph[j];
      mm += p->km[j] * ph[j];
    }
    out[k] = std::exp(s * std::log(xi0[k])) * two_s * (mp + rot * mm);
  }
}

cplx LorentzFHTransform::at_s(const R3& xi, cplx s, int side) const {
  cplx out;
  eval({xi}, s, side, &out);
  return out;
}

cplx LorentzFHTransform::operator()(const R3& xi, double nu, int side) const { return at_s(xi, spectral_s(nu), side); }

cplx LorentzFHTransform::at_alpha(double alpha, double nu, int side) const {
  return at_s(R3{1.0, std::cos(alpha), std::sin(alpha)}, spectral_s(nu), side);
}

cplx fh_direct(const FunctionOnX& f, const ConePoint& xi, double nu, int side, FHMethod method) {
  if (method == FHMethod::Chart) {
    double a = std::atan2(xi[2], xi[1]);
    cplx s = spectral_s(nu);
    return std::exp(s * std::log(xi[0])) * fh_direct_chart(f, a, s, side);
  }
  return LorentzFHTransform(f)(xi.r3(), nu, side);
}

cplx fh_direct_chart(const FunctionOnX& f, double alpha, cplx s, int side, double tol) {
  const double c = std::cos(0.5 * alpha);
  if (!(c > 1e-8)) throw Error(ErrorCode::ChartSingular, "chart form needs |alpha| < pi");
  if (!(s.real() > -1.0 && s.real() < 0.0)) throw Error(ErrorCode::DomainError, "need -1 < Re s < 0");
  if (f.is_zero()) return 0.0;
  const double t = std::tan(0.5 * alpha);
  // polar coordinates around (t, t); p = lambda - t, q = mu - t, r = e^x
  QuadOptions ri;
  ri.abs_tol = 0.01 * tol;
  ri.rel_tol = 0.01 * tol;
  auto radial = [&](double phi) {
    double cp = std::cos(phi), sp = std::sin(phi);
    auto g = [&](double x) {
      double r = std::exp(x);
      return std::exp((s + 1.0) * x) * f.R_real(t + r * cp, t + r * sp);
    };
    return adapt(g, -45.0, 70.0, ri).value;
  };
  auto ang = [&](double phi) {
    double cp = std::cos(phi), sp = std::sin(phi);
    return boundary_power(cp, s, -side) * boundary_power(sp, s, side) * boundary_power(cp - sp, -s - 1.0, -side) *
           radial(phi);
  };
  QuadOptions ro;
  ro.abs_tol = tol;
  ro.rel_tol = tol;
  const double br[] = {0.0, 0.25 * M_PI, 0.5 * M_PI, M_PI, 1.25 * M_PI, 1.5 * M_PI, 2.0 * M_PI};
  cplx sum = 0.0;
  for (int k = 0; k < 6; ++k) sum += integrate_1d_sqrt(ang, br[k], br[k + 1], Endpoint::Both, ro).value;
  return std::exp(s * std::log(2.0 * c * c)) * sum;
}

double fit_bound_constant(const LorentzFHTransform& ft, int side, double nu_max) {
  std::vector<R3> xi;
  for (int k = 0; k < 16; ++k) {
    double a = -M_PI + (k + 0.5) * M_PI / 8.0;
    xi.push_back({1.0, std::cos(a), std::sin(a)});
  }
  double C = 0.0;
  std::vector<cplx> v(xi.size());
  for (double nu = 0.0; nu <= nu_max + 1e-12; nu += 0.5) {
    ft.eval(xi, spectral_s(nu), side, v.data());
    double m = std::max(std::exp(double(side) * M_PI * nu), 1.0);
    for (cplx x : v) C = std::max(C, std::abs(x) / m);
  }
  return C;
}

// ---------------------------------------------------------------------------

VanishingReport support_vanishing(const LorentzFHTransform& ft, TuboidLabel member, double tol, bool throw_on_fail) {
  std::vector<int> vanish, other;
  switch (member) {
    case TuboidLabel::TPlus: vanish = {+1}; other = {-1}; break;
    case TuboidLabel::TMinus: vanish = {-1}; other = {+1}; break;
    case TuboidLabel::TLeft:
    case TuboidLabel::TRight: vanish = {+1, -1}; break;
    default: throw Error(ErrorCode::DomainError, "support check needs a tuboid label");
  }
  const double xs[5][2] = {{1.0, -2.6}, {1.5, -1.1}, {0.7, 0.0}, {2.0, 1.3}, {1.0, 2.9}};
  const double nus[5] = {0.0, 0.5, 1.0, 2.0, 3.0};
  std::vector<R3> xi;
  for (auto& p : xs) xi.push_back({p[0], p[0] * std::cos(p[1]), p[0] * std::sin(p[1])});
  VanishingReport rep;
  std::vector<cplx> v(5);
  for (double nu : nus) {
    for (int side : vanish) {
      ft.eval(xi, spectral_s(nu), side, v.data());
      for (int k = 0; k < 5; ++k)
        if (std::abs(v[k]) >= rep.max_residual) {
          rep.max_residual = std::abs(v[k]);
          rep.worst_alpha = xs[k][1];
          rep.worst_nu = nu;
          rep.worst_side = side;
        }
    }
    for (int side : other) {
      ft.eval(xi, spectral_s(nu), side, v.data());
      for (cplx x : v) rep.reference = std::max(rep.reference, std::abs(x));
    }
  }
  if (throw_on_fail && !(rep.max_residual < tol))
    throw Error(ErrorCode::AssertionFailure,
                "transform does not vanish: |f~| = " + std::to_string(rep.max_residual) + " at alpha = " +
                    std::to_string(rep.worst_alpha) + ", nu = " + std::to_string(rep.worst_nu) +
                    ", side = " + std::to_string(rep.worst_side));
  return rep;
}

VanishingReport support_vanishing(const FunctionOnX& f, double tol, bool throw_on_fail) {
  if (f.is_zero()) return {};
  auto cert = f.certified_tuboids();
  if (cert.empty()) throw Error(ErrorCode::DomainError, "support check needs a certified Hardy member");
  return support_vanishing(LorentzFHTransform(f), cert.front(), tol, throw_on_fail);
}

// ---------------------------------------------------------------------------

void cycle_nodes(const CycleSpec& c, std::vector<R3>& xi, std::vector<double>& w) {
  xi.clear();
  w.clear();
  const int n = c.n_alpha;
  for (int k = 0; k < n; ++k) {
    xi.push_back(cycle_point(c, -M_PI + 2.0 * M_PI * k / n));
    w.push_back(M_PI / n);
  }
}

namespace {

// alpha rule on gamma = g gamma0, refined near the zeros of [x.xi] for real points x
struct AlphaRule {
  std::vector<R3> xi;
  std::vector<double> w;
};

AlphaRule alpha_rule(const CycleSpec& c, int n, const std::vector<R3>& real_pts) {
  AlphaRule r;
  std::vector<double> br;
  for (const R3& x : real_pts) {
    R3 xp = c.boost ? c.boost->inverse().apply(x) : x;
    // x0' = rho cos(alpha - beta)
    double rho = std::hypot(xp[1], xp[2]), beta = std::atan2(xp[2], xp[1]);
    if (rho <= std::abs(xp[0])) continue;
    double d = std::acos(xp[0] / rho);
    for (double a : {beta + d, beta - d}) br.push_back(std::remainder(a, 2.0 * M_PI));
  }
  if (br.empty()) {
    cycle_nodes(CycleSpec{c.boost, n}, r.xi, r.w);
    return r;
  }
  std::sort(br.begin(), br.end());
  br.push_back(br.front() + 2.0 * M_PI);
  const int per = std::max(8, n / int(br.size() - 1));
  Nodes gl = gauss_panels(0.0, M_PI, std::max(1, per / 20), 20);
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    double a = br[i], b = br[i + 1];
    for (std::size_t j = 0; j < gl.x.size(); ++j) {
      double th = gl.x[j];
      double al = a + 0.5 * (b - a) * (1.0 - std::cos(th));
      double jac = 0.5 * (b - a) * std::sin(th);
      r.xi.push_back(cycle_point(c, al));
      r.w.push_back(0.5 * jac * gl.w[j]);
    }
  }
  return r;
}

cplx log_side(cplx v, int side) {
  if (v.imag() == 0.0) {
    if (v.real() > 0.0) return std::log(v.real());
    if (v.real() < 0.0) return cplx(std::log(-v.real()), side * M_PI);
    throw Error(ErrorCode::DomainError, "[x.xi] = 0 on a quadrature node");
  }
  return std::log(v);
}

void check_pair(const C3& z, const C3& zp, int side) {
  TuboidLabel want_z = side > 0 ? TuboidLabel::TMinus : TuboidLabel::TPlus;
  TuboidLabel want_zp = side > 0 ? TuboidLabel::TPlus : TuboidLabel::TMinus;
  TuboidLabel a = classify(z), b = classify(zp);
  if (a != want_z) throw Error(ErrorCode::NotInTuboid, std::string("z is in ") + label_name(a));
  if (b != want_zp && b != TuboidLabel::RealX) throw Error(ErrorCode::NotInTuboid, std::string("z' is in ") + label_name(b));
}

std::vector<R3> real_points_of(std::initializer_list<const C3*> zs) {
  std::vector<R3> r;
  for (const C3* z : zs)
    if (classify(*z) == TuboidLabel::RealX) r.push_back(re(*z));
  return r;
}

}  // namespace

LorentzElement lorentz_frame(const C3& z) {
  TuboidLabel lab = classify(z);
  if (lab != TuboidLabel::TPlus && lab != TuboidLabel::TMinus)
    throw Error(ErrorCode::NotInTuboid, std::string("Lorentz frame of a point in ") + label_name(lab));
  R3 x = re(z), y = im(z);
  auto unit = [](R3 v, double n2) {
    double n = std::sqrt(std::abs(n2));
    return R3{v[0] / n, v[1] / n, v[2] / n};
  };
  R3 e0 = unit(y, bilinear(y, y));
  if (e0[0] < 0.0) e0 = {-e0[0], -e0[1], -e0[2]};
  R3 e2;
  double xx = bilinear(x, x);
  if (-xx > 1e-14) {
    e2 = unit(x, xx);
  } else {
    R3 v{0.0, 0.0, 1.0};
    double p = bilinear(v, e0);
    v = {v[0] - p * e0[0], v[1] - p * e0[1], v[2] - p * e0[2]};
    e2 = unit(v, bilinear(v, v));
  }
  // e1 = J (e2 x e0), then fix the orientation
  R3 c{e2[1] * e0[2] - e2[2] * e0[1], e2[2] * e0[0] - e2[0] * e0[2], e2[0] * e0[1] - e2[1] * e0[0]};
  R3 e1{c[0], -c[1], -c[2]};
  e1 = unit(e1, bilinear(e1, e1));
  Mat3 g{{{e0[0], e1[0], e2[0]}, {e0[1], e1[1], e2[1]}, {e0[2], e1[2], e2[2]}}};
  double det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
               g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
  if (det < 0.0)
    for (int i = 0; i < 3; ++i) g[i][1] = -g[i][1];
  return LorentzElement(g);
}

namespace {

InverseResult inverse_at(const LorentzFHTransform& ft, const C3& z, int side, const InverseOptions& opt) {
  TuboidLabel lab = classify(z);
  if (lab != inverse_domain(side) && lab != TuboidLabel::RealX)
    throw Error(ErrorCode::NotInTuboid, std::string("inversion with side ") + (side > 0 ? "+" : "-") +
                                            " needs z in " + label_name(inverse_domain(side)) + ", got " +
                                            label_name(lab));
  std::vector<R3> brk = real_points_of({&z});
  brk.insert(brk.end(), ft.singular_points().begin(), ft.singular_points().end());
  AlphaRule rule = alpha_rule(opt.cycle, opt.cycle.n_alpha, brk);
  const std::size_t n = rule.xi.size();
  std::vector<cplx> la(n), A(n);
  for (std::size_t k = 0; k < n; ++k) {
    A[k] = bilinear(z, to_c3(rule.xi[k]));
    la[k] = log_side(A[k], -side);
  }
  // decay in nu from the extrema of Arg [z.xi] over the discretized cycle
  double amax = 0.0, amin = M_PI;
  for (std::size_t k = 0; k < n; ++k) {
    amax = std::max(amax, std::abs(la[k].imag()));
    amin = std::min(amin, std::abs(la[k].imag()));
  }
  double rate_pos = side > 0 ? M_PI - amax : amin;
  double rate_neg = side > 0 ? amin : M_PI - amax;
  if (lab == TuboidLabel::RealX) {
    rate_pos = std::max(rate_pos, 0.5);
    rate_neg = std::max(rate_neg, 0.5);
  }
  std::vector<cplx> v(n);
  long evals = 0;
  auto integrand = [&](double nu) {
    ++evals;
    double wt = mehler_weight(nu, side);
    if (wt == 0.0) return cplx(0.0);
    ft.eval(rule.xi, spectral_s(nu), side, v.data());
    cplx acc = 0.0;
    cplx e(-0.5, nu);
    for (std::size_t k = 0; k < n; ++k) acc += rule.w[k] * std::exp(e * la[k]) * v[k];
    return wt * acc;
  };
  SemiaxisOptions so;
  so.tol = opt.tol;
  so.check_decay = lab != TuboidLabel::RealX;
  InverseResult res{};
  QuadResult qp = integrate_semiaxis(integrand, rate_pos, so);
  if (!opt.symmetric_range) {
    res.value = qp.value / (2.0 * M_PI * M_PI);
    res.nu_error = qp.error_estimate / (2.0 * M_PI * M_PI);
  } else {
    QuadResult qn = integrate_semiaxis([&](double nu) { return integrand(-nu); }, rate_neg, so);
    res.value = (qp.value + qn.value) / (4.0 * M_PI * M_PI);
    res.nu_error = (qp.error_estimate + qn.error_estimate) / (4.0 * M_PI * M_PI);
  }
  res.decay_rate = rate_pos;
  res.nu_evaluations = evals;
  res.n_alpha = int(n);
  return res;
}

}  // namespace

InverseResult fh_inverse_detail(const LorentzFHTransform& ft, const C3& z, int side, const InverseOptions& opt_in) {
  InverseOptions opt = opt_in;
  TuboidLabel lab = classify(z);
  if (opt.adapt_cycle && !opt.cycle.boost && (lab == TuboidLabel::TPlus || lab == TuboidLabel::TMinus))
    opt.cycle.boost = lorentz_frame(z);
  InverseResult prev = inverse_at(ft, z, side, opt);
  long evals = prev.nu_evaluations;
  while (true) {
    if (2 * opt.cycle.n_alpha > opt.max_alpha) {
      prev.nu_evaluations = evals;
      if (prev.alpha_change > opt.alpha_tol)
        throw Error(ErrorCode::NoConvergence, "cycle rule at " + std::to_string(opt.cycle.n_alpha) +
                                                  " nodes still changes by " + std::to_string(prev.alpha_change));
      return prev;
    }
    opt.cycle.n_alpha *= 2;
    InverseResult next = inverse_at(ft, z, side, opt);
    evals += next.nu_evaluations;
    next.alpha_change = std::abs(next.value - prev.value) / std::max(std::abs(next.value), 1e-300);
    next.nu_evaluations = evals;
    if (next.alpha_change <= opt.alpha_tol) return next;
    prev = next;
  }
}



cplx fh_inverse(const LorentzFHTransform& ft, const C3& z, int side, const InverseOptions& opt) {
  return fh_inverse_detail(ft, z, side, opt).value;
}

// ---------------------------------------------------------------------------

cplx cauchy_kernel_exact(const C3& z, const C3& zp) { return 1.0 / cauchy_quadratic(zp, z); }

namespace {

struct KernelLogs {
  std::vector<cplx> la, lb, A, B;
  std::vector<double> w;
};

KernelLogs kernel_logs(const C3& z, const C3& zp, int side, const CycleSpec& c, int n) {
  AlphaRule r = alpha_rule(c, n, real_points_of({&z, &zp}));
  KernelLogs k;
  k.w = r.w;
  for (const R3& xi : r.xi) {
    cplx a = bilinear(z, to_c3(xi)), b = bilinear(zp, to_c3(xi));
    k.A.push_back(a);
    k.B.push_back(b);
    k.la.push_back(log_side(a, -side));
    k.lb.push_back(log_side(b, side));
  }
  return k;
}

template <class Eval>
cplx refine_alpha(Eval&& ev, const KernelOptions& opt) {
  int n = std::max(16, opt.cycle.n_alpha);
  cplx prev = ev(n);
  for (n *= 2; n <= opt.max_alpha; n *= 2) {
    cplx cur = ev(n);
    if (std::abs(cur - prev) <= opt.tol * std::max(1.0, std::abs(cur)) * 10.0) return cur;
    prev = cur;
  }
  throw Error(ErrorCode::NoConvergence, "cycle quadrature did not settle");
}

}  // namespace

cplx legendre_rep(double nu, const C3& z, const C3& zp, int side, const KernelOptions& opt) {
  check_pair(z, zp, side);
  return refine_alpha(
      [&](int n) {
        KernelLogs k = kernel_logs(z, zp, side, opt.cycle, n);
        cplx acc = 0.0, ea(-0.5, nu), eb(-0.5, -nu);
        for (std::size_t j = 0; j < k.w.size(); ++j) acc += k.w[j] * std::exp(ea * k.la[j] + eb * k.lb[j]);
        return std::exp(-double(side) * M_PI * nu) / M_PI * acc;
      },
      opt);
}

cplx cauchy_kernel_spectral(const C3& z, const C3& zp, int side, const KernelOptions& opt) {
  check_pair(z, zp, side);
  return refine_alpha(
      [&](int n) {
        KernelLogs k = kernel_logs(z, zp, side, opt.cycle, n);
        const std::size_t m = k.w.size();
        std::vector<cplx> amp(m), dl(m);
        double dmin = 1e300, dmax = -1e300;
        for (std::size_t j = 0; j < m; ++j) {
          amp[j] = k.w[j] * std::exp(-0.5 * (k.la[j] + k.lb[j]));
          dl[j] = k.la[j] - k.lb[j];
          dmin = std::min(dmin, dl[j].imag());
          dmax = std::max(dmax, dl[j].imag());
        }
        auto inner = [&](double nu) {
          cplx acc = 0.0;
          for (std::size_t j = 0; j < m; ++j) acc += amp[j] * std::exp(I * nu * dl[j]);
          return mehler_weight(nu, side) * acc;
        };
        // |e^{i nu dl}| = e^{-nu Im dl}
        double rate_pos = (side > 0 ? 2.0 * M_PI : 0.0) + dmin;
        double rate_neg = (side > 0 ? 0.0 : 2.0 * M_PI) - dmax;
        SemiaxisOptions so;
        so.tol = 0.1 * opt.tol;
        so.check_decay = false;
        cplx v = integrate_semiaxis(inner, std::max(rate_pos, 1e-3), so).value;
        if (!opt.symmetric_range) return -0.5 * v;
        cplx vn = integrate_semiaxis([&](double nu) { return inner(-nu); }, std::max(rate_neg, 1e-3), so).value;
        return -0.25 * (v + vn);
      },
      opt);
}

cplx cauchy_kernel_cf(const C3& z, const C3& zp, int side, const KernelOptions& opt) {
  check_pair(z, zp, side);
  return refine_alpha(
      [&](int n) {
        KernelLogs k = kernel_logs(z, zp, side, opt.cycle, n);
        cplx acc = 0.0;
        for (std::size_t j = 0; j < k.w.size(); ++j) {
          cplx w = k.la[j] - k.lb[j] + double(side) * I * M_PI;
          if (!(std::abs(w.imag()) < M_PI)) throw Error(ErrorCode::BranchViolation, "|Im w| >= pi on the cycle");
          cplx d = k.A[j] - k.B[j], sm = k.A[j] + k.B[j];
          acc += k.w[j] * (2.0 / d - w * sm / (d * d));
        }
        return -double(side) * acc / (4.0 * M_PI * I);
      },
      opt);
}

cplx j_kernel_numeric(double w) {
  auto f = [&](double nu) { return cplx(2.0 * std::cos(w * nu) * mehler_weight_sym(nu)); };
  SemiaxisOptions so;
  so.tol = 1e-13;
  so.check_decay = false;
  so.breakpoints = {1.0, 2.0, 4.0};
  return integrate_semiaxis(f, M_PI, so).value;
}

double j_kernel_closed(double w) {
  double c = std::cosh(0.5 * w);
  return (1.0 / c - 0.5 * w * std::tanh(0.5 * w) / c) / M_PI;
}

// ---------------------------------------------------------------------------

namespace {

// boundary values of the Hardy component of f in tub
FunctionOnX hardy_component(const FunctionOnX& f, TuboidLabel tub) {
  if (f.is_zero()) return f;
  auto cert = f.certified_tuboids();
  if (!cert.empty()) {
    if (std::find(cert.begin(), cert.end(), tub) != cert.end()) return f;
    return FunctionOnX::zero();
  }
  return decompose(f).component(tub);
}

}  // namespace

PlancherelResult plancherel_pairing(const FunctionOnX& f, const FunctionOnX& g, int side, double tol) {
  PlancherelResult r{};
  TuboidLabel tub = inverse_domain(side);
  FunctionOnX fc = hardy_component(f, tub), gc = hardy_component(g, tub);
  if (!fc.is_zero() && !gc.is_zero()) {
    auto h = [&](double l, double m) { return std::conj(fc.R_real(l, m)) * gc.R_real(l, m); };
    r.lhs = integrate_r2(h, tol, 2.0).value;
  }
  if (f.is_zero() || g.is_zero()) return r;
  LorentzFHTransform ft(f);
  const bool same = f.spec() == g.spec();
  LorentzFHTransform gt = same ? ft : LorentzFHTransform(g);
  std::vector<R3> xi;
  std::vector<double> w;
  cycle_nodes(CycleSpec{}, xi, w);
  std::vector<cplx> a(xi.size()), b(xi.size());
  auto integrand = [&](double nu) {
    ft.eval(xi, spectral_s(nu), side, a.data());
    if (same)
      b = a;
    else
      gt.eval(xi, spectral_s(nu), side, b.data());
    cplx acc = 0.0;
    for (std::size_t k = 0; k < xi.size(); ++k) acc += w[k] * std::conj(a[k]) * b[k];
    return mehler_weight(nu, side) * acc;
  };
  // empirical decay of the integrand
  double h1 = std::abs(integrand(2.0)), h2 = std::abs(integrand(4.0));
  double rate = (h1 > 0.0 && h2 > 0.0) ? std::log(h1 / h2) / 2.0 : 1.0;
  rate = std::clamp(0.8 * rate, 0.2, 2.0 * M_PI);
  SemiaxisOptions so;
  so.tol = tol;
  so.check_decay = false;
  so.max_length = 60.0;
  r.rhs = integrate_semiaxis(integrand, rate, so).value / (2.0 * M_PI * M_PI);
  return r;
}

}  // namespace hyperfh
