#include "hyperfh/laplace.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "hyperfh/quad.hpp"
#include "hyperfh/specfun.hpp"

namespace hyperfh {

namespace {

const cplx I(0.0, 1.0);

double positive_rate(const json& params) {
  double a = params.value("rate", 0.0);
  if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::DomainError, "kernel rate must be positive");
  return a;
}

}  // namespace

ReducedVolterraKernel ReducedVolterraKernel::zero() {
  ReducedVolterraKernel k;
  k.r_ = [](double) { return 0.0; };
  k.zero_ = true;
  k.spec_ = {{"kind", "builtin"}, {"name", "zero"}, {"params", json::object()}};
  return k;
}

ReducedVolterraKernel ReducedVolterraKernel::exp_cosh(double rate) {
  positive_rate({{"rate", rate}});
  ReducedVolterraKernel k;
  k.r_ = [rate](double x) { return std::exp(-rate * x); };
  k.u_cut_ = 1.0 + 70.0 / rate;
  k.spec_ = {{"kind", "builtin"}, {"name", "exp_cosh"}, {"params", {{"rate", rate}}}};
  return k;
}

ReducedVolterraKernel ReducedVolterraKernel::cosh_exp_cosh(double rate) {
  positive_rate({{"rate", rate}});
  ReducedVolterraKernel k;
  k.r_ = [rate](double x) { return x * std::exp(-rate * x); };
  k.u_cut_ = 1.0 + (70.0 + std::log1p(80.0 / rate)) / rate;
  k.spec_ = {{"kind", "builtin"}, {"name", "cosh_exp_cosh"}, {"params", {{"rate", rate}}}};
  return k;
}

ReducedVolterraKernel ReducedVolterraKernel::custom(Eval r, double u_cut, std::string label) {
  if (!(u_cut > 1.0)) throw Error(ErrorCode::DomainError, "u_cut must exceed 1");
  ReducedVolterraKernel k;
  k.r_ = std::move(r);
  k.u_cut_ = u_cut;
  k.spec_ = {{"kind", "custom"}, {"name", std::move(label)}, {"params", {{"u_cut", u_cut}}}};
  return k;
}

ReducedVolterraKernel ReducedVolterraKernel::from_json(const json& j) {
  if (!j.is_object() || j.value("kind", "") != "builtin")
    throw Error(ErrorCode::ParseError, "kernel spec needs kind = builtin");
  std::string name = j.value("name", "");
  json params = j.value("params", json::object());
  if (name == "zero") return zero();
  if (name == "exp_cosh") return exp_cosh(positive_rate(params));
  if (name == "cosh_exp_cosh") return cosh_exp_cosh(positive_rate(params));
  throw Error(ErrorCode::ParseError, "unknown kernel name '" + name + "'");
}

double ReducedVolterraKernel::v_cut() const { return std::acosh(u_cut_); }

double ReducedVolterraKernel::witness_rate() const {
  if (zero_) return INFINITY;
  const int n = 32;
  const double vc = v_cut(), dv = vc / n;
  std::vector<double> lg;
  for (int k = 0; k <= n; ++k) {
    double v = k * dv;
    double g = std::exp(0.5 * v) * std::abs(r_(std::cosh(v)));
    if (!std::isfinite(g)) throw Error(ErrorCode::DecayViolated, "kernel not finite at v = " + std::to_string(v));
    lg.push_back(g > 1e-300 ? std::log(g) : -INFINITY);
  }
  double rate = INFINITY;
  for (int k = n - 8; k < n; ++k) {
    if (!std::isfinite(lg[k + 1])) continue;
    rate = std::min(rate, -(lg[k + 1] - lg[k]) / dv);
  }
  return rate;
}

void ReducedVolterraKernel::check_decay() const {
  double c = witness_rate();
  if (!(c > 0.0))
    throw Error(ErrorCode::DecayViolated, "e^{v/2} r(cosh v) does not decay, rate " + std::to_string(c));
}

// ---------------------------------------------------------------------------

namespace {

QuadOptions quad_opts(double tol) {
  QuadOptions o;
  o.rel_tol = tol;
  o.abs_tol = 1e-3 * tol;
  return o;
}

// int_0^vcut K(cosh v) r(cosh v) sinh v dv, split to let the log endpoint refine
template <class K>
cplx legendre_moment(const ReducedVolterraKernel& r, K&& kern, double tol) {
  auto f = [&](double v) {
    double x = std::cosh(v);
    return kern(v, x) * r(x) * std::sinh(v);
  };
  const double vc = r.v_cut();
  QuadOptions o = quad_opts(tol);
  cplx s = 0.0;
  double a = 0.0;
  for (double b : {0.05, 1.0, vc}) {
    if (b <= a) continue;
    b = std::min(b, vc);
    s += integrate_1d(f, a, b, o).value;
    a = b;
  }
  return s;
}

}  // namespace

cplx laplace_g(const ReducedVolterraKernel& r, cplx nu, double tol) {
  if (r.is_zero()) return 0.0;
  if (nu.imag() > 1e-14) throw Error(ErrorCode::DomainError, "G is defined for Im nu <= 0");
  r.check_decay();
  return legendre_moment(
      r, [&](double v, double x) { return v == 0.0 ? cplx(0.0) : conical_q(nu, x); }, tol);
}

cplx laplace_h(const ReducedVolterraKernel& r, double nu, double tol) {
  if (r.is_zero()) return 0.0;
  r.check_decay();
  return legendre_moment(r, [&](double, double x) { return cplx(conical_p(nu, x)); }, tol);
}

cplx h_from_g(const ReducedVolterraKernel& r, double nu, double tol) {
  if (std::abs(nu) < 1e-8) throw Error(ErrorCode::DomainError, "tanh(pi nu) vanishes at nu = 0");
  return (laplace_g(r, nu, tol) - laplace_g(r, -nu, tol)) / (-I * M_PI * std::tanh(M_PI * nu));
}

// ---------------------------------------------------------------------------

namespace {

// A(t) = int_1^{cosh t} r(u) du / sqrt(2 (cosh t - u)), B(t) = int_1^inf r(u) du / sqrt(2 (u + cosh t))
struct AbelProfiles {
  std::vector<double> t, w, A, B;
};

AbelProfiles abel_profiles(const ReducedVolterraKernel& r, double decay, double tol) {
  AbelProfiles p;
  double T = 2.0 * std::log(1.0 / tol) / std::min(1.0, 2.0 * decay) + 24.0;
  int panels = int(std::ceil(T / 0.5));
  Nodes nd = gauss_panels(0.0, panels * 0.5, panels, 20);
  QuadOptions o = quad_opts(1e-3 * tol);
  const double uc = r.u_cut();
  for (std::size_t k = 0; k < nd.x.size(); ++k) {
    double t = nd.x[k];
    double ch = std::cosh(t);
    double a;
    if (ch <= uc) {
      // u = cosh t - s^2 removes the endpoint root
      double smax = std::sqrt(2.0) * std::sinh(0.5 * t);
      a = std::sqrt(2.0) * integrate_1d([&](double s) { return cplx(r(ch - s * s)); }, 0.0, smax, o).value.real();
    } else {
      a = integrate_1d([&](double u) { return cplx(r(u) / std::sqrt(2.0 * (ch - u))); }, 1.0, uc, o).value.real();
    }
    double b = integrate_1d([&](double u) { return cplx(r(u) / std::sqrt(2.0 * (u + ch))); }, 1.0, uc, o).value.real();
    p.t.push_back(t);
    p.w.push_back(nd.w[k]);
    p.A.push_back(a);
    p.B.push_back(b);
  }
  return p;
}

}  // namespace

RetardedParts retarded_parts(const ReducedVolterraKernel& r, cplx nu, double tol) {
  RetardedParts out{0.0, 0.0, 0.0};
  if (r.is_zero()) return out;
  if (nu.imag() > 1e-14) throw Error(ErrorCode::DomainError, "retarded transform needs Im nu <= 0");
  r.check_decay();
  bool real_nu = std::abs(nu.imag()) <= 1e-14;
  AbelProfiles p = abel_profiles(r, 0.5 - nu.imag(), tol);
  for (std::size_t k = 0; k < p.t.size(); ++k) {
    double t = p.t[k];
    out.F += p.w[k] * std::exp(-I * nu * t) * p.A[k];
    if (real_nu) {
      out.region_I += 2.0 * p.w[k] * std::cos(nu.real() * t) * p.B[k];
      out.region_II += p.w[k] * std::exp(I * nu.real() * t) * p.A[k];
    }
  }
  if (!real_nu) out.region_I = out.region_II = cplx(NAN, NAN);
  return out;
}

namespace {

double orbit_coordinate(const ConePoint& xi) {
  double beta = -xi[2];
  if (std::abs(beta) < 1e-9 * xi[0])
    throw Error(ErrorCode::OrbitBoundary, "[xi.b] = 0 separates the two orbit classes");
  return beta;
}

}  // namespace

cplx fh_of_retarded(const ReducedVolterraKernel& r, const ConePoint& xi, double nu, int side, double tol) {
  double beta = orbit_coordinate(xi);
  if (r.is_zero()) return 0.0;
  RetardedParts p = retarded_parts(r, nu, tol);
  cplx s = spectral_s(nu);
  cplx scale = std::pow(std::abs(beta), s);
  if (beta > 0.0) return scale * p.F;
  return scale * (p.region_I - double(side) * I * std::exp(side * M_PI * nu) * p.region_II);
}

cplx fh_of_advanced(const ReducedVolterraKernel& r, const ConePoint& xi, double nu, int side, double tol) {
  // A = R o (x0 -> -x0) and (-t)_side^s = e^{side i pi s} t_{-side}^s
  ConePoint refl(xi[0], -xi[1], -xi[2]);
  cplx s = spectral_s(nu);
  return std::exp(double(side) * I * M_PI * s) * fh_of_retarded(r, refl, nu, -side, tol);
}

std::pair<cplx, cplx> fh_of_commutator(const ReducedVolterraKernel& r, const ConePoint& xi, double nu, double tol) {
  orbit_coordinate(xi);
  if (r.is_zero()) return {0.0, 0.0};
  cplx p = -I * (fh_of_retarded(r, xi, nu, +1, tol) - fh_of_advanced(r, xi, nu, +1, tol));
  cplx m = -I * (fh_of_retarded(r, xi, nu, -1, tol) - fh_of_advanced(r, xi, nu, -1, tol));
  return {p, m};
}

cplx fh_invariant_direct(const ReducedVolterraKernel& r, const ConePoint& xi, double nu, int side, double tol) {
  double beta = orbit_coordinate(xi);
  if (r.is_zero()) return 0.0;
  r.check_decay();
  const double chi0 = std::atanh(xi[1] / xi[0]);
  const cplx s = spectral_s(nu);
  QuadOptions o = quad_opts(1e-2 * tol);
  SemiaxisOptions so;
  so.tol = 1e-2 * tol;
  auto inner = [&](double v) -> cplx {
    double sh = std::sinh(v), ch = std::cosh(v);
    double rv = r(ch);
    if (rv == 0.0 || sh == 0.0) return 0.0;
    auto g = [&](double chi) {
      double xx = xi[0] * sh * std::cosh(chi) - xi[1] * sh * std::sinh(chi) - xi[2] * ch;
      return boundary_power(xx, s, side);
    };
    cplx acc = 0.0;
    if (beta > 0.0) {
      // e^{-|chi - chi0|/2} decay sets in once sinh v cosh(chi - chi0) dominates cosh v
      double L = std::max(1.0, std::log(2.0 * ch / sh) + 1.0);
      acc += integrate_1d(g, chi0 - L, chi0 + L, o).value;
      so.start = chi0 + L;
      acc += integrate_semiaxis(g, 0.5, so).value;
      so.start = -(chi0 - L);
      acc += integrate_semiaxis([&](double u) { return g(-u); }, 0.5, so).value;
    } else {
      // [x.xi] = rho (sinh v cosh(chi - chi0) - cosh v) changes sign at chi0 +- c
      double c = std::acosh(ch / sh);
      // factored form keeps the sign change exact: sinh v (cosh d - cosh c)
      auto gf = [&](double chi) {
        double d = chi - chi0;
        double xx = 2.0 * xi[2] * sh * std::sinh(0.5 * (d + c)) * std::sinh(0.5 * (d - c));
        if (xx == 0.0) return cplx(0.0);  // node rounded onto the root
        return boundary_power(xx, s, side);
      };
      acc += integrate_1d_sqrt(gf, chi0 - c, chi0 + c, Endpoint::Both, o).value;
      acc += integrate_1d_sqrt(gf, chi0 + c, chi0 + c + 1.0, Endpoint::Left, o).value;
      acc += integrate_1d_sqrt(gf, chi0 - c - 1.0, chi0 - c, Endpoint::Right, o).value;
      so.start = chi0 + c + 1.0;
      acc += integrate_semiaxis(g, 0.5, so).value;
      so.start = -(chi0 - c - 1.0);
      acc += integrate_semiaxis([&](double u) { return g(-u); }, 0.5, so).value;
    }
    return 0.5 * sh * rv * acc;
  };
  QuadOptions ov = quad_opts(tol);
  const double vc = r.v_cut();
  cplx total = 0.0;
  double a = 0.0;
  for (double b : {0.05, 1.0, vc}) {
    b = std::min(b, vc);
    if (b <= a) continue;
    total += integrate_1d(inner, a, b, ov).value;
    a = b;
  }
  return total;
}

// ---------------------------------------------------------------------------

namespace {

cplx perikernel_value(cplx H, Perikernel which, double beta, double nu, int side) {
  int own = which == Perikernel::Wminus ? +1 : -1;
  if (side != own) return 0.0;
  return M_PI * H * boundary_power(beta, spectral_s(nu), side);
}

}  // namespace

cplx perikernel_fh(const ReducedVolterraKernel& r, Perikernel which, const ConePoint& xi, double nu, int side,
                   double tol) {
  double beta = orbit_coordinate(xi);
  int own = which == Perikernel::Wminus ? +1 : -1;
  if (side != own || r.is_zero()) return 0.0;
  return perikernel_value(laplace_h(r, nu, tol), which, beta, nu, side);
}

LorentzFHTransform perikernel_transform(const ReducedVolterraKernel& r, Perikernel which, double tol) {
  struct Memo {
    std::mutex m;
    std::map<double, cplx> h;
  };
  auto memo = std::make_shared<Memo>();
  auto ker = std::make_shared<ReducedVolterraKernel>(r);
  auto ev = [memo, ker, which, tol](const std::vector<R3>& xi, cplx s, int side, cplx* out) {
    cplx nuc = I * (s + 0.5);
    if (std::abs(nuc.imag()) > 1e-12)
      throw Error(ErrorCode::DomainError, "closed-form perikernel transform needs real nu");
    double nu = nuc.real();
    int own = which == Perikernel::Wminus ? +1 : -1;
    cplx H = 0.0;
    if (side == own) {
      double key = std::abs(nu);  // H is even
      std::unique_lock<std::mutex> lk(memo->m);
      auto it = memo->h.find(key);
      if (it != memo->h.end()) {
        H = it->second;
      } else {
        lk.unlock();
        H = laplace_h(*ker, key, tol);
        lk.lock();
        memo->h.emplace(key, H);
      }
    }
    for (std::size_t k = 0; k < xi.size(); ++k) {
      double beta = -xi[k][2];
      out[k] = (side == own && beta != 0.0) ? perikernel_value(H, which, beta, nu, side) : cplx(0.0);
    }
  };
  LorentzFHTransform ft(ev, std::string(which == Perikernel::Wminus ? "W-" : "W+") + " of " + r.spec().dump());
  ft.set_singular_points({base_point});
  return ft;
}

// ---------------------------------------------------------------------------

namespace {

double legendre_growth(cplx Z) {
  if (!(Z.real() > 0.0)) throw Error(ErrorCode::DomainError, "reconstruction needs Re Z > 0");
  return std::abs(std::acosh(Z).imag());
}

}  // namespace

cplx kl_reconstruct(const SpectralFn& G, cplx Z, double tol) {
  double rate = M_PI - legendre_growth(Z);
  auto f = [&](double nu) {
    if (nu == 0.0) return cplx(0.0);
    return nu * conical_p_complex(cplx(-nu), Z) * G(nu) / std::cosh(M_PI * nu);
  };
  SemiaxisOptions so;
  so.tol = tol;
  cplx pos = integrate_semiaxis(f, rate, so).value;
  cplx neg = integrate_semiaxis([&](double nu) { return f(-nu); }, rate, so).value;
  return I / (2.0 * M_PI) * (pos + neg);
}

cplx kl_reconstruct_h(const SpectralFn& H, cplx Z, double tol) {
  double rate = M_PI - legendre_growth(Z);
  auto f = [&](double nu) {
    if (nu == 0.0) return cplx(0.0);
    return mehler_weight_sym(nu) * conical_p_complex(cplx(-nu), Z) * H(nu);
  };
  SemiaxisOptions so;
  so.tol = tol;
  return 0.5 * integrate_semiaxis(f, rate, so).value;
}

}  // namespace hyperfh
