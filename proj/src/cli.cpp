#include "hyperfh/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "hyperfh/fh_chiral.hpp"
#include "hyperfh/fh_lorentz.hpp"
#include "hyperfh/hardy.hpp"
#include "hyperfh/laplace.hpp"
#include "hyperfh/quad.hpp"
#include "hyperfh/specfun.hpp"

namespace hyperfh {

namespace {

const cplx I(0.0, 1.0);
const char* schema = "hyperfh/1";

C3 z_u(double u) { return {cplx(0.0, std::sin(u)), 0.0, std::cos(u)}; }
C3 z_v(double v) { return {0.0, cplx(0.0, std::sinh(v)), std::cosh(v)}; }

double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

int sgn(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

// random point of a tuboid as g applied to a generator
C3 orbit_point(TuboidLabel t, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uu(0.2, M_PI - 0.2), uv(0.2, 1.5);
  LorentzElement g = LorentzElement::random(rng);
  switch (t) {
    case TuboidLabel::TPlus: return g.apply(z_u(uu(rng)));
    case TuboidLabel::TMinus: return g.apply(z_u(-uu(rng)));
    case TuboidLabel::TRight: return g.apply(z_v(uv(rng)));
    default: return g.apply(z_v(-uv(rng)));
  }
}

const TuboidLabel tuboids[4] = {TuboidLabel::TPlus, TuboidLabel::TMinus, TuboidLabel::TRight, TuboidLabel::TLeft};

struct Suite {
  std::string name;
  double scale;
  std::mt19937_64 rng;
  std::vector<CheckRecord> out;

  void check(const std::string& id, const std::string& ref, double tol, const std::function<double()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    CheckRecord r;
    r.id = id;
    r.reference = ref;
    r.tolerance = tol * scale;
    try {
      r.residual = body();
    } catch (const std::exception&) {
      r.residual = INFINITY;
    }
    r.pass = r.residual <= r.tolerance;
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(r);
  }
};

void suite_geometry(Suite& s) {
  s.check("chart_lm_roundtrip", "lambda-mu chart inverse", 1e-10, [&] {
    double m = 0.0;
    for (TuboidLabel t : tuboids)
      for (int k = 0; k < 25; ++k) {
        C3 z = orbit_point(t, s.rng);
        C3 w = chart_lm_inv(chart_lm(z));
        for (int i = 0; i < 3; ++i) m = std::max(m, std::abs(w[i] - z[i]) / (1.0 + std::abs(z[i])));
      }
    return m;
  });
  s.check("chart_tp_roundtrip", "theta-psi chart inverse", 1e-10, [&] {
    double m = 0.0;
    for (TuboidLabel t : tuboids)
      for (int k = 0; k < 25; ++k) {
        C3 z = orbit_point(t, s.rng);
        C3 w = chart_tp_inv(chart_tp(z));
        for (int i = 0; i < 3; ++i) m = std::max(m, std::abs(w[i] - z[i]) / (1.0 + std::abs(z[i])));
      }
    return m;
  });
  s.check("quadrant_law", "tuboid images in the chart quadrants", 0.0, [&] {
    int bad = 0;
    for (TuboidLabel t : tuboids)
      for (int k = 0; k < 50; ++k) {
        C3 z = orbit_point(t, s.rng);
        ChartLM c = chart_lm(z);
        auto [el, em] = quadrant_of(t);
        if (sgn(c.lambda.imag()) != el || sgn(c.mu.imag()) != em) ++bad;
      }
    return double(bad);
  });
  s.check("generator_orbits", "tuboids generated by the half circles and z_v", 0.0, [&] {
    int bad = 0;
    for (TuboidLabel t : tuboids)
      for (int k = 0; k < 50; ++k)
        if (classify(orbit_point(t, s.rng)) != t) ++bad;
    return double(bad);
  });
  s.check("lorentz_characterization", "Im [z.xi] has a fixed sign on the cone", 0.0, [&] {
    int bad = 0;
    for (int k = 0; k < 40; ++k) {
      C3 zp = orbit_point(TuboidLabel::TPlus, s.rng), zm = orbit_point(TuboidLabel::TMinus, s.rng);
      for (int j = 0; j < 16; ++j) {
        C3 xi = to_c3(ConePoint::on_circle(2.0 * M_PI * j / 16).r3());
        if (!(bilinear(zp, xi).imag() > 0.0) || !(bilinear(zm, xi).imag() < 0.0)) ++bad;
      }
    }
    return double(bad);
  });
  s.check("group_invariance", "labels and the quadric preserved by G", 1e-9, [&] {
    double m = 0.0;
    for (TuboidLabel t : tuboids)
      for (int k = 0; k < 20; ++k) {
        C3 z = orbit_point(t, s.rng);
        C3 w = LorentzElement::random(s.rng).apply(z);
        if (classify(w) != t) return double(INFINITY);
        m = std::max(m, std::abs(bilinear(w, w) + 1.0) / (1.0 + norm2(w)));
      }
    return m;
  });
  s.check("cauchy_quadratic", "(z - z')^2 = -2([z.z'] + 1)", 1e-12, [&] {
    double m = 0.0;
    for (int k = 0; k < 20; ++k) {
      C3 a = orbit_point(TuboidLabel::TMinus, s.rng), b = orbit_point(TuboidLabel::TPlus, s.rng);
      C3 d{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
      m = std::max(m, rel_err(bilinear(d, d), cauchy_quadratic(a, b)));
    }
    return m;
  });
}

void suite_specfun(Suite& s) {
  const double xs[3] = {-1.0, -2.0, -5.0};
  for (int k = 0; k < 3; ++k)
    s.check("mehler_x" + std::to_string(k), "Mehler identity for 1/(1-x)", 1e-6, [&, k] { return mehler_residual(xs[k]); });
  s.check("mehler_scalar", "int_0^inf nu tanh sech = 1/(2 pi)", 1e-9, [&] {
    SemiaxisOptions o;
    o.tol = 1e-13;
    o.check_decay = false;
    double v = integrate_semiaxis([](double nu) { return cplx(mehler_weight_sym(nu)); }, M_PI, o).value.real();
    return std::abs(v - 0.5 / M_PI);
  });
  s.check("legendre_q_low", "Q_0, Q_1 closed forms at Z = 3", 1e-14, [&] {
    double q0 = 0.5 * std::log(2.0);
    return std::max(std::abs(legendre_q_int(0, 3.0) - q0), std::abs(legendre_q_int(1, 3.0) - (3.0 * q0 - 1.0)));
  });
  s.check("heine_sum_z3", "sum (2l+1) Q_l(3) = 1/2", 1e-6, [&] {
    auto q = legendre_q_all(25, 3.0);
    cplx acc = 0.0;
    for (int l = 0; l <= 25; ++l) acc += (2.0 * l + 1.0) * q[l];
    return std::abs(acc - 0.5);
  });
  s.check("conical_q_jump", "Q(nu) - Q(-nu) = -i pi tanh(pi nu) P(nu)", 1e-9, [&] {
    double m = 0.0;
    for (double nu : {0.3, 0.7, 1.5})
      for (double x : {1.3, 2.0, 6.0}) {
        cplx d = conical_q(nu, x) - conical_q(-nu, x);
        m = std::max(m, std::abs(d + I * M_PI * std::tanh(M_PI * nu) * conical_p(nu, x)));
      }
    return m;
  });
  s.check("conical_p_complex_real", "complex-argument P on the real axis", 1e-12, [&] {
    double m = 0.0;
    for (double nu : {0.0, 0.8, 2.0}) m = std::max(m, std::abs(conical_p_complex(nu, std::cosh(1.0)) - conical_p(nu, std::cosh(1.0))));
    return m;
  });
}

void suite_lorentz(Suite& s) {
  const C3 zm{cplx(0.0, -1.0), 0.0, 0.0};
  for (int v = 0; v <= 2; ++v) {
    C3 zp{cplx(0.0, std::cosh(double(v))), cplx(0.0, std::sinh(double(v))), 0.0};
    double expect = -0.25 / std::pow(std::cosh(0.5 * v), 2);
    s.check("cauchy_spectral_v" + std::to_string(v), "spectral Cauchy kernel, -1/(4 cosh^2(v/2))", 1e-6,
            [=] { return rel_err(cauchy_kernel_spectral(zm, zp, +1), expect); });
  }
  s.check("cauchy_cf_random", "Cauchy-Fantappie form on T- x T+", 1e-5, [&] {
    double m = 0.0;
    for (int k = 0; k < 3; ++k) {
      C3 a = orbit_point(TuboidLabel::TMinus, s.rng), b = orbit_point(TuboidLabel::TPlus, s.rng);
      m = std::max(m, rel_err(cauchy_kernel_cf(a, b, +1), cauchy_kernel_exact(a, b)));
    }
    return m;
  });
  s.check("legendre_rep", "cycle integral equals P_{-1/2+i nu}(cosh 1)", 1e-7, [&] {
    C3 zp{cplx(0.0, std::cosh(1.0)), cplx(0.0, std::sinh(1.0)), 0.0};
    double m = 0.0;
    for (double nu : {0.0, 0.8, 2.0})
      m = std::max(m, std::abs(legendre_rep(nu, zm, zp, +1) - conical_p(nu, std::cosh(1.0))));
    return m;
  });
  const C3 w{cplx(0.0, 1.0), 0.0, 0.0};
  FunctionOnX f = FunctionOnX::cauchy_kernel(w);
  s.check("transform_closed_form", "transform of 1/(x-w)^2 is -pi^2 [w.xi]^s", 1e-8, [&] {
    ConePoint xi = ConePoint::on_circle(1.0);
    cplx expect = -M_PI * M_PI * std::pow(bilinear(w, to_c3(xi.r3())), spectral_s(0.7));
    return rel_err(fh_direct(f, xi, 0.7, +1), expect);
  });
  s.check("transform_support", "the other-side transform vanishes", 1e-8,
          [&] { return std::abs(fh_direct(f, ConePoint::on_circle(1.0), 0.7, -1)); });
  s.check("inverse_closed_form", "inversion of -pi^2 [w.xi]^s inside T-", 1e-6, [&] {
    LorentzFHTransform ft(
        [w](const std::vector<R3>& xi, cplx sv, int side, cplx* o) {
          for (std::size_t k = 0; k < xi.size(); ++k)
            o[k] = side > 0 ? -M_PI * M_PI * std::pow(bilinear(w, to_c3(xi[k])), sv) : cplx(0.0);
        },
        "cauchy");
    InverseOptions o;
    o.cycle.n_alpha = 256;
    double m = 0.0;
    for (int k = 0; k < 3; ++k) {
      C3 z = orbit_point(TuboidLabel::TMinus, s.rng);
      m = std::max(m, rel_err(fh_inverse(ft, z, +1, o), 1.0 / cauchy_quadratic(z, w)));
    }
    return m;
  });
}

void suite_chiral(Suite& s) {
  const C3 b{0.0, 0.0, 1.0};
  s.check("q_rep", "relative-cycle integral equals Q_l(-cosh 0.5)", 1e-9, [&] {
    double m = 0.0;
    for (int l = 0; l <= 3; ++l) m = std::max(m, std::abs(q_rep(l, z_v(0.5), b) - legendre_q_int(l, -std::cosh(0.5))));
    return m;
  });
  s.check("discrete_kernel", "discrete Cauchy sum equals 1/(4 sinh^2 0.5)", 1e-5, [&] {
    C3 z = z_v(0.5);
    auto r = cauchy_kernel_discrete(z, conj(z), 30);
    return rel_err(r.value, 0.25 / std::pow(std::sinh(0.5), 2));
  });
  const C3 w = z_v(0.8);
  FunctionOnX f = FunctionOnX::cauchy_kernel(w);
  s.check("chiral_closed_form", "chiral transform of 1/(x-w)^2 is pi^2 [w.xi]^{-l-1}", 1e-8, [&] {
    C3 xi = cone_circle(cplx(0.3, -0.7));
    auto v = fh_direct_chiral_all(f, xi, 5);
    double m = 0.0;
    for (int l = 0; l <= 5; ++l) m = std::max(m, rel_err(v[l], M_PI * M_PI * int_power(bilinear(w, xi), -l - 1)));
    return m;
  });
  s.check("chiral_support", "transform on the opposite chiral cone vanishes", 1e-6, [&] {
    auto v = fh_direct_chiral_all(f, cone_circle(cplx(0.3, 0.7)), 5);
    double m = 0.0;
    for (auto c : v) m = std::max(m, std::abs(c));
    return m;
  });
  s.check("cycle_endpoints", "relative cycle ends on [z.xi] = 0", 1e-9, [&] {
    double m = 0.0;
    for (TuboidLabel t : {TuboidLabel::TRight, TuboidLabel::TLeft})
      for (int k = 0; k < 10; ++k) {
        C3 z = orbit_point(t, s.rng);
        m = std::max(m, make_cycle(z).endpoint_residual() / (1.0 + std::sqrt(norm2(z))));
      }
    return m;
  });
  s.check("cone_classes", "C-> and C<- from the orientation sign", 0.0, [&] {
    int bad = 0;
    for (double e : {0.2, 0.9, 2.0}) {
      if (classify_cone(cone_circle(cplx(0.4, e))) != ConeLabel::CRight) ++bad;
      if (classify_cone(cone_circle(cplx(0.4, -e))) != ConeLabel::CLeft) ++bad;
    }
    if (classify_cone(cone_circle(0.4)) != ConeLabel::RealCone) ++bad;
    return double(bad);
  });
}

void suite_laplace(Suite& s) {
  for (auto r : {ReducedVolterraKernel::exp_cosh(2.0), ReducedVolterraKernel::cosh_exp_cosh(3.0)}) {
    std::string tag = r.spec()["name"].get<std::string>();
    s.check("g_two_route_" + tag, "G(nu) against the (t, v) chart integral", 1e-5, [&] {
      double m = 0.0;
      for (double nu : {0.0, 0.5}) m = std::max(m, rel_err(laplace_g(r, nu), retarded_parts(r, nu).F));
      return m;
    });
    s.check("h_relation_" + tag, "H = (G(nu) - G(-nu)) / (-i pi tanh pi nu)", 1e-7, [&] {
      double m = 0.0;
      for (double nu : {0.3, 0.7, 1.5}) m = std::max(m, rel_err(h_from_g(r, nu), laplace_h(r, nu)));
      return m;
    });
    s.check("commutator_" + tag, "transform of C is +-pi H [xi.b]_+-^s", 1e-5, [&] {
      double m = 0.0;
      for (ConePoint xi : {ConePoint(1.0, 0.0, 1.0), ConePoint(1.0, 0.0, -1.0)}) {
        cplx H = laplace_h(r, 0.5);
        auto c = fh_of_commutator(r, xi, 0.5);
        double beta = -xi[2];
        cplx sv = spectral_s(0.5);
        m = std::max(m, rel_err(c.first, M_PI * H * boundary_power(beta, sv, +1)));
        m = std::max(m, rel_err(c.second, -M_PI * H * boundary_power(beta, sv, -1)));
      }
      return m;
    });
  }
  auto r = ReducedVolterraKernel::exp_cosh(2.0);
  s.check("g_holomorphy", "Cauchy-Riemann residual of G at 0.5 - 0.5i", 1e-5, [&] {
    const cplx nu(0.5, -0.5);
    const double h = 1e-3;
    cplx gx = (laplace_g(r, nu + h) - laplace_g(r, nu - h)) / (2.0 * h);
    cplx gy = (laplace_g(r, nu + I * h) - laplace_g(r, nu - I * h)) / (2.0 * h);
    return std::abs(gx + I * gy) / std::abs(gx);
  });
  s.check("h_even", "H(nu) = H(-nu)", 1e-8, [&] { return rel_err(laplace_h(r, -0.7), laplace_h(r, 0.7)); });
  s.check("kl_two_forms", "G and H spectral forms of w(cosh 1)", 1e-5, [&] {
    cplx Z = std::cosh(1.0);
    cplx a = kl_reconstruct([&](double nu) { return laplace_g(r, nu); }, Z);
    cplx b = kl_reconstruct_h([&](double nu) { return laplace_h(r, nu); }, Z);
    return rel_err(a, b);
  });
}

FunctionOnX quadrant_pole(TuboidLabel t, cplx a_shift, cplx c) {
  auto [el, em] = quadrant_of(t);
  return FunctionOnX::pole_product(a_shift - I * double(el), 1, -a_shift - I * double(em), 1, c);
}

void suite_hardy(Suite& s) {
  FunctionOnX f = quadrant_pole(TuboidLabel::TMinus, 0.3, 1.0) + quadrant_pole(TuboidLabel::TRight, -0.5, cplx(0.5, 0.2));
  Decomposition d = decompose(f);
  std::uniform_real_distribution<double> ut(-M_PI, M_PI), up(-1.5, 1.5);
  std::vector<std::pair<double, double>> pts;
  for (int k = 0; k < 20; ++k) pts.emplace_back(ut(s.rng), up(s.rng));
  s.check("decomposition_sum", "the four projections add up to f", 1e-5, [&] {
    double m = 0.0;
    for (auto [th, ps] : pts) {
      cplx sum = 0.0;
      for (TuboidLabel t : tuboids) sum += d.component(t).eval_real_tp(th, ps);
      m = std::max(m, std::abs(sum - f.eval_real_tp(th, ps)));
    }
    return m;
  });
  s.check("projection_idempotent", "P P = P and P_- P_+ = 0 on a pole factor", 1e-6, [&] {
    auto base = std::make_shared<RationalFactor>(std::vector<cplx>{1.0},
                                                 std::vector<cplx>{cplx(0.3, -1.0) * cplx(-0.3, 1.0), 0.0, 1.0});
    double m = 0.0;
    for (int eps : {+1, -1}) {
      ProjectedFactor p(base, eps);
      for (cplx t : {cplx(0.4, 0.7), cplx(-1.1, 0.3)}) {
        cplx te(t.real(), eps * t.imag());
        cplx v = p.eval(te);
        m = std::max(m, std::abs(cauchy_1d(p, eps, te, 1e-10) - v) / std::abs(v));
        m = std::max(m, std::abs(cauchy_1d(p, -eps, std::conj(te), 1e-10)) / std::abs(v));
      }
    }
    return m;
  });
  s.check("single_quadrant", "a single-quadrant input has no other components", 1e-6, [&] {
    FunctionOnX g = quadrant_pole(TuboidLabel::TLeft, 0.2, 1.0);
    Decomposition dg = decompose(g);
    double m = 0.0;
    for (auto [th, ps] : pts) {
      m = std::max(m, std::abs(dg.left.eval_real_tp(th, ps) - g.eval_real_tp(th, ps)));
      for (TuboidLabel t : {TuboidLabel::TPlus, TuboidLabel::TMinus, TuboidLabel::TRight})
        m = std::max(m, std::abs(dg.component(t).eval_real_tp(th, ps)));
    }
    return m;
  });
  s.check("certified_labels", "pole locations certify the expected tuboid", 0.0, [&] {
    int bad = 0;
    for (TuboidLabel t : tuboids) {
      auto c = quadrant_pole(t, 0.1, 1.0).certified_tuboids();
      if (c.size() != 1 || c[0] != t) ++bad;
    }
    return double(bad);
  });
}

}  // namespace

bool VerifyReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

json VerifyReport::to_json() const {
  json cs = json::array();
  for (const auto& c : checks) {
    cs.push_back({{"id", c.id},
                  {"reference", c.reference},
                  {"status", c.pass ? "pass" : "fail"},
                  {"residual", std::isfinite(c.residual) ? json(c.residual) : json("inf")},
                  {"tolerance", c.tolerance},
                  {"runtime_ms", std::round(c.runtime_ms * 1000.0) / 1000.0}});
  }
  return {{"schema", schema}, {"suite", suite}, {"passed", all_pass()}, {"checks", cs}};
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s{"all", "geometry", "specfun", "lorentz", "chiral", "laplace", "hardy"};
  return s;
}

VerifyReport run_verify(const std::string& suite, double tol_scale, unsigned long long seed) {
  const auto& names = verify_suites();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw Error(ErrorCode::ParseError, "unknown suite '" + suite + "'");
  Suite s{suite, tol_scale, std::mt19937_64(seed), {}};
  auto want = [&](const char* n) { return suite == "all" || suite == n; };
  if (want("geometry")) suite_geometry(s);
  if (want("specfun")) suite_specfun(s);
  if (want("lorentz")) suite_lorentz(s);
  if (want("chiral")) suite_chiral(s);
  if (want("laplace")) suite_laplace(s);
  if (want("hardy")) suite_hardy(s);
  return {suite, std::move(s.out)};
}

std::string classify_line(const C3& z) {
  Classification c = classify_detail(z);
  std::ostringstream o;
  o << label_name(c.label);
  if (c.label == TuboidLabel::OffQuadric || c.label == TuboidLabel::RealX) return o.str();
  o << " y2=" << fmt17(c.y2);
  if (c.label == TuboidLabel::TRight || c.label == TuboidLabel::TLeft) o << " eps=" << c.eps;
  o << " y0=" << fmt17(c.y0);
  return o.str();
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> grid(const json& cfg, const char* key, bool required) {
  if (!cfg.contains(key)) {
    if (required) throw Error(ErrorCode::ParseError, std::string("config needs ") + key);
    return {};
  }
  const json& g = cfg[key];
  if (!g.is_array() || g.empty()) throw Error(ErrorCode::ParseError, std::string(key) + " must be a nonempty array");
  std::vector<double> v;
  for (const auto& x : g) {
    if (!x.is_number()) throw Error(ErrorCode::ParseError, std::string(key) + " entries must be numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

struct GridPointError : Error {
  GridPointError(const Error& e, const std::string& where) : Error(e.code(), std::string(e.what()) + " at " + where) {}
};

}  // namespace

void run_transform(const json& cfg, std::ostream& out) {
  if (!cfg.is_object()) throw Error(ErrorCode::ParseError, "config must be an object");
  if (cfg.contains("schema") && cfg["schema"] != schema)
    throw Error(ErrorCode::ParseError, "unsupported schema " + cfg["schema"].dump());
  if (!cfg.contains("function")) throw Error(ErrorCode::ParseError, "config needs function");
  double tol = cfg.value("tol", 1e-9);
  if (!(tol > 0.0 && tol < 1.0)) throw Error(ErrorCode::ParseError, "tol must lie in (0, 1)");
  FunctionOnX f = FunctionOnX::from_json(cfg["function"]);
  std::string mode = cfg.value("mode", "lorentz");

  if (mode == "lorentz") {
    std::vector<R3> xis;
    if (cfg.contains("xi")) {
      if (!cfg["xi"].is_array() || cfg["xi"].empty()) throw Error(ErrorCode::ParseError, "xi must be a nonempty array");
      for (const auto& p : cfg["xi"]) {
        if (!p.is_array() || p.size() != 3) throw Error(ErrorCode::ParseError, "xi entries are [xi0, xi1, xi2]");
        xis.push_back(ConePoint(p[0].get<double>(), p[1].get<double>(), p[2].get<double>()).r3());
      }
    } else {
      for (double a : grid(cfg, "alpha_grid", true)) xis.push_back(ConePoint::on_circle(a).r3());
    }
    std::vector<double> nus = grid(cfg, "nu_grid", true);
    std::vector<int> sides{+1, -1};
    if (cfg.contains("side")) sides = {cfg["side"].get<int>() > 0 ? +1 : -1};
    LorentzFHTransform ft(f);
    out << "xi0,xi1,xi2,nu,side,re,im\n";
    for (const R3& xi : xis)
      for (double nu : nus)
        for (int side : sides) {
          cplx v;
          try {
            v = ft(xi, nu, side);
          } catch (const Error& e) {
            throw GridPointError(e, "xi=(" + fmt17(xi[0]) + "," + fmt17(xi[1]) + "," + fmt17(xi[2]) + ") nu=" +
                                        fmt17(nu) + " side=" + std::to_string(side));
          }
          out << fmt17(xi[0]) << ',' << fmt17(xi[1]) << ',' << fmt17(xi[2]) << ',' << fmt17(nu) << ','
              << (side > 0 ? "+" : "-") << ',' << fmt17(v.real()) << ',' << fmt17(v.imag()) << '\n';
        }
    return;
  }
  if (mode != "chiral") throw Error(ErrorCode::ParseError, "mode must be lorentz or chiral");
  int L = cfg.value("ell_max", 6);
  if (L < 0 || L > 200) throw Error(ErrorCode::ParseError, "ell_max must lie in [0, 200]");
  std::vector<double> phis = grid(cfg, "phi_grid", true), etas = grid(cfg, "eta_grid", true);
  for (double e : etas)
    if (!(e > 0.0)) throw Error(ErrorCode::ParseError, "eta_grid entries must be positive");
  std::string which = cfg.value("chirality", "both");
  std::vector<std::pair<std::string, double>> chir;
  if (which == "both" || which == "right") chir.emplace_back("right", +1.0);
  if (which == "both" || which == "left") chir.emplace_back("left", -1.0);
  if (chir.empty()) throw Error(ErrorCode::ParseError, "chirality must be right, left or both");
  ChiralOptions opt;
  opt.tol = std::max(tol, 1e-12);
  out << "chirality,phi,eta,ell,re,im\n";
  for (auto& [name, sg] : chir)
    for (double phi : phis)
      for (double eta : etas) {
        std::vector<cplx> v;
        try {
          v = fh_direct_chiral_all(f, cone_circle(cplx(phi, sg * eta)), L, opt);
        } catch (const Error& e) {
          throw GridPointError(e, name + " phi=" + fmt17(phi) + " eta=" + fmt17(sg * eta));
        }
        for (int l = 0; l <= L; ++l)
          out << name << ',' << fmt17(phi) << ',' << fmt17(sg * eta) << ',' << l << ',' << fmt17(v[l].real()) << ','
              << fmt17(v[l].imag()) << '\n';
      }
}

// ---------------------------------------------------------------------------

namespace {

C3 parse_point(const std::string& s) {
  json j;
  try {
    j = json::parse(s);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("point is not JSON: ") + e.what());
  }
  if (j.is_array() && j.size() == 3 && j[0].is_number()) return to_c3({j[0].get<double>(), j[1].get<double>(), j[2].get<double>()});
  return point_from_json(j);
}

std::pair<C3, C3> parse_pair(const std::string& s) {
  json j;
  try {
    j = json::parse(s);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("point pair is not JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("z") && j.contains("zp")) return {point_from_json(j["z"]), point_from_json(j["zp"])};
  if (j.is_array() && j.size() == 2) return {point_from_json(j[0]), point_from_json(j[1])};
  throw Error(ErrorCode::ParseError, "kernel needs {\"z\": [...], \"zp\": [...]} or [[...], [...]]");
}

json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open config " + path);
  try {
    return json::parse(in);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("config is not JSON: ") + e.what());
  }
}

int exit_for(const Error& e) { return e.code() == ErrorCode::ParseError ? ExitParse : ExitNumeric; }

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fourier-Helgason analysis on the one-sheeted hyperboloid"};
  app.require_subcommand(1);
  std::string point, method = "closed", config, out_path, suite = "all";
  double tol = 1.0;
  unsigned long long seed = 20240607;

  auto* c_classify = app.add_subcommand("classify", "label a point of the complex quadric");
  c_classify->add_option("--point", point, "[re0, im0, re1, im1, re2, im2] or a real [x0, x1, x2]")->required();

  auto* c_transform = app.add_subcommand("transform", "tabulate transforms over a grid");
  c_transform->add_option("--config", config, "JSON run configuration")->required();
  c_transform->add_option("--out", out_path, "CSV output path (stdout when absent)");
  c_transform->add_option("--seed", seed, "recorded for reproducibility");

  auto* c_verify = app.add_subcommand("verify", "run a self-verification suite");
  c_verify->add_option("--suite", suite, "all, geometry, specfun, lorentz, chiral, laplace or hardy");
  c_verify->add_option("--tol", tol, "multiplier applied to every tolerance");
  c_verify->add_option("--seed", seed, "seed for randomized checks");
  c_verify->add_option("--out", out_path, "JSON report path (stdout when absent)");

  auto* c_kernel = app.add_subcommand("kernel", "evaluate the Cauchy kernel at a pair of points");
  c_kernel->add_option("--point", point, "{\"z\": [...], \"zp\": [...]}")->required();
  c_kernel->add_option("--method", method, "closed, spectral, cf or discrete");
  c_kernel->add_option("--config", config, "optional JSON with tol, ell_max");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success&) {
    out << app.help();
    return ExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return ExitParse;
  }

  auto emit = [&](const std::string& text) {
    if (out_path.empty()) {
      out << text;
      return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error(ErrorCode::ParseError, "cannot write " + out_path);
    f << text;
  };

  try {
    if (*c_classify) {
      out << classify_line(parse_point(point)) << '\n';
      return ExitOk;
    }
    if (*c_transform) {
      json cfg = read_config(config);
      std::ostringstream csv;
      run_transform(cfg, csv);
      emit(csv.str());
      return ExitOk;
    }
    if (*c_verify) {
      if (!(tol > 0.0)) throw Error(ErrorCode::ParseError, "--tol must be positive");
      VerifyReport r = run_verify(suite, tol, seed);
      emit(r.to_json().dump(2) + "\n");
      for (const auto& c : r.checks)
        if (!c.pass) err << "FAIL " << c.id << " residual " << c.residual << " tolerance " << c.tolerance << '\n';
      return r.all_pass() ? ExitOk : ExitVerifyFailed;
    }
    if (*c_kernel) {
      auto [z, zp] = parse_pair(point);
      json cfg = config.empty() ? json::object() : read_config(config);
      cplx exact = cauchy_kernel_exact(z, zp);
      cplx v;
      if (method == "closed") {
        v = exact;
      } else if (method == "spectral" || method == "cf") {
        KernelOptions o;
        o.tol = cfg.value("tol", o.tol);
        int side = classify(z) == TuboidLabel::TPlus ? -1 : +1;
        v = method == "spectral" ? cauchy_kernel_spectral(z, zp, side, o) : cauchy_kernel_cf(z, zp, side, o);
      } else if (method == "discrete") {
        v = cauchy_kernel_discrete(z, zp, cfg.value("ell_max", 60)).value;
      } else {
        throw Error(ErrorCode::ParseError, "unknown method '" + method + "'");
      }
      out << "value " << fmt17(v.real()) << ' ' << fmt17(v.imag()) << '\n';
      if (method != "closed") out << "deviation " << fmt17(std::abs(v - exact)) << '\n';
      return ExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return ExitParse;
  }
  return ExitParse;
}

}  // namespace hyperfh
