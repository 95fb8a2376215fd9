#include "hyperfh/hardy.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "hyperfh/quad.hpp"

namespace hyperfh {

namespace {

std::vector<cplx> trim(std::vector<cplx> c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  if (c.empty()) c.push_back(0.0);
  return c;
}

cplx horner(const std::vector<cplx>& c, cplx t) {
  cplx r = 0.0;
  for (size_t k = c.size(); k-- > 0;) r = r * t + c[k];
  return r;
}

bool all_zero(const std::vector<cplx>& c) {
  for (auto v : c)
    if (v != 0.0) return false;
  return true;
}

std::vector<cplx> poly_pow_linear(cplx root, int p) {
  // (t - root)^p, ascending
  std::vector<cplx> c{1.0};
  for (int k = 0; k < p; ++k) {
    std::vector<cplx> n(c.size() + 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i) {
      n[i + 1] += c[i];
      n[i] -= root * c[i];
    }
    c = n;
  }
  return c;
}

const char* side_name(int e) { return e > 0 ? "+" : "-"; }

}  // namespace

std::vector<cplx> polynomial_roots(const std::vector<cplx>& ascending) {
  std::vector<cplx> c = trim(ascending);
  int n = int(c.size()) - 1;
  if (n <= 0) return {};
  if (n == 1) return {-c[0] / c[1]};
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) M(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) M(i, n - 1) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
  std::vector<cplx> r(n);
  for (int i = 0; i < n; ++i) r[i] = es.eigenvalues()(i);
  return r;
}

RationalFactor::RationalFactor(std::vector<cplx> num, std::vector<cplx> den)
    : num_(trim(std::move(num))), den_(trim(std::move(den))) {
  if (all_zero(den_)) throw Error(ErrorCode::DomainError, "zero denominator");
  poles_ = polynomial_roots(den_);
}

cplx RationalFactor::eval(cplx t) const { return horner(num_, t) / horner(den_, t); }

bool RationalFactor::decays() const { return all_zero(num_) || num_.size() < den_.size(); }

int RationalFactor::holomorphic_side() const {
  if (all_zero(num_)) return 2;
  if (poles_.empty()) return 2;
  bool up = true, down = true;
  for (auto p : poles_) {
    double s = p.imag() / (1.0 + std::abs(p));
    if (!(s < -1e-12)) up = false;
    if (!(s > 1e-12)) down = false;
  }
  return up ? 1 : (down ? -1 : 0);
}

FactorPtr RationalFactor::conj_reflect() const {
  std::vector<cplx> n(num_), d(den_);
  for (auto& v : n) v = std::conj(v);
  for (auto& v : d) v = std::conj(v);
  return std::make_shared<RationalFactor>(n, d);
}

cplx cauchy_1d(const Factor1D& h, int eps, cplx t, double tol) {
  if (!(eps * t.imag() > 0.0)) throw Error(ErrorCode::PointOnBoundary, "Cauchy projection needs eps Im t > 0");
  // t' = tan(th): sec^2 / (tan - t) = 1 / (cos (sin - t cos))
  auto g = [&](double th) {
    double s = std::sin(th), c = std::cos(th);
    return h.boundary(s / c) / (c * (s - t * c));
  };
  QuadOptions o;
  o.abs_tol = 0.1 * tol;
  o.rel_tol = tol;
  double th0 = std::atan(t.real());
  cplx v = adapt(g, -0.5 * M_PI, th0, o).value + adapt(g, th0, 0.5 * M_PI, o).value;
  return double(eps) * v / cplx(0.0, 2.0 * M_PI);
}

cplx ProjectedFactor::eval(cplx t) const {
  if (t.imag() == 0.0) return boundary(t.real());
  if (!(eps_ * t.imag() > 0.0))
    throw Error(ErrorCode::PointOnBoundary, std::string("projected factor lives in eps = ") + side_name(eps_));
  return cauchy_1d(*base_, eps_, t);
}

cplx ProjectedFactor::boundary(double t) const {
  cplx f[4];
  for (int k = 0; k < 4; ++k) f[k] = cauchy_1d(*base_, eps_, cplx(t, eps_ * richardson_eps[0] / double(1 << k)));
  return richardson4(f[0], f[1], f[2], f[3]);
}

FactorPtr ProjectedFactor::conj_reflect() const {
  return std::make_shared<ProjectedFactor>(base_->conj_reflect(), -eps_);
}

FactorPtr ScaledFactor::conj_reflect() const {
  return std::make_shared<ScaledFactor>(base_->conj_reflect(), std::conj(c_));
}

FunctionOnX FunctionOnX::zero() {
  return from_terms({}, Kind::Builtin, json{{"kind", "builtin"}, {"name", "zero"}});
}

FunctionOnX FunctionOnX::cauchy_kernel(const C3& w) {
  ChartLM c = chart_lm(w);
  if (std::abs(c.lambda.imag()) == 0.0 || std::abs(c.mu.imag()) == 0.0)
    throw Error(ErrorCode::DomainError, "cauchy_kernel needs w off the real chart axes");
  // R = -(lw - mw) / (4 (l - lw)(m - mw))
  auto a = std::make_shared<RationalFactor>(std::vector<cplx>{1.0}, std::vector<cplx>{-c.lambda, 1.0});
  auto b = std::make_shared<RationalFactor>(std::vector<cplx>{-(c.lambda - c.mu) / 4.0},
                                            std::vector<cplx>{-c.mu, 1.0});
  json spec{{"kind", "builtin"}, {"name", "cauchy_kernel"}, {"params", {{"w", point_to_json(w)}}}};
  return from_terms({{a, b}}, Kind::Builtin, spec);
}

FunctionOnX FunctionOnX::pole_product(cplx a, int p, cplx b, int q, cplx c) {
  if (p < 1 || q < 1) throw Error(ErrorCode::DomainError, "pole orders must be >= 1");
  auto fa = std::make_shared<RationalFactor>(std::vector<cplx>{c}, poly_pow_linear(a, p));
  auto fb = std::make_shared<RationalFactor>(std::vector<cplx>{1.0}, poly_pow_linear(b, q));
  json spec{{"kind", "builtin"},
            {"name", "pole_product"},
            {"params",
             {{"a", complex_to_json(a)}, {"p", p}, {"b", complex_to_json(b)}, {"q", q}, {"c", complex_to_json(c)}}}};
  return from_terms({{fa, fb}}, Kind::Builtin, spec);
}

FunctionOnX FunctionOnX::rational_lm(std::vector<std::vector<cplx>> num, std::vector<std::vector<cplx>> den) {
  json spec{{"kind", "rational_lm"}};
  auto dump = [](const std::vector<std::vector<cplx>>& m) {
    json a = json::array();
    for (auto& row : m) {
      json r = json::array();
      for (auto v : row) r.push_back(complex_to_json(v));
      a.push_back(r);
    }
    return a;
  };
  spec["num"] = dump(num);
  spec["den"] = dump(den);
  size_t nr = 0, nc = 0;
  for (auto& r : den) nc = std::max(nc, r.size());
  nr = den.size();
  for (auto& r : den) r.resize(nc, 0.0);
  size_t mr = num.size(), mc = 0;
  for (auto& r : num) mc = std::max(mc, r.size());
  for (auto& r : num) r.resize(mc, 0.0);
  // rank-1 test of the denominator
  size_t pi = 0, pj = 0;
  double big = 0.0;
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < nc; ++j)
      if (std::abs(den[i][j]) > big) {
        big = std::abs(den[i][j]);
        pi = i;
        pj = j;
      }
  if (big == 0.0) throw Error(ErrorCode::DomainError, "zero denominator");
  std::vector<cplx> p(nr), q(nc);
  for (size_t i = 0; i < nr; ++i) p[i] = den[i][pj];
  for (size_t j = 0; j < nc; ++j) q[j] = den[pi][j] / den[pi][pj];
  double resid = 0.0;
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < nc; ++j) resid = std::max(resid, std::abs(den[i][j] - p[i] * q[j]));
  if (resid <= 1e-13 * big) {
    std::vector<SepTerm> terms;
    for (size_t i = 0; i < mr; ++i) {
      if (all_zero(num[i])) continue;
      std::vector<cplx> ai(i + 1, 0.0);
      ai[i] = 1.0;
      terms.push_back({std::make_shared<RationalFactor>(ai, p), std::make_shared<RationalFactor>(num[i], q)});
    }
    FunctionOnX f = from_terms(std::move(terms), Kind::RationalLM, spec);
    return f;
  }
  FunctionOnX f;
  f.kind_ = Kind::RationalLM;
  f.spec_ = spec;
  f.separable_ = false;
  auto ev = [num, den](cplx l, cplx m) {
    cplx n = 0.0, d = 0.0;
    for (size_t i = num.size(); i-- > 0;) n = n * l + horner(num[i], m);
    for (size_t i = den.size(); i-- > 0;) d = d * l + horner(den[i], m);
    return n / d;
  };
  f.gen_R_ = std::make_shared<const std::function<cplx(cplx, cplx)>>(ev);
  f.gen_R_real_ = std::make_shared<const std::function<cplx(double, double)>>(
      [ev](double l, double m) { return ev(l, m); });
  return f;
}

FunctionOnX FunctionOnX::from_terms(std::vector<SepTerm> terms, Kind kind, json spec) {
  FunctionOnX f;
  f.kind_ = kind;
  f.spec_ = std::move(spec);
  f.terms_ = std::move(terms);
  return f;
}

namespace {

std::vector<std::vector<cplx>> matrix_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "coefficient table must be an array of rows");
  std::vector<std::vector<cplx>> m;
  for (auto& row : j) {
    if (!row.is_array()) throw Error(ErrorCode::ParseError, "coefficient row must be an array");
    std::vector<cplx> r;
    for (auto& v : row) r.push_back(complex_from_json(v));
    m.push_back(r);
  }
  return m;
}

TuboidLabel label_from_name(const std::string& s) {
  for (auto t : {TuboidLabel::TPlus, TuboidLabel::TMinus, TuboidLabel::TRight, TuboidLabel::TLeft})
    if (s == label_name(t)) return t;
  throw Error(ErrorCode::ParseError, "unknown tuboid " + s);
}

}  // namespace

FunctionOnX FunctionOnX::from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw Error(ErrorCode::ParseError, "function needs a kind");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "rational_lm") {
    if (!j.contains("num") || !j.contains("den")) throw Error(ErrorCode::ParseError, "rational_lm needs num, den");
    return rational_lm(matrix_from_json(j["num"]), matrix_from_json(j["den"]));
  }
  if (kind == "component") {
    FunctionOnX base = from_json(j.at("of"));
    return decompose(base).component(label_from_name(j.at("tuboid").get<std::string>()));
  }
  if (kind != "builtin") throw Error(ErrorCode::ParseError, "unknown function kind " + kind);
  std::string name = j.at("name").get<std::string>();
  json p = j.value("params", json::object());
  if (name == "zero") return zero();
  if (name == "cauchy_kernel") return cauchy_kernel(point_from_json(p.at("w")));
  if (name == "pole_product")
    return pole_product(complex_from_json(p.at("a")), p.value("p", 1), complex_from_json(p.at("b")),
                        p.value("q", 1), p.contains("c") ? complex_from_json(p["c"]) : cplx(1.0));
  if (name == "sum") {
    FunctionOnX acc = zero();
    bool first = true;
    for (auto& t : p.at("terms")) {
      FunctionOnX f = from_json(t);
      acc = first ? f : acc + f;
      first = false;
    }
    return acc;
  }
  if (name == "scaled") return from_json(p.at("f")).scaled(complex_from_json(p.at("c")));
  throw Error(ErrorCode::ParseError, "unknown builtin " + name);
}

FunctionOnX FunctionOnX::operator+(const FunctionOnX& o) const {
  if (!separable_ || !o.separable_) throw Error(ErrorCode::DomainError, "sums need separable operands");
  std::vector<SepTerm> t = terms_;
  t.insert(t.end(), o.terms_.begin(), o.terms_.end());
  json spec{{"kind", "builtin"}, {"name", "sum"}, {"params", {{"terms", json::array({spec_, o.spec_})}}}};
  return from_terms(std::move(t), Kind::Builtin, spec);
}

FunctionOnX FunctionOnX::scaled(cplx c) const {
  if (!separable_) throw Error(ErrorCode::DomainError, "scaling needs a separable function");
  std::vector<SepTerm> t;
  for (auto& s : terms_) t.push_back({std::make_shared<ScaledFactor>(s.a, c), s.b});
  json spec{{"kind", "builtin"}, {"name", "scaled"}, {"params", {{"c", complex_to_json(c)}, {"f", spec_}}}};
  return from_terms(std::move(t), Kind::Builtin, spec);
}

cplx FunctionOnX::R(cplx l, cplx m) const {
  if (!separable_) return (*gen_R_)(l, m);
  cplx s = 0.0;
  for (const auto& t : terms_) s += t.a->eval(l) * t.b->eval(m);
  return s;
}

cplx FunctionOnX::R_real(double l, double m) const {
  if (!separable_) return (*gen_R_real_)(l, m);
  cplx s = 0.0;
  for (const auto& t : terms_) s += t.a->boundary(l) * t.b->boundary(m);
  return s;
}

cplx FunctionOnX::eval(const C3& z) const {
  ChartLM c = chart_lm(z);
  if (z[0].imag() == 0.0 && z[1].imag() == 0.0 && z[2].imag() == 0.0) {
    double l = c.lambda.real(), m = c.mu.real();
    return (l - m) * R_real(l, m);
  }
  return fhat(c.lambda, c.mu);
}

cplx FunctionOnX::eval_real_tp(double theta, double psi) const {
  RealChartPoint p = real_point_tp(theta, psi);
  if (!std::isfinite(p.lambda) || !std::isfinite(p.mu)) p = real_point_tp(theta + 1e-9, psi);
  return (p.lambda - p.mu) * R_real(p.lambda, p.mu);
}

double FunctionOnX::regularity_constant() const {
  double c = 0.0;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) {
      double l = std::tan(M_PI * (i + 0.5) / 64 - 0.5 * M_PI);
      double m = std::tan(M_PI * (j + 0.37) / 64 - 0.5 * M_PI);
      c = std::max(c, std::abs(R_real(l, m)) * (1 + std::abs(l)) * (1 + std::abs(m)));
    }
  return c;
}

HardyMembership FunctionOnX::membership(TuboidLabel t) const {
  auto [el, em] = quadrant_of(t);
  if (!separable_) return {t, false};
  for (const auto& s : terms_) {
    int sa = s.a->holomorphic_side(), sb = s.b->holomorphic_side();
    bool za = sa == 2 && !s.a->decays(), zb = sb == 2 && !s.b->decays();
    if (za || zb) return {t, false};
    if (!(sa == el || sa == 2) || !(sb == em || sb == 2)) return {t, false};
    if (!s.a->decays() || !s.b->decays()) return {t, false};
  }
  return {t, true};
}

std::vector<TuboidLabel> FunctionOnX::certified_tuboids() const {
  std::vector<TuboidLabel> r;
  for (auto t : {TuboidLabel::TPlus, TuboidLabel::TMinus, TuboidLabel::TRight, TuboidLabel::TLeft})
    if (membership(t).certified) r.push_back(t);
  return r;
}

FunctionOnX FunctionOnX::conj_reflect() const {
  json spec{{"kind", "builtin"}, {"name", "conj_reflect"}, {"params", {{"f", spec_}}}};
  if (!separable_) {
    FunctionOnX f = *this;
    auto R0 = gen_R_;
    auto Rr = gen_R_real_;
    f.spec_ = spec;
    f.gen_R_ = std::make_shared<const std::function<cplx(cplx, cplx)>>(
        [R0](cplx l, cplx m) { return std::conj((*R0)(std::conj(l), std::conj(m))); });
    f.gen_R_real_ = std::make_shared<const std::function<cplx(double, double)>>(
        [Rr](double l, double m) { return std::conj((*Rr)(l, m)); });
    return f;
  }
  std::vector<SepTerm> t;
  for (auto& s : terms_) t.push_back({s.a->conj_reflect(), s.b->conj_reflect()});
  return from_terms(std::move(t), kind_, spec);
}

cplx project_quadrant_reduced(const FunctionOnX& f, int el, int em, const ChartLM& p, ProjectionRoute route,
                              double tol) {
  if (!(el * p.lambda.imag() > 0.0) || !(em * p.mu.imag() > 0.0))
    throw Error(ErrorCode::PointOnBoundary, "point not inside the quadrant tube");
  bool sep = f.separable() && route != ProjectionRoute::Generic;
  if (route == ProjectionRoute::Separable && !f.separable())
    throw Error(ErrorCode::DomainError, "function is not separable");
  if (sep) {
    cplx s = 0.0;
    for (const auto& t : f.terms()) s += cauchy_1d(*t.a, el, p.lambda, tol) * cauchy_1d(*t.b, em, p.mu, tol);
    return s;
  }
  auto g = [&](double l, double m) { return f.R_real(l, m) / ((l - p.lambda) * (m - p.mu)); };
  QuadResult r = integrate_r2(g, std::max(tol, 1e-9));
  return -double(el * em) / (4.0 * M_PI * M_PI) * r.value;
}

cplx project_quadrant(const FunctionOnX& f, int el, int em, const ChartLM& p, ProjectionRoute route, double tol) {
  return (p.lambda - p.mu) * project_quadrant_reduced(f, el, em, p, route, tol);
}

cplx project_quadrant_boundary(const FunctionOnX& f, int el, int em, double l, double m) {
  cplx v[3];
  for (int k = 0; k < 3; ++k) {
    double e = richardson_eps[k];
    v[k] = project_quadrant(f, el, em, ChartLM{cplx(l, el * e), cplx(m, em * e)});
  }
  return richardson3(v[0], v[1], v[2]);
}

cplx cauchy_rep_intrinsic(const FunctionOnX& f, const C3& z, double tol) {
  TuboidLabel t = classify(z);
  double sign;
  if (t == TuboidLabel::TPlus || t == TuboidLabel::TMinus)
    sign = -1.0;
  else if (t == TuboidLabel::TRight || t == TuboidLabel::TLeft)
    sign = 1.0;
  else
    throw Error(ErrorCode::NotInTuboid, std::string("point classified ") + label_name(t));
  auto inner = [&](double psi) {
    auto sweep = [&](int n) {
      cplx s = 0.0;
      double h = 2.0 * M_PI / n;
      for (int k = 0; k < n; ++k) {
        double th = -M_PI + (k + 0.5) * h;
        RealChartPoint p = real_point_tp(th, psi);
        C3 x = to_c3(p.x);
        s += f.eval_real_tp(th, psi) / cauchy_quadratic(x, z);
      }
      return s * h;
    };
    int n = 64;
    cplx a = sweep(n);
    for (; n < (1 << 15); n *= 2) {
      cplx b = sweep(2 * n);
      if (std::abs(b - a) <= 0.1 * tol * std::max(1e-3, std::abs(b))) return 0.5 * std::cosh(psi) * b;
      a = b;
    }
    throw Error(ErrorCode::NoConvergence, "theta sweep in intrinsic Cauchy integral");
  };
  QuadOptions o;
  o.abs_tol = 1e-3 * tol;
  o.rel_tol = tol;
  cplx I = adapt(inner, -40.0, -3.0, o).value + adapt(inner, -3.0, 3.0, o).value + adapt(inner, 3.0, 40.0, o).value;
  return sign / (M_PI * M_PI) * I;
}

const FunctionOnX& Decomposition::component(TuboidLabel t) const {
  switch (t) {
    case TuboidLabel::TPlus: return plus;
    case TuboidLabel::TMinus: return minus;
    case TuboidLabel::TRight: return right;
    case TuboidLabel::TLeft: return left;
    default: throw Error(ErrorCode::NotInTuboid, "no component for this label");
  }
}

Decomposition decompose(const FunctionOnX& f) {
  auto make = [&](TuboidLabel tub) {
    auto [el, em] = quadrant_of(tub);
    json spec{{"kind", "component"}, {"of", f.spec()}, {"tuboid", label_name(tub)}};
    if (f.separable()) {
      std::vector<SepTerm> t;
      for (const auto& s : f.terms())
        t.push_back({std::make_shared<ProjectedFactor>(s.a, el), std::make_shared<ProjectedFactor>(s.b, em)});
      return FunctionOnX::from_terms(std::move(t), FunctionOnX::Kind::Component, spec);
    }
    FunctionOnX c;
    c.kind_ = FunctionOnX::Kind::Component;
    c.spec_ = spec;
    c.separable_ = false;
    FunctionOnX base = f;
    c.gen_R_ = std::make_shared<const std::function<cplx(cplx, cplx)>>([base, el = el, em = em](cplx l, cplx m) {
      return project_quadrant_reduced(base, el, em, ChartLM{l, m}, ProjectionRoute::Generic);
    });
    c.gen_R_real_ = std::make_shared<const std::function<cplx(double, double)>>(
        [base, el = el, em = em](double l, double m) {
          cplx v[3];
          for (int k = 0; k < 3; ++k) {
            double e = richardson_eps[k];
            v[k] = project_quadrant_reduced(base, el, em, ChartLM{cplx(l, el * e), cplx(m, em * e)},
                                            ProjectionRoute::Generic);
          }
          return richardson3(v[0], v[1], v[2]);
        });
    return c;
  };
  return {make(TuboidLabel::TPlus), make(TuboidLabel::TMinus), make(TuboidLabel::TRight),
          make(TuboidLabel::TLeft)};
}

cplx component_interior(const FunctionOnX& f, TuboidLabel tub, const C3& z) {
  if (classify(z) != tub) throw Error(ErrorCode::NotInTuboid, std::string("point not in ") + label_name(tub));
  auto [el, em] = quadrant_of(tub);
  return project_quadrant(f, el, em, chart_lm(z));
}

}  // namespace hyperfh
