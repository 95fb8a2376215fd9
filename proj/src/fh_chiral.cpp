#include "hyperfh/fh_chiral.hpp"

#include <algorithm>
#include <cmath>

#include "hyperfh/quad.hpp"

namespace hyperfh {

const char* cone_label_name(ConeLabel c) {
  switch (c) {
    case ConeLabel::RealCone: return "RealCone";
    case ConeLabel::CRight: return "CRight";
    case ConeLabel::CLeft: return "CLeft";
    default: return "OffCone";
  }
}

ConeLabel classify_cone(const C3& xi) {
  double n = std::sqrt(norm2(xi));
  if (std::abs(bilinear(xi, xi)) > tol_quadric * (1.0 + n * n)) return ConeLabel::OffCone;
  R3 y = im(xi);
  double ny = std::max({std::abs(y[0]), std::abs(y[1]), std::abs(y[2])});
  if (ny <= tol_class * std::max(1.0, n)) return ConeLabel::RealCone;
  int e = orientation_sign(re(xi), y);
  if (e == 0) return ConeLabel::RealCone;
  return e < 0 ? ConeLabel::CRight : ConeLabel::CLeft;
}

cplx int_power(cplx z, int n) {
  if (n < 0) {
    if (z == 0.0) throw Error(ErrorCode::DomainError, "negative power of zero");
    return int_power(1.0 / z, -n);
  }
  cplx r = 1.0, b = z;
  while (n) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

// ---------------------------------------------------------------------------

std::vector<cplx> fh_direct_chiral_all(const FunctionOnX& f, const C3& xi, int L, const ChiralOptions& opt) {
  if (L < 0) throw Error(ErrorCode::DomainError, "ell must be non-negative");
  ConeLabel cl = classify_cone(xi);
  if (cl == ConeLabel::RealCone)
    throw Error(ErrorCode::RealConeForbidden, "integer-power kernel on the real cone");
  if (cl == ConeLabel::OffCone) throw Error(ErrorCode::DomainError, "xi is not on the complex cone");
  std::vector<cplx> out(L + 1, 0.0);
  if (f.is_zero()) return out;
  const int n = L + 1;
  std::vector<cplx> a(n), b(n);
  std::vector<double> mag(n);
  // theta sweep at fixed psi, doubled until every ell settles
  auto sweep = [&](double psi, int N, cplx* acc) {
    std::fill(acc, acc + n, 0.0);
    std::fill(mag.begin(), mag.end(), 0.0);
    const double h = 2.0 * M_PI / N;
    for (int k = 0; k < N; ++k) {
      double th = -M_PI + (k + 0.5) * h;
      RealChartPoint p = real_point_tp(th, psi);
      cplx r = 1.0 / bilinear(to_c3(p.x), xi);
      cplx fv = f.eval_real_tp(th, psi) * r;
      for (int l = 0; l < n; ++l) {
        acc[l] += fv;
        mag[l] += std::abs(fv);
        fv *= r;
      }
    }
    for (int l = 0; l < n; ++l) {
      acc[l] *= h;
      mag[l] *= h;
    }
  };
  std::vector<double> scale(n);
  sweep(0.0, 256, a.data());
  for (int l = 0; l < n; ++l) scale[l] = 0.5 * mag[l];
  auto inner = [&](double psi, cplx* res) {
    int N = opt.theta_min;
    sweep(psi, N, a.data());
    for (; N < opt.theta_max; N *= 2) {
      sweep(psi, 2 * N, b.data());
      // relative to each component, or negligible against the psi = 0 slice
      double c = 0.5 * std::cosh(psi);
      bool ok = true;
      for (int l = 0; l < n && ok; ++l) {
        double d = std::abs(b[l] - a[l]);
        ok = d <= 0.1 * opt.tol * std::abs(b[l]) + 1e-14 * mag[l] || c * d <= 1e-3 * opt.tol * scale[l];
      }
      if (ok) {
        for (int l = 0; l < n; ++l) res[l] = c * b[l];
        return;
      }
      std::swap(a, b);
    }
    throw Error(ErrorCode::NoConvergence, "theta sweep in chiral transform at psi = " + std::to_string(psi));
  };
  QuadOptions o;
  o.abs_tol = 1e-3 * opt.tol;
  o.rel_tol = opt.tol;
  const double P = opt.psi_max;
  for (auto [lo, hi] : {std::pair{-P, -4.0}, std::pair{-4.0, 4.0}, std::pair{4.0, P}}) {
    VecQuadResult r = integrate_1d_vec(inner, n, lo, hi, o);
    for (int l = 0; l < n; ++l) out[l] += r.value[l];
  }
  return out;
}

cplx fh_direct_chiral(const FunctionOnX& f, const C3& xi, int ell, const ChiralOptions& opt) {
  return fh_direct_chiral_all(f, xi, ell, opt)[ell];
}

ChiralFHTransform::ChiralFHTransform(FunctionOnX f, Chirality c, ChiralOptions opt) : chir_(c) {
  label_ = f.spec().dump();
  auto src = std::make_shared<const FunctionOnX>(std::move(f));
  ev_ = [src, opt, c](const C3& xi, int L, cplx* out) {
    if (classify_cone(xi) != cone_of(c))
      throw Error(ErrorCode::DomainError, std::string("xi outside the cone domain: ") + cone_label_name(classify_cone(xi)));
    auto v = fh_direct_chiral_all(*src, xi, L, opt);
    std::copy(v.begin(), v.end(), out);
  };
}

ChiralFHTransform::ChiralFHTransform(Evaluator ev, Chirality c, std::string label)
    : ev_(std::move(ev)), chir_(c), label_(std::move(label)) {}

ChiralFHTransform ChiralFHTransform::zero(Chirality c) {
  return ChiralFHTransform([](const C3&, int L, cplx* out) { std::fill(out, out + L + 1, 0.0); }, c, "zero");
}

cplx ChiralFHTransform::operator()(const C3& xi, int ell) const { return all(xi, ell)[ell]; }

std::vector<cplx> ChiralFHTransform::all(const C3& xi, int L) const {
  std::vector<cplx> v(L + 1);
  ev_(xi, L, v.data());
  return v;
}

// ---------------------------------------------------------------------------

C3 RelativeCycle::point(double phi) const {
  C3 xi = cone_circle(cplx(phi, v_));
  return g_.apply(xi);
}

double RelativeCycle::endpoint_residual() const {
  double r = 0.0;
  for (double p : {-0.5 * M_PI, 0.5 * M_PI}) r = std::max(r, std::abs(bilinear(z_, point(p))));
  return r;
}

RelativeCycle make_cycle(const C3& z) {
  TuboidLabel t = classify(z);
  if (t != TuboidLabel::TRight && t != TuboidLabel::TLeft)
    throw Error(ErrorCode::NotInTuboid, std::string("relative cycle needs a chiral tuboid, got ") + label_name(t));
  R3 x = re(z), y = im(z);
  double sv = std::sqrt(-bilinear(y, y));
  double cv = std::sqrt(-bilinear(x, x));
  // try v > 0 first; the orientation of (e1, e2) fixes the sign
  for (int sgn : {+1, -1}) {
    double v = sgn * std::asinh(sv);
    double shv = std::sinh(v), chv = std::cosh(v);
    (void)cv;
    R3 e2{x[0] / chv, x[1] / chv, x[2] / chv};
    R3 e1{y[0] / shv, y[1] / shv, y[2] / shv};
    // e0 = J (e1 x e2), normalized to a future unit vector
    R3 c{e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2], e1[0] * e2[1] - e1[1] * e2[0]};
    R3 e0{c[0], -c[1], -c[2]};
    double n0 = bilinear(e0, e0);
    if (!(n0 > 0.0)) continue;
    n0 = std::sqrt(n0);
    for (auto& q : e0) q /= n0;
    if (e0[0] < 0.0)
      for (auto& q : e0) q = -q;
    Mat3 m;
    for (int i = 0; i < 3; ++i) {
      m[i][0] = e0[i];
      m[i][1] = e1[i];
      m[i][2] = e2[i];
    }
    double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                 m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if (det < 0.0) continue;
    try {
      LorentzElement g(m);
      RelativeCycle rc(z, g, v);
      if (rc.endpoint_residual() < 1e-9 * std::max(1.0, std::sqrt(norm2(z)))) return rc;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::DecompositionFailed, "no (g, v) with z = g z_v");
}

CycleRule cycle_rule(const RelativeCycle& c, int n) {
  CycleRule r;
  int panels = std::max(1, n / 20);
  Nodes nd = gauss_panels(-0.5 * M_PI, 0.5 * M_PI, panels, 20);
  for (std::size_t k = 0; k < nd.x.size(); ++k) {
    r.xi.push_back(c.point(nd.x[k]));
    r.w.push_back(RelativeCycle::measure * nd.w[k]);
  }
  return r;
}

void geometric_tail(SeriesResult& r, double max_ratio) {
  const auto& t = r.terms;
  r.tail_estimate = 0.0;
  r.ratio = 0.0;
  if (t.size() < 3) return;
  // largest ratio over the last few terms
  double q = 0.0;
  std::size_t from = t.size() > 6 ? t.size() - 5 : 1;
  for (std::size_t k = from; k < t.size(); ++k) {
    double a = std::abs(t[k - 1]), b = std::abs(t[k]);
    if (a > 1e-300) q = std::max(q, b / a);
  }
  r.ratio = q;
  if (q > max_ratio)
    throw Error(ErrorCode::TailNotGeometric, "term ratio " + std::to_string(q) + " exceeds " + std::to_string(max_ratio));
  r.tail_estimate = std::abs(t.back()) * q / (1.0 - q);
}

SeriesResult fh_inverse_chiral(const ChiralFHTransform& ft, const C3& z, int L_max, int n_phi) {
  TuboidLabel t = classify(z);
  if (t != tuboid_of(ft.chirality()))
    throw Error(ErrorCode::NotInTuboid, std::string("chiral inversion needs z in ") +
                                            label_name(tuboid_of(ft.chirality())) + ", got " + label_name(t));
  RelativeCycle cyc = make_cycle(z);
  CycleRule rule = cycle_rule(cyc, n_phi);
  SeriesResult res;
  res.terms.assign(L_max + 1, 0.0);
  for (std::size_t k = 0; k < rule.xi.size(); ++k) {
    std::vector<cplx> v = ft.all(rule.xi[k], L_max);
    cplx a = bilinear(z, rule.xi[k]), p = 1.0;
    for (int l = 0; l <= L_max; ++l) {
      res.terms[l] += rule.w[k] * p * v[l];
      p *= a;
    }
  }
  res.value = 0.0;
  for (int l = 0; l <= L_max; ++l) {
    res.terms[l] *= (2.0 * l + 1.0) / (4.0 * M_PI * M_PI);
    res.value += res.terms[l];
  }
  geometric_tail(res);
  return res;
}

namespace {

void check_chiral_pair(const C3& z, const C3& zp) {
  TuboidLabel a = classify(z), b = classify(zp);
  bool ok = (a == TuboidLabel::TRight && (b == TuboidLabel::TLeft || b == TuboidLabel::RealX)) ||
            (a == TuboidLabel::TLeft && (b == TuboidLabel::TRight || b == TuboidLabel::RealX));
  if (!ok)
    throw Error(ErrorCode::NotInTuboid, std::string("pair (") + label_name(a) + ", " + label_name(b) +
                                            ") is not in opposite chiral tuboids");
}

// int_{gamma(z)} [z.xi]^ell [xi.z']^{-ell-1} d mu for ell = 0..L, refined by doubling
std::vector<cplx> chiral_moments(const C3& z, const C3& zp, int L, int n_phi) {
  RelativeCycle cyc = make_cycle(z);
  auto run = [&](int n) {
    CycleRule r = cycle_rule(cyc, n);
    std::vector<cplx> m(L + 1, 0.0);
    for (std::size_t k = 0; k < r.xi.size(); ++k) {
      cplx a = bilinear(z, r.xi[k]), b = bilinear(r.xi[k], zp);
      if (b == 0.0) throw Error(ErrorCode::DomainError, "[xi.z'] = 0 on the cycle");
      cplx q = r.w[k] / b, ab = a / b;
      for (int l = 0; l <= L; ++l) {
        m[l] += q;
        q *= ab;
      }
    }
    return m;
  };
  if (n_phi > 0) return run(n_phi);
  int n = 40;
  auto prev = run(n);
  for (n *= 2; n <= 20480; n *= 2) {
    auto cur = run(n);
    bool ok = true;
    double scale = 0.0;
    for (auto c : cur) scale = std::max(scale, std::abs(c));
    for (int l = 0; l <= L && ok; ++l)
      ok = std::abs(cur[l] - prev[l]) <= 1e-13 * std::max(std::abs(cur[l]), 1e-3 * scale) + 1e-300;
    if (ok) return cur;
    prev = cur;
  }
  throw Error(ErrorCode::NoConvergence, "relative cycle quadrature did not settle");
}

}  // namespace

cplx q_rep(int ell, const C3& z, const C3& zp, int n_phi) {
  if (ell < 0) throw Error(ErrorCode::DomainError, "ell must be non-negative");
  check_chiral_pair(z, zp);
  auto m = chiral_moments(z, zp, ell, n_phi);
  return (ell % 2 == 0 ? -0.5 : 0.5) * m[ell];
}

SeriesResult cauchy_kernel_discrete(const C3& z, const C3& zp, int L_max, int n_phi) {
  check_chiral_pair(z, zp);
  auto m = chiral_moments(z, zp, L_max, n_phi);
  SeriesResult r;
  r.value = 0.0;
  for (int l = 0; l <= L_max; ++l) {
    r.terms.push_back(0.25 * (2.0 * l + 1.0) * m[l]);
    r.value += r.terms.back();
  }
  geometric_tail(r);
  return r;
}

}  // namespace hyperfh
