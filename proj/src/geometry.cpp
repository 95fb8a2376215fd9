#include "hyperfh/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace hyperfh {

namespace {

double rel_scale(const C3& z) { return 1.0 + norm2(z); }

void check_quadric(const C3& z) {
  cplx q = bilinear(z, z) + 1.0;
  if (std::abs(q) > tol_quadric * rel_scale(z))
    throw Error(ErrorCode::OffQuadric, "|z^2 + 1| = " + std::to_string(std::abs(q)));
}

int sgn(double v, double tol) { return v > tol ? 1 : (v < -tol ? -1 : 0); }

}  // namespace

double norm2(const C3& z) { return std::norm(z[0]) + std::norm(z[1]) + std::norm(z[2]); }

ComplexPoint3::ComplexPoint3(cplx z0, cplx z1, cplx z2) : z_{z0, z1, z2} { check_quadric(z_); }

ConePoint::ConePoint(double xi0, double xi1, double xi2) : xi_{xi0, xi1, xi2} {
  double q = xi0 * xi0 - xi1 * xi1 - xi2 * xi2;
  double scale = 1.0 + xi0 * xi0 + xi1 * xi1 + xi2 * xi2;
  if (!(xi0 > 0.0)) throw Error(ErrorCode::DomainError, "cone point needs xi0 > 0");
  if (std::abs(q) > tol_quadric * scale) throw Error(ErrorCode::DomainError, "xi^2 != 0");
}

ConePoint ConePoint::on_circle(double alpha) { return ConePoint(1.0, std::cos(alpha), std::sin(alpha)); }

ComplexConePoint::ComplexConePoint(cplx xi0, cplx xi1, cplx xi2) : xi_{xi0, xi1, xi2} {
  double scale = 1.0 + norm2(xi_);
  if (std::abs(bilinear(xi_, xi_)) > tol_quadric * scale)
    throw Error(ErrorCode::DomainError, "xi.xi != 0");
  R3 y = im(xi_);
  if (bilinear(y, y) > tol_quadric * scale) throw Error(ErrorCode::DomainError, "(Im xi)^2 > 0");
}

ComplexConePoint ComplexConePoint::on_circle(cplx phi) {
  return ComplexConePoint(1.0, std::sin(phi), std::cos(phi));
}

const char* label_name(TuboidLabel t) {
  switch (t) {
    case TuboidLabel::TPlus: return "TPlus";
    case TuboidLabel::TMinus: return "TMinus";
    case TuboidLabel::TRight: return "TRight";
    case TuboidLabel::TLeft: return "TLeft";
    case TuboidLabel::T0: return "T0";
    case TuboidLabel::RealX: return "RealX";
    case TuboidLabel::OffQuadric: return "OffQuadric";
  }
  return "?";
}

int orientation_sign(const R3& x, const R3& y, const R3& e) {
  double det = e[0] * (x[1] * y[2] - x[2] * y[1]) - e[1] * (x[0] * y[2] - x[2] * y[0]) +
               e[2] * (x[0] * y[1] - x[1] * y[0]);
  double scale = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) *
                 std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]) *
                 std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
  return sgn(det, 1e-14 * scale);
}

Classification classify_detail(const C3& z) {
  Classification c{TuboidLabel::OffQuadric, 0.0, 0.0, 0};
  R3 y = im(z);
  c.y2 = bilinear(y, y);
  c.y0 = y[0];
  if (std::abs(bilinear(z, z) + 1.0) > tol_quadric * rel_scale(z)) return c;
  double ny = std::max({std::abs(y[0]), std::abs(y[1]), std::abs(y[2])});
  if (ny <= tol_class) {
    c.label = TuboidLabel::RealX;
    return c;
  }
  if (std::abs(c.y2) <= tol_class * std::max(1.0, ny * ny)) {
    c.label = TuboidLabel::T0;
    return c;
  }
  if (c.y2 > 0.0) {
    c.label = y[0] > 0.0 ? TuboidLabel::TPlus : TuboidLabel::TMinus;
    return c;
  }
  c.eps = orientation_sign(re(z), y);
  c.label = c.eps < 0 ? TuboidLabel::TRight : TuboidLabel::TLeft;
  return c;
}

ChartLM chart_lm(const C3& z) {
  cplx d = z[0] + z[1];
  if (std::abs(d) <= tol_chart) throw Error(ErrorCode::ChartSingular, "z0 + z1 = 0");
  return {(z[2] + 1.0) / d, (z[2] - 1.0) / d};
}

C3 chart_lm_inv(const ChartLM& c) {
  cplx d = c.lambda - c.mu;
  if (std::abs(d) <= tol_chart) throw Error(ErrorCode::ChartSingular, "lambda = mu");
  cplx p = c.lambda * c.mu;
  return {(1.0 + p) / d, (1.0 - p) / d, (c.lambda + c.mu) / d};
}

ChartThetaPsi chart_tp(const C3& z) {
  cplx psi = std::asinh(z[0]);
  cplx ch = std::cosh(psi);
  if (std::abs(ch) <= tol_chart) throw Error(ErrorCode::ChartSingular, "cosh Psi = 0");
  cplx theta = cplx(0, -1) * std::log((z[2] + cplx(0, 1) * z[1]) / ch);
  return {theta, psi};
}

C3 chart_tp_inv(const ChartThetaPsi& c) {
  cplx ch = std::cosh(c.psi);
  if (std::abs(ch) <= tol_chart) throw Error(ErrorCode::ChartSingular, "cosh Psi = 0");
  return {std::sinh(c.psi), ch * std::sin(c.theta), ch * std::cos(c.theta)};
}

RealChartPoint real_point_tp(double theta, double psi) {
  double s = std::sin(theta), c = std::cos(theta);
  double ep = std::exp(psi), em = std::exp(-psi);
  double ch = 0.5 * (ep + em), sh = 0.5 * (ep - em);
  RealChartPoint r;
  r.x = {sh, ch * s, ch * c};
  r.d = 0.5 * (ep * (1.0 + s) - em * (1.0 - s));
  double dm = 0.5 * (ep * (1.0 - s) - em * (1.0 + s));  // x0 - x1
  double xp = ch * c + 1.0, xm = ch * c - 1.0;
  r.lambda = std::abs(r.d) >= std::abs(xm) ? xp / r.d : dm / xm;
  r.mu = std::abs(xp) >= std::abs(r.d) ? dm / xp : xm / r.d;
  return r;
}

bool in_tright_tp(const ChartThetaPsi& c) {
  return std::tanh(c.theta.imag()) > std::abs(std::sin(c.psi.imag())) / std::cosh(c.psi.real());
}

bool in_tleft_tp(const ChartThetaPsi& c) {
  return std::tanh(c.theta.imag()) < -std::abs(std::sin(c.psi.imag())) / std::cosh(c.psi.real());
}

double measure_density(const R3& x, MeasureChart chart) {
  if (chart == MeasureChart::Intrinsic) {
    if (std::abs(x[0]) <= tol_chart) throw Error(ErrorCode::MeasureSingular, "x0 = 0");
    return 0.5 / std::abs(x[0]);
  }
  double d = x[0] + x[1];
  if (std::abs(d) <= tol_chart) throw Error(ErrorCode::ChartSingular, "x0 + x1 = 0");
  double lam = (x[2] + 1.0) / d, mu = (x[2] - 1.0) / d;
  return measure_density_lm(lam, mu);
}

double measure_density_lm(double lambda, double mu) {
  double d = lambda - mu;
  if (std::abs(d) <= tol_chart) throw Error(ErrorCode::MeasureSingular, "lambda = mu");
  return 1.0 / (d * d);
}

cplx cauchy_quadratic(const C3& z, const C3& zp) { return -2.0 * (bilinear(z, zp) + 1.0); }

cplx cauchy_quadratic_lm(const ChartLM& a, const ChartLM& b) {
  return -4.0 * (a.lambda - b.lambda) * (a.mu - b.mu) / ((a.lambda - a.mu) * (b.lambda - b.mu));
}

cplx homographic(cplx lambda, double alpha) { return -1.0 / (lambda - std::tan(0.5 * alpha)); }

LorentzElement::LorentzElement(const Mat3& g) : g_(g) {
  const double J[3] = {1.0, -1.0, -1.0};
  double worst = 0.0, scale = 1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) scale = std::max(scale, std::abs(g[i][j]));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += g[k][i] * J[k] * g[k][j];
      worst = std::max(worst, std::abs(s - (i == j ? J[i] : 0.0)));
    }
  double det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
               g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
               g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
  if (worst > tol_group * scale * scale || std::abs(det - 1.0) > tol_group * scale * scale * scale ||
      !(g[0][0] > 0.0))
    throw Error(ErrorCode::InvalidGroupElement, "not in SO0(1,2)");
}

LorentzElement LorentzElement::identity() {
  return LorentzElement(Mat3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}, true);
}

LorentzElement LorentzElement::boost01(double chi) {
  double c = std::cosh(chi), s = std::sinh(chi);
  return LorentzElement(Mat3{{{c, s, 0}, {s, c, 0}, {0, 0, 1}}}, true);
}

LorentzElement LorentzElement::boost02(double chi) {
  double c = std::cosh(chi), s = std::sinh(chi);
  return LorentzElement(Mat3{{{c, 0, s}, {0, 1, 0}, {s, 0, c}}}, true);
}

LorentzElement LorentzElement::rot12(double a) {
  double c = std::cos(a), s = std::sin(a);
  return LorentzElement(Mat3{{{1, 0, 0}, {0, c, -s}, {0, s, c}}}, true);
}

LorentzElement LorentzElement::random(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> boost(-2.0, 2.0), angle(-M_PI, M_PI);
  double chi = boost(rng), a = angle(rng), chi2 = boost(rng);
  return boost01(chi) * rot12(a) * boost01(chi2);
}

LorentzElement LorentzElement::operator*(const LorentzElement& o) const {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += g_[i][k] * o.g_[k][j];
      r[i][j] = s;
    }
  return LorentzElement(r, true);
}

LorentzElement LorentzElement::inverse() const {
  // g^{-1} = J g^T J
  const double J[3] = {1.0, -1.0, -1.0};
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = J[i] * g_[j][i] * J[j];
  return LorentzElement(r, true);
}

C3 LorentzElement::apply(const C3& z) const {
  C3 r{};
  for (int i = 0; i < 3; ++i) r[i] = g_[i][0] * z[0] + g_[i][1] * z[1] + g_[i][2] * z[2];
  return r;
}

R3 LorentzElement::apply(const R3& x) const {
  R3 r{};
  for (int i = 0; i < 3; ++i) r[i] = g_[i][0] * x[0] + g_[i][1] * x[1] + g_[i][2] * x[2];
  return r;
}

C3 apply_group(const LorentzElement& g, const C3& z) { return g.apply(z); }

C3 project_to_quadric(const C3& z) {
  C3 w = z;
  for (int it = 0; it < 60; ++it) {
    cplx q = bilinear(w, w);
    if (std::abs(q) == 0.0) throw Error(ErrorCode::DomainError, "null vector cannot be projected");
    cplx step = (q + 1.0) / (2.0 * q);
    for (auto& c : w) c -= step * c;
    if (std::abs(step) < 1e-16) break;
  }
  return w;
}

std::pair<int, int> quadrant_of(TuboidLabel t) {
  switch (t) {
    case TuboidLabel::TPlus: return {-1, 1};
    case TuboidLabel::TMinus: return {1, -1};
    case TuboidLabel::TLeft: return {1, 1};
    case TuboidLabel::TRight: return {-1, -1};
    default: throw Error(ErrorCode::NotInTuboid, std::string("no quadrant for ") + label_name(t));
  }
}

TuboidLabel tuboid_of_quadrant(int el, int em) {
  if (el < 0 && em > 0) return TuboidLabel::TPlus;
  if (el > 0 && em < 0) return TuboidLabel::TMinus;
  if (el > 0 && em > 0) return TuboidLabel::TLeft;
  return TuboidLabel::TRight;
}

C3 random_tuboid_point(TuboidLabel t, std::mt19937_64& rng, double im_min, double im_max, double re_max) {
  std::uniform_real_distribution<double> ure(-re_max, re_max), uim(im_min, im_max);
  int el = 0, em = 0;
  if (t != TuboidLabel::RealX) std::tie(el, em) = quadrant_of(t);
  for (;;) {
    cplx lam(ure(rng), el * uim(rng)), mu(ure(rng), em * uim(rng));
    if (std::abs(lam - mu) < 0.1) continue;
    return chart_lm_inv(lam, mu);
  }
}

}  // namespace hyperfh
