#include "hyperfh/specfun.hpp"

#include <cmath>

#include "hyperfh/quad.hpp"

namespace hyperfh {

namespace {

QuadOptions tight() {
  QuadOptions o;
  o.abs_tol = 1e-15;
  o.rel_tol = 1e-14;
  return o;
}

}  // namespace

namespace {

// (2/pi) int_0^v cos(nu t) / sqrt(2 (cosh v - cosh t)) dt with t = v - s^2
double conical_p_dirichlet(double nu, double x) {
  const double v = std::acosh(x);
  auto f = [&](double s) {
    double s2 = s * s;
    if (s == 0.0) return cplx(2.0 / std::sqrt(2.0 * std::sinh(v)) * std::cos(nu * v));
    double d = 4.0 * std::sinh(v - 0.5 * s2) * std::sinh(0.5 * s2);
    return cplx(2.0 * s * std::cos(nu * (v - s2)) / std::sqrt(d));
  };
  QuadOptions o = tight();
  o.abs_tol = 1e-14;
  return 2.0 / M_PI * adapt(f, 0.0, std::sqrt(v), o).value.real();
}

}  // namespace

double conical_p(double nu, double x) {
  if (!(x >= 1.0)) throw Error(ErrorCode::DomainError, "conical_p needs x >= 1");
  if (x == 1.0) return 1.0;
  if (std::abs(nu) > 4.0) return conical_p_dirichlet(nu, x);
  const double r = std::sqrt((x - 1.0) * (x + 1.0));
  auto f = [&](double phi) {
    double b = x + r * std::cos(phi);
    return cplx(std::exp(-0.5 * std::log(b))) * std::exp(cplx(0, nu * std::log(b)));
  };
  QuadOptions o = tight();
  o.abs_tol = 1e-14 / std::sqrt(x - r);  // largest |integrand|, at phi = pi
  QuadResult q = adapt(f, 0.0, M_PI, o);
  return q.value.real() / M_PI;
}

cplx conical_p_complex(cplx nu, cplx Z) {
  if (!(Z.real() > 0.0)) throw Error(ErrorCode::DomainError, "complex conical_p needs Re Z > 0");
  cplx r = std::sqrt(Z - 1.0) * std::sqrt(Z + 1.0);
  cplx e(-0.5 - nu.imag(), nu.real());
  auto f = [&](double phi) { return std::exp(e * std::log(Z + r * std::cos(phi))); };
  QuadOptions o = tight();
  o.abs_tol = 1e-14 * std::max(std::abs(f(0.0)), std::abs(f(M_PI)));
  QuadResult q = adapt(f, 0.0, M_PI, o);
  return q.value / M_PI;
}

cplx conical_q(cplx nu, double x) {
  if (!(x > 1.0)) throw Error(ErrorCode::DomainError, "conical_q needs x > 1");
  if (!(nu.imag() < 0.5)) throw Error(ErrorCode::DomainError, "conical_q needs Im nu < 1/2");
  const double v = std::acosh(x);
  const cplx mi(0, -1);
  // t = v + s^2 near the endpoint; cosh t - cosh v = 2 sinh(v + s^2/2) sinh(s^2/2)
  auto g = [&](double s) {
    double s2 = s * s;
    double d = 4.0 * std::sinh(v + 0.5 * s2) * std::sinh(0.5 * s2);
    if (s == 0.0) return cplx(2.0 / std::sqrt(2.0 * std::sinh(v)));
    return 2.0 * s * std::exp(mi * nu * (v + s2)) / std::sqrt(d);
  };
  auto h = [&](double t) {
    double d = 4.0 * std::sinh(0.5 * (t + v)) * std::sinh(0.5 * (t - v));
    return std::exp(mi * nu * t) / std::sqrt(d);
  };
  QuadOptions o = tight();
  cplx val = adapt(g, 0.0, 1.0, o).value;
  const double decay = 0.5 - nu.imag();
  const double tmax = v + 1.0 + 40.0 / decay;
  double step = std::max(1.0, 2.0 * M_PI / std::max(1.0, std::abs(nu.real())) * 4.0);
  for (double a = v + 1.0; a < tmax; a += step) val += adapt(h, a, std::min(a + step, tmax), o).value;
  return val;
}

std::vector<cplx> legendre_q_all(int L, cplx Z) {
  if (L < 0) throw Error(ErrorCode::DomainError, "ell must be non-negative");
  if (std::abs(Z.imag()) == 0.0 && std::abs(Z.real()) <= 1.0)
    throw Error(ErrorCode::DomainError, "Q_l on the cut [-1, 1]");
  std::vector<cplx> q(L + 1);
  cplx q0 = 0.5 * std::log((Z + 1.0) / (Z - 1.0));
  q[0] = q0;
  if (L == 0) return q;
  q[1] = Z * q0 - 1.0;
  if (L == 1) return q;
  // ratio of the recessive solution
  cplx w = Z + std::sqrt(Z - 1.0) * std::sqrt(Z + 1.0);
  if (std::abs(w) < 1.0) w = 1.0 / w;
  double rho = 1.0 / std::abs(w);
  if (rho > 1.0 - 1e-4) {
    for (int l = 1; l < L; ++l) q[l + 1] = ((2.0 * l + 1.0) * Z * q[l] - double(l) * q[l - 1]) / double(l + 1);
    return q;
  }
  // Miller: backward recurrence from N, normalized by Q_0
  int N = L + 20 + int(std::ceil(std::log(1e-18) / std::log(rho)));
  cplx qp1 = 0.0, qn = 1e-280;
  std::vector<cplx> tmp(L + 1);
  for (int l = N; l >= 1; --l) {
    cplx qm1 = ((2.0 * l + 1.0) * Z * qn - double(l + 1) * qp1) / double(l);
    qp1 = qn;
    qn = qm1;
    if (l - 1 <= L) tmp[l - 1] = qn;
    double a = std::abs(qn);
    if (a > 1e250) {
      qn /= a;
      qp1 /= a;
      for (int k = l - 1; k <= L; ++k) tmp[k] /= a;
    }
  }
  cplx norm = q0 / tmp[0];
  for (int l = 2; l <= L; ++l) q[l] = tmp[l] * norm;
  return q;
}

cplx legendre_q_int(int ell, cplx Z) { return legendre_q_all(ell, Z)[ell]; }

double mehler_weight(double nu, int sign) {
  // 1/(e^{pi nu} cosh pi nu) = 2/(e^{2 pi nu} + 1)
  double t = std::tanh(M_PI * nu);
  if (sign > 0) return 2.0 * nu * t / (std::exp(2.0 * M_PI * nu) + 1.0);
  return 2.0 * nu * t / (1.0 + std::exp(-2.0 * M_PI * nu));
}

double mehler_weight_sym(double nu) { return nu * std::tanh(M_PI * nu) / std::cosh(M_PI * nu); }

double mehler_residual(double x) {
  if (!(x <= -1.0)) throw Error(ErrorCode::DomainError, "mehler check needs -x >= 1");
  auto f = [&](double nu) { return cplx(mehler_weight_sym(nu) * conical_p(nu, -x)); };
  SemiaxisOptions o;
  o.tol = 1e-12;
  o.check_decay = false;
  QuadResult r = integrate_semiaxis(f, M_PI, o);
  return std::abs(1.0 / (1.0 - x) - M_PI * r.value.real());
}

}  // namespace hyperfh
