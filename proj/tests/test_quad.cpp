#include <cmath>

#include "doctest.h"
#include "hyperfh/quad.hpp"

using namespace hyperfh;

TEST_CASE("adaptive Gauss-Kronrod on smooth and oscillatory integrands") {
  QuadOptions o;
  auto r = integrate_1d([](double x) { return cplx(std::exp(x)); }, 0.0, 1.0, o);
  CHECK(std::abs(r.value - (M_E - 1.0)) < 1e-13);
  auto s = integrate_1d([](double x) { return std::exp(cplx(0.0, 40.0 * x)); }, 0.0, M_PI, o);
  CHECK(std::abs(s.value) < 1e-12);
}

TEST_CASE("square-root endpoint singularities") {
  QuadOptions o;
  auto r = integrate_1d_sqrt([](double x) { return cplx(1.0 / std::sqrt(x)); }, 0.0, 1.0, Endpoint::Left, o);
  CHECK(std::abs(r.value - 2.0) < 1e-12);
  auto b = integrate_1d_sqrt([](double x) { return cplx(1.0 / std::sqrt(1.0 - x * x)); }, -1.0, 1.0, Endpoint::Both, o);
  CHECK(std::abs(b.value - M_PI) < 1e-12);
}

TEST_CASE("semi-axis with exponential decay") {
  SemiaxisOptions o;
  o.tol = 1e-12;
  auto r = integrate_semiaxis([](double x) { return cplx(std::exp(-2.0 * x) * std::cos(x)); }, 2.0, o);
  CHECK(std::abs(r.value - 0.4) < 1e-12);
}

TEST_CASE("slow decay is reported") {
  SemiaxisOptions o;
  o.tol = 1e-12;
  CHECK_THROWS_AS(integrate_semiaxis([](double x) { return cplx(1.0 / (1.0 + x)); }, 3.0, o), Error);
}

TEST_CASE("vector integrand") {
  QuadOptions o;
  auto r = integrate_1d_vec(
      [](double x, cplx* out) {
        out[0] = x;
        out[1] = x * x;
      },
      2, 0.0, 1.0, o);
  CHECK(std::abs(r.value[0] - 0.5) < 1e-14);
  CHECK(std::abs(r.value[1] - 1.0 / 3.0) < 1e-14);
}

TEST_CASE("Gauss panels integrate polynomials exactly") {
  Nodes n = gauss_panels(-1.0, 2.0, 3, 10);
  double s = 0.0;
  for (std::size_t k = 0; k < n.x.size(); ++k) s += n.w[k] * std::pow(n.x[k], 7);
  CHECK(s == doctest::Approx((std::pow(2.0, 8) - 1.0) / 8.0).epsilon(1e-13));
}

TEST_CASE("plane integral with algebraic decay") {
  auto r = integrate_r2([](double x, double y) { return cplx(1.0 / std::pow(1.0 + x * x + y * y, 2)); }, 1e-7, 4.0);
  CHECK(std::abs(r.value - M_PI) < 1e-6);
}

TEST_CASE("cycle measure is d alpha / 2, invariant under boosts") {
  auto one = [](const C3&) { return cplx(1.0); };
  CHECK(std::abs(integrate_contour(one, Contour::gamma0(), 1e-12).value - M_PI) < 1e-12);
  // [xi.x]^{-1} over a cycle is independent of the cycle for x timelike
  const C3 x{2.0, 0.0, std::sqrt(3.0)};
  auto f = [&](const C3& xi) { return 1.0 / bilinear(xi, x); };
  cplx a = integrate_contour(f, Contour::gamma0(), 1e-12).value;
  cplx b = integrate_contour(f, Contour::boosted(LorentzElement::boost02(0.7) * LorentzElement::rot12(0.3)), 1e-12).value;
  CHECK(std::abs(a - b) < 1e-10);
}
