#include <random>

#include "doctest.h"
#include "hyperfh/fh_lorentz.hpp"
#include "hyperfh/specfun.hpp"
#include "oracles.hpp"

using namespace hyperfh;

namespace {

const cplx I(0.0, 1.0);
const C3 w{I, 0.0, 0.0};  // 1/(x - w)^2 lies in H2(T-)

cplx closed_form(const R3& xi, double nu) { return -M_PI * M_PI * std::pow(bilinear(w, to_c3(xi)), spectral_s(nu)); }

}  // namespace

TEST_CASE("boundary powers") {
  cplx s = spectral_s(0.4);
  CHECK(std::abs(boundary_power(2.0, s, +1) - std::pow(2.0, s)) < 1e-15);
  CHECK(std::abs(boundary_power(-1.0, s, +1) - std::exp(I * M_PI * s)) < 1e-15);
  CHECK(std::abs(boundary_power(-1.0, s, -1) - std::exp(-I * M_PI * s)) < 1e-15);
  CHECK_THROWS_AS(boundary_power(0.0, s, +1), Error);
  CHECK(transform_side_for(TuboidLabel::TMinus) == +1);
  CHECK(inverse_domain(-1) == TuboidLabel::TPlus);
}

TEST_CASE("transform of the Cauchy kernel function, both chart routes") {
  FunctionOnX f = FunctionOnX::cauchy_kernel(w);
  LorentzFHTransform ft(f);
  for (double a : {0.3, 2.2, -1.4})
    for (double nu : {0.0, 0.9, 2.5}) {
      R3 xi = ConePoint::on_circle(a).r3();
      CHECK(std::abs(ft(xi, nu, +1) - closed_form(xi, nu)) < 1e-8 * std::abs(closed_form(xi, nu)));
      CHECK(std::abs(ft(xi, nu, -1)) < 1e-8);
    }
  cplx c = fh_direct(f, ConePoint::on_circle(0.6), 0.5, +1, FHMethod::Chart);
  CHECK(std::abs(c - closed_form(ConePoint::on_circle(0.6).r3(), 0.5)) < 1e-6);
}

TEST_CASE("homogeneity and covariance") {
  FunctionOnX f = FunctionOnX::pole_product(cplx(0.2, 1.0), 1, cplx(-0.1, -1.0), 1);
  LorentzFHTransform ft(f);
  R3 xi = ConePoint::on_circle(0.8).r3();
  R3 xi3{3.0 * xi[0], 3.0 * xi[1], 3.0 * xi[2]};
  for (int side : {+1, -1}) {
    cplx a = ft(xi, 0.7, side), b = ft(xi3, 0.7, side);
    CHECK(std::abs(b - std::pow(3.0, spectral_s(0.7)) * a) < 1e-10 * std::abs(a) + 1e-14);
  }
  CHECK_THROWS_AS(ft.at_s(xi, cplx(0.2, 0.0), +1), Error);
}

TEST_CASE("support dichotomy for Lorentz members") {
  auto [el, em] = quadrant_of(TuboidLabel::TPlus);
  FunctionOnX fp = FunctionOnX::pole_product(cplx(0.3, -double(el)), 1, cplx(-0.2, -double(em)), 1);
  VanishingReport r = support_vanishing(fp, 1e-6, false);
  CHECK(r.max_residual < 1e-6);
  CHECK(r.reference > 1e-3);
}

TEST_CASE("three forms of the Cauchy kernel") {
  const C3 zm{-I, 0.0, 0.0};
  for (double v : {0.0, 0.5, 1.5}) {
    C3 zp{I * std::cosh(v), I * std::sinh(v), 0.0};
    double ex = oracle::cauchy_lorentz_pair(v);
    CHECK(std::abs(cauchy_kernel_spectral(zm, zp, +1) - ex) < 1e-8);
    CHECK(std::abs(cauchy_kernel_cf(zm, zp, +1) - ex) < 1e-8);
    CHECK(std::abs(cauchy_kernel_exact(zm, zp) - ex) < 1e-14);
  }
  // side - pairs T+ with T-
  C3 zp{I * std::cosh(0.5), I * std::sinh(0.5), 0.0};
  CHECK(std::abs(cauchy_kernel_spectral(zp, zm, -1) - oracle::cauchy_lorentz_pair(0.5)) < 1e-8);
  CHECK_THROWS_AS(cauchy_kernel_spectral(zp, zm, +1), Error);
}

TEST_CASE("Legendre representation on cycles") {
  const C3 z{-I, 0.0, 0.0}, zp{I * std::cosh(0.7), I * std::sinh(0.7), 0.0};
  KernelOptions o;
  o.cycle.boost = LorentzElement::boost01(0.9) * LorentzElement::rot12(1.1);
  for (double nu : {0.0, 1.3}) {
    double ex = oracle::conical_p_series(nu, std::cosh(0.7));
    CHECK(std::abs(legendre_rep(nu, z, zp, +1) - ex) < 1e-9);
    CHECK(std::abs(legendre_rep(nu, z, zp, +1, o) - ex) < 1e-9);
  }
}

TEST_CASE("inversion of a closed-form transform") {
  LorentzFHTransform ft(
      [](const std::vector<R3>& xi, cplx s, int side, cplx* out) {
        for (std::size_t k = 0; k < xi.size(); ++k)
          out[k] = side > 0 ? -M_PI * M_PI * std::pow(bilinear(w, to_c3(xi[k])), s) : cplx(0.0);
      },
      "cauchy");
  std::mt19937_64 rng(12);
  for (int k = 0; k < 4; ++k) {
    C3 z = random_tuboid_point(TuboidLabel::TMinus, rng);
    cplx ex = oracle::cauchy(z, w);
    InverseResult r = fh_inverse_detail(ft, z, +1);
    CHECK(std::abs(r.value - ex) < 1e-7 * std::abs(ex));
    CHECK(r.alpha_change <= 1e-5);
  }
  CHECK_THROWS_AS(fh_inverse(ft, C3{I, 0.0, 0.0}, +1), Error);
}

TEST_CASE("adapted cycle frame maps a half-circle point to z") {
  std::mt19937_64 rng(5);
  for (TuboidLabel t : {TuboidLabel::TPlus, TuboidLabel::TMinus}) {
    C3 z = random_tuboid_point(t, rng);
    LorentzElement g = lorentz_frame(z);
    C3 u = g.inverse().apply(z);
    CHECK(std::abs(u[0].real()) < 1e-10);
    CHECK(std::abs(u[1]) < 1e-10);
    CHECK(std::abs(u[2].imag()) < 1e-10);
  }
}

TEST_CASE("J kernel closed form") {
  for (double x : {0.0, 0.5, 2.0, 5.0}) CHECK(std::abs(j_kernel_numeric(x) - j_kernel_closed(x)) < 1e-10);
}

TEST_CASE("zero transform") {
  LorentzFHTransform z = LorentzFHTransform::zero();
  CHECK(z(ConePoint::on_circle(0.1).r3(), 0.3, +1) == cplx(0.0));
  LorentzFHTransform fz(FunctionOnX::zero());
  CHECK(fz(ConePoint::on_circle(0.1).r3(), 0.3, -1) == cplx(0.0));
}
