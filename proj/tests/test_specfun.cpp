#include <cmath>

#include "doctest.h"
#include "hyperfh/specfun.hpp"
#include "oracles.hpp"

using namespace hyperfh;

TEST_CASE("conical P against the hypergeometric series") {
  for (double nu : {0.0, 0.3, 1.0, 2.5, 6.0})
    for (double x : {1.0, 1.2, std::cosh(1.0), 2.5}) {
      double a = conical_p(nu, x), b = oracle::conical_p_series(nu, x);
      CHECK(std::abs(a - b) < 1e-11 * std::max(1.0, std::abs(b)));
    }
}

TEST_CASE("conical P is even in nu") {
  for (double x : {1.5, 3.0, 10.0}) CHECK(conical_p(1.7, x) == doctest::Approx(conical_p(-1.7, x)).epsilon(1e-13));
}

TEST_CASE("conical P on both sides of the switch between integral forms") {
  // mpmath legenp(-1/2 + i nu, 0, x, type=3), 30 digits
  const double ref[9][3] = {{3.9, 3, 0.23391511006437252358},   {3.9, 10, -0.017834119485045436864},
                            {3.9, 40, -0.054003825457597399647}, {4.1, 3, 0.23233227481594340255},
                            {4.1, 10, 0.055516458992840919855},  {4.1, 40, -0.0080201197203469345519},
                            {7.0, 3, 0.092074642479061771116},   {7.0, 10, 0.025606675529707035944},
                            {7.0, 40, 0.0011771673286552180501}};
  for (auto& r : ref) CHECK(std::abs(conical_p(r[0], r[1]) - r[2]) < 1e-12);
}

TEST_CASE("complex-argument P agrees with the series") {
  for (cplx Z : {cplx(1.3, 0.2), cplx(1.1, -0.4)}) {
    // series in w = (1 - Z)/2 directly
    cplx w = 0.5 * (1.0 - Z), a(0.5, -0.8), b(0.5, 0.8), term = 1.0, sum = 1.0;
    for (int k = 0; k < 400; ++k) {
      term *= (a + double(k)) * (b + double(k)) / ((k + 1.0) * (k + 1.0)) * w;
      sum += term;
    }
    CHECK(std::abs(conical_p_complex(0.8, Z) - sum) < 1e-11);
  }
}

TEST_CASE("conical Q jump relation and domain") {
  for (double nu : {0.2, 1.1})
    for (double x : {1.4, 4.0}) {
      cplx d = conical_q(nu, x) - conical_q(-nu, x);
      CHECK(std::abs(d + cplx(0.0, M_PI * std::tanh(M_PI * nu)) * conical_p(nu, x)) < 1e-10);
    }
  CHECK_THROWS_AS(conical_q(cplx(0.0, 0.6), 2.0), Error);
  CHECK_THROWS_AS(conical_q(0.5, 1.0), Error);
  CHECK_NOTHROW(conical_q(cplx(0.3, -2.0), 2.0));
}

TEST_CASE("Legendre Q_l: closed forms, Miller recurrence and the Heine sum") {
  // mpmath legenq(l, 0, 3, type=3)
  const double ex[7] = {0.34657359027997265471,  0.039720770839917964126,  0.005456673639644511212,
                        0.00080285430494391330948, 0.00012247987122216146576, 0.000019107860644541267497,
                        3.0266741931757497699e-6};
  auto q = legendre_q_all(6, cplx(3.0));
  for (int l = 0; l <= 6; ++l) CHECK(std::abs(q[l] - ex[l]) < 1e-12 * ex[l]);
  auto fw = oracle::legendre_q(3, 3.0);
  for (int l = 0; l <= 3; ++l) CHECK(std::abs(fw[l] - ex[l]) < 1e-12 * ex[l]);
  CHECK(oracle::heine_partial(0, 3.0) == doctest::Approx(0.3466).epsilon(1e-4));
  CHECK(oracle::heine_partial(1, 3.0) == doctest::Approx(0.4657).epsilon(1e-4));
  auto big = legendre_q_all(25, cplx(3.0));
  cplx s = 0.0;
  for (int l = 0; l <= 25; ++l) s += (2.0 * l + 1.0) * big[l];
  CHECK(std::abs(s - 0.5) < 1e-12);
  // complex argument against the forward recurrence
  cplx Z(0.3, 0.8);
  auto qc = legendre_q_all(30, Z);
  cplx q0 = 0.5 * std::log((Z + 1.0) / (Z - 1.0)), q1 = Z * q0 - 1.0;
  CHECK(std::abs(qc[1] - q1) < 1e-14);
  cplx sum = 0.0;
  for (int l = 0; l <= 30; ++l) sum += (2.0 * l + 1.0) * qc[l];
  CHECK(std::abs(sum - 1.0 / (Z - 1.0)) < 1e-6);
  CHECK_THROWS_AS(legendre_q_all(3, cplx(0.5)), Error);
}

TEST_CASE("Mehler identity and weights") {
  for (double x : {-1.0, -1.5, -3.0}) CHECK(mehler_residual(x) < 1e-9);
  for (double nu : {0.3, 1.2})
    CHECK(mehler_weight(nu, +1) + mehler_weight(nu, -1) == doctest::Approx(2.0 * nu * std::tanh(M_PI * nu)));
  CHECK_THROWS_AS(mehler_residual(0.5), Error);
}
