#include <random>

#include "doctest.h"
#include "hyperfh/geometry.hpp"
#include "oracles.hpp"

using namespace hyperfh;

namespace {

const cplx I(0.0, 1.0);
C3 z_u(double u) { return {I * std::sin(u), 0.0, std::cos(u)}; }
C3 z_v(double v) { return {0.0, I * std::sinh(v), std::cosh(v)}; }

}  // namespace

TEST_CASE("labels of the generators") {
  CHECK(classify({I, 0.0, 0.0}) == TuboidLabel::TPlus);
  CHECK(classify({-I, 0.0, 0.0}) == TuboidLabel::TMinus);
  CHECK(classify(z_v(0.5)) == TuboidLabel::TRight);
  CHECK(classify(z_v(-0.5)) == TuboidLabel::TLeft);
  CHECK(classify({0.0, 0.0, 1.0}) == TuboidLabel::RealX);
  CHECK(classify({1.0, 0.0, 0.0}) == TuboidLabel::OffQuadric);
  auto d = classify_detail({I, 0.0, 0.0});
  CHECK(d.y2 == doctest::Approx(1.0));
  CHECK(d.y0 == doctest::Approx(1.0));
  CHECK(classify_detail(z_v(0.5)).eps == -1);
  CHECK(std::string(label_name(TuboidLabel::TLeft)) == "TLeft");
}

TEST_CASE("half circles sweep T+ and T-") {
  for (double u = 0.1; u < M_PI; u += 0.3) {
    CHECK(classify(z_u(u)) == TuboidLabel::TPlus);
    CHECK(classify(z_u(-u)) == TuboidLabel::TMinus);
  }
}

TEST_CASE("group action preserves the quadric and every tuboid") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 100; ++k) {
    LorentzElement g = LorentzElement::random(rng);
    for (const C3& z : {z_u(0.7), z_u(-1.9), z_v(0.4), z_v(-1.1)}) {
      C3 w = g.apply(z);
      CHECK(std::abs(bilinear(w, w) + 1.0) < 1e-9 * (1.0 + norm2(w)));
      CHECK(classify(w) == classify(z));
    }
  }
}

TEST_CASE("invalid group elements are rejected") {
  Mat3 refl{{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}};
  CHECK_THROWS_AS(LorentzElement{refl}, Error);
  Mat3 time_rev{{{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}}};
  CHECK_THROWS_AS(LorentzElement{time_rev}, Error);
}

TEST_CASE("chart roundtrips and quadrant law on random tuboid points") {
  std::mt19937_64 rng(9);
  for (TuboidLabel t : {TuboidLabel::TPlus, TuboidLabel::TMinus, TuboidLabel::TRight, TuboidLabel::TLeft}) {
    auto [el, em] = quadrant_of(t);
    CHECK(tuboid_of_quadrant(el, em) == t);
    for (int k = 0; k < 40; ++k) {
      C3 z = random_tuboid_point(t, rng);
      CHECK(classify(z) == t);
      C3 w = chart_lm_inv(chart_lm(z));
      C3 v = chart_tp_inv(chart_tp(z));
      for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(w[i] - z[i]) < 1e-10 * (1.0 + std::abs(z[i])));
        CHECK(std::abs(v[i] - z[i]) < 1e-10 * (1.0 + std::abs(z[i])));
      }
    }
  }
}

TEST_CASE("lambda and mu of a real point") {
  RealChartPoint p = real_point_tp(0.4, -0.3);
  CHECK(std::abs(bilinear(p.x, p.x) + 1.0) < 1e-12);
  ChartLM c = chart_lm(to_c3(p.x));
  CHECK(c.lambda.real() == doctest::Approx(p.lambda));
  CHECK(c.mu.real() == doctest::Approx(p.mu));
  CHECK(measure_density_lm(p.lambda, p.mu) == doctest::Approx(1.0 / ((p.lambda - p.mu) * (p.lambda - p.mu))));
}

TEST_CASE("cauchy quadratic equals the squared difference") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    C3 a = random_tuboid_point(TuboidLabel::TMinus, rng), b = random_tuboid_point(TuboidLabel::TPlus, rng);
    cplx d = oracle::sq_diff(a, b);
    CHECK(std::abs(cauchy_quadratic(a, b) - d) < 1e-11 * std::abs(d));
    ChartLM ca = chart_lm(a), cb = chart_lm(b);
    CHECK(std::abs(cauchy_quadratic_lm(ca, cb) - d) < 1e-9 * std::abs(d));
  }
}

TEST_CASE("Im [z.xi] has a fixed sign for Lorentz tuboid points") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 40; ++k) {
    C3 zp = random_tuboid_point(TuboidLabel::TPlus, rng), zm = random_tuboid_point(TuboidLabel::TMinus, rng);
    for (int j = 0; j < 12; ++j) {
      C3 xi = to_c3(ConePoint::on_circle(0.5 * j).r3());
      CHECK(bilinear(zp, xi).imag() > 0.0);
      CHECK(bilinear(zm, xi).imag() < 0.0);
    }
  }
}

TEST_CASE("points off the quadric") {
  CHECK_THROWS_AS(ComplexPoint3(1.0, 0.0, 0.0), Error);
  CHECK_THROWS_AS(ConePoint(1.0, 1.0, 1.0), Error);
  C3 p = project_to_quadric({I * 1.01, 0.0, 0.0});
  CHECK(std::abs(bilinear(p, p) + 1.0) < 1e-12);
}
