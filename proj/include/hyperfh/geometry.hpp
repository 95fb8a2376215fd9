#pragma once

#include <array>
#include <complex>
#include <random>

#include "hyperfh/errors.hpp"

namespace hyperfh {

using cplx = std::complex<double>;
using C3 = std::array<cplx, 3>;
using R3 = std::array<double, 3>;

inline constexpr double tol_quadric = 1e-9;
inline constexpr double tol_chart = 1e-12;
inline constexpr double tol_class = 1e-10;
inline constexpr double tol_group = 1e-9;

inline const R3 base_point{0.0, 0.0, 1.0};

/// Minkowski form a0 b0 - a1 b1 - a2 b2 (no conjugation).
inline cplx bilinear(const C3& a, const C3& b) { return a[0] * b[0] - a[1] * b[1] - a[2] * b[2]; }
inline double bilinear(const R3& a, const R3& b) { return a[0] * b[0] - a[1] * b[1] - a[2] * b[2]; }

inline C3 to_c3(const R3& r) { return {cplx(r[0]), cplx(r[1]), cplx(r[2])}; }
inline R3 re(const C3& z) { return {z[0].real(), z[1].real(), z[2].real()}; }
inline R3 im(const C3& z) { return {z[0].imag(), z[1].imag(), z[2].imag()}; }
inline C3 conj(const C3& z) { return {std::conj(z[0]), std::conj(z[1]), std::conj(z[2])}; }
double norm2(const C3& z);

/// Point of the complex hyperboloid z^2 = -1.
class ComplexPoint3 {
 public:
  ComplexPoint3(cplx z0, cplx z1, cplx z2);
  explicit ComplexPoint3(const C3& z) : ComplexPoint3(z[0], z[1], z[2]) {}
  const C3& c3() const { return z_; }
  cplx operator[](int k) const { return z_[k]; }
  R3 x() const { return re(z_); }
  R3 y() const { return im(z_); }

 private:
  C3 z_;
};

/// Real null vector with xi0 > 0.
class ConePoint {
 public:
  ConePoint(double xi0, double xi1, double xi2);
  static ConePoint on_circle(double alpha);  // (1, cos a, sin a)
  const R3& r3() const { return xi_; }
  double operator[](int k) const { return xi_[k]; }

 private:
  R3 xi_;
};

/// Complex null vector.
class ComplexConePoint {
 public:
  ComplexConePoint(cplx xi0, cplx xi1, cplx xi2);
  explicit ComplexConePoint(const C3& xi) : ComplexConePoint(xi[0], xi[1], xi[2]) {}
  static ComplexConePoint on_circle(cplx phi);  // (1, sin Phi, cos Phi)
  const C3& c3() const { return xi_; }
  cplx operator[](int k) const { return xi_[k]; }

 private:
  C3 xi_;
};

enum class TuboidLabel { TPlus, TMinus, TRight, TLeft, T0, RealX, OffQuadric };
const char* label_name(TuboidLabel t);

struct Classification {
  TuboidLabel label;
  double y2;   // Minkowski square of Im z
  double y0;
  int eps;     // orientation sign, 0 unless chiral
};

Classification classify_detail(const C3& z);
inline TuboidLabel classify(const C3& z) { return classify_detail(z).label; }

/// sgn Det(e, x, y); +1, -1 or 0.
int orientation_sign(const R3& x, const R3& y, const R3& e = {1.0, 0.0, 0.0});

struct ChartLM {
  cplx lambda, mu;
};
struct ChartThetaPsi {
  cplx theta, psi;
};

ChartLM chart_lm(const C3& z);
C3 chart_lm_inv(const ChartLM& c);
inline C3 chart_lm_inv(cplx lambda, cplx mu) { return chart_lm_inv(ChartLM{lambda, mu}); }
ChartThetaPsi chart_tp(const C3& z);
C3 chart_tp_inv(const ChartThetaPsi& c);
inline C3 chart_tp_inv(cplx theta, cplx psi) { return chart_tp_inv(ChartThetaPsi{theta, psi}); }

/// Real point of X in the (theta, psi) chart, with lambda, mu computed without cancellation.
struct RealChartPoint {
  R3 x;
  double lambda, mu;
  double d;  // x0 + x1
};
RealChartPoint real_point_tp(double theta, double psi);

/// Membership tests in the (theta, Psi) chart.
bool in_tright_tp(const ChartThetaPsi& c);
bool in_tleft_tp(const ChartThetaPsi& c);

enum class MeasureChart { LM, Intrinsic };
double measure_density(const R3& x, MeasureChart chart);
double measure_density_lm(double lambda, double mu);

/// (z - z')^2 = -2([z.z'] + 1).
cplx cauchy_quadratic(const C3& z, const C3& zp);
cplx cauchy_quadratic_lm(const ChartLM& a, const ChartLM& b);

/// lambda_alpha = -1/(lambda - tan(alpha/2)).
cplx homographic(cplx lambda, double alpha);

using Mat3 = std::array<std::array<double, 3>, 3>;

class LorentzElement {
 public:
  explicit LorentzElement(const Mat3& g);
  static LorentzElement identity();
  static LorentzElement boost01(double chi);  // stabilizes b
  static LorentzElement boost02(double chi);
  static LorentzElement rot12(double angle);
  static LorentzElement random(std::mt19937_64& rng);
  const Mat3& matrix() const { return g_; }
  LorentzElement operator*(const LorentzElement& o) const;
  LorentzElement inverse() const;
  C3 apply(const C3& z) const;
  R3 apply(const R3& x) const;

 private:
  LorentzElement(const Mat3& g, bool) : g_(g) {}
  Mat3 g_;
};

C3 apply_group(const LorentzElement& g, const C3& z);

/// Newton iteration onto z^2 = -1 along the radial direction.
C3 project_to_quadric(const C3& z);

/// Random point in the tuboid mapped from the quadrant (eps_lambda, eps_mu) of the chart.
C3 random_tuboid_point(TuboidLabel t, std::mt19937_64& rng, double im_min = 0.2, double im_max = 1.5,
                       double re_max = 2.0);
/// Quadrant (eps_lambda, eps_mu) holding the chart image of the given tuboid.
std::pair<int, int> quadrant_of(TuboidLabel t);
TuboidLabel tuboid_of_quadrant(int eps_lambda, int eps_mu);

}  // namespace hyperfh
