#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hyperfh/geometry.hpp"
#include "hyperfh/hardy.hpp"

namespace hyperfh {

enum class ConeLabel { RealCone, CRight, CLeft, OffCone };
const char* cone_label_name(ConeLabel c);

ConeLabel classify_cone(const C3& xi);

enum class Chirality { Right, Left };
inline TuboidLabel tuboid_of(Chirality c) { return c == Chirality::Right ? TuboidLabel::TRight : TuboidLabel::TLeft; }
inline ConeLabel cone_of(Chirality c) { return c == Chirality::Right ? ConeLabel::CRight : ConeLabel::CLeft; }

/// z^n for integer n >= 0, or 1/z^{-n} by repeated multiplication.
cplx int_power(cplx z, int n);

struct ChiralOptions {
  double tol = 1e-10;
  double psi_max = 35.0;
  int theta_min = 64;
  int theta_max = 8192;
};

/// f_tilde_{chirality, ell}(xi) for xi on the complex cone.
class ChiralFHTransform {
 public:
  /// Fills out[0..L] with the transforms for ell = 0..L.
  using Evaluator = std::function<void(const C3& xi, int L, cplx* out)>;

  ChiralFHTransform(FunctionOnX f, Chirality c, ChiralOptions opt = {});
  ChiralFHTransform(Evaluator ev, Chirality c, std::string label);
  static ChiralFHTransform zero(Chirality c);

  Chirality chirality() const { return chir_; }
  cplx operator()(const C3& xi, int ell) const;
  std::vector<cplx> all(const C3& xi, int L) const;
  const std::string& label() const { return label_; }

 private:
  Evaluator ev_;
  Chirality chir_;
  std::string label_;
};

/// int_X [x.xi]^{-ell-1} f d sigma for ell = 0..L in the (theta, psi) chart.
std::vector<cplx> fh_direct_chiral_all(const FunctionOnX& f, const C3& xi, int L, const ChiralOptions& opt = {});
cplx fh_direct_chiral(const FunctionOnX& f, const C3& xi, int ell, const ChiralOptions& opt = {});

/// xi(Phi) = (1, sin Phi, cos Phi); C-> for Im Phi > 0.
inline C3 cone_circle(cplx Phi) { return {cplx(1.0), std::sin(Phi), std::cos(Phi)}; }

/// gamma(z) = g gamma(z_v), z = g z_v, z_v = (0, i sinh v, cosh v).
class RelativeCycle {
 public:
  RelativeCycle(const C3& z, const LorentzElement& g, double v) : z_(z), g_(g), v_(v) {}
  const C3& base() const { return z_; }
  const LorentzElement& g() const { return g_; }
  double v() const { return v_; }
  /// phi in [-pi/2, pi/2]
  C3 point(double phi) const;
  /// d mu / d phi along the cycle
  static constexpr double measure = -1.0;
  double endpoint_residual() const;

 private:
  C3 z_;
  LorentzElement g_;
  double v_;
};

RelativeCycle make_cycle(const C3& z);

/// Gauss-Legendre nodes on [-pi/2, pi/2].
struct CycleRule {
  std::vector<C3> xi;
  std::vector<double> w;  // includes d mu = -d phi
};
CycleRule cycle_rule(const RelativeCycle& c, int n);

struct SeriesResult {
  cplx value;
  std::vector<cplx> terms;
  double tail_estimate = 0.0;
  double ratio = 0.0;
};

/// Geometric ratio and tail from the last terms.
void geometric_tail(SeriesResult& r, double max_ratio = 0.95);

SeriesResult fh_inverse_chiral(const ChiralFHTransform& ft, const C3& z, int L_max, int n_phi = 64);

/// (-1)^{ell+1} (1/2) int_{gamma(z)} [z.xi]^ell [xi.z']^{-ell-1} d mu
cplx q_rep(int ell, const C3& z, const C3& zp, int n_phi = 0);

/// (1/4) sum (2 ell + 1) int [z.xi]^ell [xi.z']^{-ell-1} d mu
SeriesResult cauchy_kernel_discrete(const C3& z, const C3& zp, int L_max, int n_phi = 0);

}  // namespace hyperfh
