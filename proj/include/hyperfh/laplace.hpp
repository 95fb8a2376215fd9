#pragma once

#include <functional>
#include <string>
#include <utility>

#include "hyperfh/fh_lorentz.hpp"
#include "hyperfh/io.hpp"

namespace hyperfh {

/// Reduced retarded kernel r(cosh v), v >= 0; the advanced one is the same function.
class ReducedVolterraKernel {
 public:
  using Eval = std::function<double(double)>;

  static ReducedVolterraKernel zero();
  /// e^{-rate cosh v}
  static ReducedVolterraKernel exp_cosh(double rate);
  /// cosh v e^{-rate cosh v}
  static ReducedVolterraKernel cosh_exp_cosh(double rate);
  /// u_cut: r is negligible (below 1e-30 of its scale) for cosh v > u_cut.
  static ReducedVolterraKernel custom(Eval r, double u_cut, std::string label);
  static ReducedVolterraKernel from_json(const json& j);

  double operator()(double x) const { return r_(x); }
  bool is_zero() const { return zero_; }
  double u_cut() const { return u_cut_; }
  double v_cut() const;
  const json& spec() const { return spec_; }

  /// Exponential rate c with e^{v/2} |r(cosh v)| <= C e^{-c v} on the tail of the sample grid.
  double witness_rate() const;
  /// Throws DecayViolated unless e^{v/2} r(cosh v) is integrable on the sample grid.
  void check_decay() const;

 private:
  Eval r_;
  double u_cut_ = 1.0;
  bool zero_ = false;
  json spec_;
};

/// G(nu) = int_0^inf Q_{-1/2+i nu}(cosh v) r(cosh v) sinh v dv, Im nu <= 0.
cplx laplace_g(const ReducedVolterraKernel& r, cplx nu, double tol = 1e-10);
/// H(nu) = int_0^inf P_{-1/2+i nu}(cosh v) r(cosh v) sinh v dv.
cplx laplace_h(const ReducedVolterraKernel& r, double nu, double tol = 1e-10);
/// (G(nu) - G(-nu)) / (-i pi tanh pi nu)
cplx h_from_g(const ReducedVolterraKernel& r, double nu, double tol = 1e-10);

/// Orbit-representative integrals over the future cone of b in the (t, v) charts.
struct RetardedParts {
  cplx F;       // xi = (1, 0, -1)
  cplx region_I;   // xi = (1, 0, 1), x0 - x2 > 0
  cplx region_II;  // xi = (1, 0, 1), x0 - x2 < 0, without the side phase
};
RetardedParts retarded_parts(const ReducedVolterraKernel& r, cplx nu, double tol = 1e-10);

/// FH transform of R(x) = r(x2) Y(x0) by the (t, v) charts and homogeneity.
cplx fh_of_retarded(const ReducedVolterraKernel& r, const ConePoint& xi, double nu, int side, double tol = 1e-10);
/// FH transform of A(x) = r(x2) Y(-x0), obtained by time reflection.
cplx fh_of_advanced(const ReducedVolterraKernel& r, const ConePoint& xi, double nu, int side, double tol = 1e-10);
/// FH transform of R by a direct 2D integral in (v, chi), x = (sinh v cosh chi, sinh v sinh chi, cosh v).
cplx fh_invariant_direct(const ReducedVolterraKernel& r, const ConePoint& xi, double nu, int side, double tol = 1e-8);

/// FH transforms (side +, side -) of C = -i (R - A).
std::pair<cplx, cplx> fh_of_commutator(const ReducedVolterraKernel& r, const ConePoint& xi, double nu,
                                       double tol = 1e-10);

enum class Perikernel { Wminus, Wplus };

/// Transforms of the boundary values of the invariant perikernel attached to r.
cplx perikernel_fh(const ReducedVolterraKernel& r, Perikernel which, const ConePoint& xi, double nu, int side,
                   double tol = 1e-10);

/// Closed-form transform of W^-: pi H(nu) [xi.b]_+^{-1/2-i nu}, H tabulated lazily.
LorentzFHTransform perikernel_transform(const ReducedVolterraKernel& r, Perikernel which, double tol = 1e-10);

using SpectralFn = std::function<cplx(double)>;

/// w(Z) = (i/2pi) int_R nu P_{-1/2-i nu}(Z) G(nu) / cosh(pi nu) d nu.
cplx kl_reconstruct(const SpectralFn& G, cplx Z, double tol = 1e-8);
/// w(Z) = (1/2) int_0^inf nu tanh(pi nu) / cosh(pi nu) P_{-1/2-i nu}(Z) H(nu) d nu.
cplx kl_reconstruct_h(const SpectralFn& H, cplx Z, double tol = 1e-8);

}  // namespace hyperfh
