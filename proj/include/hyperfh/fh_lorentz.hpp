#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hyperfh/geometry.hpp"
#include "hyperfh/hardy.hpp"

namespace hyperfh {

/// t_(side)^s = Y(t)|t|^s + e^{side i pi s} Y(-t)|t|^s.
cplx boundary_power(double t, cplx s, int side);

/// Principal power for complex base, boundary power for a real one.
cplx side_power(cplx base, cplx s, int side);

inline cplx spectral_s(double nu) { return cplx(-0.5, -nu); }

/// Theorem-2 compatibility: H2(T-) <-> side +, H2(T+) <-> side -.
int transform_side_for(TuboidLabel t);
TuboidLabel inverse_domain(int side);

struct FHOptions {
  double tau_min = -20.0;
  double tau_max = 55.0;
  double panel = 2.5;
  double k_tol = 1e-10;
};

enum class FHMethod { RotatedChart, Chart };

/// f_tilde_{side,nu}(xi) as an evaluator on the cone.
class LorentzFHTransform {
 public:
  using Evaluator = std::function<void(const std::vector<R3>& xi, cplx s, int side, cplx* out)>;

  /// Numerical transform of f (profiles cached per circle angle).
  explicit LorentzFHTransform(FunctionOnX f, FHOptions opt = {});
  /// Transform given by a closed form.
  LorentzFHTransform(Evaluator ev, std::string label);
  static LorentzFHTransform zero();

  cplx operator()(const R3& xi, double nu, int side) const;
  cplx at_s(const R3& xi, cplx s, int side) const;
  cplx at_alpha(double alpha, double nu, int side) const;
  /// Batched evaluation at one s.
  void eval(const std::vector<R3>& xi, cplx s, int side, cplx* out) const;

  bool has_source() const { return source_ != nullptr; }
  const FunctionOnX& source() const;
  const std::string& label() const { return label_; }
  std::size_t cached_profiles() const;
  /// Real points p with the transform singular on {[xi.p] = 0}; cycle rules break there.
  void set_singular_points(std::vector<R3> p) { singular_ = std::move(p); }
  const std::vector<R3>& singular_points() const { return singular_; }

 private:
  struct State;
  std::shared_ptr<State> st_;
  std::shared_ptr<const FunctionOnX> source_;
  Evaluator ev_;
  std::string label_;
  std::vector<R3> singular_;
};

cplx fh_direct(const FunctionOnX& f, const ConePoint& xi, double nu, int side,
               FHMethod method = FHMethod::RotatedChart);
/// Direct chart integral with complex s, -1 < Re s < 0.
cplx fh_direct_chart(const FunctionOnX& f, double alpha, cplx s, int side, double tol = 1e-9);

/// C with |f_tilde| <= C xi0^{-1/2} max(e^{side pi nu}, 1) on a grid, nu <= nu_max.
double fit_bound_constant(const LorentzFHTransform& ft, int side, double nu_max = 5.0);

struct VanishingReport {
  double max_residual = 0.0;
  double reference = 0.0;  // largest transform value on the other side, when defined
  double worst_alpha = 0.0, worst_nu = 0.0;
  int worst_side = 0;
};

/// Transforms that must vanish for a certified Hardy member, over 5 xi x 5 nu.
VanishingReport support_vanishing(const FunctionOnX& f, double tol_vanish = 1e-6, bool throw_on_fail = true);
VanishingReport support_vanishing(const LorentzFHTransform& ft, TuboidLabel member, double tol_vanish = 1e-6,
                                  bool throw_on_fail = true);

struct CycleSpec {
  std::optional<LorentzElement> boost;  // gamma = g gamma0, identity when empty
  int n_alpha = 64;
};

/// Points and weights of a discretized cycle, d mu = d alpha / 2.
void cycle_nodes(const CycleSpec& c, std::vector<R3>& xi, std::vector<double>& w);

struct InverseOptions {
  CycleSpec cycle;
  double tol = 1e-9;
  bool symmetric_range = false;  // integrate over the whole nu axis with 1/(4 pi^2)
  bool adapt_cycle = true;       // without an explicit boost, use g gamma0 with z = g z_u
  // the cycle rule doubles until successive results agree to alpha_tol (relative)
  double alpha_tol = 1e-5;
  int max_alpha = 1024;
};

struct InverseResult {
  cplx value;
  double decay_rate;
  double nu_error;
  long nu_evaluations;
  int n_alpha = 0;
  double alpha_change = 0.0;
};

/// g with z = g (i sin u, 0, cos u) for z in T+ or T-.
LorentzElement lorentz_frame(const C3& z);

InverseResult fh_inverse_detail(const LorentzFHTransform& ft, const C3& z, int side, const InverseOptions& opt = {});
cplx fh_inverse(const LorentzFHTransform& ft, const C3& z, int side, const InverseOptions& opt = {});

struct KernelOptions {
  CycleSpec cycle;
  double tol = 1e-11;
  bool symmetric_range = false;
  int max_alpha = 4096;
};

/// -(1/2) int weight d nu int [z.xi]^{-1/2+i nu} [xi.z']^{-1/2-i nu} d mu.
cplx cauchy_kernel_spectral(const C3& z, const C3& zp, int side, const KernelOptions& opt = {});
/// Logarithmic single-integral form over the cycle.
cplx cauchy_kernel_cf(const C3& z, const C3& zp, int side, const KernelOptions& opt = {});
/// (e^{-side pi nu}/pi) int [z.xi]^{-1/2+i nu} [xi.z']^{-1/2-i nu} d mu.
cplx legendre_rep(double nu, const C3& z, const C3& zp, int side, const KernelOptions& opt = {});
/// 1/(z' - z)^2.
cplx cauchy_kernel_exact(const C3& z, const C3& zp);

/// J(w) = int_R e^{i w nu} nu tanh(pi nu) / cosh(pi nu) d nu, numerically.
cplx j_kernel_numeric(double w);
double j_kernel_closed(double w);

struct PlancherelResult {
  cplx lhs, rhs;
};

/// component = side of the transform pairing: +1 pairs f^- with f_tilde_+, -1 pairs f^+ with f_tilde_-.
PlancherelResult plancherel_pairing(const FunctionOnX& f, const FunctionOnX& g, int side, double tol = 1e-6);

}  // namespace hyperfh
