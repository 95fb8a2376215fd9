#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hyperfh/geometry.hpp"
#include "hyperfh/io.hpp"

namespace hyperfh {

/// Boundary-value policy for limits from a half-plane.
inline constexpr double richardson_eps[3] = {1e-2, 5e-3, 2.5e-3};
inline cplx richardson3(cplx f1, cplx f2, cplx f4) { return (8.0 * f4 - 6.0 * f2 + f1) / 3.0; }
/// One more halving, O(eps^4); used where a single evaluation is a 1D integral.
inline cplx richardson4(cplx f1, cplx f2, cplx f4, cplx f8) {
  return (64.0 * f8 - 56.0 * f4 + 14.0 * f2 - f1) / 21.0;
}

/// A function of one complex variable entering a separable term.
class Factor1D {
 public:
  virtual ~Factor1D() = default;
  virtual cplx eval(cplx t) const = 0;
  /// Value on the real axis (a limit for projected factors).
  virtual cplx boundary(double t) const = 0;
  /// +1 holomorphic in Im t > 0, -1 in Im t < 0, 2 for both (zero), 0 for neither.
  virtual int holomorphic_side() const = 0;
  /// Conjugate reflection t -> conj(f(conj t)).
  virtual std::shared_ptr<const Factor1D> conj_reflect() const = 0;
  /// Decay at least like 1/|t| along the real axis.
  virtual bool decays() const { return true; }
};
using FactorPtr = std::shared_ptr<const Factor1D>;

/// num(t)/den(t), ascending coefficients.
class RationalFactor : public Factor1D {
 public:
  RationalFactor(std::vector<cplx> num, std::vector<cplx> den);
  cplx eval(cplx t) const override;
  cplx boundary(double t) const override { return eval(t); }
  int holomorphic_side() const override;
  FactorPtr conj_reflect() const override;
  const std::vector<cplx>& poles() const { return poles_; }
  const std::vector<cplx>& num() const { return num_; }
  const std::vector<cplx>& den() const { return den_; }
  bool decays() const override;  // deg num < deg den

 private:
  std::vector<cplx> num_, den_, poles_;
};

/// Polynomial roots via the companion matrix.
std::vector<cplx> polynomial_roots(const std::vector<cplx>& ascending);

/// Cauchy projection of a factor onto the half-plane eps Im t > 0.
class ProjectedFactor : public Factor1D {
 public:
  ProjectedFactor(FactorPtr base, int eps) : base_(std::move(base)), eps_(eps) {}
  cplx eval(cplx t) const override;
  cplx boundary(double t) const override;
  int holomorphic_side() const override { return eps_; }
  FactorPtr conj_reflect() const override;
  int eps() const { return eps_; }

 private:
  FactorPtr base_;
  int eps_;
};

class ScaledFactor : public Factor1D {
 public:
  ScaledFactor(FactorPtr base, cplx c) : base_(std::move(base)), c_(c) {}
  cplx eval(cplx t) const override { return c_ * base_->eval(t); }
  cplx boundary(double t) const override { return c_ * base_->boundary(t); }
  int holomorphic_side() const override { return c_ == 0.0 ? 2 : base_->holomorphic_side(); }
  FactorPtr conj_reflect() const override;
  bool decays() const override { return base_->decays(); }

 private:
  FactorPtr base_;
  cplx c_;
};

/// (eps / 2 pi i) int h(t') / (t' - t) dt' over the real line, from boundary values of h.
cplx cauchy_1d(const Factor1D& h, int eps, cplx t, double tol = 1e-12);

struct SepTerm {
  FactorPtr a, b;  // R contribution a(lambda) b(mu)
};

struct Decomposition;

struct HardyMembership {
  TuboidLabel label;
  bool certified;
};

/// f on X through f_hat(lambda, mu) = (lambda - mu) R(lambda, mu).
class FunctionOnX {
 public:
  enum class Kind { RationalLM, Builtin, Component };

  static FunctionOnX zero();
  static FunctionOnX cauchy_kernel(const C3& w);  // 1/(x - w)^2
  static FunctionOnX pole_product(cplx a, int p, cplx b, int q, cplx c = 1.0);  // c/((l-a)^p (m-b)^q)
  static FunctionOnX rational_lm(std::vector<std::vector<cplx>> num, std::vector<std::vector<cplx>> den);
  static FunctionOnX from_terms(std::vector<SepTerm> terms, Kind kind, json spec);
  static FunctionOnX from_json(const json& j);
  FunctionOnX operator+(const FunctionOnX& o) const;
  FunctionOnX scaled(cplx c) const;

  Kind kind() const { return kind_; }
  const json& spec() const { return spec_; }
  json to_json() const { return spec_; }
  const std::vector<SepTerm>& terms() const { return terms_; }
  bool separable() const { return separable_; }
  bool is_zero() const { return separable_ && terms_.empty(); }

  cplx R(cplx lambda, cplx mu) const;
  cplx R_real(double lambda, double mu) const;
  cplx fhat(cplx lambda, cplx mu) const { return (lambda - mu) * R(lambda, mu); }
  /// Value on X (real z) or continuation to complex z through the chart.
  cplx eval(const C3& z) const;
  cplx eval_real_tp(double theta, double psi) const;

  /// C_reg = sup |R| (1+|l|)(1+|m|) on a 64 x 64 grid.
  double regularity_constant() const;
  /// Tuboids whose Hardy class is certified from pole locations and degrees.
  std::vector<TuboidLabel> certified_tuboids() const;
  HardyMembership membership(TuboidLabel t) const;
  FunctionOnX conj_reflect() const;

 private:
  Kind kind_ = Kind::Builtin;
  json spec_;
  std::vector<SepTerm> terms_;
  bool separable_ = true;
  // non-separable case: interior and real-axis evaluators of R
  std::shared_ptr<const std::function<cplx(cplx, cplx)>> gen_R_;
  std::shared_ptr<const std::function<cplx(double, double)>> gen_R_real_;
  friend Decomposition decompose(const FunctionOnX& f);
};

enum class ProjectionRoute { Auto, Separable, Generic };

/// F_hat(lambda, mu) for the quadrant (eps_l, eps_m) at an interior chart point.
cplx project_quadrant(const FunctionOnX& f, int eps_l, int eps_m, const ChartLM& p,
                      ProjectionRoute route = ProjectionRoute::Auto, double tol = 1e-11);
/// F_hat / (lambda - mu), finite on the diagonal.
cplx project_quadrant_reduced(const FunctionOnX& f, int eps_l, int eps_m, const ChartLM& p,
                              ProjectionRoute route = ProjectionRoute::Auto, double tol = 1e-11);
/// Boundary value at real (lambda, mu) by the eps-approach with Richardson extrapolation.
cplx project_quadrant_boundary(const FunctionOnX& f, int eps_l, int eps_m, double lambda, double mu);

/// mp 1/pi^2 int_X f(x)/(x - z)^2 d sigma, sign - for T+-, + for the chiral tuboids.
cplx cauchy_rep_intrinsic(const FunctionOnX& f, const C3& z, double tol = 1e-10);

struct Decomposition {
  FunctionOnX plus, minus, right, left;
  const FunctionOnX& component(TuboidLabel t) const;
};

Decomposition decompose(const FunctionOnX& f);

/// Interior evaluator of a component: F_(tub)(z).
cplx component_interior(const FunctionOnX& f, TuboidLabel tub, const C3& z);

}  // namespace hyperfh
