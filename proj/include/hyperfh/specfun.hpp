#pragma once

#include <vector>

#include "hyperfh/geometry.hpp"

namespace hyperfh {

/// P_{-1/2+i nu}(x) for x >= 1, from (1/pi) int_0^pi (x + sqrt(x^2-1) cos phi)^{-1/2+i nu} dphi.
double conical_p(double nu, double x);

/// Same Laplace integral for complex argument with Re Z > 0 (principal powers).
cplx conical_p_complex(cplx nu, cplx Z);

/// Q_{-1/2+i nu}(x) = int_v^inf exp(-i nu t) / sqrt(2 (cosh t - cosh v)) dt, x = cosh v > 1.
/// Converges for Im nu < 1/2.
cplx conical_q(cplx nu, double x);
inline cplx conical_q(double nu, double x) { return conical_q(cplx(nu), x); }

/// Second-kind Legendre Q_l(Z), principal branch, Z off [-1, 1].
cplx legendre_q_int(int ell, cplx Z);
/// Q_0 .. Q_L in one pass.
std::vector<cplx> legendre_q_all(int L, cplx Z);

/// nu tanh(pi nu) / (e^{sign pi nu} cosh(pi nu)).
double mehler_weight(double nu, int sign);
/// nu tanh(pi nu) / cosh(pi nu).
double mehler_weight_sym(double nu);

/// Residual of |1/(1-x) - pi int_0^inf nu tanh sech P_{-1/2+i nu}(-x) d nu| for x <= -1.
double mehler_residual(double x);

}  // namespace hyperfh
