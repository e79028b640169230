#ifndef HEUN_ASYMPTOTICS_HPP
#define HEUN_ASYMPTOTICS_HPP

#include <vector>

#include "heun/core.hpp"

namespace heun::asymptotics {

/// beta_0..beta_{up_to} of the power-type formal solution at infinity
/// (-z)^{-alpha/eps} * sum beta_n n!/(eps z)^n. Requires eps != 0.
std::vector<Complex> beta_coeffs(const Params& p, int up_to);

/// Power-type solution at infinity, optimally truncated at the series'
/// least term; r = first omitted term times the prefactor magnitude.
EvalQuad eval_a_inf(const Params& p, Complex z, const Config& cfg);

/// Exponential partner e^{-eps z} * A_inf(transformed params; z).
EvalQuad eval_b_inf(const Params& p, Complex z, const Config& cfg);

/// Coefficients of the eps = 0, alpha != 0 asymptotic solutions
/// z^Lambda e^{±2i sqrt(alpha z)} sum beta_n z^{-n/2}, Lambda = 1/4-(gamma+delta)/2.
/// sign = +1 or -1.
std::vector<Complex> eps_zero_coeffs(const Params& p, int sign, int up_to);

/// Smallest R on a 0.5 grid with min_n n!/R^n below machine_eps.
double far_field_radius(double machine_eps);

} // namespace heun::asymptotics

#endif
