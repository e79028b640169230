#ifndef HEUN_SERIES_ZERO_HPP
#define HEUN_SERIES_ZERO_HPP

#include <vector>

#include "heun/core.hpp"

namespace heun::series_zero {

/// b_0..b_{up_to} of the power series of the analytic local solution at 0
/// (requires gamma not a nonpositive integer).
std::vector<Complex> coeffs_generic(const Params& p, int up_to, const Config& cfg);

/// Coefficients of the logarithmic local representation for gamma in
/// {0,-1,-2,...}:  sum_{n != n_star} c_n z^n + log(z) * sum_{n >= n_star} s_n z^n,
/// n_star = 1 - gamma, with the normalization c_{n_star} = 0.
struct LogCoeffs {
    std::vector<Complex> c;
    std::vector<Complex> s;   // s[n] = 0 for n < n_star
    int n_star = 0;
};
LogCoeffs coeffs_log(const Params& p, int up_to, const Config& cfg);

/// Coefficients of the gamma = 1 companion solution
/// sum_{n>=1} d_n z^n + log(z) * sum_{n>=0} t_n z^n.
struct GammaOneCoeffs {
    std::vector<Complex> d;
    std::vector<Complex> t;
};
GammaOneCoeffs coeffs_gamma_one(const Params& p, int up_to, const Config& cfg);

/// Local solution normalized to 1 at z = 0, summed at z (|z| < 1; callers
/// keep |z| < kappa for fast convergence).
EvalQuad eval_cl_at0(const Params& p, Complex z, const Config& cfg);

/// Companion local solution at z = 0 (exponent 1-gamma for gamma != 1,
/// logarithmic representation for gamma = 1).
EvalQuad eval_cs_at0(const Params& p, Complex z, const Config& cfg);

/// Parameter map of the identity
/// HeunC(q,a,g,d,e;z) = e^{-e z} HeunC(q-e g, a-e(g+d), g, d, -e; z).
Params exp_transform(const Params& p);

/// Mixing constant A of the gamma in Z<=0 variant of the identity above:
/// HeunCl + A*HeunCs = e^{-e z} HeunCl(transformed).
Complex log_mixing_constant(const Params& p, const Config& cfg);

} // namespace heun::series_zero

#endif
