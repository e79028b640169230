#ifndef HEUN_TAYLOR_STEP_HPP
#define HEUN_TAYLOR_STEP_HPP

#include <optional>
#include <vector>

#include "heun/core.hpp"

namespace heun::taylor_step {

/// Expansion about an ordinary point z0 with prescribed value and derivative.
struct StepSeed {
    Complex z0{};
    Complex H0{};
    Complex H0p{};
};

/// Taylor coefficients about seed.z0 (4-term recurrence), c_0 = H0, c_1 = H0p.
std::vector<Complex> step_coeffs(const Params& p, const StepSeed& seed, int up_to);

/// Sum the local expansion at z, |z - z0| < min(|z0|, |z0-1|).
EvalQuad eval_step(const Params& p, const StepSeed& seed, Complex z, const Config& cfg);

/// Residual-based error estimate |f_under(z) - sum(z)| built from the
/// truncated series' own sums; nullopt near z* = q/alpha where the formula
/// loses significance.
std::optional<double> residual_estimate(const Params& p, Complex z,
                                        Complex sum, Complex sum1, Complex sum2);

/// sqrt(N)*|last term| + machine_eps*N*|partial sum|.
double heuristic_estimate(double last_term_mag, long n_terms,
                          double partial_sum_mag, double machine_eps);

/// True when z is inside the relative guard around z* = q/alpha where the
/// residual estimate is unreliable.
bool near_z_star(const Params& p, Complex z);

} // namespace heun::taylor_step

#endif
