#ifndef HEUN_CONNECTION_HPP
#define HEUN_CONNECTION_HPP

#include "heun/core.hpp"

namespace heun::connection {

/// Coefficients expressing a solution at 0 in the basis of local solutions
/// at 1 (mirrored parameters, argument 1-z).
struct OnePair {
    Complex c1{};
    Complex c2{};
    double residual = 0.0;   // accumulated error estimate of the matching solve
};

/// Per-sector data connecting the formal solutions at infinity with the
/// local solutions at 0: A_inf = E1*L + E2*S, B_inf = D1*L + D2*S, and
/// d = [[E1,E2],[D1,D2]]^{-1}.
struct InfSet {
    Complex E1{}, E2{}, D1{}, D2{};
    Complex d11{}, d12{}, d21{}, d22{};
    double residual = 0.0;
};

/// (C1,C2) for which = L, (C1',C2') for which = S; matched at z = 1/2 and
/// cached per exact parameter bits.
OnePair match_at_one(const Params& p, Solution which, const Config& cfg);

/// E±, D±, d± for sector = +1 (Im z > 0) or -1 (Im z < 0); cached.
InfSet match_at_infinity(const Params& p, int sector, const Config& cfg);

/// Evaluation through the z = 1 basis, for |z - 1| < near_one_radius.
EvalQuad eval_near_one(const Params& p, Complex z, Solution which, const Config& cfg);

/// Evaluation through the infinity basis, for |eps z| > far-field radius.
EvalQuad eval_far_field(const Params& p, Complex z, Solution which, const Config& cfg);

/// Number of matching solves performed so far (cache diagnostics).
long matching_solve_count();

/// Drop all cached coefficients (test support).
void clear_cache();

} // namespace heun::connection

#endif
