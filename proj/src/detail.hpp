#ifndef HEUN_SRC_DETAIL_HPP
#define HEUN_SRC_DETAIL_HPP

#include <cmath>

#include "heun/core.hpp"
#include "heun/taylor_step.hpp"

namespace heun::detail {

// Termination: the partial sums of f and f' must be bitwise unchanged for
// three consecutive terms. A single unchanged pair is not enough: a lone
// zero coefficient (q = 0, alpha != 0) stalls the sums for one step, and the
// 4-term recurrence can revive them from depth 3.
struct Settle {
    Complex prev_f{}, prev_fp{};
    int stable = 0;
    bool first = true;

    bool update(Complex f, Complex fp) {
        if (!first && f == prev_f && fp == prev_fp) {
            if (++stable >= 3)
                return true;
        } else {
            stable = 0;
        }
        first = false;
        prev_f = f;
        prev_fp = fp;
        return false;
    }
};

// Assemble an EvalQuad from accumulated sums: convergence guard, finiteness
// check, and the error estimate (max of the residual- and series-based
// estimators away from z* = q/alpha, series-based only near it).
inline EvalQuad finish_quad(const Params& p, Complex z, Complex f, Complex fp,
                            Complex fpp, double last_term_mag, long n_terms,
                            bool hit_max_terms, const Config& cfg) {
    if (hit_max_terms && last_term_mag > 1e-9 * (1.0 + std::abs(f)))
        throw Error(Errc::no_convergence,
                    "series did not settle within max_terms");
    if (!std::isfinite(f.real()) || !std::isfinite(f.imag()) ||
        !std::isfinite(fp.real()) || !std::isfinite(fp.imag()))
        throw Error(Errc::overflow, "series summation overflowed");
    double r = taylor_step::heuristic_estimate(
        last_term_mag, n_terms > 0 ? n_terms : 1, std::abs(f), cfg.machine_eps);
    if (auto res = taylor_step::residual_estimate(p, z, f, fp, fpp))
        r = std::max(r, *res);
    return {f, fp, r, n_terms};
}

inline bool is_positive_integer_ge2(Complex g, double tau_int) {
    if (std::abs(g.imag()) > tau_int)
        return false;
    double re = g.real();
    return re >= 2.0 - tau_int && std::abs(re - std::round(re)) <= tau_int;
}

} // namespace heun::detail

#endif
