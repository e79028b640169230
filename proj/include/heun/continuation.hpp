#ifndef HEUN_CONTINUATION_HPP
#define HEUN_CONTINUATION_HPP

#include <utility>
#include <vector>

#include "heun/core.hpp"

namespace heun::continuation {

/// Polyline from the expansion origin to the target point.
struct Path {
    std::vector<Complex> waypoints;
};

/// Accumulated accounting of one continuation run.
struct Trace {
    double r_sigma = 0.0;       // sum of per-evaluation error estimates
    long n_sigma = 0;           // sum of per-evaluation term counts + evaluation count
    int steps = 0;              // Taylor hops (excludes the seed evaluation)
    std::vector<Complex> hops;  // visited expansion centers, diagnostics
};

/// [0, z], or [0, 1+-i, z] for z in omega_± = {Re z > 1, 0 < ±Im z < Re z};
/// on-cut targets (Im z = 0, Re z > 1) route via 1+i (upper-limit convention).
Path build_default_path(Complex z);

/// Taylor-step continuation along the polyline, starting from a seed quad
/// valid at waypoints.front(). Returns the quad at waypoints.back() with
/// r = r_sigma, n_terms = n_sigma.
std::pair<EvalQuad, Trace> continue_along(const Params& p, const Path& path,
                                          const EvalQuad& seed, const Config& cfg);

/// Single-valued solutions on the cut plane: local series for |z| < kappa,
/// otherwise continuation along the default path seeded at kappa*e^{i arg z}.
/// Applies the e^{-eps z} reduction when Re(-eps z) > 0.
EvalQuad eval_cl(const Params& p, Complex z, const Config& cfg);
EvalQuad eval_cs(const Params& p, Complex z, const Config& cfg);
std::pair<EvalQuad, Trace> eval_cl_traced(const Params& p, Complex z, const Config& cfg);
std::pair<EvalQuad, Trace> eval_cs_traced(const Params& p, Complex z, const Config& cfg);

/// Continuation strictly along a user polyline starting at 0 — no region
/// shortcuts, no cut conventions. Evaluates the multi-valued function.
EvalQuad eval_multivalued(const Params& p, const Path& path, Solution which,
                          const Config& cfg);

} // namespace heun::continuation

#endif
