#include "heun/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "heun/series_zero.hpp"
#include "heun/taylor_step.hpp"

namespace heun::continuation {

namespace {

constexpr double kMinAdaptiveRadius = 1e-3;

bool in_omega(Complex z, int sign) {
    double im = sign * z.imag();
    return z.real() > 1.0 && 0.0 < im && im < z.real();
}

EvalQuad local_eval(const Params& p, Solution which, Complex z, const Config& cfg) {
    return which == Solution::L ? series_zero::eval_cl_at0(p, z, cfg)
                                : series_zero::eval_cs_at0(p, z, cfg);
}

// Continuation seeded by the local series at kappa * (direction of the
// first leg), then Taylor steps along the rest of the polyline.
std::pair<EvalQuad, Trace> continue_from_zero(const Params& p, const Path& path,
                                              Solution which, const Config& cfg) {
    Complex w1 = path.waypoints.at(1);
    Complex z1 = std::abs(w1) <= cfg.kappa ? w1
                                           : cfg.kappa * (w1 / std::abs(w1));
    EvalQuad seed = local_eval(p, which, z1, cfg);
    Path rest;
    rest.waypoints.assign(path.waypoints.begin() + 1, path.waypoints.end());
    rest.waypoints.insert(rest.waypoints.begin(), z1);
    if (rest.waypoints.size() >= 2 && rest.waypoints[0] == rest.waypoints[1])
        rest.waypoints.erase(rest.waypoints.begin());
    return continue_along(p, rest, seed, cfg);
}

std::pair<EvalQuad, Trace> eval_sv_traced(const Params& p, Complex z,
                                          Solution which, const Config& cfg);

// e^{-eps z} reduction. For L with gamma not a nonpositive integer this is
// the parameter identity directly; in the log family the companion solution
// enters with the mixing constant A.
std::pair<EvalQuad, Trace> eval_l_reduced(const Params& p, Complex z, const Config& cfg) {
    Params t = series_zero::exp_transform(p);
    Complex E = std::exp(-p.epsilon * z);
    auto [inner, tr] = eval_sv_traced(t, z, Solution::L, cfg);
    EvalQuad out;
    out.f = E * inner.f;
    out.df = E * (inner.df - p.epsilon * inner.f);
    out.r = std::abs(E) * inner.r;
    out.n_terms = inner.n_terms;
    if (!gamma_nonpos_int(p, cfg))
        return {out, tr};
    Complex A = series_zero::log_mixing_constant(p, cfg);
    auto [cs, tr2] = eval_sv_traced(p, z, Solution::S, cfg);
    out.f -= A * cs.f;
    out.df -= A * cs.df;
    out.r += std::abs(A) * cs.r;
    out.n_terms += cs.n_terms;
    tr.r_sigma = out.r;
    tr.n_sigma += tr2.n_sigma;
    tr.steps += tr2.steps;
    return {out, tr};
}

// Single-valued evaluation on the cut plane for either local solution.
std::pair<EvalQuad, Trace> eval_sv_traced(const Params& p, Complex z,
                                          Solution which, const Config& cfg) {
    z = upper_limit(z);
    if ((-p.epsilon * z).real() > 0.0) {
        if (which == Solution::L)
            return eval_l_reduced(p, z, cfg);
        if (!gamma_is_one(p, cfg)) {
            // Rewrite as z^{1-gamma} * (analytic-at-0 solution of the reduced
            // equation) and reduce that inner function.
            Complex e = 1.0 - p.gamma;
            Params inner{p.q + (p.gamma - 1.0) * (p.delta - p.epsilon),
                         p.alpha + p.epsilon * (1.0 - p.gamma),
                         2.0 - p.gamma, p.delta, p.epsilon};
            auto [g, tr] = eval_sv_traced(inner, z, Solution::L, cfg);
            Complex pw = std::pow(z, e);
            EvalQuad out;
            out.f = pw * g.f;
            out.df = pw * (g.df + e / z * g.f);
            out.r = std::abs(pw) * g.r;
            out.n_terms = g.n_terms;
            tr.r_sigma = out.r;
            return {out, tr};
        }
        // gamma = 1: no reduction available; fall through.
    }
    if (std::abs(z) < cfg.kappa) {
        EvalQuad q = local_eval(p, which, z, cfg);
        return {q, Trace{q.r, q.n_terms + 1, 0, {}}};
    }
    return continue_from_zero(p, build_default_path(z), which, cfg);
}

} // namespace

Path build_default_path(Complex z) {
    z = upper_limit(z);
    if (z == Complex{} || z == Complex{1.0})
        throw Error(Errc::singular_point, "build_default_path: singular target");
    bool on_cut_one = z.imag() == 0.0 && z.real() > 1.0;
    if (in_omega(z, +1) || on_cut_one)
        return {{Complex{}, Complex{1.0, 1.0}, z}};
    if (in_omega(z, -1))
        return {{Complex{}, Complex{1.0, -1.0}, z}};
    return {{Complex{}, z}};
}

std::pair<EvalQuad, Trace> continue_along(const Params& p, const Path& path,
                                          const EvalQuad& seed, const Config& cfg) {
    const auto& wp = path.waypoints;
    if (wp.empty())
        throw Error(Errc::invalid_argument, "continue_along: empty path");
    for (std::size_t i = 0; i < wp.size(); ++i) {
        if (i > 0 && wp[i] == wp[i - 1])
            throw Error(Errc::invalid_argument, "continue_along: repeated waypoint");
        if ((wp[i] == Complex{} && i > 0) || wp[i] == Complex{1.0})
            throw Error(Errc::path_through_singularity,
                        "continue_along: waypoint at a singular point");
    }

    Complex zc = wp.front();
    Complex f = seed.f, fp = seed.df;
    Trace tr;
    tr.r_sigma = seed.r;
    tr.hops.push_back(zc);
    long terms = seed.n_terms;
    long evals = 1;
    double r_adapt = std::numeric_limits<double>::infinity();

    for (std::size_t leg = 1; leg < wp.size(); ++leg) {
        Complex b = wp[leg];
        while (zc != b) {
            double base = cfg.kappa * std::min(std::abs(zc), std::abs(zc - 1.0));
            double R = std::min(base, r_adapt);
            if (R < 1e-12 * (1.0 + std::abs(zc)))
                throw Error(Errc::step_underflow,
                            "continue_along: step collapsed at hop " +
                                std::to_string(tr.steps) + " near z=(" +
                                std::to_string(zc.real()) + "," +
                                std::to_string(zc.imag()) + ")");
            Complex to = b - zc;
            double dist = std::abs(to);
            Complex znext = dist <= R ? b : zc + to * (R / dist);
            EvalQuad hop = taylor_step::eval_step(p, {zc, f, fp}, znext, cfg);
            if (++tr.steps > cfg.max_steps)
                throw Error(Errc::max_steps_exceeded,
                            "continue_along: max_steps exceeded at hop " +
                                std::to_string(tr.steps) + " near z=(" +
                                std::to_string(zc.real()) + "," +
                                std::to_string(zc.imag()) + ")");
            f = hop.f;
            fp = hop.df;
            tr.r_sigma += hop.r;
            terms += hop.n_terms;
            ++evals;
            r_adapt = std::max(kMinAdaptiveRadius,
                               R * static_cast<double>(cfg.n_diamond) /
                                   static_cast<double>(std::max<long>(hop.n_terms, 1)));
            zc = znext;
            tr.hops.push_back(zc);
        }
    }
    tr.n_sigma = terms + evals;
    return {EvalQuad{f, fp, tr.r_sigma, tr.n_sigma}, tr};
}

EvalQuad eval_cl(const Params& p, Complex z, const Config& cfg) {
    return eval_sv_traced(p, z, Solution::L, cfg).first;
}

EvalQuad eval_cs(const Params& p, Complex z, const Config& cfg) {
    return eval_sv_traced(p, z, Solution::S, cfg).first;
}

std::pair<EvalQuad, Trace> eval_cl_traced(const Params& p, Complex z, const Config& cfg) {
    return eval_sv_traced(p, z, Solution::L, cfg);
}

std::pair<EvalQuad, Trace> eval_cs_traced(const Params& p, Complex z, const Config& cfg) {
    return eval_sv_traced(p, z, Solution::S, cfg);
}

EvalQuad eval_multivalued(const Params& p, const Path& path, Solution which,
                          const Config& cfg) {
    const auto& wp = path.waypoints;
    if (wp.size() < 2 || wp.front() != Complex{})
        throw Error(Errc::invalid_argument,
                    "eval_multivalued: path must start at 0 and reach a target");
    for (std::size_t i = 1; i < wp.size(); ++i)
        if (wp[i] == Complex{} || wp[i] == Complex{1.0})
            throw Error(Errc::path_through_singularity,
                        "eval_multivalued: waypoint at a singular point");
    return continue_from_zero(p, path, which, cfg).first;
}

} // namespace heun::continuation
